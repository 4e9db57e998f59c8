// qaoamc: command-line driver for the experiment harness.

#include "qaoamc/csv.hpp"
#include "qaoamc/harness.hpp"
#include "qaoamc/instance_io.hpp"
#include "qaoamc/mcmc.hpp"
#include "qaoamc/proposals.hpp"
#include "qaoamc/theta_optimizer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace qaoamc;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string out = ".";
  int workers = 1;
  std::string config;
  bool timing = false;
};

std::ofstream open_output(const Globals& g, const std::string& name) {
  fs::create_directories(g.out);
  const fs::path path = fs::path(g.out) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::cout << path.string() << "\n";
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<ExperimentRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read_records_csv(in);
}

// Sweep flags shared by spectral-sweep, m-sweep and theta-study. Values given
// on the command line override the --config file, which overrides defaults.
struct SweepFlags {
  std::vector<int> sizes;
  int instances = 0;
  double temperature = 0.0;
  int p = 0;
  double theta_max = 0.0;
  std::vector<std::string> proposals;
  int grid_points = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--sizes", sizes, "Spin counts, e.g. 3,4,5")->delimiter(',');
    cmd->add_option("--instances", instances, "Instances per size");
    cmd->add_option("--temperature", temperature, "Temperature T");
    cmd->add_option("--p", p, "Circuit depth");
    cmd->add_option("--theta-max", theta_max, "Upper end of the theta search");
    cmd->add_option("--proposals", proposals, "Subset of optimized,random,uniform,local")->delimiter(',');
    cmd->add_option("--grid-points", grid_points, "Theta grid size");
  }

  SweepSpec resolve(const Globals& g) const {
    SweepSpec spec = g.config.empty() ? SweepSpec{} : SweepSpec::from_json(slurp(g.config));
    if (g.config.empty() || g.seed != 0) spec.master_seed = g.seed;
    if (!sizes.empty()) spec.sizes = sizes;
    if (instances > 0) spec.instances_per_size = instances;
    if (temperature > 0.0) spec.temperature = temperature;
    if (p > 0) spec.p = p;
    if (theta_max > 0.0) spec.theta_max = theta_max;
    if (!proposals.empty()) spec.proposals = proposals;
    if (grid_points > 0) spec.grid_points = grid_points;
    spec.validate();
    return spec;
  }
};

SpinGlassInstance load_or_generate(const std::string& path, int n, std::uint64_t seed) {
  if (!path.empty()) return read_instance(path);
  if (n < 1) throw CLI::ValidationError("--instance or --n is required");
  return generate_instance(n, seed);
}

void print_fits(const std::vector<ScalingFit>& fits) {
  for (const auto& f : fits) {
    std::cout << f.proposal << ": k = " << csv::format(f.k) << " +/- " << csv::format(f.k_uncertainty)
              << ", k_uniform/k = " << csv::format(f.ratio_to_uniform);
    if (f.status != "ok") std::cout << " [" << f.status << "]";
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QAOA-proposal Metropolis sampling for Ising spin glasses"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Master seed (instance seed for gen-instance, chain seed for run-chain)");
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--config", g.config, "Sweep configuration JSON")->check(CLI::ExistingFile);
  app.add_flag("--timing", g.timing, "Record wall_time per row (output is then not reproducible)");

  // gen-instance
  auto* gen = app.add_subcommand("gen-instance", "Write a seeded spin-glass instance as JSON");
  int gen_n = 0;
  gen->add_option("--n", gen_n, "Number of spins")->required()->check(CLI::Range(1, 62));
  gen->callback([&] {
    const auto instance = generate_instance(gen_n, g.seed);
    auto out = open_output(g, "instance_n" + std::to_string(gen_n) + "_seed" + std::to_string(g.seed) + ".json");
    out << instance_to_json(instance);
  });

  // spectral-sweep
  auto* sweep = app.add_subcommand("spectral-sweep", "delta of every proposal over a seeded instance set");
  SweepFlags sweep_flags;
  sweep_flags.attach(sweep);
  sweep->callback([&] {
    const auto records = run_spectral_sweep(sweep_flags.resolve(g), {g.workers, g.timing});
    auto out = open_output(g, "spectral_sweep.csv");
    write_records_csv(out, records);
  });

  // fit-scaling
  auto* fit = app.add_subcommand("fit-scaling", "Fit <delta> = 2^(-k n) per proposal");
  std::string fit_in;
  fit->add_option("--in", fit_in, "Sweep CSV")->required()->check(CLI::ExistingFile);
  fit->callback([&] {
    const auto records = load_records(fit_in);
    {
      auto out = open_output(g, "scaling_summary.csv");
      write_summary_csv(out, summarize_by_size(records));
    }
    const auto fits = fit_scaling(records);
    auto out = open_output(g, "scaling_fits.csv");
    write_fits_csv(out, fits);
    print_fits(fits);
  });

  // win-fraction
  auto* wins = app.add_subcommand("win-fraction", "Share of instances where the optimized delta is largest");
  std::string wins_in;
  std::string wins_label = kOptimized;
  wins->add_option("--in", wins_in, "Sweep CSV")->required()->check(CLI::ExistingFile);
  wins->add_option("--label", wins_label, "Proposal label to compare")->capture_default_str();
  wins->callback([&] {
    auto out = open_output(g, "win_fraction.csv");
    write_win_fraction_csv(out, win_fraction(load_records(wins_in), wins_label));
  });

  // m-sweep
  auto* msweep = app.add_subcommand("m-sweep", "Sampled-AR theta search for several M, then delta at each theta*");
  SweepFlags m_flags;
  m_flags.attach(msweep);
  std::vector<std::string> m_text{"8", "32", "128", "inf"};
  msweep->add_option("--M", m_text, "AR sample counts; 'inf' for the exact AR")->delimiter(',')->capture_default_str();
  msweep->callback([&] {
    std::vector<std::int64_t> m_values;
    for (const auto& m : m_text) m_values.push_back(m == "inf" ? 0 : std::stoll(m));
    const auto records = run_m_sweep(m_flags.resolve(g), m_values, {g.workers, g.timing});
    {
      auto out = open_output(g, "m_sweep.csv");
      write_records_csv(out, records);
    }
    const auto fits = fit_scaling(records);
    auto out = open_output(g, "m_sweep_fits.csv");
    write_fits_csv(out, fits);
    print_fits(fits);
  });

  // theta-study
  auto* study = app.add_subcommand("theta-study", "theta* across sizes (--mode size) or depths (--mode depth)");
  SweepFlags study_flags;
  study_flags.attach(study);
  std::string study_mode = "size";
  int study_n = 5;
  std::vector<int> depths{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  study->add_option("--mode", study_mode)->check(CLI::IsMember({"size", "depth"}))->capture_default_str();
  study->add_option("--n", study_n, "Spin count for --mode depth")->capture_default_str();
  study->add_option("--depths", depths, "Depths for --mode depth")->delimiter(',');
  study->callback([&] {
    const auto spec = study_flags.resolve(g);
    const RunOptions options{g.workers, false};
    const auto records = study_mode == "size" ? run_theta_study_sizes(spec, options)
                                              : run_theta_study_depths(spec, study_n, depths, options);
    {
      auto out = open_output(g, "theta_study_" + study_mode + ".csv");
      write_theta_study_csv(out, records);
    }
    if (study_mode == "depth") {
      const auto a_fit = fit_inverse_depth(records);
      auto out = open_output(g, "theta_depth_fit.csv");
      csv::write_row(out, {"a", "a_uncertainty"});
      csv::write_row(out, {csv::format(a_fit.a), csv::format(a_fit.a_uncertainty)});
      std::cout << "a = " << csv::format(a_fit.a) << " +/- " << csv::format(a_fit.a_uncertainty) << "\n";
    }
  });

  // magnetization
  auto* mag = app.add_subcommand("magnetization", "Running <m> over several chains per proposal");
  MagnetizationSpec mag_spec;
  std::string mag_instance;
  int mag_n = 0;
  mag->add_option("--instance", mag_instance, "Instance JSON")->check(CLI::ExistingFile);
  mag->add_option("--n", mag_n, "Generate an instance of this size from --seed instead");
  mag->add_option("--temperature", mag_spec.temperature)->capture_default_str();
  mag->add_option("--M", mag_spec.ar_samples, "AR samples for the theta search")->capture_default_str();
  mag->add_option("--chains", mag_spec.chains)->capture_default_str();
  mag->add_option("--steps", mag_spec.steps)->capture_default_str();
  mag->add_option("--burn-in", mag_spec.burn_in)->capture_default_str();
  mag->add_option("--p", mag_spec.p)->capture_default_str();
  mag->add_option("--theta-max", mag_spec.theta_max)->capture_default_str();
  mag->add_option("--proposals", mag_spec.proposals)->delimiter(',');
  mag->callback([&] {
    mag_spec.master_seed = g.seed;
    const auto instance = load_or_generate(mag_instance, mag_n, g.seed);
    const auto result = run_magnetization(instance, mag_spec, {g.workers, false});
    auto out = open_output(g, "magnetization.csv");
    write_magnetization_csv(out, result);
    if (result.search)
      std::cout << "theta* = " << csv::format(result.search->theta_star) << ", exact <m> = "
                << csv::format(result.exact) << "\n";
  });

  // run-chain
  auto* chain = app.add_subcommand("run-chain", "One Metropolis chain, written step by step");
  std::string chain_instance, chain_proposal = "uniform";
  int chain_n = 0, chain_p = 5, chain_id = 0;
  double chain_theta = 0.3, chain_temperature = 0.1;
  std::int64_t chain_steps = 0;
  StateIndex chain_init = 0;
  chain->add_option("--instance", chain_instance, "Instance JSON")->check(CLI::ExistingFile);
  chain->add_option("--n", chain_n, "Generate an instance of this size from --seed instead");
  chain->add_option("--proposal", chain_proposal)
      ->check(CLI::IsMember({"local", "uniform", "random", "qaoa"}))
      ->capture_default_str();
  chain->add_option("--theta", chain_theta, "Circuit angle for --proposal qaoa")->capture_default_str();
  chain->add_option("--p", chain_p)->capture_default_str();
  chain->add_option("--temperature", chain_temperature)->capture_default_str();
  chain->add_option("--steps", chain_steps)->required()->check(CLI::PositiveNumber);
  chain->add_option("--init", chain_init, "Initial state index")->capture_default_str();
  chain->add_option("--chain-id", chain_id)->capture_default_str();
  chain->callback([&] {
    const auto instance = load_or_generate(chain_instance, chain_n, g.seed);
    const BoltzmannTarget target(instance, chain_temperature);
    const auto kernel = chain_proposal == "local"     ? ProposalKernel::local(instance.n())
                        : chain_proposal == "uniform" ? ProposalKernel::uniform(instance.n())
                        : chain_proposal == "random"
                            ? ProposalKernel::qaoa_random_theta(instance, chain_p, random_theta_seed(instance.seed()))
                            : ProposalKernel::qaoa(instance, QaoaParameters::single(chain_p, chain_theta));
    const auto trace = run_chain(target, kernel, chain_steps, {chain_init}, g.seed);
    auto out = open_output(g, "chain_" + std::to_string(chain_id) + ".csv");
    write_trace_csv(out, trace, chain_id, g.seed);
  });

  // optimize-theta
  auto* opt = app.add_subcommand("optimize-theta", "Find theta* for one instance; prints JSON");
  std::string opt_instance, opt_mode = "exact";
  ThetaSearchConfig opt_config;
  double opt_temperature = 0.1;
  opt->add_option("--instance", opt_instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  opt->add_option("--p", opt_config.p)->capture_default_str();
  opt->add_option("--mode", opt_mode)->check(CLI::IsMember({"exact", "sampled"}))->capture_default_str();
  opt->add_option("--M", opt_config.samples)->capture_default_str();
  opt->add_option("--temperature", opt_temperature)->capture_default_str();
  auto* theta_max_opt = opt->add_option("--theta-max", opt_config.theta_max, "Defaults to the depth's theta_max");
  opt->callback([&] {
    if (theta_max_opt->count() == 0) opt_config.theta_max = theta_max_for_depth(opt_config.p);
    opt_config.mode = opt_mode == "exact" ? SearchMode::Exact : SearchMode::Sampled;
    opt_config.seed = g.seed;
    const BoltzmannTarget target(read_instance(opt_instance), opt_temperature);
    const auto found = find_theta_star(target, opt_config);
    nlohmann::ordered_json doc;
    doc["theta_star"] = found.theta_star;
    doc["ar"] = found.ar_at_star;
    doc["evaluations"] = found.evaluations;
    doc["boundary"] = found.boundary;
    std::cout << doc.dump() << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
