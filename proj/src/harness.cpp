#include "qaoamc/harness.hpp"

#include "qaoamc/csv.hpp"
#include "qaoamc/parallel.hpp"
#include "qaoamc/proposals.hpp"
#include "qaoamc/spectral.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

namespace qaoamc {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kRandomThetaTag = 0x72616e64;  // "rand"
constexpr std::uint64_t kSampledSearchTag = 0x4d53;
constexpr std::uint64_t kChainInitTag = 0x696e6974;   // "init"

bool is_known_proposal(const std::string& label) {
  return label == kOptimized || label == kRandom || label == kUniform || label == kLocal;
}

void fill_gap(ExperimentRecord& row, const BoltzmannTarget& target, const ProposalMatrix& q) {
  row.exact_ar = exact_ar(target, q);
  row.delta = spectral_gap(target, q);
}

// Runs the theta search and evaluates delta at its result. A flat AR landscape
// falls back to theta_max / 2 and is flagged in the status.
void fill_optimized(ExperimentRecord& row, const BoltzmannTarget& target, const ThetaSearchConfig& config) {
  double theta = 0.5 * config.theta_max;
  try {
    const OptimizedTheta found = find_theta_star(target, config);
    theta = found.theta_star;
    row.theta_star = found.theta_star;
    row.boundary = found.boundary;
  } catch (const DegenerateLandscape&) {
    row.status = "degenerate_ar_landscape";
  }
  row.theta = theta;
  const auto kernel = ProposalKernel::qaoa(target.instance, QaoaParameters::single(config.p, theta));
  fill_gap(row, target, exact_q_matrix(kernel));
}

template <typename Body>
ExperimentRecord make_row(const SpinGlassInstance& instance, const std::string& label, bool timing, Body&& body) {
  ExperimentRecord row;
  row.n = instance.n();
  row.instance_seed = instance.seed();
  row.proposal = label;
  const auto start = Clock::now();
  try {
    body(row);
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  if (timing) row.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return row;
}

struct SweepTask {
  int n;
  int index;
};

std::vector<SweepTask> sweep_tasks(const SweepSpec& spec) {
  std::vector<SweepTask> tasks;
  for (int n : spec.sizes)
    for (int i = 0; i < spec.instances_per_size; ++i) tasks.push_back({n, i});
  return tasks;
}

template <typename Row, typename PerInstance>
std::vector<Row> run_over_instances(const SweepSpec& spec, const RunOptions& options, PerInstance&& per_instance) {
  const auto tasks = sweep_tasks(spec);
  std::vector<std::vector<Row>> slots(tasks.size());
  parallel_for(tasks.size(), options.workers, [&](std::size_t t) {
    const auto instance = generate_instance(tasks[t].n, instance_seed(spec.master_seed, tasks[t].n, tasks[t].index));
    slots[t] = per_instance(instance);
  });
  std::vector<Row> out;
  for (auto& slot : slots) std::move(slot.begin(), slot.end(), std::back_inserter(out));
  return out;
}

double mean_of(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

SweepSpec SweepSpec::from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  if (!doc.is_object()) throw std::invalid_argument("sweep config must be a JSON object");
  static const std::set<std::string> known{"sizes", "instances_per_size", "temperature", "p", "theta_max",
                                           "proposals", "master_seed", "grid_points", "refine_tol"};
  for (const auto& item : doc.items())
    if (!known.contains(item.key())) throw std::invalid_argument("unknown sweep config key '" + item.key() + "'");
  SweepSpec spec;
  spec.sizes = doc.value("sizes", spec.sizes);
  spec.instances_per_size = doc.value("instances_per_size", spec.instances_per_size);
  spec.temperature = doc.value("temperature", spec.temperature);
  spec.p = doc.value("p", spec.p);
  spec.theta_max = doc.value("theta_max", spec.theta_max);
  spec.proposals = doc.value("proposals", spec.proposals);
  spec.master_seed = doc.value("master_seed", spec.master_seed);
  spec.grid_points = doc.value("grid_points", spec.grid_points);
  spec.refine_tol = doc.value("refine_tol", spec.refine_tol);
  spec.validate();
  return spec;
}

void SweepSpec::validate(int size_cap) const {
  if (sizes.empty()) throw std::invalid_argument("sweep needs at least one size");
  for (int n : sizes)
    if (n < 1 || n > size_cap)
      throw std::invalid_argument("sweep size " + std::to_string(n) + " outside [1, " + std::to_string(size_cap) + "]");
  if (instances_per_size < 1) throw std::invalid_argument("instances_per_size must be >= 1");
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  if (!(theta_max > 0.0)) throw std::invalid_argument("theta_max must be positive");
  if (grid_points < 8) throw std::invalid_argument("grid_points must be >= 8");
  for (const auto& label : proposals)
    if (!is_known_proposal(label)) throw std::invalid_argument("unknown proposal '" + label + "'");
}

ThetaSearchConfig SweepSpec::exact_search() const {
  ThetaSearchConfig config;
  config.theta_max = theta_max;
  config.p = p;
  config.mode = SearchMode::Exact;
  config.grid_points = grid_points;
  config.refine_tol = refine_tol;
  return config;
}

std::uint64_t instance_seed(std::uint64_t master_seed, int n, int index) {
  return derive_seed({master_seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(index)});
}

std::uint64_t random_theta_seed(std::uint64_t seed) { return derive_seed({seed, kRandomThetaTag}); }

std::vector<ExperimentRecord> evaluate_instance(const SpinGlassInstance& instance, const SweepSpec& spec,
                                                bool timing) {
  const BoltzmannTarget target(instance, spec.temperature);
  std::vector<ExperimentRecord> rows;
  for (const auto& label : spec.proposals) {
    rows.push_back(make_row(instance, label, timing, [&](ExperimentRecord& row) {
      if (label == kOptimized) {
        fill_optimized(row, target, spec.exact_search());
      } else if (label == kRandom) {
        const auto kernel = ProposalKernel::qaoa_random_theta(instance, spec.p, random_theta_seed(instance.seed()));
        row.theta = kernel.theta();
        fill_gap(row, target, exact_q_matrix(kernel));
      } else if (label == kUniform) {
        fill_gap(row, target, exact_q_matrix(ProposalKernel::uniform(instance.n())));
      } else if (label == kLocal) {
        fill_gap(row, target, exact_q_matrix(ProposalKernel::local(instance.n())));
      } else {
        throw std::invalid_argument("unknown proposal '" + label + "'");
      }
    }));
  }
  return rows;
}

std::vector<ExperimentRecord> run_spectral_sweep(const SweepSpec& spec, const RunOptions& options) {
  spec.validate();
  return run_over_instances<ExperimentRecord>(
      spec, options, [&](const SpinGlassInstance& instance) { return evaluate_instance(instance, spec, options.timing); });
}

std::string m_sweep_label(std::int64_t m) {
  return std::string(kOptimized) + "_M" + (m == 0 ? std::string("inf") : std::to_string(m));
}

std::vector<ExperimentRecord> run_m_sweep(const SweepSpec& spec, const std::vector<std::int64_t>& m_values,
                                          const RunOptions& options) {
  spec.validate();
  if (m_values.empty()) throw std::invalid_argument("m-sweep needs at least one M");
  for (auto m : m_values)
    if (m < 0) throw std::invalid_argument("M must be >= 1, or 0 for the exact AR");
  SweepSpec references = spec;
  references.proposals = {kUniform, kRandom};
  return run_over_instances<ExperimentRecord>(spec, options, [&](const SpinGlassInstance& instance) {
    auto rows = evaluate_instance(instance, references, options.timing);
    const BoltzmannTarget target(instance, spec.temperature);
    for (auto m : m_values) {
      rows.push_back(make_row(instance, m_sweep_label(m), options.timing, [&](ExperimentRecord& row) {
        ThetaSearchConfig config = spec.exact_search();
        if (m > 0) {
          config.mode = SearchMode::Sampled;
          config.samples = m;
          config.seed = derive_seed({instance.seed(), static_cast<std::uint64_t>(m), kSampledSearchTag});
        }
        fill_optimized(row, target, config);
      }));
    }
    return rows;
  });
}

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  csv::write_row(out, {"n", "instance_seed", "proposal", "theta", "delta", "exact_ar", "theta_star", "boundary",
                       "wall_time", "status"});
  for (const auto& r : records)
    csv::write_row(out, {std::to_string(r.n), std::to_string(r.instance_seed), r.proposal, csv::format(r.theta),
                         csv::format(r.delta), csv::format(r.exact_ar), csv::format(r.theta_star),
                         r.boundary ? "1" : "0", csv::format(r.wall_time), r.status});
}

std::vector<ExperimentRecord> read_records_csv(std::istream& in) {
  const auto table = csv::read(in);
  const auto c_n = table.column("n"), c_seed = table.column("instance_seed"), c_prop = table.column("proposal"),
             c_theta = table.column("theta"), c_delta = table.column("delta"), c_ar = table.column("exact_ar"),
             c_star = table.column("theta_star"), c_bnd = table.column("boundary"), c_wall = table.column("wall_time"),
             c_status = table.column("status");
  std::vector<ExperimentRecord> records;
  records.reserve(table.rows.size());
  for (const auto& f : table.rows) {
    ExperimentRecord r;
    r.n = std::stoi(f[c_n]);
    r.instance_seed = std::stoull(f[c_seed]);
    r.proposal = f[c_prop];
    r.theta = csv::parse_optional(f[c_theta]);
    r.delta = csv::parse_double(f[c_delta]);
    r.exact_ar = csv::parse_double(f[c_ar]);
    r.theta_star = csv::parse_optional(f[c_star]);
    r.boundary = f[c_bnd] == "1";
    r.wall_time = f[c_wall].empty() ? 0.0 : csv::parse_double(f[c_wall]);
    r.status = f[c_status];
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<SizeSummary> summarize_by_size(const std::vector<ExperimentRecord>& records) {
  std::vector<std::string> order;
  std::map<std::string, std::map<int, std::vector<double>>> groups;
  for (const auto& r : records) {
    if (std::find(order.begin(), order.end(), r.proposal) == order.end()) order.push_back(r.proposal);
    if (r.status != "ok" || std::isnan(r.delta)) continue;
    groups[r.proposal][r.n].push_back(r.delta);
  }
  std::vector<SizeSummary> out;
  for (const auto& proposal : order) {
    for (const auto& [n, deltas] : groups[proposal]) {
      SizeSummary s;
      s.proposal = proposal;
      s.n = n;
      s.count = static_cast<int>(deltas.size());
      s.mean = mean_of(deltas);
      double ss = 0.0;
      for (double d : deltas) ss += (d - s.mean) * (d - s.mean);
      s.stddev = deltas.size() > 1 ? std::sqrt(ss / static_cast<double>(deltas.size() - 1)) : 0.0;
      s.standard_error = s.stddev / std::sqrt(static_cast<double>(deltas.size()));
      out.push_back(s);
    }
  }
  return out;
}

ScalingFit fit_log2_scaling(const std::vector<int>& sizes, const std::vector<double>& mean_delta) {
  if (sizes.size() != mean_delta.size()) throw std::invalid_argument("sizes and means differ in length");
  ScalingFit fit;
  fit.sizes = static_cast<int>(sizes.size());
  if (sizes.size() < 3) {
    fit.status = "error: need at least 3 distinct sizes";
    return fit;
  }
  for (double d : mean_delta) {
    if (!(d > 0.0)) {
      fit.status = "error: nonpositive <delta>";
      return fit;
    }
  }
  const auto count = static_cast<double>(sizes.size());
  std::vector<double> x(sizes.begin(), sizes.end());
  std::vector<double> y;
  for (double d : mean_delta) y.push_back(std::log2(d));
  const double x_mean = mean_of(x);
  const double y_mean = mean_of(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - x_mean) * (x[i] - x_mean);
    sxy += (x[i] - x_mean) * (y[i] - y_mean);
    syy += (y[i] - y_mean) * (y[i] - y_mean);
  }
  const double slope = sxy / sxx;
  fit.k = -slope;
  fit.intercept = y_mean - slope * x_mean;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + slope * x[i]);
    rss += r * r;
  }
  fit.k_uncertainty = std::sqrt(rss / (count - 2.0) / sxx);
  fit.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  return fit;
}

std::vector<ScalingFit> fit_scaling(const std::vector<ExperimentRecord>& records) {
  const auto summary = summarize_by_size(records);
  std::vector<std::string> order;
  for (const auto& r : records)
    if (std::find(order.begin(), order.end(), r.proposal) == order.end()) order.push_back(r.proposal);
  std::vector<ScalingFit> fits;
  for (const auto& proposal : order) {
    std::vector<int> sizes;
    std::vector<double> means;
    for (const auto& s : summary)
      if (s.proposal == proposal) {
        sizes.push_back(s.n);
        means.push_back(s.mean);
      }
    ScalingFit fit = fit_log2_scaling(sizes, means);
    fit.proposal = proposal;
    fits.push_back(fit);
  }
  const auto uniform = std::find_if(fits.begin(), fits.end(), [](const ScalingFit& f) { return f.proposal == kUniform; });
  if (uniform != fits.end() && uniform->status == "ok") {
    const ScalingFit u = *uniform;
    for (auto& fit : fits) {
      if (fit.status != "ok") continue;
      fit.ratio_to_uniform = u.k / fit.k;
      fit.ratio_uncertainty = std::abs(fit.ratio_to_uniform) *
                              std::hypot(u.k_uncertainty / u.k, fit.k_uncertainty / fit.k);
    }
  }
  return fits;
}

void write_summary_csv(std::ostream& out, const std::vector<SizeSummary>& summary) {
  csv::write_row(out, {"proposal", "n", "count", "mean_delta", "std_delta", "stderr_delta"});
  for (const auto& s : summary)
    csv::write_row(out, {s.proposal, std::to_string(s.n), std::to_string(s.count), csv::format(s.mean),
                         csv::format(s.stddev), csv::format(s.standard_error)});
}

void write_fits_csv(std::ostream& out, const std::vector<ScalingFit>& fits) {
  csv::write_row(out, {"proposal", "k", "k_uncertainty", "intercept", "r_squared", "ratio_to_uniform",
                       "ratio_uncertainty", "sizes", "status"});
  for (const auto& f : fits)
    csv::write_row(out, {f.proposal, csv::format(f.k), csv::format(f.k_uncertainty), csv::format(f.intercept),
                         csv::format(f.r_squared), csv::format(f.ratio_to_uniform),
                         csv::format(f.ratio_uncertainty), std::to_string(f.sizes), f.status});
}

std::vector<WinFraction> win_fraction(const std::vector<ExperimentRecord>& records,
                                      const std::string& optimized_label) {
  std::map<int, std::map<std::uint64_t, std::map<std::string, double>>> grouped;
  for (const auto& r : records) grouped[r.n][r.instance_seed][r.proposal] = r.status == "ok" ? r.delta : kNaN;
  std::vector<WinFraction> out;
  for (const auto& [n, instances] : grouped) {
    WinFraction w;
    w.n = n;
    for (const auto& [seed, deltas] : instances) {
      for (const std::string& needed : {optimized_label, std::string(kUniform), std::string(kLocal), std::string(kRandom)})
        if (!deltas.contains(needed))
          throw std::invalid_argument("win fraction: instance " + std::to_string(seed) + " at n=" + std::to_string(n) +
                                      " has no '" + needed + "' row");
      const double opt = deltas.at(optimized_label);
      const bool u = opt > deltas.at(kUniform);
      const bool l = opt > deltas.at(kLocal);
      const bool r = opt > deltas.at(kRandom);
      w.vs_uniform += u;
      w.vs_local += l;
      w.vs_random += r;
      w.vs_all += u && l && r;
      ++w.instances;
    }
    const double total = w.instances;
    w.vs_uniform /= total;
    w.vs_local /= total;
    w.vs_random /= total;
    w.vs_all /= total;
    out.push_back(w);
  }
  return out;
}

void write_win_fraction_csv(std::ostream& out, const std::vector<WinFraction>& wins) {
  csv::write_row(out, {"n", "instances", "vs_uniform", "vs_local", "vs_random", "vs_all"});
  for (const auto& w : wins)
    csv::write_row(out, {std::to_string(w.n), std::to_string(w.instances), csv::format(w.vs_uniform),
                         csv::format(w.vs_local), csv::format(w.vs_random), csv::format(w.vs_all)});
}

double study_theta_range(int p) { return 2.0 * theta_max_for_depth(p); }

namespace {

ThetaStudyRecord study_instance(const SpinGlassInstance& instance, const SweepSpec& spec, int p, const char* mode) {
  ThetaStudyRecord row;
  row.mode = mode;
  row.n = instance.n();
  row.p = p;
  row.instance_seed = instance.seed();
  ThetaSearchConfig config = spec.exact_search();
  config.p = p;
  config.theta_max = study_theta_range(p);
  try {
    const auto found = find_theta_star(BoltzmannTarget(instance, spec.temperature), config);
    row.theta_star = found.theta_star;
    row.ar = found.ar_at_star;
    row.boundary = found.boundary;
    row.evaluations = found.evaluations;
  } catch (const DegenerateLandscape&) {
    row.status = "degenerate_ar_landscape";
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

}  // namespace

std::vector<ThetaStudyRecord> run_theta_study_sizes(const SweepSpec& spec, const RunOptions& options) {
  spec.validate();
  return run_over_instances<ThetaStudyRecord>(spec, options, [&](const SpinGlassInstance& instance) {
    return std::vector<ThetaStudyRecord>{study_instance(instance, spec, spec.p, "size")};
  });
}

std::vector<ThetaStudyRecord> run_theta_study_depths(const SweepSpec& spec, int n, const std::vector<int>& depths,
                                                     const RunOptions& options) {
  SweepSpec at_n = spec;
  at_n.sizes = {n};
  at_n.validate();
  for (int p : depths)
    if (p < 1) throw std::invalid_argument("depths must be >= 1");
  return run_over_instances<ThetaStudyRecord>(at_n, options, [&](const SpinGlassInstance& instance) {
    std::vector<ThetaStudyRecord> rows;
    for (int p : depths) rows.push_back(study_instance(instance, at_n, p, "depth"));
    return rows;
  });
}

InverseDepthFit fit_inverse_depth(const std::vector<ThetaStudyRecord>& records) {
  std::map<int, std::vector<double>> by_depth;
  for (const auto& r : records)
    if (r.status == "ok") by_depth[r.p].push_back(r.theta_star);
  InverseDepthFit fit;
  if (by_depth.size() < 2) throw std::invalid_argument("a/p fit needs at least two depths");
  double num = 0.0, den = 0.0;
  for (const auto& [p, thetas] : by_depth) {
    fit.depths.push_back(p);
    fit.mean_theta.push_back(mean_of(thetas));
    num += fit.mean_theta.back() / p;
    den += 1.0 / (static_cast<double>(p) * p);
  }
  fit.a = num / den;
  double rss = 0.0;
  for (std::size_t i = 0; i < fit.depths.size(); ++i) {
    const double r = fit.mean_theta[i] - fit.a / fit.depths[i];
    rss += r * r;
  }
  fit.a_uncertainty = std::sqrt(rss / static_cast<double>(fit.depths.size() - 1) / den);
  return fit;
}

void write_theta_study_csv(std::ostream& out, const std::vector<ThetaStudyRecord>& records) {
  csv::write_row(out, {"mode", "n", "p", "instance_seed", "theta_star", "ar", "boundary", "evaluations", "status"});
  for (const auto& r : records)
    csv::write_row(out, {r.mode, std::to_string(r.n), std::to_string(r.p), std::to_string(r.instance_seed),
                         csv::format(r.theta_star), csv::format(r.ar), r.boundary ? "1" : "0",
                         std::to_string(r.evaluations), r.status});
}

const MagnetizationSeries& MagnetizationResult::find(const std::string& proposal) const {
  for (const auto& s : series)
    if (s.proposal == proposal) return s;
  throw std::out_of_range("no magnetization series for '" + proposal + "'");
}

MagnetizationResult run_magnetization(const SpinGlassInstance& instance, const MagnetizationSpec& spec,
                                      const RunOptions& options) {
  if (spec.chains < 1) throw std::invalid_argument("magnetization needs at least one chain");
  if (spec.steps < 1) throw std::invalid_argument("magnetization needs steps >= 1");
  for (const auto& label : spec.proposals)
    if (!is_known_proposal(label)) throw std::invalid_argument("unknown proposal '" + label + "'");
  const BoltzmannTarget target(instance, spec.temperature);
  MagnetizationResult result;
  result.exact = exact_average_magnetization(target);

  std::vector<ProposalKernel> kernels;
  for (const auto& label : spec.proposals) {
    if (label == kOptimized) {
      ThetaSearchConfig config;
      config.theta_max = spec.theta_max;
      config.p = spec.p;
      config.mode = SearchMode::Sampled;
      config.samples = spec.ar_samples;
      config.seed = derive_seed({spec.master_seed, kSampledSearchTag});
      config.grid_points = spec.grid_points;
      config.refine_tol = spec.refine_tol;
      double theta = 0.5 * spec.theta_max;
      try {
        result.search = find_theta_star(target, config);
        theta = result.search->theta_star;
      } catch (const DegenerateLandscape&) {
        result.status = "degenerate_ar_landscape";
      }
      kernels.push_back(ProposalKernel::qaoa(instance, QaoaParameters::single(spec.p, theta)));
    } else if (label == kRandom) {
      kernels.push_back(ProposalKernel::qaoa_random_theta(instance, spec.p, derive_seed({spec.master_seed, kRandomThetaTag})));
    } else if (label == kUniform) {
      kernels.push_back(ProposalKernel::uniform(instance.n()));
    } else {
      kernels.push_back(ProposalKernel::local(instance.n()));
    }
  }

  const auto chains = static_cast<std::size_t>(spec.chains);
  std::vector<ChainTrace> traces(kernels.size() * chains);
  parallel_for(traces.size(), options.workers, [&](std::size_t job) {
    const std::size_t k = job / chains;
    const std::size_t c = job % chains;
    Rng init_rng(derive_seed({spec.master_seed, kChainInitTag, c}));
    const SpinConfiguration init{init_rng.uniform_index(instance.dimension())};
    traces[job] = run_chain(target, kernels[k], spec.steps, init, derive_seed({spec.master_seed, k, c}));
  });

  for (std::size_t k = 0; k < kernels.size(); ++k) {
    std::vector<ChainTrace> group(std::make_move_iterator(traces.begin() + static_cast<std::ptrdiff_t>(k * chains)),
                                  std::make_move_iterator(traces.begin() + static_cast<std::ptrdiff_t>((k + 1) * chains)));
    result.series.push_back({spec.proposals[k], kernels[k].theta(), estimate_average_magnetization(group, spec.burn_in)});
  }
  return result;
}

void write_magnetization_csv(std::ostream& out, const MagnetizationResult& result) {
  csv::write_row(out, {"step", "proposal", "theta", "mean", "std", "stderr", "exact"});
  for (const auto& s : result.series) {
    const auto& e = s.estimate;
    for (std::size_t i = 0; i < e.mean.size(); ++i)
      csv::write_row(out, {std::to_string(i + 1), s.proposal, csv::format(s.theta), csv::format(e.mean[i]),
                           csv::format(e.stddev[i]), csv::format(e.standard_error[i]), csv::format(result.exact)});
  }
}

void write_trace_csv(std::ostream& out, const ChainTrace& trace, int chain_id, std::uint64_t seed, bool header) {
  if (header)
    csv::write_row(out, {"step", "state_index", "energy", "magnetization", "acceptance_prob", "accepted", "chain_id", "seed"});
  for (std::size_t i = 0; i < trace.size(); ++i)
    csv::write_row(out, {std::to_string(i + 1), std::to_string(trace.states[i]), csv::format(trace.energies[i]),
                         csv::format(trace.magnetizations[i]), csv::format(trace.acceptance_probs[i]),
                         trace.accepted_flags[i] ? "1" : "0", std::to_string(chain_id), std::to_string(seed)});
}

}  // namespace qaoamc
