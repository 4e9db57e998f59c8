// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//   acceptance [--only <substring>] [--workers N] [--expect-fail <name>]...
// A criterion named by --expect-fail still prints its FAIL line but does not
// set the exit status.

#include "oracles.hpp"

#include "qaoamc/harness.hpp"
#include "qaoamc/mcmc.hpp"
#include "qaoamc/proposals.hpp"
#include "qaoamc/spectral.hpp"
#include "qaoamc/statevector.hpp"
#include "qaoamc/theta_optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace qaoamc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
};

RunOptions g_options;

std::string fmt(double v, int digits = 4) {
  std::ostringstream out;
  out.precision(digits);
  out << v;
  return out.str();
}

constexpr double kSweepTemperature = 0.1;

// The four kernels of the sweep for one instance. The optimized one uses the
// exact theta search.
std::vector<std::pair<std::string, ProposalKernel>> sweep_kernels(const SpinGlassInstance& inst,
                                                                  std::uint64_t seed, double temperature) {
  const BoltzmannTarget target(inst, temperature);
  ThetaSearchConfig config;
  double theta = config.theta_max / 2;
  try {
    theta = find_theta_star(target, config).theta_star;
  } catch (const DegenerateLandscape&) {
  }
  return {{kOptimized, ProposalKernel::qaoa(inst, QaoaParameters::single(5, theta))},
          {kRandom, ProposalKernel::qaoa_random_theta(inst, 5, random_theta_seed(seed))},
          {kUniform, ProposalKernel::uniform(inst.n())},
          {kLocal, ProposalKernel::local(inst.n())}};
}

QaoaParameters random_parameters(int p, Rng& rng) {
  std::vector<double> betas(p), gammas(p);
  for (int l = 0; l < p; ++l) {
    betas[l] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    gammas[l] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
  return {betas, gammas};
}

Outcome spectral_oracle() {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 4;
    const std::uint64_t seed = instance_seed(0, n, i);
    const auto inst = generate_instance(n, seed);
    const BoltzmannTarget target(inst, kSweepTemperature);
    for (const auto& [name, kernel] : sweep_kernels(inst, seed, kSweepTemperature)) {
      const auto q = exact_q_matrix(kernel);
      const double ours = spectral_gap(target, q);
      const double reference = oracle::gap_nonsymmetric(oracle::metropolis_matrix(inst, kSweepTemperature, q.q));
      worst = std::max(worst, std::abs(ours - reference));
    }
  }
  return {worst <= 1e-8, "max |delta - delta_oracle| = " + fmt(worst) + " over 20 instances x 4 kernels"};
}

Outcome circuit_correctness() {
  Rng rng(2024);
  double dense = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto inst = generate_instance(n, 500 + 10 * n + trial);
      const auto table = make_phase_table(inst);
      const auto params = random_parameters(1 + trial % 5, rng);
      const Eigen::MatrixXcd diff = symmetric_qaoa_unitary(params, table) - oracle::dense_vtv(inst, params, table.alpha);
      dense = std::max(dense, diff.cwiseAbs().maxCoeff());
    }
  }
  double symmetry = 0.0;
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto table = make_phase_table(generate_instance(n, 700 + 10 * n + trial));
      const Eigen::MatrixXcd u = symmetric_qaoa_unitary(random_parameters(1 + trial % 5, rng), table);
      symmetry = std::max(symmetry, (u - u.transpose()).cwiseAbs().maxCoeff());
    }
  }
  return {dense <= 1e-9 && symmetry <= 1e-10,
          "max |U - dense V^T V| = " + fmt(dense) + " (n<=4), max |U - U^T| = " + fmt(symmetry) + " (n<=6)"};
}

Outcome detailed_balance() {
  double column = 0.0, residual = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 5;
    const std::uint64_t seed = instance_seed(1, n, i);
    const auto inst = generate_instance(n, seed);
    const BoltzmannTarget target(inst, kSweepTemperature);
    for (const auto& [name, kernel] : sweep_kernels(inst, seed, kSweepTemperature)) {
      const auto p = build_transition_matrix(target, exact_q_matrix(kernel));
      column = std::max(column, (p.p.colwise().sum().array() - 1.0).abs().maxCoeff());
      residual = std::max(residual, verify_detailed_balance(target, p));
    }
  }
  return {column <= 1e-10 && residual <= 1e-9,
          "max column-sum error = " + fmt(column) + ", max log balance residual = " + fmt(residual)};
}

Outcome alpha_closed_form() {
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto inst = generate_instance(n, 40 + s);
      const double reference = oracle::mixer_hamiltonian(n).norm() / oracle::problem_hamiltonian(inst).norm();
      worst = std::max(worst, std::abs(alpha_norm(inst) - reference));
    }
  }
  return {worst <= 1e-12, "max |alpha - ||H_mix||_F / ||H_prob||_F| = " + fmt(worst)};
}

// Shared by the sweep-based criteria.
struct SweepData {
  std::vector<ExperimentRecord> records;
  std::vector<ScalingFit> fits;
  std::vector<WinFraction> wins;
  std::vector<SizeSummary> summary;
};

const SweepData& desk_sweep() {
  static const SweepData data = [] {
    SweepData d;
    d.records = run_spectral_sweep(SweepSpec{}, g_options);
    d.fits = fit_scaling(d.records);
    d.wins = win_fraction(d.records);
    d.summary = summarize_by_size(d.records);
    return d;
  }();
  return data;
}

const ScalingFit& fit_of(const std::vector<ScalingFit>& fits, const std::string& label) {
  for (const auto& f : fits)
    if (f.proposal == label) return f;
  throw std::runtime_error("no fit for " + label);
}

Outcome scaling_ratios() {
  const auto& fits = desk_sweep().fits;
  const auto& opt = fit_of(fits, kOptimized);
  const auto& rnd = fit_of(fits, kRandom);
  std::string detail = "k_uniform/k_optimized = " + fmt(opt.ratio_to_uniform) + " +/- " + fmt(opt.ratio_uncertainty, 2) +
                       ", k_uniform/k_random = " + fmt(rnd.ratio_to_uniform) + " +/- " + fmt(rnd.ratio_uncertainty, 2);
  for (const auto& f : fits) detail += "; k_" + f.proposal + " = " + fmt(f.k);
  const bool pass = opt.ratio_to_uniform >= 1.5 && opt.ratio_to_uniform <= 2.3 && rnd.ratio_to_uniform >= 0.90 &&
                    rnd.ratio_to_uniform <= 1.25;
  return {pass, detail};
}

Outcome win_fraction_large_n() {
  bool pass = true;
  std::string detail;
  for (const auto& w : desk_sweep().wins) {
    if (w.n < 7) continue;
    pass = pass && w.vs_all >= 0.8;
    detail += (detail.empty() ? "" : ", ") + std::string("n=") + std::to_string(w.n) + ": " + fmt(w.vs_all, 3);
  }
  return {pass, "fraction beating all three: " + detail};
}

Outcome sample_count_scaling() {
  const auto records = run_m_sweep(SweepSpec{}, {8, 32, 128, 0}, g_options);
  const auto fits = fit_scaling(records);
  const auto& k8 = fit_of(fits, m_sweep_label(8));
  const auto& k32 = fit_of(fits, m_sweep_label(32));
  const auto& k128 = fit_of(fits, m_sweep_label(128));
  const auto& kinf = fit_of(fits, m_sweep_label(0));
  const double sigma = k32.k_uncertainty + kinf.k_uncertainty;
  const bool pass = k8.k >= k32.k && k32.k >= kinf.k - sigma && k8.k > kinf.k;
  return {pass, "k(8) = " + fmt(k8.k) + " +/- " + fmt(k8.k_uncertainty, 2) + ", k(32) = " + fmt(k32.k) + " +/- " +
                    fmt(k32.k_uncertainty, 2) + ", k(128) = " + fmt(k128.k) + ", k(inf) = " + fmt(kinf.k) + " +/- " +
                    fmt(kinf.k_uncertainty, 2)};
}

std::map<int, double> mean_theta_by(const std::vector<ThetaStudyRecord>& rows, bool by_depth) {
  std::map<int, std::pair<double, int>> acc;
  for (const auto& r : rows) {
    if (r.status != "ok") continue;
    auto& [sum, count] = acc[by_depth ? r.p : r.n];
    sum += r.theta_star;
    ++count;
  }
  std::map<int, double> out;
  for (const auto& [key, v] : acc) out[key] = v.first / v.second;
  return out;
}

const std::vector<ThetaStudyRecord>& depth_study() {
  static const auto rows = [] {
    SweepSpec spec;
    spec.instances_per_size = 20;
    return run_theta_study_depths(spec, 5, {1, 2, 3, 4, 5, 6, 7, 8, 10}, g_options);
  }();
  return rows;
}

Outcome theta_star_study() {
  const auto by_size = mean_theta_by(run_theta_study_sizes(SweepSpec{}, g_options), false);
  bool pass = by_size.size() == 6;
  std::string detail = "<theta*> by n:";
  for (const auto& [n, m] : by_size) {
    pass = pass && m >= 0.2 && m <= 0.4;
    detail += " " + std::to_string(n) + ":" + fmt(m, 3);
  }
  std::vector<ThetaStudyRecord> fit_rows;
  for (const auto& r : depth_study())
    if (r.p <= 8) fit_rows.push_back(r);
  const auto fit = fit_inverse_depth(fit_rows);
  pass = pass && fit.a >= 1.2 && fit.a <= 1.7;
  detail += "; a = " + fmt(fit.a, 5) + " +/- " + fmt(fit.a_uncertainty, 2) + " over p = 1..8";
  return {pass, detail};
}

Outcome ar_estimator() {
  constexpr std::int64_t kSamples = 10000;
  constexpr int kReplicates = 100;
  int inside = 0;
  std::string detail;
  for (int i = 0; i < 10; ++i) {
    const std::uint64_t seed = instance_seed(2, 5, i);
    const BoltzmannTarget target(generate_instance(5, seed), kSweepTemperature);
    const double theta = 0.05 + 0.05 * i;
    const auto kernel = ProposalKernel::qaoa(target.instance, QaoaParameters::single(5, theta));
    const double exact = exact_ar(target, exact_q_matrix(kernel));
    // Spread of the estimator from independent replicates.
    std::vector<double> reps;
    for (int r = 0; r < kReplicates; ++r) reps.push_back(estimate_ar(target, kernel, kSamples, derive_seed({seed, 1u, std::uint64_t(r)})));
    double mean = 0.0;
    for (double v : reps) mean += v;
    mean /= kReplicates;
    double var = 0.0;
    for (double v : reps) var += (v - mean) * (v - mean);
    const double se = std::sqrt(var / (kReplicates - 1));
    const double estimate = estimate_ar(target, kernel, kSamples, seed);
    const double z = se > 0 ? std::abs(estimate - exact) / se : (estimate == exact ? 0.0 : INFINITY);
    if (z <= 3.0) ++inside;
    detail += (detail.empty() ? "" : " ") + fmt(z, 2);
  }
  return {inside == 10, std::to_string(inside) + "/10 within 3 SE; |estimate - exact| / SE: " + detail};
}

double exact_magnetization(const SpinGlassInstance& inst, double t) {
  const auto mu = oracle::boltzmann(inst, t);
  long double m = 0.0L;
  for (std::uint64_t z = 0; z < mu.size(); ++z) {
    const auto s = oracle::spins(z, inst.n());
    long double sum = 0.0L;
    for (int v : s) sum += v;
    m += mu[z] * sum / inst.n();
  }
  return static_cast<double>(m);
}

Outcome magnetization_estimate() {
  const auto inst = generate_instance(10, instance_seed(0, 10, 0));
  const double exact = exact_magnetization(inst, 1.0);
  int wins = 0;
  std::optional<Outcome> first;
  for (std::uint64_t master = 0; master < 10; ++master) {
    MagnetizationSpec spec;
    spec.master_seed = master;
    spec.proposals = {kOptimized, kUniform};
    const auto result = run_magnetization(inst, spec, g_options);
    const auto& opt = result.find(kOptimized).estimate;
    const auto& uni = result.find(kUniform).estimate;
    const double opt_err = std::abs(opt.mean.back() - exact);
    const double uni_err = std::abs(uni.mean.back() - exact);
    if (opt_err <= uni_err) ++wins;
    if (!first) {
      const double se = opt.standard_error.back();
      first = Outcome{opt_err <= 3.0 * se, "seed 0: |<m> - exact| = " + fmt(opt_err) + " vs 3 SE = " + fmt(3.0 * se) +
                                               " (exact " + fmt(exact) + ", theta* " +
                                               fmt(result.search ? result.search->theta_star : kNaN) + ")"};
    }
  }
  return {first->pass && wins >= 7, first->detail + "; optimized error <= uniform error in " + std::to_string(wins) + "/10 seeds"};
}

Outcome stationarity() {
  constexpr double kTemperature = 1.0;
  constexpr std::int64_t kSteps = 1000000;
  int passed = 0, total = 0;
  std::string detail;
  for (int n = 3; n <= 5; ++n) {
    const std::uint64_t seed = instance_seed(3, n, 0);
    const auto inst = generate_instance(n, seed);
    const BoltzmannTarget target(inst, kTemperature);
    const auto mu_ld = oracle::boltzmann(inst, kTemperature);
    Eigen::VectorXd mu(static_cast<Eigen::Index>(mu_ld.size()));
    for (std::size_t z = 0; z < mu_ld.size(); ++z) mu[z] = static_cast<double>(mu_ld[z]);
    for (const auto& [name, kernel] : sweep_kernels(inst, seed, kTemperature)) {
      const auto q = exact_q_matrix(kernel);
      const double delta = oracle::gap_nonsymmetric(oracle::metropolis_matrix(inst, kTemperature, q.q));
      // Keep roughly independent draws: correlations decay like (1 - delta)^lag.
      const auto thin = static_cast<std::int64_t>(std::ceil(std::log(100.0) / std::max(delta, 1e-6)));
      const auto trace = run_chain(target, kernel, kSteps, {0}, derive_seed({seed, std::uint64_t(total)}));
      std::vector<long> counts(mu.size(), 0);
      for (std::int64_t s = thin - 1; s < kSteps; s += thin) ++counts[trace.states[s]];
      const auto test = oracle::chi_square_test(counts, mu, 0.999);
      ++total;
      if (test.passes()) ++passed;
      detail += " n" + std::to_string(n) + "/" + name + ":" + fmt(test.statistic, 3) + "<" + fmt(test.critical, 3);
    }
  }
  return {passed == total, std::to_string(passed) + "/" + std::to_string(total) + " chains pass;" + detail};
}

// Further properties of the desk-scale data, reported alongside.
Outcome optimized_dominates_uniform() {
  std::map<int, std::map<std::string, double>> mean;
  for (const auto& s : desk_sweep().summary) mean[s.n][s.proposal] = s.mean;
  bool pass = true;
  std::string detail;
  for (const auto& [n, by] : mean) {
    if (n < 5) continue;
    pass = pass && by.at(kOptimized) > by.at(kUniform);
    detail += " n=" + std::to_string(n) + ": " + fmt(by.at(kOptimized), 3) + " vs " + fmt(by.at(kUniform), 3);
  }
  return {pass, "<delta> optimized vs uniform:" + detail};
}

Outcome fit_quality() {
  const auto& fits = desk_sweep().fits;
  const double u = fit_of(fits, kUniform).r_squared, r = fit_of(fits, kRandom).r_squared;
  return {u >= 0.95 && r >= 0.95, "R^2 uniform = " + fmt(u) + ", random = " + fmt(r)};
}

Outcome depth_halving() {
  const auto by_depth = mean_theta_by(depth_study(), true);
  const double ratio = by_depth.at(5) / by_depth.at(10);
  return {ratio >= 1.6 && ratio <= 2.4, "<theta*>(p=5) / <theta*>(p=10) = " + fmt(ratio)};
}

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  std::vector<std::string> expected_failures;
  g_options.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::strcmp(argv[i], "--only") == 0) only = argv[i + 1];
    if (std::strcmp(argv[i], "--workers") == 0) g_options.workers = std::atoi(argv[i + 1]);
    if (std::strcmp(argv[i], "--expect-fail") == 0) expected_failures.emplace_back(argv[i + 1]);
  }

  const std::vector<Criterion> criteria{
      {"spectral-oracle", spectral_oracle},
      {"circuit-correctness", circuit_correctness},
      {"detailed-balance", detailed_balance},
      {"alpha-closed-form", alpha_closed_form},
      {"scaling-exponent-ratios", scaling_ratios},
      {"win-fraction-large-n", win_fraction_large_n},
      {"sample-count-scaling", sample_count_scaling},
      {"theta-star-size-and-depth", theta_star_study},
      {"ar-estimator", ar_estimator},
      {"magnetization", magnetization_estimate},
      {"stationarity", stationarity},
      {"property-optimized-dominates-uniform", optimized_dominates_uniform},
      {"property-fit-r-squared", fit_quality},
      {"property-depth-halving", depth_halving},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && c.name.find(only) == std::string::npos) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool expected = std::find(expected_failures.begin(), expected_failures.end(), c.name) != expected_failures.end();
    if (!outcome.pass && !expected) ++failures;
    std::printf("%s %s (%.1f s)%s: %s\n", outcome.pass ? "PASS" : "FAIL", c.name.c_str(), seconds,
                expected ? " [known red]" : "", outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
