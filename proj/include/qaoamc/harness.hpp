#pragma once

#include "qaoamc/ising.hpp"
#include "qaoamc/mcmc.hpp"
#include "qaoamc/theta_optimizer.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace qaoamc {

// Proposal labels used in every CSV.
inline constexpr const char* kOptimized = "optimized";
inline constexpr const char* kRandom = "random";
inline constexpr const char* kUniform = "uniform";
inline constexpr const char* kLocal = "local";

/// Configuration of an instance sweep. Mirrors the JSON accepted by --config:
/// {"sizes": [...], "instances_per_size": 50, "temperature": 0.1, "p": 5,
///  "theta_max": 0.3, "proposals": ["optimized", ...], "master_seed": 0,
///  "grid_points": 64, "refine_tol": 1e-4}
struct SweepSpec {
  std::vector<int> sizes{3, 4, 5, 6, 7, 8};
  int instances_per_size = 50;
  double temperature = 0.1;
  int p = 5;
  double theta_max = 0.3;
  std::vector<std::string> proposals{kOptimized, kRandom, kUniform, kLocal};
  std::uint64_t master_seed = 0;
  int grid_points = 64;
  double refine_tol = 1e-4;

  /// Unknown keys are rejected; missing keys keep their defaults.
  static SweepSpec from_json(const std::string& text);
  void validate(int size_cap = kSpectralEnumerationCap) const;
  ThetaSearchConfig exact_search() const;
};

struct RunOptions {
  int workers = 1;
  bool timing = false;  ///< fill wall_time; off keeps CSV output byte-reproducible
};

/// Seed of instance `index` at size n. Shared by every command, so the same
/// master seed always yields the same instance set.
std::uint64_t instance_seed(std::uint64_t master_seed, int n, int index);

/// Seed of the frozen theta of the "random" circuit for an instance.
std::uint64_t random_theta_seed(std::uint64_t instance_seed);

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// One (instance, proposal) row.
struct ExperimentRecord {
  int n = 0;
  std::uint64_t instance_seed = 0;
  std::string proposal;
  std::optional<double> theta;       ///< circuit angle used for delta, if any
  double delta = kNaN;
  double exact_ar = kNaN;
  std::optional<double> theta_star;  ///< search result (optimized rows)
  bool boundary = false;
  double wall_time = 0.0;
  std::string status = "ok";
};

/// Optimized/random/uniform/local rows for one instance, in spec.proposals
/// order. Failures are recorded in the row's status; nothing throws for a
/// degenerate instance.
std::vector<ExperimentRecord> evaluate_instance(const SpinGlassInstance& instance, const SweepSpec& spec,
                                                bool timing = false);

std::vector<ExperimentRecord> run_spectral_sweep(const SweepSpec& spec, const RunOptions& options = {});

/// Optimized rows labelled "optimized_M<M>" (sampled search with M AR samples)
/// or "optimized_Minf" (M = 0, exact search), plus uniform and random
/// reference rows, on the instance set of `spec`.
std::vector<ExperimentRecord> run_m_sweep(const SweepSpec& spec, const std::vector<std::int64_t>& m_values,
                                          const RunOptions& options = {});
std::string m_sweep_label(std::int64_t m);

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_records_csv(std::istream& in);

struct SizeSummary {
  std::string proposal;
  int n = 0;
  int count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double standard_error = 0.0;
};

/// Mean/std of delta per (proposal, n) over rows with status "ok".
std::vector<SizeSummary> summarize_by_size(const std::vector<ExperimentRecord>& records);

struct ScalingFit {
  std::string proposal;
  double k = kNaN;
  double k_uncertainty = kNaN;
  double intercept = kNaN;
  double r_squared = kNaN;
  double ratio_to_uniform = kNaN;
  double ratio_uncertainty = kNaN;
  int sizes = 0;
  std::string status = "ok";
};

/// Ordinary least squares of log2 <delta> = -k n + c. The k uncertainty is
/// the standard error of the slope from the fit covariance.
ScalingFit fit_log2_scaling(const std::vector<int>& sizes, const std::vector<double>& mean_delta);

/// One fit per proposal, with ratio k_uniform / k when uniform rows exist.
std::vector<ScalingFit> fit_scaling(const std::vector<ExperimentRecord>& records);

void write_summary_csv(std::ostream& out, const std::vector<SizeSummary>& summary);
void write_fits_csv(std::ostream& out, const std::vector<ScalingFit>& fits);

struct WinFraction {
  int n = 0;
  int instances = 0;
  double vs_uniform = 0.0;
  double vs_local = 0.0;
  double vs_random = 0.0;
  double vs_all = 0.0;
};

/// Fraction of instances per n where the optimized delta strictly exceeds each
/// competitor, and all three at once. Throws if an instance lacks a kernel.
std::vector<WinFraction> win_fraction(const std::vector<ExperimentRecord>& records,
                                      const std::string& optimized_label = kOptimized);
void write_win_fraction_csv(std::ostream& out, const std::vector<WinFraction>& wins);

struct ThetaStudyRecord {
  std::string mode;  ///< "size" or "depth"
  int n = 0;
  int p = 0;
  std::uint64_t instance_seed = 0;
  double theta_star = kNaN;
  double ar = kNaN;
  bool boundary = false;
  int evaluations = 0;
  std::string status = "ok";
};

/// Upper end of the search used when measuring theta* itself: twice the
/// depth's theta_max, so the first minimum is not clipped by the range.
double study_theta_range(int p);

/// theta* per instance over spec.sizes at depth spec.p.
std::vector<ThetaStudyRecord> run_theta_study_sizes(const SweepSpec& spec, const RunOptions& options = {});
/// theta* per instance at fixed n over each depth.
std::vector<ThetaStudyRecord> run_theta_study_depths(const SweepSpec& spec, int n, const std::vector<int>& depths,
                                                     const RunOptions& options = {});

struct InverseDepthFit {
  double a = kNaN;
  double a_uncertainty = kNaN;
  std::vector<int> depths;
  std::vector<double> mean_theta;
};

/// Least squares of <theta*>(p) = a / p over per-depth means.
InverseDepthFit fit_inverse_depth(const std::vector<ThetaStudyRecord>& records);

void write_theta_study_csv(std::ostream& out, const std::vector<ThetaStudyRecord>& records);

struct MagnetizationSpec {
  double temperature = 1.0;
  std::int64_t ar_samples = 1000;  ///< M for the sampled theta search
  int chains = 10;
  std::int64_t steps = 1000;
  std::int64_t burn_in = 0;
  int p = 5;
  double theta_max = 0.3;
  int grid_points = 64;
  double refine_tol = 1e-4;
  std::vector<std::string> proposals{kOptimized, kRandom, kUniform, kLocal};
  std::uint64_t master_seed = 0;
};

struct MagnetizationSeries {
  std::string proposal;
  std::optional<double> theta;
  MagnetizationEstimate estimate;
};

struct MagnetizationResult {
  double exact = kNaN;
  std::optional<OptimizedTheta> search;
  std::vector<MagnetizationSeries> series;
  std::string status = "ok";

  const MagnetizationSeries& find(const std::string& proposal) const;
};

/// Sampled theta search, then `chains` chains per proposal from uniformly
/// random starts (the same starts for every proposal).
MagnetizationResult run_magnetization(const SpinGlassInstance& instance, const MagnetizationSpec& spec,
                                      const RunOptions& options = {});

void write_magnetization_csv(std::ostream& out, const MagnetizationResult& result);

/// run-chain output: step, state_index, energy, magnetization, acceptance_prob,
/// accepted, chain_id, seed.
void write_trace_csv(std::ostream& out, const ChainTrace& trace, int chain_id, std::uint64_t seed,
                     bool header = true);

}  // namespace qaoamc
