#pragma once

#include "qaoamc/ising.hpp"
#include "qaoamc/proposals.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace qaoamc {

/// Coefficient a in theta* ≈ a / p.
inline constexpr double kThetaDepthCoefficient = 1.45558;

/// Upper end of the theta search for depth p: a/p, except p = 5 which is
/// pinned to 0.3.
double theta_max_for_depth(int p);

/// AR is constant (to flatness_tol) over the whole search grid, so there is no
/// minimum to find. Callers fall back to theta_max / 2.
class DegenerateLandscape : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SearchMode { Exact, Sampled };

struct ThetaSearchConfig {
  double theta_max = 0.3;
  int p = 5;
  SearchMode mode = SearchMode::Exact;
  std::int64_t samples = 1000;  ///< M, sampled mode only
  std::uint64_t seed = 0;       ///< sampled mode only
  int grid_points = 64;
  double refine_tol = 1e-4;
  double flatness_tol = 1e-6;
};

struct OptimizedTheta {
  double theta_star = 0.0;
  double ar_at_star = 1.0;
  int evaluations = 0;
  SearchMode mode = SearchMode::Exact;
  bool boundary = false;  ///< no interior local minimum on the grid
};

/// Grid point i of G: theta_max * (0.01 + 0.99 i / (G - 1)).
double theta_grid_point(const ThetaSearchConfig& config, int i);

/// Smallest positive local minimizer of AR(theta) on (0, theta_max].
///
/// The grid is scanned in increasing theta and the first strict interior
/// minimum brackets the search. Exact mode refines the bracket by golden
/// section down to refine_tol; sampled mode treats AR as noisy, evaluates every
/// point with a fresh chain seeded from (config.seed, evaluation index), and
/// refines with Brent's method down to a 5 * refine_tol bracket.
OptimizedTheta find_theta_star(const BoltzmannTarget& target, const ThetaSearchConfig& config);

/// Lower-level entry point over an arbitrary objective; `objective(theta, k)`
/// is called with a running evaluation index k.
OptimizedTheta minimize_first_local(const std::function<double(double, int)>& objective,
                                    const ThetaSearchConfig& config);

/// AR(theta) computed exactly for the single-parameter circuit.
double exact_ar_at(const BoltzmannTarget& target, int p, double theta);

}  // namespace qaoamc
