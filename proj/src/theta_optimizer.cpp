#include "qaoamc/theta_optimizer.hpp"

#include "qaoamc/mcmc.hpp"
#include "qaoamc/spectral.hpp"
#include "qaoamc/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

namespace qaoamc {

double theta_max_for_depth(int p) {
  if (p < 1) throw std::invalid_argument("depth p must be >= 1");
  if (p == 5) return 0.3;
  return kThetaDepthCoefficient / p;
}

double theta_grid_point(const ThetaSearchConfig& config, int i) {
  return config.theta_max * (0.01 + 0.99 * static_cast<double>(i) / (config.grid_points - 1));
}

namespace {

struct Sample {
  double theta;
  double ar;
};

struct Bracket {
  std::size_t lo, mid, hi;
};

// First grid triple with the middle value strictly below both neighbours.
std::optional<Bracket> first_strict_minimum(const std::vector<Sample>& grid) {
  for (std::size_t i = 1; i + 1 < grid.size(); ++i)
    if (grid[i].ar < grid[i - 1].ar && grid[i].ar < grid[i + 1].ar) return Bracket{i - 1, i, i + 1};
  return std::nullopt;
}

// Noise level of a grid of independent estimates of a smooth curve, from the
// second differences in [first, last). Second differences remove the curve to
// leading order; for i.i.d. noise of scale sigma they have scale sqrt(6) sigma.
// Median absolute value / 0.6745 keeps curvature terms from dominating.
double grid_noise(const std::vector<Sample>& grid, std::size_t first, std::size_t last) {
  first = std::max<std::size_t>(first, 1);
  last = std::min(last, grid.size() - 1);
  std::vector<double> second;
  for (std::size_t i = first; i < last; ++i)
    second.push_back(std::abs(grid[i - 1].ar - 2.0 * grid[i].ar + grid[i + 1].ar));
  if (second.empty()) return 0.0;
  std::nth_element(second.begin(), second.begin() + static_cast<std::ptrdiff_t>(second.size() / 2), second.end());
  return second[second.size() / 2] / 0.6745 / std::sqrt(6.0);
}

// First local minimum of a noisy grid that is resolved above the noise. The
// running minimum m is accepted once two consecutive later points lie more
// than 3 sigma above it, sigma being the noise measured in a window around m
// (the AR noise is larger on the steep part of the curve), and some earlier
// point is 3 sigma above it too. The bracket is m and its grid neighbours.
std::optional<Bracket> first_resolved_minimum(const std::vector<Sample>& grid) {
  constexpr std::size_t kHalfWindow = 6;
  std::size_t m = 0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (grid[i].ar < grid[m].ar) {
      m = i;
      continue;
    }
    if (m == 0) continue;
    const double threshold =
        3.0 * grid_noise(grid, m > kHalfWindow ? m - kHalfWindow : 0, m + kHalfWindow + 1);
    if (grid[i].ar <= grid[m].ar + threshold || grid[i + 1].ar <= grid[m].ar + threshold) continue;
    for (std::size_t lo = m; lo-- > 0;)
      if (grid[lo].ar > grid[m].ar + threshold) return Bracket{m - 1, m, m + 1};
  }
  return std::nullopt;
}

// Golden-section search on [lo, hi] whose interior point `mid` is already known
// to lie below both ends.
Sample golden_section(const std::function<double(double)>& f, double lo, double hi, Sample mid, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  Sample best = mid;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (const Sample s : {Sample{c, fc}, Sample{d, fd}})
    if (s.ar < best.ar) best = s;
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
      if (fc < best.ar) best = {c, fc};
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
      if (fd < best.ar) best = {d, fd};
    }
  }
  return best;
}

// Brent's localmin started from a bracketed point with known value. Never
// evaluates two points closer than `tol`, which keeps noisy objectives from
// chasing sampling fluctuations below that scale.
Sample brent(const std::function<double(double)>& f, double a, double b, Sample start, double tol) {
  constexpr double kCGold = 0.3819660112501051;
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  double x = start.theta, w = x, v = x;
  double fx = start.ar, fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol1 = sqrt_eps * std::abs(x) + tol;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) break;
    bool golden = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p; else q = -q;
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = x < m ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x < m ? b : a) - x;
      d = kCGold * e;
    }
    const double u = x + (std::abs(d) >= tol1 ? d : (d > 0.0 ? tol1 : -tol1));
    const double fu = f(u);
    if (fu <= fx) {
      (u < x ? b : a) = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx};
}

}  // namespace

OptimizedTheta minimize_first_local(const std::function<double(double, int)>& objective,
                                    const ThetaSearchConfig& config) {
  if (!(config.theta_max > 0.0)) throw std::invalid_argument("theta_max must be positive");
  if (config.grid_points < 8) throw std::invalid_argument("theta search needs at least 8 grid points");
  if (!(config.refine_tol > 0.0)) throw std::invalid_argument("refine_tol must be positive");

  OptimizedTheta result;
  result.mode = config.mode;
  int evaluations = 0;
  auto f = [&](double theta) { return objective(theta, evaluations++); };

  std::vector<Sample> grid;
  grid.reserve(static_cast<std::size_t>(config.grid_points));
  for (int i = 0; i < config.grid_points; ++i) {
    const double theta = theta_grid_point(config, i);
    grid.push_back({theta, f(theta)});
  }
  const auto [lowest, highest] =
      std::minmax_element(grid.begin(), grid.end(), [](Sample l, Sample r) { return l.ar < r.ar; });
  if (highest->ar - lowest->ar < config.flatness_tol)
    throw DegenerateLandscape("degenerate AR landscape: AR is flat over (0, theta_max]");

  const auto bracket = config.mode == SearchMode::Exact ? first_strict_minimum(grid) : first_resolved_minimum(grid);
  if (!bracket) {
    result.theta_star = lowest->theta;
    result.ar_at_star = lowest->ar;
    result.boundary = true;
    result.evaluations = evaluations;
    return result;
  }

  const Sample best = config.mode == SearchMode::Exact
                          ? golden_section(f, grid[bracket->lo].theta, grid[bracket->hi].theta,
                                           grid[bracket->mid], config.refine_tol)
                          : brent(f, grid[bracket->lo].theta, grid[bracket->hi].theta, grid[bracket->mid],
                                  5.0 * config.refine_tol / 4.0);
  result.theta_star = best.theta;
  result.ar_at_star = best.ar;
  result.evaluations = evaluations;
  return result;
}

double exact_ar_at(const BoltzmannTarget& target, int p, double theta) {
  const PhaseTable table = make_phase_table(target.instance, kSpectralEnumerationCap);
  return exact_ar(target, {measure_probabilities(symmetric_qaoa_unitary(QaoaParameters::single(p, theta), table))});
}

OptimizedTheta find_theta_star(const BoltzmannTarget& target, const ThetaSearchConfig& config) {
  if (target.instance.is_zero())
    throw DegenerateLandscape("degenerate AR landscape: all energies equal, AR is identically 1");
  const auto table = std::make_shared<const PhaseTable>(make_phase_table(target.instance));

  if (config.mode == SearchMode::Exact) {
    if (target.instance.n() > kSpectralEnumerationCap)
      throw EnumerationInfeasible(target.instance.n(), kSpectralEnumerationCap);
    return minimize_first_local(
        [&](double theta, int) {
          const auto u = symmetric_qaoa_unitary(QaoaParameters::single(config.p, theta), *table);
          return exact_ar(target, {measure_probabilities(u)});
        },
        config);
  }

  if (config.samples < 1) throw std::invalid_argument("sampled theta search needs M >= 1");
  return minimize_first_local(
      [&](double theta, int k) {
        const auto kernel = ProposalKernel::qaoa(table, QaoaParameters::single(config.p, theta));
        return estimate_ar(target, kernel, config.samples,
                           derive_seed({config.seed, static_cast<std::uint64_t>(k)}));
      },
      config);
}

}  // namespace qaoamc
