#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qaoamc {

using StateIndex = std::uint64_t;

/// Raised when an exact enumeration over 2^n states is requested for an n
/// above the configured cap.
class EnumerationInfeasible : public std::runtime_error {
 public:
  EnumerationInfeasible(int n, int cap)
      : std::runtime_error("enumeration infeasible: n=" + std::to_string(n) +
                           " exceeds cap " + std::to_string(cap)) {}
};

inline constexpr int kDefaultEnumerationCap = 20;

/// A classical spin configuration, stored as its computational-basis index.
///
/// Bit j (least significant first) maps to spin x_j = +1 when clear and
/// x_j = -1 when set. This matches Z|0> = +|0>, so the diagonal of the problem
/// Hamiltonian in the computational basis is exactly the classical energy.
struct SpinConfiguration {
  StateIndex index = 0;

  constexpr int spin(int j) const noexcept { return ((index >> j) & 1U) ? -1 : 1; }
  constexpr SpinConfiguration flipped(int j) const noexcept {
    return {index ^ (StateIndex{1} << j)};
  }
  friend constexpr bool operator==(SpinConfiguration, SpinConfiguration) = default;
};

/// All-to-all spin glass E(x) = -sum_{j>k} J_jk x_j x_k - sum_j h_j x_j.
///
/// Couplings are stored densely for j > k in row-major order
/// (1,0), (2,0), (2,1), (3,0), ... so pair (j,k) lives at j(j-1)/2 + k.
class SpinGlassInstance {
 public:
  SpinGlassInstance(int n, Eigen::VectorXd couplings, Eigen::VectorXd fields,
                    std::uint64_t seed = 0);

  /// Instance with all coefficients zero.
  static SpinGlassInstance zero(int n);

  int n() const noexcept { return n_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const Eigen::VectorXd& couplings() const noexcept { return couplings_; }
  const Eigen::VectorXd& fields() const noexcept { return fields_; }
  StateIndex dimension() const noexcept { return StateIndex{1} << n_; }

  static constexpr std::size_t pair_index(int j, int k) noexcept {
    return static_cast<std::size_t>(j) * (j - 1) / 2 + k;
  }
  /// J_jk for j != k (symmetric access).
  double coupling(int j, int k) const {
    return j > k ? couplings_[pair_index(j, k)] : couplings_[pair_index(k, j)];
  }
  bool is_zero() const noexcept {
    return couplings_.cwiseAbs().sum() == 0.0 && fields_.cwiseAbs().sum() == 0.0;
  }

 private:
  int n_;
  Eigen::VectorXd couplings_;
  Eigen::VectorXd fields_;
  std::uint64_t seed_;
};

/// Boltzmann distribution mu(x) ∝ exp(-E(x)/T) over an instance.
struct BoltzmannTarget {
  BoltzmannTarget(SpinGlassInstance inst, double temp) : instance(std::move(inst)), temperature(temp) {
    if (!(temperature > 0.0) || !std::isfinite(temperature))
      throw std::invalid_argument("temperature must be positive and finite");
  }
  SpinGlassInstance instance;
  double temperature;
};

/// Draws every J_jk (pair order as stored) followed by every h_j from the
/// standard normal of Rng(seed).
SpinGlassInstance generate_instance(int n, std::uint64_t seed);

double energy(const SpinGlassInstance& instance, SpinConfiguration config);

/// Energies of all 2^n configurations, indexed by basis state.
Eigen::VectorXd all_energies(const SpinGlassInstance& instance,
                             int cap = kDefaultEnumerationCap);

/// Natural log of mu over all configurations, normalized with log-sum-exp.
Eigen::VectorXd exact_log_distribution(const BoltzmannTarget& target,
                                       int cap = kDefaultEnumerationCap);
Eigen::VectorXd exact_distribution(const BoltzmannTarget& target,
                                   int cap = kDefaultEnumerationCap);

double magnetization(SpinConfiguration config, int n);

double exact_average_magnetization(const BoltzmannTarget& target,
                                   int cap = kDefaultEnumerationCap);

}  // namespace qaoamc
