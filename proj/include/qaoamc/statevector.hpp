#pragma once

#include "qaoamc/ising.hpp"
#include "qaoamc/rng.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qaoamc {

template <typename Scalar = double>
using Statevector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Raised when alpha (and therefore the problem layer) is undefined because
/// every coefficient of the instance is zero.
class DegenerateHamiltonian : public std::invalid_argument {
 public:
  DegenerateHamiltonian() : std::invalid_argument("degenerate Hamiltonian: all coefficients are zero") {}
};

/// Angles of the depth-p alternating circuit V = U_C(g_p)U_B(b_p)...U_C(g_1)U_B(b_1)
/// with U_B(b) = exp(-i b H_mix) and U_C(g) = exp(-i g alpha H_prob).
class QaoaParameters {
 public:
  QaoaParameters(std::vector<double> betas, std::vector<double> gammas);

  /// The single-parameter circuit U(theta).
  ///
  /// theta is a rotation-gate angle, RX(theta) = exp(-i theta X / 2), so every
  /// beta and gamma is set to theta / 2. theta_max = 0.3 at p = 5 and
  /// theta* ≈ 1.45558 / p hold in this convention; with bare exp(-i theta H)
  /// layers the first AR minimum sits at half those values.
  static QaoaParameters single(int p, double theta);

  int p() const noexcept { return static_cast<int>(betas_.size()); }
  const std::vector<double>& betas() const noexcept { return betas_; }
  const std::vector<double>& gammas() const noexcept { return gammas_; }
  /// theta when built by single(); betas and gammas are then all theta / 2.
  const std::optional<double>& single_theta() const noexcept { return single_theta_; }

 private:
  std::vector<double> betas_;
  std::vector<double> gammas_;
  std::optional<double> single_theta_;
};

/// Diagonal of alpha * H_prob in the computational basis: entry z is
/// alpha * E(x(z)).
struct PhaseTable {
  double alpha = 0.0;
  Eigen::VectorXd entries;

  int n() const noexcept;
};

/// ||H_mix||_F / ||H_prob||_F. Distinct Pauli strings are Frobenius-orthogonal,
/// so this reduces to sqrt(n / (sum J^2 + sum h^2)).
double alpha_norm(const SpinGlassInstance& instance);

/// For an all-zero instance the table is all zeros and alpha is left at 0.
PhaseTable make_phase_table(const SpinGlassInstance& instance, int cap = kDefaultEnumerationCap);

/// Applies exp(-i beta X) to every qubit of each column of `states`.
/// Works on a single statevector or on a matrix whose columns are states.
template <typename Derived>
void apply_mixer_layer(const Eigen::MatrixBase<Derived>& states_, typename Derived::RealScalar beta) {
  using Complex = typename Derived::Scalar;
  auto& states = const_cast<Eigen::MatrixBase<Derived>&>(states_);
  const Eigen::Index dim = states.rows();
  const auto c = std::cos(beta);
  const auto s = std::sin(beta);
  // c a - i s b, written out to avoid the generic complex product.
  auto rotate = [c, s](const Complex& a, const Complex& b) {
    return Complex(c * a.real() + s * b.imag(), c * a.imag() - s * b.real());
  };
  for (Eigen::Index col = 0; col < states.cols(); ++col) {
    for (Eigen::Index stride = 1; stride < dim; stride <<= 1) {
      for (Eigen::Index block = 0; block < dim; block += 2 * stride) {
        for (Eigen::Index i = block; i < block + stride; ++i) {
          const Complex a = states.coeff(i, col);
          const Complex b = states.coeff(i + stride, col);
          states.coeffRef(i, col) = rotate(a, b);
          states.coeffRef(i + stride, col) = rotate(b, a);
        }
      }
    }
  }
}

/// Multiplies amplitude z of every column by exp(-i gamma phases[z]).
template <typename Derived, typename PhaseDerived>
void apply_problem_layer(const Eigen::MatrixBase<Derived>& states_, typename Derived::RealScalar gamma,
                         const Eigen::MatrixBase<PhaseDerived>& phases) {
  using Complex = typename Derived::Scalar;
  auto& states = const_cast<Eigen::MatrixBase<Derived>&>(states_);
  if (phases.size() != states.rows())
    throw std::invalid_argument("phase table length does not match the statevector");
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> factors(phases.size());
  for (Eigen::Index z = 0; z < phases.size(); ++z)
    factors[z] = std::polar(typename Derived::RealScalar(1), -gamma * phases.coeff(z));
  states = factors.asDiagonal() * states;
}

/// Applies U = V^T V to every column of `states`. Transposition reverses the
/// layer order and needs no conjugation, because both exp(-i b X) and the
/// diagonal problem layer are symmetric matrices. Layer order (first applied
/// first): B1 C1 ... Bp Cp | Cp Bp ... C1 B1.
template <typename Derived>
void apply_symmetric_qaoa(const Eigen::MatrixBase<Derived>& states, const QaoaParameters& params,
                          const PhaseTable& table) {
  const int p = params.p();
  for (int layer = 0; layer < p; ++layer) {
    apply_mixer_layer(states, params.betas()[layer]);
    apply_problem_layer(states, params.gammas()[layer], table.entries);
  }
  for (int layer = p - 1; layer >= 0; --layer) {
    apply_problem_layer(states, params.gammas()[layer], table.entries);
    apply_mixer_layer(states, params.betas()[layer]);
  }
}

Statevector<double> basis_state(int n, SpinConfiguration x);

/// U|x> for the symmetric circuit.
Statevector<double> apply_symmetric_qaoa(SpinConfiguration x, const QaoaParameters& params,
                                         const PhaseTable& table);

/// Full 2^n x 2^n matrix of U; column x is U|x>.
Eigen::MatrixXcd symmetric_qaoa_unitary(const QaoaParameters& params, const PhaseTable& table);

template <typename Derived>
Eigen::Matrix<typename Derived::RealScalar, Eigen::Dynamic, Derived::ColsAtCompileTime>
measure_probabilities(const Eigen::MatrixBase<Derived>& states) {
  return states.cwiseAbs2();
}

/// U = V^T V prepared for repeated application to basis states: phase
/// factors are precomputed, the two middle problem layers are merged and the
/// first mixer layer is written in closed form.
class SymmetricCircuit {
 public:
  SymmetricCircuit(const QaoaParameters& params, const PhaseTable& table);

  int n() const noexcept { return n_; }
  /// |<x'|U|x>|^2 over all x'.
  Eigen::VectorXd probabilities(SpinConfiguration x) const;

 private:
  int n_;
  std::vector<double> betas_;  // mixer angles in application order, 2p of them
  // Problem layer k sits between mixers k and k + 1 (2p - 1 layers).
  std::vector<Eigen::VectorXd> cos_;
  std::vector<Eigen::VectorXd> sin_;
};

/// Inverse-CDF draw from a probability vector. One uniform01() per call.
StateIndex sample_index(const Eigen::Ref<const Eigen::VectorXd>& probabilities, Rng& rng);

inline SpinConfiguration sample(const Statevector<double>& state, Rng& rng) {
  return {sample_index(measure_probabilities(state), rng)};
}

}  // namespace qaoamc
