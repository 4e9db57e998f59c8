#include "qaoamc/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace qaoamc {

QaoaParameters::QaoaParameters(std::vector<double> betas, std::vector<double> gammas)
    : betas_(std::move(betas)), gammas_(std::move(gammas)) {
  if (betas_.empty()) throw std::invalid_argument("QAOA depth p must be >= 1");
  if (betas_.size() != gammas_.size())
    throw std::invalid_argument("betas and gammas must both have length p");
}

QaoaParameters QaoaParameters::single(int p, double theta) {
  if (p < 1) throw std::invalid_argument("QAOA depth p must be >= 1");
  std::vector<double> angles(static_cast<std::size_t>(p), 0.5 * theta);
  QaoaParameters params(angles, angles);
  params.single_theta_ = theta;
  return params;
}

int PhaseTable::n() const noexcept {
  return std::countr_zero(static_cast<std::uint64_t>(entries.size()));
}

double alpha_norm(const SpinGlassInstance& instance) {
  const double denom = instance.couplings().squaredNorm() + instance.fields().squaredNorm();
  if (denom == 0.0) throw DegenerateHamiltonian();
  return std::sqrt(static_cast<double>(instance.n()) / denom);
}

PhaseTable make_phase_table(const SpinGlassInstance& instance, int cap) {
  PhaseTable table;
  if (instance.is_zero()) {
    // alpha * H_prob vanishes for any finite alpha; the circuit is mixer-only.
    if (instance.n() > cap) throw EnumerationInfeasible(instance.n(), cap);
    table.entries = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(instance.dimension()));
    return table;
  }
  table.alpha = alpha_norm(instance);
  table.entries = table.alpha * all_energies(instance, cap);
  return table;
}

Statevector<double> basis_state(int n, SpinConfiguration x) {
  Statevector<double> state = Statevector<double>::Zero(Eigen::Index{1} << n);
  state[static_cast<Eigen::Index>(x.index)] = 1.0;
  return state;
}

Statevector<double> apply_symmetric_qaoa(SpinConfiguration x, const QaoaParameters& params,
                                         const PhaseTable& table) {
  Statevector<double> state = basis_state(table.n(), x);
  apply_symmetric_qaoa(state, params, table);
  return state;
}

Eigen::MatrixXcd symmetric_qaoa_unitary(const QaoaParameters& params, const PhaseTable& table) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(table.entries.size(), table.entries.size());
  apply_symmetric_qaoa(u, params, table);
  return u;
}

namespace {

// Rotations on the qubits with stride below kTile are done tile by tile so
// the tile stays in cache; the remaining qubits take one pass each.
constexpr Eigen::Index kTile = Eigen::Index{1} << 11;

// exp(-i b X) on the qubit with the given stride, for amplitudes [begin, end).
// A compile-time stride lets the short inner loops of the low qubits unroll.
template <Eigen::Index Stride = 0>
void rotate_pairs(double* __restrict re, double* __restrict im, Eigen::Index begin, Eigen::Index end,
                  Eigen::Index stride, double c, double s) {
  if constexpr (Stride > 0) stride = Stride;
  for (Eigen::Index block = begin; block < end; block += 2 * stride) {
    for (Eigen::Index a = block; a < block + stride; ++a) {
      const Eigen::Index b = a + stride;
      const double ar = re[a], ai = im[a], br = re[b], bi = im[b];
      re[a] = c * ar + s * bi;
      im[a] = c * ai - s * br;
      re[b] = c * br + s * ai;
      im[b] = c * bi - s * ar;
    }
  }
}

// Multiplies by the diagonal phase (pc + i ps), then applies exp(-i b X) to
// every qubit.
void phase_then_mix(double* __restrict re, double* __restrict im, const double* pc, const double* ps,
                    Eigen::Index dim, double c, double s) {
  const Eigen::Index tile = std::min(dim, kTile);
  for (Eigen::Index t = 0; t < dim; t += tile) {
    for (Eigen::Index z = t; z < t + tile; ++z) {
      const double r = re[z], i = im[z];
      re[z] = r * pc[z] - i * ps[z];
      im[z] = r * ps[z] + i * pc[z];
    }
    if (tile >= 2) rotate_pairs<1>(re, im, t, t + tile, 1, c, s);
    if (tile >= 4) rotate_pairs<2>(re, im, t, t + tile, 2, c, s);
    if (tile >= 8) rotate_pairs<4>(re, im, t, t + tile, 4, c, s);
    for (Eigen::Index stride = 8; stride < tile; stride <<= 1) rotate_pairs(re, im, t, t + tile, stride, c, s);
  }
  for (Eigen::Index stride = tile; stride < dim; stride <<= 1) rotate_pairs(re, im, 0, dim, stride, c, s);
}

}  // namespace

SymmetricCircuit::SymmetricCircuit(const QaoaParameters& params, const PhaseTable& table) : n_(table.n()) {
  const int p = params.p();
  std::vector<double> gammas;
  for (int l = 0; l < p; ++l) betas_.push_back(params.betas()[l]);
  for (int l = p - 1; l >= 0; --l) betas_.push_back(params.betas()[l]);
  for (int l = 0; l + 1 < p; ++l) gammas.push_back(params.gammas()[l]);
  gammas.push_back(2.0 * params.gammas()[p - 1]);
  for (int l = p - 2; l >= 0; --l) gammas.push_back(params.gammas()[l]);
  for (double g : gammas) {
    cos_.push_back((g * table.entries).array().cos().matrix());
    sin_.push_back((-g * table.entries).array().sin().matrix());
  }
}

Eigen::VectorXd SymmetricCircuit::probabilities(SpinConfiguration x) const {
  const Eigen::Index dim = Eigen::Index{1} << n_;
  Eigen::VectorXd re(dim), im(dim);

  // exp(-i b X)^{(x) n}|x>: factor cos b per agreeing bit, -i sin b per flipped bit.
  {
    const double c = std::cos(betas_[0]), s = std::sin(betas_[0]);
    std::vector<double> magnitude(n_ + 1);
    for (int d = 0; d <= n_; ++d) magnitude[d] = std::pow(c, n_ - d) * std::pow(s, d);
    for (Eigen::Index z = 0; z < dim; ++z) {
      const int d = std::popcount(static_cast<std::uint64_t>(z) ^ x.index);
      const double m = magnitude[d];
      switch (d & 3) {
        case 0: re[z] = m; im[z] = 0.0; break;
        case 1: re[z] = 0.0; im[z] = -m; break;
        case 2: re[z] = -m; im[z] = 0.0; break;
        default: re[z] = 0.0; im[z] = m; break;
      }
    }
  }

  for (std::size_t k = 1; k < betas_.size(); ++k)
    phase_then_mix(re.data(), im.data(), cos_[k - 1].data(), sin_[k - 1].data(), dim, std::cos(betas_[k]),
                   std::sin(betas_[k]));
  return re.cwiseAbs2() + im.cwiseAbs2();
}

StateIndex sample_index(const Eigen::Ref<const Eigen::VectorXd>& probabilities, Rng& rng) {
  const double u = rng.uniform01();
  double cumulative = 0.0;
  Eigen::Index last_positive = 0;
  for (Eigen::Index z = 0; z < probabilities.size(); ++z) {
    if (probabilities[z] <= 0.0) continue;
    cumulative += probabilities[z];
    last_positive = z;
    if (u < cumulative) return static_cast<StateIndex>(z);
  }
  // Rounding left the total just below u.
  return static_cast<StateIndex>(last_positive);
}

}  // namespace qaoamc
