#include "qaoamc/ising.hpp"

#include "qaoamc/rng.hpp"

#include <bit>
#include <cmath>

namespace qaoamc {

SpinGlassInstance::SpinGlassInstance(int n, Eigen::VectorXd couplings, Eigen::VectorXd fields,
                                     std::uint64_t seed)
    : n_(n), couplings_(std::move(couplings)), fields_(std::move(fields)), seed_(seed) {
  if (n_ < 1) throw std::invalid_argument("spin glass needs n >= 1");
  if (n_ > 62) throw std::invalid_argument("spin glass n must fit a 64-bit state index");
  const auto pairs = static_cast<Eigen::Index>(n_) * (n_ - 1) / 2;
  if (couplings_.size() != pairs)
    throw std::invalid_argument("expected n(n-1)/2 = " + std::to_string(pairs) + " couplings, got " +
                                std::to_string(couplings_.size()));
  if (fields_.size() != n_)
    throw std::invalid_argument("expected n fields, got " + std::to_string(fields_.size()));
  if (!couplings_.allFinite() || !fields_.allFinite())
    throw std::invalid_argument("spin glass coefficients must be finite");
}

SpinGlassInstance SpinGlassInstance::zero(int n) {
  if (n < 1) throw std::invalid_argument("spin glass needs n >= 1");
  return {n, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n) * (n - 1) / 2),
          Eigen::VectorXd::Zero(n), 0};
}

SpinGlassInstance generate_instance(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_instance: n must be >= 1");
  Rng rng(seed);
  Eigen::VectorXd couplings(static_cast<Eigen::Index>(n) * (n - 1) / 2);
  for (Eigen::Index i = 0; i < couplings.size(); ++i) couplings[i] = rng.standard_normal();
  Eigen::VectorXd fields(n);
  for (int j = 0; j < n; ++j) fields[j] = rng.standard_normal();
  return {n, std::move(couplings), std::move(fields), seed};
}

double energy(const SpinGlassInstance& instance, SpinConfiguration config) {
  const int n = instance.n();
  const auto& J = instance.couplings();
  const auto& h = instance.fields();
  double e = 0.0;
  std::size_t idx = 0;
  for (int j = 1; j < n; ++j) {
    const int xj = config.spin(j);
    for (int k = 0; k < j; ++k, ++idx) e -= J[static_cast<Eigen::Index>(idx)] * xj * config.spin(k);
  }
  for (int j = 0; j < n; ++j) e -= h[j] * config.spin(j);
  return e;
}

Eigen::VectorXd all_energies(const SpinGlassInstance& instance, int cap) {
  const int n = instance.n();
  if (n > cap) throw EnumerationInfeasible(n, cap);
  const auto dim = static_cast<Eigen::Index>(instance.dimension());
  Eigen::VectorXd energies(dim);
  for (Eigen::Index z = 0; z < dim; ++z)
    energies[z] = energy(instance, {static_cast<StateIndex>(z)});
  return energies;
}

Eigen::VectorXd exact_log_distribution(const BoltzmannTarget& target, int cap) {
  Eigen::VectorXd log_weights = -all_energies(target.instance, cap) / target.temperature;
  const double shift = log_weights.maxCoeff();
  const double log_z = shift + std::log((log_weights.array() - shift).exp().sum());
  return log_weights.array() - log_z;
}

Eigen::VectorXd exact_distribution(const BoltzmannTarget& target, int cap) {
  return exact_log_distribution(target, cap).array().exp();
}

double magnetization(SpinConfiguration config, int n) {
  const StateIndex mask = n >= 64 ? ~StateIndex{0} : (StateIndex{1} << n) - 1;
  const int down = std::popcount(config.index & mask);
  return static_cast<double>(n - 2 * down) / n;
}

double exact_average_magnetization(const BoltzmannTarget& target, int cap) {
  const Eigen::VectorXd mu = exact_distribution(target, cap);
  const int n = target.instance.n();
  double m = 0.0;
  for (Eigen::Index z = 0; z < mu.size(); ++z)
    m += mu[z] * magnetization({static_cast<StateIndex>(z)}, n);
  return m;
}

}  // namespace qaoamc
