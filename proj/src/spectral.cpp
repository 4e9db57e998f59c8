#include "qaoamc/spectral.hpp"

#include "qaoamc/mcmc.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

namespace qaoamc {

namespace {

void require_valid_proposal(const BoltzmannTarget& target, const ProposalMatrix& q) {
  const Eigen::Index dim = static_cast<Eigen::Index>(target.instance.dimension());
  if (q.q.rows() != dim || q.q.cols() != dim)
    throw std::invalid_argument("proposal matrix does not match the instance dimension");
  if (q.normalization_error() > 1e-10)
    throw std::invalid_argument("proposal matrix columns are not normalized");
  if (q.asymmetry() > 1e-10)
    throw std::invalid_argument("proposal matrix is not symmetric");
}

}  // namespace

TransitionMatrix build_transition_matrix(const BoltzmannTarget& target, const ProposalMatrix& q) {
  require_valid_proposal(target, q);
  const Eigen::VectorXd e = all_energies(target.instance, kSpectralEnumerationCap);
  const Eigen::Index dim = e.size();
  TransitionMatrix out{Eigen::MatrixXd::Zero(dim, dim)};
  for (Eigen::Index x = 0; x < dim; ++x) {
    double moved = 0.0;
    for (Eigen::Index xp = 0; xp < dim; ++xp) {
      if (xp == x) continue;
      const double value = q.q(xp, x) * metropolis_acceptance(e[x], e[xp], target.temperature);
      out.p(xp, x) = value;
      moved += value;
    }
    out.p(x, x) = 1.0 - moved;
  }
  return out;
}

SymmetrizedMatrix symmetrize(const BoltzmannTarget& target, const ProposalMatrix& q) {
  require_valid_proposal(target, q);
  const Eigen::VectorXd e = all_energies(target.instance, kSpectralEnumerationCap);
  const Eigen::Index dim = e.size();
  const double two_t = 2.0 * target.temperature;
  SymmetrizedMatrix out{Eigen::MatrixXd::Zero(dim, dim)};
  for (Eigen::Index x = 0; x < dim; ++x) {
    double moved = 0.0;
    for (Eigen::Index xp = 0; xp < dim; ++xp) {
      if (xp == x) continue;
      const double qv = q.q(xp, x);
      moved += qv * metropolis_acceptance(e[x], e[xp], target.temperature);
      // Mirror entries share Q (symmetric) and |dE|, so S is symmetric by construction.
      out.s(xp, x) = qv * std::exp(-std::abs(e[xp] - e[x]) / two_t);
    }
    out.s(x, x) = 1.0 - moved;
  }
  return out;
}

double absolute_spectral_gap(const SymmetrizedMatrix& s) {
  if (s.s.rows() < 2) throw std::invalid_argument("spectral gap needs at least two states");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s.s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver failed");
  const Eigen::VectorXd& lambda = solver.eigenvalues();  // ascending
  Eigen::Index top = 0;
  (lambda.array() - 1.0).abs().minCoeff(&top);
  if (std::abs(lambda[top] - 1.0) > 1e-6)
    throw NotStochastic("top eigenvalue " + std::to_string(lambda[top]) + " is not 1");
  double second = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (i != top) second = std::max(second, std::abs(lambda[i]));
  return std::clamp(1.0 - second, 0.0, 1.0);
}

bool is_irreducible(const SymmetrizedMatrix& s) {
  const Eigen::Index dim = s.s.rows();
  std::vector<bool> seen(static_cast<std::size_t>(dim), false);
  std::vector<Eigen::Index> frontier{0};
  seen[0] = true;
  Eigen::Index reached = 1;
  while (!frontier.empty()) {
    const Eigen::Index x = frontier.back();
    frontier.pop_back();
    for (Eigen::Index y = 0; y < dim; ++y) {
      if (y == x || seen[static_cast<std::size_t>(y)] || s.s(y, x) <= 0.0) continue;
      seen[static_cast<std::size_t>(y)] = true;
      ++reached;
      frontier.push_back(y);
    }
  }
  return reached == dim;
}

double spectral_gap(const BoltzmannTarget& target, const ProposalMatrix& q) {
  return absolute_spectral_gap(symmetrize(target, q));
}

double exact_ar(const BoltzmannTarget& target, const ProposalMatrix& q, int cap) {
  if (target.instance.n() > cap) throw EnumerationInfeasible(target.instance.n(), cap);
  const Eigen::VectorXd e = all_energies(target.instance, cap);
  const Eigen::VectorXd mu = exact_distribution(target, cap);
  const Eigen::Index dim = e.size();
  if (q.q.rows() != dim || q.q.cols() != dim)
    throw std::invalid_argument("proposal matrix does not match the instance dimension");
  double ar = 0.0;
  for (Eigen::Index x = 0; x < dim; ++x) {
    double column = 0.0;
    for (Eigen::Index xp = 0; xp < dim; ++xp)
      column += q.q(xp, x) * metropolis_acceptance(e[x], e[xp], target.temperature);
    ar += mu[x] * column;
  }
  return std::clamp(ar, 0.0, 1.0);
}

double verify_detailed_balance(const BoltzmannTarget& target, const TransitionMatrix& p) {
  constexpr double kFloor = 1e-300;
  const Eigen::VectorXd log_mu = exact_log_distribution(target, kSpectralEnumerationCap);
  const Eigen::Index dim = log_mu.size();
  if (p.p.rows() != dim || p.p.cols() != dim)
    throw std::invalid_argument("transition matrix does not match the instance dimension");
  double worst = 0.0;
  for (Eigen::Index x = 0; x < dim; ++x) {
    for (Eigen::Index xp = x + 1; xp < dim; ++xp) {
      const double forward = p.p(xp, x);
      const double backward = p.p(x, xp);
      if (forward <= kFloor || backward <= kFloor) continue;
      const double residual =
          std::abs((log_mu[x] + std::log(forward)) - (log_mu[xp] + std::log(backward)));
      worst = std::max(worst, residual);
    }
  }
  return worst;
}

}  // namespace qaoamc
