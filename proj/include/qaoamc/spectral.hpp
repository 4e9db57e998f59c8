#pragma once

#include "qaoamc/ising.hpp"
#include "qaoamc/proposals.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace qaoamc {

/// Raised when the top eigenvalue of a transition matrix is not 1.
class NotStochastic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// P[x', x] = P(x' | x); columns are distributions.
struct TransitionMatrix {
  Eigen::MatrixXd p;
};

/// D^{-1/2} P D^{1/2} with D = diag(mu). Symmetric for a reversible chain and
/// similar to P, so it has the same (real) spectrum.
struct SymmetrizedMatrix {
  Eigen::MatrixXd s;
};

/// Metropolis transition matrix for a symmetric proposal. Rejected mass and
/// self-proposals stay on the diagonal.
TransitionMatrix build_transition_matrix(const BoltzmannTarget& target, const ProposalMatrix& q);

/// Off-diagonal S[x', x] = Q(x'|x) exp(-|E(x') - E(x)| / 2T), the closed form of
/// sqrt(mu(x)/mu(x')) P[x', x]. Uses energy differences only, so it stays
/// finite at low temperature where mu itself underflows.
SymmetrizedMatrix symmetrize(const BoltzmannTarget& target, const ProposalMatrix& q);

/// delta = 1 - |lambda_2|, where lambda_2 is the largest-magnitude eigenvalue
/// left after removing the one closest to 1. Result is clamped into [0, 1].
double absolute_spectral_gap(const SymmetrizedMatrix& s);

/// Whether the off-diagonal support of S connects every state.
bool is_irreducible(const SymmetrizedMatrix& s);

/// Convenience: symmetrize then absolute_spectral_gap.
double spectral_gap(const BoltzmannTarget& target, const ProposalMatrix& q);

/// AR = sum_{x,x'} mu(x) Q(x'|x) A(x'|x).
double exact_ar(const BoltzmannTarget& target, const ProposalMatrix& q,
                int cap = kSpectralEnumerationCap);

/// max |log(mu(x) P[x',x]) - log(mu(x') P[x,x'])| over pairs whose two
/// entries both exceed 1e-300.
double verify_detailed_balance(const BoltzmannTarget& target, const TransitionMatrix& p);

}  // namespace qaoamc
