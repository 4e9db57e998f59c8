#pragma once

#include "qaoamc/ising.hpp"
#include "qaoamc/proposals.hpp"
#include "qaoamc/rng.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qaoamc {

/// Thrown when a Metropolis step is attempted with a non-symmetric proposal;
/// dropping the Hastings ratio is only valid for symmetric Q.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ChainState {
  ChainState(const BoltzmannTarget& target, SpinConfiguration init, std::uint64_t seed)
      : current(init), current_energy(energy(target.instance, init)), rng(seed) {}

  SpinConfiguration current;
  double current_energy;  ///< Always energy(instance, current).
  Rng rng;
  std::uint64_t step_count = 0;
};

struct StepResult {
  SpinConfiguration proposed;
  double acceptance;  ///< A = min(1, exp((E(x) - E(x'))/T))
  bool accepted;
};

/// min(1, exp(-(E' - E)/T)) evaluated from the energy difference alone.
inline double metropolis_acceptance(double current_energy, double proposed_energy, double temperature) {
  const double delta = proposed_energy - current_energy;
  return delta <= 0.0 ? 1.0 : std::exp(-delta / temperature);
}

/// One Metropolis update in place. Accepts iff A >= u, u ~ U[0,1).
StepResult metropolis_step(ChainState& chain, const ProposalKernel& kernel, const BoltzmannTarget& target);

struct ChainTrace {
  std::vector<StateIndex> states;  ///< state after each step
  std::vector<double> energies;
  std::vector<double> magnetizations;
  std::vector<double> acceptance_probs;
  std::vector<bool> accepted_flags;

  std::size_t size() const noexcept { return states.size(); }
};

/// Runs `steps` Metropolis updates from `init`. Deterministic in all arguments.
ChainTrace run_chain(const BoltzmannTarget& target, const ProposalKernel& kernel, std::int64_t steps,
                     SpinConfiguration init, std::uint64_t seed);

enum class ArEstimator {
  AcceptanceProbability,  ///< average of A over the chain (default)
  AcceptIndicator,        ///< fraction of accepted proposals
};

struct ArOptions {
  std::optional<SpinConfiguration> init;  ///< uniform random from the seed when empty
  std::int64_t burn_in = 0;
  ArEstimator estimator = ArEstimator::AcceptanceProbability;
};

/// (1/M) sum_j A(x^(j+1) | x^(j)) from a fresh M-step chain.
double estimate_ar(const BoltzmannTarget& target, const ProposalKernel& kernel, std::int64_t samples,
                   std::uint64_t seed, const ArOptions& options = {});

struct MagnetizationEstimate {
  std::vector<double> mean;  ///< cross-chain mean of the running <m>, per step
  std::vector<double> stddev;  ///< cross-chain sample standard deviation
  std::vector<double> standard_error;  ///< std / sqrt(chains)
};

/// Per-step running average of m within each chain (steps after burn_in),
/// then mean and spread across chains.
MagnetizationEstimate estimate_average_magnetization(const std::vector<ChainTrace>& traces,
                                                     std::int64_t burn_in = 0);

}  // namespace qaoamc
