#include "qaoamc/mcmc.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace qaoamc {

StepResult metropolis_step(ChainState& chain, const ProposalKernel& kernel, const BoltzmannTarget& target) {
  if (!kernel.symmetric())
    throw ContractViolation("Metropolis acceptance requires a symmetric proposal kernel");
  const SpinConfiguration proposed = kernel.propose(chain.current, chain.rng);
  const double proposed_energy =
      proposed == chain.current ? chain.current_energy : energy(target.instance, proposed);
  const double a = metropolis_acceptance(chain.current_energy, proposed_energy, target.temperature);
  const bool accepted = a >= chain.rng.uniform01();
  if (accepted) {
    chain.current = proposed;
    chain.current_energy = proposed_energy;
  }
  ++chain.step_count;
#ifndef NDEBUG
  if (chain.step_count % 1000 == 0)
    assert(std::abs(chain.current_energy - energy(target.instance, chain.current)) <= 1e-12);
#endif
  return {proposed, a, accepted};
}

ChainTrace run_chain(const BoltzmannTarget& target, const ProposalKernel& kernel, std::int64_t steps,
                     SpinConfiguration init, std::uint64_t seed) {
  if (steps < 1) throw std::invalid_argument("run_chain: steps must be >= 1");
  if (init.index >= target.instance.dimension())
    throw std::invalid_argument("run_chain: initial state out of range");
  ChainState chain(target, init, seed);
  ChainTrace trace;
  const auto count = static_cast<std::size_t>(steps);
  trace.states.reserve(count);
  trace.energies.reserve(count);
  trace.magnetizations.reserve(count);
  trace.acceptance_probs.reserve(count);
  trace.accepted_flags.reserve(count);
  const int n = target.instance.n();
  for (std::int64_t s = 0; s < steps; ++s) {
    const StepResult step = metropolis_step(chain, kernel, target);
    trace.states.push_back(chain.current.index);
    trace.energies.push_back(chain.current_energy);
    trace.magnetizations.push_back(magnetization(chain.current, n));
    trace.acceptance_probs.push_back(step.acceptance);
    trace.accepted_flags.push_back(step.accepted);
  }
  return trace;
}

double estimate_ar(const BoltzmannTarget& target, const ProposalKernel& kernel, std::int64_t samples,
                   std::uint64_t seed, const ArOptions& options) {
  if (samples < 1) throw std::invalid_argument("estimate_ar: M must be >= 1");
  if (options.burn_in < 0) throw std::invalid_argument("estimate_ar: burn-in must be >= 0");
  Rng init_rng(derive_seed({seed, 0x1417}));
  const SpinConfiguration init =
      options.init.value_or(SpinConfiguration{init_rng.uniform_index(target.instance.dimension())});
  ChainState chain(target, init, seed);
  for (std::int64_t s = 0; s < options.burn_in; ++s) metropolis_step(chain, kernel, target);
  double total = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    const StepResult step = metropolis_step(chain, kernel, target);
    total += options.estimator == ArEstimator::AcceptanceProbability ? step.acceptance
                                                                     : (step.accepted ? 1.0 : 0.0);
  }
  return total / static_cast<double>(samples);
}

MagnetizationEstimate estimate_average_magnetization(const std::vector<ChainTrace>& traces,
                                                     std::int64_t burn_in) {
  if (traces.empty()) throw std::invalid_argument("estimate_average_magnetization: no traces");
  const std::size_t steps = traces.front().size();
  for (const auto& t : traces)
    if (t.size() != steps) throw std::invalid_argument("estimate_average_magnetization: traces differ in length");
  if (burn_in < 0 || static_cast<std::size_t>(burn_in) >= steps)
    throw std::invalid_argument("estimate_average_magnetization: burn-in must be < steps");

  const std::size_t kept = steps - static_cast<std::size_t>(burn_in);
  const auto chains = static_cast<double>(traces.size());
  MagnetizationEstimate out;
  out.mean.assign(kept, 0.0);
  out.stddev.assign(kept, 0.0);
  out.standard_error.assign(kept, 0.0);

  std::vector<double> running(traces.size(), 0.0);
  for (std::size_t s = 0; s < kept; ++s) {
    double sum = 0.0;
    for (std::size_t c = 0; c < traces.size(); ++c) {
      running[c] += traces[c].magnetizations[s + static_cast<std::size_t>(burn_in)];
      sum += running[c] / static_cast<double>(s + 1);
    }
    const double mean = sum / chains;
    double ss = 0.0;
    for (double r : running) {
      const double d = r / static_cast<double>(s + 1) - mean;
      ss += d * d;
    }
    out.mean[s] = mean;
    out.stddev[s] = traces.size() > 1 ? std::sqrt(ss / (chains - 1.0)) : 0.0;
    out.standard_error[s] = out.stddev[s] / std::sqrt(chains);
  }
  return out;
}

}  // namespace qaoamc
