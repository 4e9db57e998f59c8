#include "oracles.hpp"

#include "qaoamc/spectral.hpp"

#include <gtest/gtest.h>

using namespace qaoamc;

namespace {

std::vector<ProposalKernel> all_kernels(const SpinGlassInstance& inst) {
  return {ProposalKernel::local(inst.n()), ProposalKernel::uniform(inst.n()),
          ProposalKernel::qaoa(inst, QaoaParameters::single(5, 0.3)),
          ProposalKernel::qaoa_random_theta(inst, 5, inst.seed())};
}

}  // namespace

TEST(TransitionMatrix, IdentityProposalGivesIdentity) {
  const BoltzmannTarget target(generate_instance(3, 1), 0.1);
  const auto p = build_transition_matrix(target, {Eigen::MatrixXd::Identity(8, 8)});
  EXPECT_EQ(p.p, Eigen::MatrixXd::Identity(8, 8));
}

TEST(TransitionMatrix, ZeroInstanceEqualsProposal) {
  const BoltzmannTarget target(SpinGlassInstance::zero(3), 0.1);
  for (const auto& kernel : all_kernels(generate_instance(3, 2))) {
    const auto q = exact_q_matrix(kernel);
    EXPECT_LE((build_transition_matrix(target, q).p - q.q).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(TransitionMatrix, BoltzmannIsStationary) {
  const auto inst = generate_instance(3, 6);
  const BoltzmannTarget target(inst, 0.1);
  const auto p = build_transition_matrix(target, exact_q_matrix(ProposalKernel::uniform(3)));
  const Eigen::VectorXd mu = exact_distribution(target);
  EXPECT_LE((p.p * mu - mu).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(TransitionMatrix, MatchesIndependentConstruction) {
  const auto inst = generate_instance(4, 3);
  const BoltzmannTarget target(inst, 0.1);
  for (const auto& kernel : all_kernels(inst)) {
    const auto q = exact_q_matrix(kernel);
    EXPECT_LE((build_transition_matrix(target, q).p - oracle::metropolis_matrix(inst, 0.1, q.q)).cwiseAbs().maxCoeff(),
              1e-12);
  }
}

TEST(TransitionMatrix, RejectsBadProposals) {
  const BoltzmannTarget target(generate_instance(2, 1), 0.1);
  Eigen::MatrixXd q = Eigen::MatrixXd::Constant(4, 4, 0.25);
  q(0, 0) = 0.3;
  EXPECT_THROW(build_transition_matrix(target, {q}), std::invalid_argument);
  EXPECT_THROW(symmetrize(target, {q}), std::invalid_argument);
  EXPECT_THROW(build_transition_matrix(target, {Eigen::MatrixXd::Identity(8, 8)}), std::invalid_argument);
}

TEST(StochasticityAndBalance, AllKernelsSmallSystems) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate_instance(1 + seed % 6, seed);
    const BoltzmannTarget target(inst, 0.1);
    for (const auto& kernel : all_kernels(inst)) {
      const auto p = build_transition_matrix(target, exact_q_matrix(kernel));
      EXPECT_LE((p.p.colwise().sum().array() - 1.0).abs().maxCoeff(), 1e-10) << kernel.describe();
      EXPECT_GE(p.p.minCoeff(), 0.0);
      EXPECT_LE(verify_detailed_balance(target, p), 1e-9) << kernel.describe();
    }
  }
}

TEST(DetailedBalance, DetectsCorruption) {
  const BoltzmannTarget target(generate_instance(3, 4), 1.0);
  auto p = build_transition_matrix(target, exact_q_matrix(ProposalKernel::uniform(3)));
  p.p(2, 5) += 1e-3;
  EXPECT_GT(verify_detailed_balance(target, p), 1e-4);
}

TEST(Symmetrize, ZeroInstanceEqualsProposal) {
  const BoltzmannTarget target(SpinGlassInstance::zero(3), 0.1);
  const auto q = exact_q_matrix(ProposalKernel::qaoa(generate_instance(3, 1), QaoaParameters::single(5, 0.3)));
  EXPECT_LE((symmetrize(target, q).s - q.q).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Symmetrize, IsSymmetricForAllKernels) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate_instance(1 + seed % 6, seed);
    const BoltzmannTarget target(inst, 0.1);
    for (const auto& kernel : all_kernels(inst)) {
      const auto s = symmetrize(target, exact_q_matrix(kernel));
      EXPECT_LE((s.s - s.s.transpose()).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(Symmetrize, SpectrumEqualsThatOfP) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (int n = 1; n <= 5; ++n) {
      const auto inst = generate_instance(n, seed);
      const BoltzmannTarget target(inst, 0.1);
      for (const auto& kernel : all_kernels(inst)) {
        const auto q = exact_q_matrix(kernel);
        const auto s = symmetrize(target, q);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s.s);
        const auto expected = oracle::sorted_eigenvalues(oracle::metropolis_matrix(inst, 0.1, q.q));
        for (std::size_t i = 0; i < expected.size(); ++i) {
          EXPECT_NEAR(solver.eigenvalues()[static_cast<Eigen::Index>(i)], expected[i], 1e-8) << kernel.describe();
          EXPECT_GE(solver.eigenvalues()[static_cast<Eigen::Index>(i)], -1.0 - 1e-9);
          EXPECT_LE(solver.eigenvalues()[static_cast<Eigen::Index>(i)], 1.0 + 1e-9);
        }
      }
    }
  }
}

TEST(SpectralGap, IdentityChainIsZero) {
  EXPECT_EQ(absolute_spectral_gap({Eigen::MatrixXd::Identity(8, 8)}), 0.0);
  EXPECT_FALSE(is_irreducible({Eigen::MatrixXd::Identity(8, 8)}));
}

TEST(SpectralGap, ZeroInstanceUniformIsOne) {
  const BoltzmannTarget target(SpinGlassInstance::zero(4), 0.1);
  EXPECT_NEAR(spectral_gap(target, exact_q_matrix(ProposalKernel::uniform(4))), 1.0, 1e-12);
}

TEST(SpectralGap, NonStochasticMatrixIsRejected) {
  EXPECT_THROW(absolute_spectral_gap({0.5 * Eigen::MatrixXd::Identity(4, 4)}), NotStochastic);
}

TEST(SpectralGap, LocalKernelMatchesPowerIteration) {
  const auto inst = generate_instance(3, 19);
  const BoltzmannTarget target(inst, 0.1);
  const auto q = exact_q_matrix(ProposalKernel::local(3));
  const Eigen::MatrixXd p = oracle::metropolis_matrix(inst, 0.1, q.q);
  const auto w = oracle::boltzmann(inst, 0.1);
  Eigen::VectorXd mu(8);
  for (int z = 0; z < 8; ++z) mu[z] = static_cast<double>(w[z]);
  EXPECT_NEAR(spectral_gap(target, q), oracle::gap_power_iteration(p, mu), 1e-6);
}

TEST(SpectralGap, MatchesNonsymmetricEigensolver) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate_instance(2 + seed % 4, seed);
    const BoltzmannTarget target(inst, 0.1);
    for (const auto& kernel : all_kernels(inst)) {
      const auto q = exact_q_matrix(kernel);
      EXPECT_NEAR(spectral_gap(target, q), oracle::gap_nonsymmetric(oracle::metropolis_matrix(inst, 0.1, q.q)), 1e-8)
          << kernel.describe();
    }
  }
}

TEST(SpectralGap, InRangeAndPermutationInvariant) {
  const auto inst = generate_instance(3, 23);
  const BoltzmannTarget target(inst, 0.1);
  const auto q = exact_q_matrix(ProposalKernel::qaoa(inst, QaoaParameters::single(5, 0.3)));
  const auto s = symmetrize(target, q);
  const double delta = absolute_spectral_gap(s);
  EXPECT_GE(delta, 0.0);
  EXPECT_LE(delta, 1.0);
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(8);
  perm.indices() << 3, 7, 0, 5, 1, 6, 2, 4;
  EXPECT_NEAR(absolute_spectral_gap({perm * s.s * perm.transpose()}), delta, 1e-12);
}

TEST(SpectralGap, UniformAtVeryHighTemperatureIsOne) {
  const BoltzmannTarget target(generate_instance(5, 3), 1e9);
  EXPECT_NEAR(spectral_gap(target, exact_q_matrix(ProposalKernel::uniform(5))), 1.0, 1e-6);
}

TEST(SpectralGap, IrreducibilityOfLocalChain) {
  const BoltzmannTarget target(generate_instance(4, 1), 0.1);
  EXPECT_TRUE(is_irreducible(symmetrize(target, exact_q_matrix(ProposalKernel::local(4)))));
}

TEST(ExactAr, TrivialCases) {
  const auto inst = generate_instance(3, 1);
  const BoltzmannTarget zero(SpinGlassInstance::zero(3), 0.1);
  EXPECT_NEAR(exact_ar(zero, exact_q_matrix(ProposalKernel::qaoa(inst, QaoaParameters::single(5, 0.3)))), 1.0, 1e-12);
  EXPECT_NEAR(exact_ar(BoltzmannTarget(inst, 0.1), {Eigen::MatrixXd::Identity(8, 8)}), 1.0, 1e-12);
}

TEST(ExactAr, MatchesDirectSum) {
  const auto inst = generate_instance(4, 5);
  const BoltzmannTarget target(inst, 0.1);
  const auto q = exact_q_matrix(ProposalKernel::uniform(4));
  const auto mu = oracle::boltzmann(inst, 0.1);
  long double ar = 0.0L;
  for (int x = 0; x < 16; ++x)
    for (int y = 0; y < 16; ++y)
      ar += mu[x] * q.q(y, x) * std::min(1.0L, std::exp((oracle::energy(inst, x) - oracle::energy(inst, y)) / 0.1L));
  EXPECT_NEAR(exact_ar(target, q), static_cast<double>(ar), 1e-12);
}
