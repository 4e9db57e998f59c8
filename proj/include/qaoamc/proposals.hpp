#pragma once

#include "qaoamc/ising.hpp"
#include "qaoamc/rng.hpp"
#include "qaoamc/statevector.hpp"

#include <Eigen/Dense>

#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qaoamc {

inline constexpr int kSpectralEnumerationCap = 12;

enum class ProposalKind { Local, Uniform, QaoaFixed, QaoaRandomTheta, Tabulated };

std::string to_string(ProposalKind kind);

/// Q(x'|x) as a dense matrix; column x holds the distribution over x'.
struct ProposalMatrix {
  Eigen::MatrixXd q;

  int n() const noexcept;
  /// Largest |Q - Q^T| entry.
  double asymmetry() const { return (q - q.transpose()).cwiseAbs().maxCoeff(); }
  /// Largest |column sum - 1|.
  double normalization_error() const {
    return (q.colwise().sum().array() - 1.0).abs().maxCoeff();
  }
};

/// A proposal distribution, usable both for sampling and for building its
/// exact matrix. Immutable once constructed.
class ProposalKernel {
 public:
  /// Flip one uniformly chosen spin.
  static ProposalKernel local(int n);
  /// Uniform over all 2^n states, the current one included.
  static ProposalKernel uniform(int n);
  /// Measure U(params)|x> for the symmetric circuit built on `instance`.
  static ProposalKernel qaoa(const SpinGlassInstance& instance, QaoaParameters params);
  static ProposalKernel qaoa(std::shared_ptr<const PhaseTable> table, QaoaParameters params);
  /// Single-parameter circuit at theta ~ U[0, 2pi] drawn from `seed`. With
  /// redraw_per_step the angle is redrawn on every proposal instead; that
  /// variant has no fixed transition matrix.
  static ProposalKernel qaoa_random_theta(const SpinGlassInstance& instance, int p,
                                          std::uint64_t seed, bool redraw_per_step = false);
  /// Samples columns of an explicit column-stochastic matrix. `symmetric` is
  /// set from the matrix itself (tolerance 1e-10).
  static ProposalKernel tabulated(ProposalMatrix q);

  ProposalKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  bool symmetric() const noexcept { return symmetric_; }
  bool redraws_theta() const noexcept { return redraw_per_step_; }
  /// Circuit angles for the QAOA kinds.
  const std::optional<QaoaParameters>& params() const noexcept { return params_; }
  std::optional<double> theta() const;
  /// Phase table of the QAOA kinds; throws for the others.
  const PhaseTable& phase_table() const;
  /// Backing matrix of a Tabulated kernel; throws for the others.
  const ProposalMatrix& matrix() const;
  std::string describe() const;

  SpinConfiguration propose(SpinConfiguration x, Rng& rng) const;

 private:
  ProposalKernel(ProposalKind kind, int n) : kind_(kind), n_(n) {}

  ProposalKind kind_;
  int n_;
  bool symmetric_ = true;
  bool redraw_per_step_ = false;
  std::optional<QaoaParameters> params_;
  std::shared_ptr<const PhaseTable> table_;
  std::shared_ptr<const SymmetricCircuit> circuit_;  // fixed-angle QAOA kinds
  std::shared_ptr<const Eigen::MatrixXd> cumulative_;  // Tabulated only
  std::shared_ptr<const ProposalMatrix> matrix_;       // Tabulated only

  // Measured columns |U|x>|^2 of a fixed-angle QAOA kernel, filled on first
  // use and evicted oldest first once `capacity` is reached. Shared by copies
  // of the kernel, which all describe the same Q.
  struct ColumnCache {
    std::mutex mutex;
    std::size_t capacity = 0;
    std::unordered_map<StateIndex, std::shared_ptr<const Eigen::VectorXd>> columns;
    std::deque<StateIndex> order;
  };
  std::shared_ptr<ColumnCache> columns_;
  std::shared_ptr<const Eigen::VectorXd> column(SpinConfiguration x) const;
};

/// Memory budget of a QAOA kernel's column cache. Up to n = 12 every column
/// fits; beyond that the most recent ones are kept, which still covers the
/// repeated proposals from a state while a chain sits on it.
inline constexpr std::size_t kColumnCacheBytes = std::size_t{64} << 20;

/// Exact Q for the kernel; 2^n x 2^n, so n is capped.
ProposalMatrix exact_q_matrix(const ProposalKernel& kernel, int cap = kSpectralEnumerationCap);

}  // namespace qaoamc
