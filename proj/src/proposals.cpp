#include "qaoamc/proposals.hpp"

#include <algorithm>
#include <bit>
#include <numbers>
#include <sstream>

namespace qaoamc {

std::string to_string(ProposalKind kind) {
  switch (kind) {
    case ProposalKind::Local: return "local";
    case ProposalKind::Uniform: return "uniform";
    case ProposalKind::QaoaFixed: return "qaoa";
    case ProposalKind::QaoaRandomTheta: return "random";
    case ProposalKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

int ProposalMatrix::n() const noexcept {
  return std::countr_zero(static_cast<std::uint64_t>(q.cols()));
}

ProposalKernel ProposalKernel::local(int n) {
  if (n < 1) throw std::invalid_argument("local kernel needs n >= 1");
  return {ProposalKind::Local, n};
}

ProposalKernel ProposalKernel::uniform(int n) {
  if (n < 1 || n > 62) throw std::invalid_argument("uniform kernel needs 1 <= n <= 62");
  return {ProposalKind::Uniform, n};
}

ProposalKernel ProposalKernel::qaoa(const SpinGlassInstance& instance, QaoaParameters params) {
  return qaoa(std::make_shared<const PhaseTable>(make_phase_table(instance)), std::move(params));
}

ProposalKernel ProposalKernel::qaoa(std::shared_ptr<const PhaseTable> table, QaoaParameters params) {
  if (!table) throw std::invalid_argument("QAOA kernel needs a phase table");
  ProposalKernel kernel(ProposalKind::QaoaFixed, table->n());
  kernel.table_ = std::move(table);
  kernel.params_ = std::move(params);
  kernel.circuit_ = std::make_shared<const SymmetricCircuit>(*kernel.params_, *kernel.table_);
  const std::size_t dim = std::size_t{1} << kernel.n_;
  kernel.columns_ = std::make_shared<ColumnCache>();
  kernel.columns_->capacity = std::clamp<std::size_t>(kColumnCacheBytes / (dim * sizeof(double)), 1, dim);
  return kernel;
}

ProposalKernel ProposalKernel::qaoa_random_theta(const SpinGlassInstance& instance, int p,
                                                 std::uint64_t seed, bool redraw_per_step) {
  Rng rng(seed);
  const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
  ProposalKernel kernel = qaoa(instance, QaoaParameters::single(p, theta));
  kernel.kind_ = ProposalKind::QaoaRandomTheta;
  kernel.redraw_per_step_ = redraw_per_step;
  if (redraw_per_step) {
    kernel.columns_.reset();
    kernel.circuit_.reset();
  }
  return kernel;
}

ProposalKernel ProposalKernel::tabulated(ProposalMatrix q) {
  if (q.q.rows() != q.q.cols() || q.q.cols() < 2 || !std::has_single_bit(static_cast<std::uint64_t>(q.q.cols())))
    throw std::invalid_argument("tabulated kernel needs a square 2^n matrix");
  if ((q.q.array() < 0.0).any()) throw std::invalid_argument("tabulated kernel has negative entries");
  if (q.normalization_error() > 1e-10)
    throw std::invalid_argument("tabulated kernel columns must sum to 1");
  ProposalKernel kernel(ProposalKind::Tabulated, q.n());
  kernel.symmetric_ = q.asymmetry() <= 1e-10;
  Eigen::MatrixXd cumulative(q.q.rows(), q.q.cols());
  for (Eigen::Index c = 0; c < q.q.cols(); ++c) {
    double acc = 0.0;
    for (Eigen::Index r = 0; r < q.q.rows(); ++r) cumulative(r, c) = (acc += q.q(r, c));
  }
  kernel.cumulative_ = std::make_shared<const Eigen::MatrixXd>(std::move(cumulative));
  kernel.matrix_ = std::make_shared<const ProposalMatrix>(std::move(q));
  return kernel;
}

std::optional<double> ProposalKernel::theta() const {
  if (!params_) return std::nullopt;
  return params_->single_theta();
}

const PhaseTable& ProposalKernel::phase_table() const {
  if (!table_) throw std::logic_error("kernel " + to_string(kind_) + " has no phase table");
  return *table_;
}

const ProposalMatrix& ProposalKernel::matrix() const {
  if (!matrix_) throw std::logic_error("kernel " + to_string(kind_) + " is not tabulated");
  return *matrix_;
}

std::string ProposalKernel::describe() const {
  std::ostringstream out;
  out << to_string(kind_) << " n=" << n_;
  if (params_) {
    out << " p=" << params_->p();
    if (auto t = theta()) out << " theta=" << *t;
    if (redraw_per_step_) out << " (redrawn per step)";
  }
  return out.str();
}

std::shared_ptr<const Eigen::VectorXd> ProposalKernel::column(SpinConfiguration x) const {
  auto measure = [&] {
    return std::make_shared<const Eigen::VectorXd>(circuit_->probabilities(x));
  };
  if (!columns_) return measure();
  {
    std::lock_guard lock(columns_->mutex);
    if (auto it = columns_->columns.find(x.index); it != columns_->columns.end()) return it->second;
  }
  auto computed = measure();
  std::lock_guard lock(columns_->mutex);
  auto [it, inserted] = columns_->columns.try_emplace(x.index, std::move(computed));
  if (inserted) {
    columns_->order.push_back(x.index);
    if (columns_->order.size() > columns_->capacity) {
      columns_->columns.erase(columns_->order.front());
      columns_->order.pop_front();
    }
  }
  return it->second;
}

SpinConfiguration ProposalKernel::propose(SpinConfiguration x, Rng& rng) const {
  switch (kind_) {
    case ProposalKind::Local:
      return x.flipped(static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n_))));
    case ProposalKind::Uniform:
      return {rng.uniform_index(StateIndex{1} << n_)};
    case ProposalKind::QaoaFixed:
      return {sample_index(*column(x), rng)};
    case ProposalKind::QaoaRandomTheta:
      if (redraw_per_step_) {
        const auto params = QaoaParameters::single(params_->p(), rng.uniform(0.0, 2.0 * std::numbers::pi));
        return {sample_index(SymmetricCircuit(params, *table_).probabilities(x), rng)};
      }
      return {sample_index(*column(x), rng)};
    case ProposalKind::Tabulated: {
      const auto col = cumulative_->col(static_cast<Eigen::Index>(x.index));
      const double u = rng.uniform01() * col[col.size() - 1];
      const auto* begin = col.data();
      const auto* it = std::upper_bound(begin, begin + col.size(), u);
      auto z = static_cast<Eigen::Index>(it - begin);
      if (z == col.size()) --z;
      // Skip zero-probability entries that share the cumulative value.
      while (z > 0 && matrix_->q(z, static_cast<Eigen::Index>(x.index)) == 0.0) --z;
      return {static_cast<StateIndex>(z)};
    }
  }
  throw std::logic_error("unhandled proposal kind");
}

ProposalMatrix exact_q_matrix(const ProposalKernel& kernel, int cap) {
  const int n = kernel.n();
  if (n > cap) throw EnumerationInfeasible(n, cap);
  const Eigen::Index dim = Eigen::Index{1} << n;
  ProposalMatrix out;
  switch (kernel.kind()) {
    case ProposalKind::Local:
      out.q = Eigen::MatrixXd::Zero(dim, dim);
      for (Eigen::Index x = 0; x < dim; ++x)
        for (int j = 0; j < n; ++j) out.q(x ^ (Eigen::Index{1} << j), x) = 1.0 / n;
      break;
    case ProposalKind::Uniform:
      out.q = Eigen::MatrixXd::Constant(dim, dim, 1.0 / static_cast<double>(dim));
      break;
    case ProposalKind::QaoaFixed:
    case ProposalKind::QaoaRandomTheta: {
      if (kernel.redraws_theta())
        throw std::invalid_argument("a kernel that redraws theta per step has no fixed Q matrix");
      out.q = measure_probabilities(symmetric_qaoa_unitary(*kernel.params(), kernel.phase_table()));
      break;
    }
    case ProposalKind::Tabulated:
      out.q = kernel.matrix().q;
      break;
  }
  return out;
}

}  // namespace qaoamc
