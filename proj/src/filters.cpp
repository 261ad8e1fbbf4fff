#include "dirac/filters.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "dirac/error.hpp"

namespace dirac {

void FilterSpec::validate() const {
  if (variant != 1 && variant != 2) {
    throw InvalidArgument("filter variant must be 1 or 2, got " + std::to_string(variant));
  }
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw InvalidArgument("gamma must be finite and >= 0");
  }
  if (!general() && !(std::abs(z) < 1.0)) {
    throw InvalidArgument("|z| must be < 1");
  }
}

namespace {

SparseMatrix identity(Eigen::Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

/// sum_j c[j] M^j.
SparseMatrix matrix_polynomial(const SparseMatrix& m, const std::vector<double>& c) {
  const Eigen::Index n = m.rows();
  SparseMatrix out(n, n);
  SparseMatrix power = identity(n);
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j > 0) power = (power * m).pruned();
    if (c[j] != 0.0) out += c[j] * power;
  }
  return out;
}

} // namespace

SparseMatrix build_regularizer(const DiracOperator& op, const FilterSpec& spec) {
  spec.validate();
  SparseMatrix q;
  if (!spec.general()) {
    const SparseMatrix dn = op.part(spec.variant);
    const SparseMatrix dn2 = (dn * dn).pruned();
    if (spec.z == 0.0) {
      q = dn2;
    } else {
      const SparseMatrix dn3 = (dn2 * dn).pruned();
      q = dn2 - spec.z * dn3;
    }
  } else {
    q = matrix_polynomial(op.d1(), spec.a) + matrix_polynomial(op.d2(), spec.b);
    // D1^j and D2^j are symmetric, but sums may round asymmetrically.
    q = (0.5 * (SparseMatrix(q.transpose()) + q)).eval();

    if (op.size() <= kPsdProbeMaxSize && op.size() > 0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Eigen::MatrixXd(q),
                                                         Eigen::EigenvaluesOnly);
      const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
      if (eig.eigenvalues()(0) < -1e-10 * scale) {
        throw InvalidArgument("regularizer is indefinite (min eigenvalue " +
                              std::to_string(eig.eigenvalues()(0)) + ")");
      }
    }
  }
  q.makeCompressed();
  return q;
}

double frequency_response(const FilterSpec& spec, double lambda) {
  const double l2 = lambda * lambda;
  return 1.0 / (1.0 + spec.gamma * (l2 - spec.z * l2 * lambda));
}

IirFilter::IirFilter(const DiracOperator& op, const FilterSpec& spec)
    : spec_(spec), layout_(op.layout()), q_(build_regularizer(op, spec)) {
  const auto n = static_cast<Eigen::Index>(op.size());
  system_ = identity(n) + spec_.gamma * q_;
  system_.makeCompressed();
  if (spec_.gamma > 0.0) {
    llt_ = std::make_shared<Eigen::SimplicialLLT<SparseMatrix>>(system_);
    if (llt_->info() != Eigen::Success) {
      throw NumericalError("I + gamma Q is not positive definite; check z and the operator "
                           "normalization");
    }
  }
}

FilterResult IirFilter::apply(const SimplicialSignal& s_tilde) const {
  if (!(s_tilde.layout() == layout_)) {
    throw DataError("filter: signal length " + std::to_string(s_tilde.size()) +
                    " does not match operator size " + std::to_string(layout_.total()));
  }
  if (!llt_) return {s_tilde, 0.0};

  Eigen::VectorXd x = llt_->solve(s_tilde.values());
  if (llt_->info() != Eigen::Success) {
    throw NumericalError("filter solve failed");
  }
  const Eigen::VectorXd r = system_ * x - s_tilde.values();
  const double denom = s_tilde.norm();
  const double residual = denom > 0.0 ? r.norm() / denom : r.norm();
  return {SimplicialSignal(layout_, std::move(x)), residual};
}

FilterResult apply_filter(const DiracOperator& op, const FilterSpec& spec,
                          const SimplicialSignal& s_tilde) {
  return IirFilter(op, spec).apply(s_tilde);
}

} // namespace dirac
