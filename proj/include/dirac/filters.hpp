#pragma once

#include <memory>
#include <vector>

#include <Eigen/SparseCholesky>

#include "dirac/operators.hpp"

namespace dirac {

/**
 * Regularizer parameters. Without general coefficients the regularizer is
 *
 *     Q_n(z) = D_n^2 - z D_n^3,   n in {1, 2}
 *
 * which is positive semi-definite for |z| < 1 on a normalized operator.
 * With coefficients, Q = sum_j a[j] D1^j + b[j] D2^j for j = 0, 1, ...
 */
struct FilterSpec {
  int variant = 1;
  double z = 0.0;
  double gamma = 0.0;
  std::vector<double> a;
  std::vector<double> b;

  bool general() const { return !a.empty() || !b.empty(); }
  /// Throws InvalidArgument on an out-of-range parameter.
  void validate() const;
};

/// Largest complex size for which indefiniteness of a general Q is probed
/// with a dense eigensolver.
inline constexpr std::size_t kPsdProbeMaxSize = 2000;

SparseMatrix build_regularizer(const DiracOperator& op, const FilterSpec& spec);

/// 1 / (1 + gamma (lambda^2 - z lambda^3)).
double frequency_response(const FilterSpec& spec, double lambda);

struct FilterResult {
  SimplicialSignal s_hat;
  /// ||(I + gamma Q) s_hat - s_tilde|| / ||s_tilde|| (absolute when s_tilde = 0).
  double solve_residual = 0.0;
};

/**
 * H_gamma = (I + gamma Q)^{-1} with a cached sparse Cholesky factorization.
 * Immutable after construction, so one instance may serve concurrent calls.
 */
class IirFilter {
public:
  /// Throws NumericalError if I + gamma Q is not positive definite.
  IirFilter(const DiracOperator& op, const FilterSpec& spec);

  const FilterSpec& spec() const { return spec_; }
  const SparseMatrix& regularizer() const { return q_; }

  FilterResult apply(const SimplicialSignal& s_tilde) const;

private:
  FilterSpec spec_;
  BlockLayout layout_;
  SparseMatrix q_;
  SparseMatrix system_;
  std::shared_ptr<Eigen::SimplicialLLT<SparseMatrix>> llt_;
};

FilterResult apply_filter(const DiracOperator& op, const FilterSpec& spec,
                          const SimplicialSignal& s_tilde);

} // namespace dirac
