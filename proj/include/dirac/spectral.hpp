#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dirac/complex.hpp"
#include "dirac/operators.hpp"

namespace dirac {

/// Reduced SVD B = U diag(sigma) V^T restricted to nonzero singular values.
struct ReducedSvd {
  Eigen::MatrixXd u;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd v;

  std::size_t rank() const { return static_cast<std::size_t>(sigma.size()); }
};

enum class Alignment { aligned, anti, harmonic };

/**
 * Orthonormal eigenbasis of the Dirac operator built from the SVDs of the two
 * boundary blocks. For each singular triplet (u, v, sigma) of B1 the columns
 *
 *     [u;  v; 0] / sqrt(2)   eigenvalue +sigma  (aligned)
 *     [u; -v; 0] / sqrt(2)   eigenvalue -sigma  (anti-aligned)
 *
 * span part of im(D1); B2 triplets give [0; u; +-v] / sqrt(2) in im(D2).
 * Column j of an aligned block pairs with column j of the matching anti block.
 * Singular values are in descending order.
 */
struct SpectralBasis {
  BlockLayout layout;
  ReducedSvd svd1;
  ReducedSvd svd2;

  Eigen::MatrixXd phi1_aligned;
  Eigen::MatrixXd phi1_anti;
  Eigen::MatrixXd phi2_aligned;
  Eigen::MatrixXd phi2_anti;
  /// Kernels of L0, L1, L2 zero-padded into the stacked space.
  Eigen::MatrixXd phi_harm;

  /// Betti numbers from the kernel dimensions of L0, L1, L2.
  std::size_t harm_nodes = 0;
  std::size_t harm_edges = 0;
  std::size_t harm_triangles = 0;

  /// dim im(D1) = 2 rank(B1).
  std::size_t d1_dim() const { return 2 * svd1.rank(); }
  /// dim im(D2) = 2 rank(B2).
  std::size_t d2_dim() const { return 2 * svd2.rank(); }
  std::size_t harmonic_dim() const { return static_cast<std::size_t>(phi_harm.cols()); }

  /// [phi_n_aligned | phi_n_anti].
  Eigen::MatrixXd phi(int n) const;
  const Eigen::MatrixXd& aligned(int n) const;
  const Eigen::MatrixXd& anti(int n) const;

  /// All eigenvalues (with zeros for the kernel), ascending.
  std::vector<double> eigenvalues() const;
};

struct EigenPair {
  int family;  ///< 1, 2, or 0 for harmonic
  Alignment alignment;
  double eigenvalue;
  Eigen::VectorXd vector;
};

/// Every eigenpair of the basis, sorted by ascending eigenvalue (stable in
/// the order d1 aligned, d1 anti, d2 aligned, d2 anti, harmonic).
std::vector<EigenPair> sorted_eigenpairs(const SpectralBasis& basis);

/**
 * Singular triplets with sigma <= rank_tol * sigma_max are treated as zero.
 * Throws NumericalError if an SVD does not converge.
 */
SpectralBasis compute_basis(const DiracOperator& op, double rank_tol = 1e-10);

struct SignalDecomposition {
  SimplicialSignal s1;
  SimplicialSignal s2;
  SimplicialSignal s_harm;
};

SignalDecomposition decompose_signal(const SpectralBasis& basis, const SimplicialSignal& s);

/// Orthogonal projection of `s` onto im(D_n).
SimplicialSignal project_image(const SpectralBasis& basis, int n, const SimplicialSignal& s);

struct BettiNumbers {
  std::size_t b0 = 0;
  std::size_t b1 = 0;
  std::size_t b2 = 0;

  std::size_t total() const { return b0 + b1 + b2; }
  friend bool operator==(const BettiNumbers&, const BettiNumbers&) = default;
};

BettiNumbers betti_numbers(const SpectralBasis& basis, const SimplicialComplex2& complex);

/**
 * The unit anti-aligned eigenvector of D_variant with the most negative
 * eigenvalue. Among equal singular values the lowest triplet index wins.
 * Throws InvalidArgument if im(D_variant) is empty.
 */
SimplicialSignal planted_eigenvector(const SpectralBasis& basis, int variant);

/// Eigenvalue of the vector returned by planted_eigenvector.
double planted_eigenvalue(const SpectralBasis& basis, int variant);

} // namespace dirac
