#include "dirac/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dirac/error.hpp"

namespace dirac {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

/// Flip `x` (and its partner) so the largest-magnitude entry of `x` is
/// positive; the first index wins ties.
template <typename A, typename B>
void canonicalize_sign(A&& x, B&& partner) {
  if (x.size() == 0) return;
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    if (std::abs(x(i)) > std::abs(x(best))) best = i;
  }
  if (x(best) < 0.0) {
    x = -x;
    partner = -partner;
  }
}

ReducedSvd reduced_svd(const SparseMatrix& b, double rank_tol) {
  ReducedSvd out;
  if (b.rows() == 0 || b.cols() == 0) {
    out.u.resize(b.rows(), 0);
    out.v.resize(b.cols(), 0);
    out.sigma.resize(0);
    return out;
  }
  const Eigen::MatrixXd dense(b);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("SVD of boundary block failed to converge");
  }
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = rank_tol * (s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff && s(rank) > 0.0) ++rank;

  out.sigma = s.head(rank);
  out.u = svd.matrixU().leftCols(rank);
  out.v = svd.matrixV().leftCols(rank);
  for (Eigen::Index j = 0; j < rank; ++j) {
    canonicalize_sign(out.v.col(j), out.u.col(j));
  }
  return out;
}

/// Orthonormal basis of the `dim` smallest eigenvectors of a PSD matrix.
Eigen::MatrixXd kernel_basis(const SparseMatrix& laplacian, std::size_t dim) {
  const auto n = laplacian.rows();
  if (dim == 0 || n == 0) return Eigen::MatrixXd(n, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig{Eigen::MatrixXd(laplacian)};
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of Hodge Laplacian failed");
  }
  Eigen::MatrixXd k = eig.eigenvectors().leftCols(static_cast<Eigen::Index>(dim));
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    Eigen::VectorXd none(0);
    canonicalize_sign(k.col(j), none);
  }
  return k;
}

} // namespace

Eigen::MatrixXd SpectralBasis::phi(int n) const {
  const auto& a = aligned(n);
  const auto& b = anti(n);
  Eigen::MatrixXd out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

const Eigen::MatrixXd& SpectralBasis::aligned(int n) const {
  if (n == 1) return phi1_aligned;
  if (n == 2) return phi2_aligned;
  throw InvalidArgument("variant must be 1 or 2, got " + std::to_string(n));
}

const Eigen::MatrixXd& SpectralBasis::anti(int n) const {
  if (n == 1) return phi1_anti;
  if (n == 2) return phi2_anti;
  throw InvalidArgument("variant must be 1 or 2, got " + std::to_string(n));
}

std::vector<double> SpectralBasis::eigenvalues() const {
  std::vector<double> out;
  for (const auto& pair : sorted_eigenpairs(*this)) out.push_back(pair.eigenvalue);
  return out;
}

std::vector<EigenPair> sorted_eigenpairs(const SpectralBasis& basis) {
  std::vector<EigenPair> pairs;
  const auto add_family = [&](int family, const ReducedSvd& svd, const Eigen::MatrixXd& aligned,
                              const Eigen::MatrixXd& anti) {
    for (Eigen::Index j = 0; j < aligned.cols(); ++j) {
      pairs.push_back({family, Alignment::aligned, svd.sigma(j), aligned.col(j)});
    }
    for (Eigen::Index j = 0; j < anti.cols(); ++j) {
      pairs.push_back({family, Alignment::anti, -svd.sigma(j), anti.col(j)});
    }
  };
  add_family(1, basis.svd1, basis.phi1_aligned, basis.phi1_anti);
  add_family(2, basis.svd2, basis.phi2_aligned, basis.phi2_anti);
  for (Eigen::Index j = 0; j < basis.phi_harm.cols(); ++j) {
    pairs.push_back({0, Alignment::harmonic, 0.0, basis.phi_harm.col(j)});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    return a.eigenvalue < b.eigenvalue;
  });
  return pairs;
}

SpectralBasis compute_basis(const DiracOperator& op, double rank_tol) {
  if (!(rank_tol > 0.0)) {
    throw InvalidArgument("rank tolerance must be positive");
  }
  SpectralBasis basis;
  basis.layout = op.layout();
  basis.svd1 = reduced_svd(op.b1(), rank_tol);
  basis.svd2 = reduced_svd(op.b2(), rank_tol);

  const auto n0 = static_cast<Eigen::Index>(basis.layout.nodes);
  const auto n1 = static_cast<Eigen::Index>(basis.layout.edges);
  const auto n2 = static_cast<Eigen::Index>(basis.layout.triangles);
  const auto total = n0 + n1 + n2;

  const auto r1 = static_cast<Eigen::Index>(basis.svd1.rank());
  basis.phi1_aligned = Eigen::MatrixXd::Zero(total, r1);
  basis.phi1_anti = Eigen::MatrixXd::Zero(total, r1);
  basis.phi1_aligned.middleRows(0, n0) = basis.svd1.u * kInvSqrt2;
  basis.phi1_aligned.middleRows(n0, n1) = basis.svd1.v * kInvSqrt2;
  basis.phi1_anti.middleRows(0, n0) = basis.svd1.u * kInvSqrt2;
  basis.phi1_anti.middleRows(n0, n1) = -basis.svd1.v * kInvSqrt2;

  const auto r2 = static_cast<Eigen::Index>(basis.svd2.rank());
  basis.phi2_aligned = Eigen::MatrixXd::Zero(total, r2);
  basis.phi2_anti = Eigen::MatrixXd::Zero(total, r2);
  basis.phi2_aligned.middleRows(n0, n1) = basis.svd2.u * kInvSqrt2;
  basis.phi2_aligned.middleRows(n0 + n1, n2) = basis.svd2.v * kInvSqrt2;
  basis.phi2_anti.middleRows(n0, n1) = basis.svd2.u * kInvSqrt2;
  basis.phi2_anti.middleRows(n0 + n1, n2) = -basis.svd2.v * kInvSqrt2;

  basis.harm_nodes = static_cast<std::size_t>(n0 - r1);
  basis.harm_edges = static_cast<std::size_t>(n1 - r1 - r2);
  basis.harm_triangles = static_cast<std::size_t>(n2 - r2);

  const HodgeLaplacians l = hodge_laplacians(op);
  const Eigen::MatrixXd k0 = kernel_basis(l.l0, basis.harm_nodes);
  const Eigen::MatrixXd k1 = kernel_basis(l.l1, basis.harm_edges);
  const Eigen::MatrixXd k2 = kernel_basis(l.l2, basis.harm_triangles);
  basis.phi_harm = Eigen::MatrixXd::Zero(total, k0.cols() + k1.cols() + k2.cols());
  basis.phi_harm.block(0, 0, n0, k0.cols()) = k0;
  basis.phi_harm.block(n0, k0.cols(), n1, k1.cols()) = k1;
  basis.phi_harm.block(n0 + n1, k0.cols() + k1.cols(), n2, k2.cols()) = k2;
  return basis;
}

SimplicialSignal project_image(const SpectralBasis& basis, int n, const SimplicialSignal& s) {
  if (!(s.layout() == basis.layout)) {
    throw DataError("signal length " + std::to_string(s.size()) +
                    " does not match basis size " + std::to_string(basis.layout.total()));
  }
  const auto& a = basis.aligned(n);
  const auto& b = basis.anti(n);
  Eigen::VectorXd out = a * (a.transpose() * s.values()) + b * (b.transpose() * s.values());
  return SimplicialSignal(basis.layout, std::move(out));
}

SignalDecomposition decompose_signal(const SpectralBasis& basis, const SimplicialSignal& s) {
  SignalDecomposition d{project_image(basis, 1, s), project_image(basis, 2, s),
                        SimplicialSignal(basis.layout)};
  d.s_harm.values() = basis.phi_harm * (basis.phi_harm.transpose() * s.values());
  return d;
}

BettiNumbers betti_numbers(const SpectralBasis& basis, const SimplicialComplex2& complex) {
  if (!(basis.layout == layout_of(complex))) {
    throw InvalidArgument("betti_numbers: basis was not computed on this complex");
  }
  const std::size_t r1 = basis.svd1.rank();
  const std::size_t r2 = basis.svd2.rank();
  return {complex.num_vertices() - r1, complex.num_edges() - r1 - r2,
          complex.num_triangles() - r2};
}

SimplicialSignal planted_eigenvector(const SpectralBasis& basis, int variant) {
  const auto& anti = basis.anti(variant);
  if (anti.cols() == 0) {
    throw InvalidArgument("im(D" + std::to_string(variant) + ") is empty");
  }
  // Singular values are descending, so column 0 is the extremal one and
  // also the lowest index among ties.
  return SimplicialSignal(basis.layout, anti.col(0));
}

double planted_eigenvalue(const SpectralBasis& basis, int variant) {
  const auto& svd = (variant == 1) ? basis.svd1 : basis.svd2;
  if (variant != 1 && variant != 2) {
    throw InvalidArgument("variant must be 1 or 2, got " + std::to_string(variant));
  }
  if (svd.rank() == 0) {
    throw InvalidArgument("im(D" + std::to_string(variant) + ") is empty");
  }
  return -svd.sigma(0);
}

} // namespace dirac
