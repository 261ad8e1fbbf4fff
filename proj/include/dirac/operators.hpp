#pragma once

#include <cstddef>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "dirac/complex.hpp"

namespace dirac {

/// Block sizes of the stacked (node, edge, triangle) signal space.
struct BlockLayout {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t triangles = 0;

  std::size_t total() const { return nodes + edges + triangles; }
  friend bool operator==(const BlockLayout&, const BlockLayout&) = default;
};

/**
 * A signal on all simplices of a 2-complex: node values first, then edge
 * values, then triangle values, each block in the complex's canonical order.
 */
class SimplicialSignal {
public:
  SimplicialSignal() = default;
  explicit SimplicialSignal(BlockLayout layout);
  /// Throws DataError if `values` does not have layout.total() entries.
  SimplicialSignal(BlockLayout layout, Eigen::VectorXd values);

  static SimplicialSignal zeros(BlockLayout layout) { return SimplicialSignal(layout); }

  const BlockLayout& layout() const { return layout_; }
  std::size_t size() const { return layout_.total(); }

  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  auto node_block() { return values_.segment(0, idx(layout_.nodes)); }
  auto node_block() const { return values_.segment(0, idx(layout_.nodes)); }
  auto edge_block() { return values_.segment(idx(layout_.nodes), idx(layout_.edges)); }
  auto edge_block() const { return values_.segment(idx(layout_.nodes), idx(layout_.edges)); }
  auto triangle_block() {
    return values_.segment(idx(layout_.nodes + layout_.edges), idx(layout_.triangles));
  }
  auto triangle_block() const {
    return values_.segment(idx(layout_.nodes + layout_.edges), idx(layout_.triangles));
  }

  double norm() const { return values_.norm(); }

private:
  static Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

  BlockLayout layout_;
  Eigen::VectorXd values_;
};

enum class Normalization { none, spectral };

struct NormalizationRecord {
  Normalization mode = Normalization::none;
  /// B1_tilde and B2_tilde were divided by these.
  double scale1 = 1.0;
  double scale2 = 1.0;
};

/// L0, L1, L2. L1 = L1_down + L1_up.
struct HodgeLaplacians {
  SparseMatrix l0;
  SparseMatrix l1_down;
  SparseMatrix l1_up;
  SparseMatrix l1;
  SparseMatrix l2;

  /// diag(L0, L1, L2).
  SparseMatrix block_diagonal() const;
};

/**
 * The Dirac operator of a weighted 2-complex,
 *
 *     D = [ 0     B1    0  ]
 *         [ B1^T  0     B2 ]
 *         [ 0     B2^T  0  ]
 *
 * with B1, B2 the weighted (and optionally normalized) boundary matrices.
 */
class DiracOperator {
public:
  DiracOperator(SparseMatrix b1_tilde, SparseMatrix b2_tilde, NormalizationRecord normalization);

  const SparseMatrix& b1() const { return b1_; }
  const SparseMatrix& b2() const { return b2_; }
  const NormalizationRecord& normalization() const { return normalization_; }
  const BlockLayout& layout() const { return layout_; }
  std::size_t size() const { return layout_.total(); }

  /// Full operator D = D1 + D2.
  SparseMatrix matrix() const;
  /// Node/edge coupling only.
  SparseMatrix d1() const;
  /// Edge/triangle coupling only.
  SparseMatrix d2() const;
  /// D_n for n in {1, 2}.
  SparseMatrix part(int n) const;

  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix()); }

private:
  SparseMatrix b1_;
  SparseMatrix b2_;
  NormalizationRecord normalization_;
  BlockLayout layout_;
};

BlockLayout layout_of(const SimplicialComplex2& complex);

DiracOperator assemble_dirac(const SimplicialComplex2& complex, const WeightingScheme& weights,
                             Normalization normalization);
DiracOperator assemble_dirac(const SimplicialComplex2& complex,
                             Normalization normalization = Normalization::spectral);

struct DiracSplit {
  SparseMatrix d1;
  SparseMatrix d2;
};
DiracSplit dirac_split(const DiracOperator& op);

HodgeLaplacians hodge_laplacians(const DiracOperator& op);

/// D s, computed blockwise without forming D.
SimplicialSignal apply_dirac(const DiracOperator& op, const SimplicialSignal& s);

/// Largest singular value of a (possibly empty) sparse matrix.
double largest_singular_value(const SparseMatrix& m);

} // namespace dirac
