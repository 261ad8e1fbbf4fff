#include "dirac/operators.hpp"

#include <Eigen/SVD>

#include "dirac/error.hpp"

namespace dirac {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void append_block(Triplets& out, const SparseMatrix& block, Eigen::Index row0, Eigen::Index col0,
                  bool transpose) {
  for (Eigen::Index k = 0; k < block.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(block, k); it; ++it) {
      if (transpose) {
        out.emplace_back(col0 + it.col(), row0 + it.row(), it.value());
      } else {
        out.emplace_back(row0 + it.row(), col0 + it.col(), it.value());
      }
    }
  }
}

SparseMatrix from_triplets(Eigen::Index n, const Triplets& entries) {
  SparseMatrix m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

} // namespace

SimplicialSignal::SimplicialSignal(BlockLayout layout)
    : layout_(layout), values_(Eigen::VectorXd::Zero(idx(layout.total()))) {}

SimplicialSignal::SimplicialSignal(BlockLayout layout, Eigen::VectorXd values)
    : layout_(layout), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != layout_.total()) {
    throw DataError("signal has " + std::to_string(values_.size()) + " entries, expected " +
                    std::to_string(layout_.total()));
  }
}

SparseMatrix HodgeLaplacians::block_diagonal() const {
  const Eigen::Index n0 = l0.rows();
  const Eigen::Index n1 = l1.rows();
  Triplets entries;
  entries.reserve(static_cast<std::size_t>(l0.nonZeros() + l1.nonZeros() + l2.nonZeros()));
  append_block(entries, l0, 0, 0, false);
  append_block(entries, l1, n0, n0, false);
  append_block(entries, l2, n0 + n1, n0 + n1, false);
  return from_triplets(n0 + n1 + l2.rows(), entries);
}

DiracOperator::DiracOperator(SparseMatrix b1_tilde, SparseMatrix b2_tilde,
                             NormalizationRecord normalization)
    : b1_(std::move(b1_tilde)), b2_(std::move(b2_tilde)), normalization_(normalization) {
  if (b1_.cols() != b2_.rows()) {
    throw InvalidArgument("DiracOperator: B1 has " + std::to_string(b1_.cols()) +
                          " columns but B2 has " + std::to_string(b2_.rows()) + " rows");
  }
  layout_ = {static_cast<std::size_t>(b1_.rows()), static_cast<std::size_t>(b1_.cols()),
             static_cast<std::size_t>(b2_.cols())};
}

SparseMatrix DiracOperator::part(int n) const {
  if (n != 1 && n != 2) {
    throw InvalidArgument("Dirac part must be 1 or 2, got " + std::to_string(n));
  }
  const auto n0 = static_cast<Eigen::Index>(layout_.nodes);
  Triplets entries;
  if (n == 1) {
    append_block(entries, b1_, 0, n0, false);
    append_block(entries, b1_, 0, n0, true);
  } else {
    const auto n1 = static_cast<Eigen::Index>(layout_.edges);
    append_block(entries, b2_, n0, n0 + n1, false);
    append_block(entries, b2_, n0, n0 + n1, true);
  }
  return from_triplets(static_cast<Eigen::Index>(size()), entries);
}

SparseMatrix DiracOperator::d1() const { return part(1); }
SparseMatrix DiracOperator::d2() const { return part(2); }

SparseMatrix DiracOperator::matrix() const {
  const auto n0 = static_cast<Eigen::Index>(layout_.nodes);
  const auto n1 = static_cast<Eigen::Index>(layout_.edges);
  Triplets entries;
  entries.reserve(static_cast<std::size_t>(2 * (b1_.nonZeros() + b2_.nonZeros())));
  append_block(entries, b1_, 0, n0, false);
  append_block(entries, b1_, 0, n0, true);
  append_block(entries, b2_, n0, n0 + n1, false);
  append_block(entries, b2_, n0, n0 + n1, true);
  return from_triplets(static_cast<Eigen::Index>(size()), entries);
}

BlockLayout layout_of(const SimplicialComplex2& complex) {
  return {complex.num_vertices(), complex.num_edges(), complex.num_triangles()};
}

double largest_singular_value(const SparseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0 || m.nonZeros() == 0) return 0.0;
  const Eigen::MatrixXd dense(m);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense);
  return svd.singularValues()(0);
}

DiracOperator assemble_dirac(const SimplicialComplex2& complex, const WeightingScheme& weights,
                             Normalization normalization) {
  weights.validate(complex);
  SparseMatrix b1 = weighted_boundary(boundary_matrix(complex, 1), weights.g1, weights.g0);
  SparseMatrix b2 = weighted_boundary(boundary_matrix(complex, 2), weights.g2, weights.g1);

  NormalizationRecord record{normalization, 1.0, 1.0};
  if (normalization == Normalization::spectral) {
    // Zero blocks (no edges, no triangles) are left unscaled.
    const auto scale_of = [](const SparseMatrix& b) {
      const double s = largest_singular_value(b);
      return s > 1e-300 ? s : 1.0;
    };
    record.scale1 = scale_of(b1);
    record.scale2 = scale_of(b2);
    b1 /= record.scale1;
    b2 /= record.scale2;
  }
  return DiracOperator(std::move(b1), std::move(b2), record);
}

DiracOperator assemble_dirac(const SimplicialComplex2& complex, Normalization normalization) {
  return assemble_dirac(complex, WeightingScheme::unit(complex), normalization);
}

DiracSplit dirac_split(const DiracOperator& op) { return {op.d1(), op.d2()}; }

HodgeLaplacians hodge_laplacians(const DiracOperator& op) {
  HodgeLaplacians l;
  const SparseMatrix b1t = op.b1().transpose();
  const SparseMatrix b2t = op.b2().transpose();
  l.l0 = op.b1() * b1t;
  l.l1_down = b1t * op.b1();
  l.l1_up = op.b2() * b2t;
  l.l1 = l.l1_down + l.l1_up;
  l.l2 = b2t * op.b2();
  return l;
}

SimplicialSignal apply_dirac(const DiracOperator& op, const SimplicialSignal& s) {
  if (!(s.layout() == op.layout())) {
    throw DataError("apply_dirac: signal length " + std::to_string(s.size()) +
                    " does not match operator size " + std::to_string(op.size()));
  }
  SimplicialSignal out(op.layout());
  out.node_block() = op.b1() * s.edge_block();
  out.edge_block() = op.b1().transpose() * s.node_block() + op.b2() * s.triangle_block();
  out.triangle_block() = op.b2().transpose() * s.edge_block();
  return out;
}

} // namespace dirac
