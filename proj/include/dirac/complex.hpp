#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace dirac {

using VertexId = std::uint32_t;
using SparseMatrix = Eigen::SparseMatrix<double>;

/**
 * A simplex of dimension 0, 1 or 2 stored with its vertices in strictly
 * increasing order. The increasing order is the orientation.
 */
class OrientedSimplex {
public:
  OrientedSimplex() = default;

  /// Throws InvalidArgument on an empty, oversized or non-increasing tuple.
  explicit OrientedSimplex(std::span<const VertexId> vertices);
  OrientedSimplex(std::initializer_list<VertexId> vertices);

  int dim() const { return static_cast<int>(size_) - 1; }
  std::size_t size() const { return size_; }
  VertexId operator[](std::size_t i) const { return vertices_[i]; }
  std::span<const VertexId> vertices() const { return {vertices_.data(), size_}; }

  /// The face obtained by dropping the i-th vertex.
  OrientedSimplex face(std::size_t i) const;

  /// Vertex ids joined with `sep`, e.g. "0 1 2".
  std::string label(char sep = ' ') const;

  friend bool operator==(const OrientedSimplex& a, const OrientedSimplex& b) {
    return a.vertices_ == b.vertices_ && a.size_ == b.size_;
  }
  /// Lexicographic on the vertex tuple; a proper prefix sorts first.
  friend bool operator<(const OrientedSimplex& a, const OrientedSimplex& b);

private:
  std::array<VertexId, 3> vertices_{};
  std::size_t size_ = 0;
};

/**
 * Immutable 2-dimensional simplicial complex.
 *
 * Vertices are 0..N-1. Edges and triangles are stored in lexicographic order;
 * the rank of a simplex in that order is its matrix row/column index and its
 * position inside the corresponding block of a simplicial signal.
 */
class SimplicialComplex2 {
public:
  SimplicialComplex2() = default;

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  /// N + E + T.
  std::size_t num_simplices() const {
    return num_vertices_ + edges_.size() + triangles_.size();
  }

  const std::vector<OrientedSimplex>& edges() const { return edges_; }
  const std::vector<OrientedSimplex>& triangles() const { return triangles_; }

  std::optional<std::size_t> edge_index(VertexId a, VertexId b) const;
  std::optional<std::size_t> triangle_index(VertexId a, VertexId b, VertexId c) const;
  /// Index of a simplex within its own dimension block.
  std::optional<std::size_t> index_of(const OrientedSimplex& s) const;

  /// The simplex at position `i` of the stacked (node, edge, triangle) layout.
  OrientedSimplex simplex_at(std::size_t i) const;

  /// Maximal simplices (including isolated vertices) in lexicographic order.
  std::vector<OrientedSimplex> maximal_simplices() const;

  /// Number of triangles having each edge as a face.
  std::vector<int> edge_triangle_degrees() const;

  friend bool operator==(const SimplicialComplex2&, const SimplicialComplex2&) = default;

private:
  friend SimplicialComplex2 build_complex(std::span<const std::vector<VertexId>>);
  std::size_t num_vertices_ = 0;
  std::vector<OrientedSimplex> edges_;
  std::vector<OrientedSimplex> triangles_;
};

/**
 * Builds the downward closure of `simplices`, deduplicated and sorted.
 *
 * Vertex ids are kept as given; N is one past the largest id, so unused ids
 * below the maximum become isolated vertices.
 */
SimplicialComplex2 build_complex(std::span<const std::vector<VertexId>> simplices);
SimplicialComplex2 build_complex(std::initializer_list<std::vector<VertexId>> simplices);

/// Integer boundary matrix B_k (k = 1: N x E, k = 2: E x T).
SparseMatrix boundary_matrix(const SimplicialComplex2& complex, int k);

/// Diagonal positive weights G0, G1, G2 for vertices, edges and triangles.
struct WeightingScheme {
  Eigen::VectorXd g0;
  Eigen::VectorXd g1;
  Eigen::VectorXd g2;

  static WeightingScheme unit(const SimplicialComplex2& complex);
  /// Throws InvalidArgument on size mismatch or non-positive entries.
  void validate(const SimplicialComplex2& complex) const;
};

/// G_lower^{1/2} B G_upper^{-1/2}.
SparseMatrix weighted_boundary(const SparseMatrix& boundary,
                               const Eigen::VectorXd& g_upper,
                               const Eigen::VectorXd& g_lower);

/// Parameters of the network-geometry-with-flavor growth model.
struct NgfConfig {
  int flavor = -1;
  double beta = 0.0;
  std::size_t target_triangles = 1;
  std::uint64_t seed = 0;
};

/**
 * Grows a 2-complex with flavor -1 at zero temperature: starting from one
 * triangle, repeatedly glue a new triangle (and a new vertex) onto an edge
 * picked uniformly among edges that currently bound exactly one triangle.
 */
SimplicialComplex2 ngf_generate(const NgfConfig& config);

/// A rows x cols vertex grid with each unit square split into two triangles
/// along its main diagonal.
SimplicialComplex2 triangulated_grid(std::size_t rows, std::size_t cols);

} // namespace dirac
