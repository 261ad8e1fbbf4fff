#include "dirac/complex.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "dirac/error.hpp"

namespace dirac {

OrientedSimplex::OrientedSimplex(std::span<const VertexId> vertices) {
  if (vertices.empty()) {
    throw InvalidArgument("empty simplex");
  }
  if (vertices.size() > 3) {
    throw InvalidArgument("simplex with " + std::to_string(vertices.size()) +
                          " vertices: dimension > 2 is not supported");
  }
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i] <= vertices[i - 1]) {
      throw InvalidArgument("simplex vertices must be strictly increasing");
    }
  }
  std::copy(vertices.begin(), vertices.end(), vertices_.begin());
  size_ = vertices.size();
}

OrientedSimplex::OrientedSimplex(std::initializer_list<VertexId> vertices)
    : OrientedSimplex(std::span<const VertexId>(vertices.begin(), vertices.size())) {}

OrientedSimplex OrientedSimplex::face(std::size_t i) const {
  std::array<VertexId, 2> rest{};
  std::size_t n = 0;
  for (std::size_t j = 0; j < size_; ++j) {
    if (j != i) rest[n++] = vertices_[j];
  }
  return OrientedSimplex(std::span<const VertexId>(rest.data(), n));
}

std::string OrientedSimplex::label(char sep) const {
  std::string out;
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) out += sep;
    out += std::to_string(vertices_[i]);
  }
  return out;
}

bool operator<(const OrientedSimplex& a, const OrientedSimplex& b) {
  return std::lexicographical_compare(a.vertices_.begin(), a.vertices_.begin() + a.size_,
                                      b.vertices_.begin(), b.vertices_.begin() + b.size_);
}

std::optional<std::size_t> SimplicialComplex2::index_of(const OrientedSimplex& s) const {
  const auto find_in = [&](const std::vector<OrientedSimplex>& list) -> std::optional<std::size_t> {
    auto it = std::lower_bound(list.begin(), list.end(), s);
    if (it == list.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - list.begin());
  };
  switch (s.dim()) {
    case 0:
      if (s[0] < num_vertices_) return s[0];
      return std::nullopt;
    case 1:
      return find_in(edges_);
    case 2:
      return find_in(triangles_);
    default:
      return std::nullopt;
  }
}

std::optional<std::size_t> SimplicialComplex2::edge_index(VertexId a, VertexId b) const {
  if (a >= b) return std::nullopt;
  return index_of(OrientedSimplex{a, b});
}

std::optional<std::size_t> SimplicialComplex2::triangle_index(VertexId a, VertexId b,
                                                             VertexId c) const {
  if (a >= b || b >= c) return std::nullopt;
  return index_of(OrientedSimplex{a, b, c});
}

OrientedSimplex SimplicialComplex2::simplex_at(std::size_t i) const {
  if (i < num_vertices_) return OrientedSimplex{static_cast<VertexId>(i)};
  i -= num_vertices_;
  if (i < edges_.size()) return edges_[i];
  i -= edges_.size();
  if (i < triangles_.size()) return triangles_[i];
  throw InvalidArgument("simplex index out of range");
}

std::vector<int> SimplicialComplex2::edge_triangle_degrees() const {
  std::vector<int> degree(edges_.size(), 0);
  for (const auto& t : triangles_) {
    for (std::size_t i = 0; i < 3; ++i) {
      ++degree[*index_of(t.face(i))];
    }
  }
  return degree;
}

std::vector<OrientedSimplex> SimplicialComplex2::maximal_simplices() const {
  std::vector<char> vertex_covered(num_vertices_, 0);
  std::vector<char> edge_covered(edges_.size(), 0);
  for (const auto& t : triangles_) {
    for (std::size_t i = 0; i < 3; ++i) edge_covered[*index_of(t.face(i))] = 1;
  }
  for (const auto& e : edges_) {
    vertex_covered[e[0]] = 1;
    vertex_covered[e[1]] = 1;
  }

  std::vector<OrientedSimplex> out(triangles_);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (!edge_covered[i]) out.push_back(edges_[i]);
  }
  for (std::size_t v = 0; v < num_vertices_; ++v) {
    if (!vertex_covered[v]) out.push_back(OrientedSimplex{static_cast<VertexId>(v)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

SimplicialComplex2 build_complex(std::span<const std::vector<VertexId>> simplices) {
  SimplicialComplex2 complex;
  std::size_t max_vertex_plus_one = 0;
  for (const auto& tuple : simplices) {
    if (tuple.size() > 3) {
      throw InvalidArgument("simplex with " + std::to_string(tuple.size()) +
                            " vertices: dimension > 2 is not supported");
    }
    if (tuple.empty()) throw InvalidArgument("empty simplex");

    std::vector<VertexId> sorted(tuple);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidArgument("repeated vertex in simplex");
    }
    const OrientedSimplex s(sorted);
    max_vertex_plus_one = std::max<std::size_t>(max_vertex_plus_one, sorted.back() + 1u);

    if (s.dim() == 2) {
      complex.triangles_.push_back(s);
      for (std::size_t i = 0; i < 3; ++i) complex.edges_.push_back(s.face(i));
    } else if (s.dim() == 1) {
      complex.edges_.push_back(s);
    }
  }
  const auto sort_unique = [](std::vector<OrientedSimplex>& list) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  };
  sort_unique(complex.edges_);
  sort_unique(complex.triangles_);
  complex.num_vertices_ = max_vertex_plus_one;
  return complex;
}

SimplicialComplex2 build_complex(std::initializer_list<std::vector<VertexId>> simplices) {
  const std::vector<std::vector<VertexId>> list(simplices);
  return build_complex(std::span<const std::vector<VertexId>>(list));
}

SparseMatrix boundary_matrix(const SimplicialComplex2& complex, int k) {
  if (k != 1 && k != 2) {
    throw InvalidArgument("boundary_matrix: k must be 1 or 2, got " + std::to_string(k));
  }
  const auto& columns = (k == 1) ? complex.edges() : complex.triangles();
  const auto rows = static_cast<Eigen::Index>(k == 1 ? complex.num_vertices()
                                                     : complex.num_edges());

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(columns.size() * static_cast<std::size_t>(k + 1));
  for (std::size_t col = 0; col < columns.size(); ++col) {
    const auto& s = columns[col];
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      const auto row = *complex.index_of(s.face(i));
      entries.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col),
                           sign);
    }
  }
  SparseMatrix b(rows, static_cast<Eigen::Index>(columns.size()));
  b.setFromTriplets(entries.begin(), entries.end());
  return b;
}

WeightingScheme WeightingScheme::unit(const SimplicialComplex2& complex) {
  return {Eigen::VectorXd::Ones(static_cast<Eigen::Index>(complex.num_vertices())),
          Eigen::VectorXd::Ones(static_cast<Eigen::Index>(complex.num_edges())),
          Eigen::VectorXd::Ones(static_cast<Eigen::Index>(complex.num_triangles()))};
}

void WeightingScheme::validate(const SimplicialComplex2& complex) const {
  const auto check = [](const Eigen::VectorXd& g, std::size_t expected, const char* name) {
    if (static_cast<std::size_t>(g.size()) != expected) {
      throw InvalidArgument(std::string("weight vector ") + name + " has length " +
                            std::to_string(g.size()) + ", expected " +
                            std::to_string(expected));
    }
    if (g.size() > 0 && !(g.minCoeff() > 0.0)) {
      throw InvalidArgument(std::string("weight vector ") + name + " must be strictly positive");
    }
  };
  check(g0, complex.num_vertices(), "G0");
  check(g1, complex.num_edges(), "G1");
  check(g2, complex.num_triangles(), "G2");
}

SparseMatrix weighted_boundary(const SparseMatrix& boundary, const Eigen::VectorXd& g_upper,
                               const Eigen::VectorXd& g_lower) {
  if (g_upper.size() != boundary.cols() || g_lower.size() != boundary.rows()) {
    throw InvalidArgument("weighted_boundary: weight lengths do not match the boundary shape");
  }
  if ((g_upper.size() > 0 && !(g_upper.minCoeff() > 0.0)) ||
      (g_lower.size() > 0 && !(g_lower.minCoeff() > 0.0))) {
    throw InvalidArgument("weighted_boundary: weights must be strictly positive");
  }
  const Eigen::VectorXd left = g_lower.cwiseSqrt();
  const Eigen::VectorXd right = g_upper.cwiseSqrt().cwiseInverse();
  SparseMatrix out = left.asDiagonal() * boundary * right.asDiagonal();
  out.makeCompressed();
  return out;
}

SimplicialComplex2 ngf_generate(const NgfConfig& config) {
  if (config.flavor != -1 || config.beta != 0.0) {
    throw InvalidArgument("ngf_generate: only flavor -1 with beta 0 is supported");
  }
  if (config.target_triangles == 0) {
    throw InvalidArgument("ngf_generate: target_triangles must be positive");
  }

  std::vector<std::vector<VertexId>> triangles{{0, 1, 2}};
  // Edges bounding exactly one triangle; the only ones that can grow.
  std::vector<std::pair<VertexId, VertexId>> free_edges{{0, 1}, {0, 2}, {1, 2}};
  std::mt19937_64 rng(config.seed);
  VertexId next_vertex = 3;

  while (triangles.size() < config.target_triangles) {
    std::uniform_int_distribution<std::size_t> pick(0, free_edges.size() - 1);
    const std::size_t idx = pick(rng);
    const auto [a, b] = free_edges[idx];
    free_edges[idx] = free_edges.back();
    free_edges.pop_back();

    const VertexId v = next_vertex++;
    triangles.push_back({a, b, v});
    free_edges.emplace_back(a, v);
    free_edges.emplace_back(b, v);
  }
  return build_complex(std::span<const std::vector<VertexId>>(triangles));
}

SimplicialComplex2 triangulated_grid(std::size_t rows, std::size_t cols) {
  if (rows < 2 || cols < 2) {
    throw InvalidArgument("triangulated_grid: need at least 2 x 2 vertices");
  }
  std::vector<std::vector<VertexId>> triangles;
  const auto id = [cols](std::size_t r, std::size_t c) {
    return static_cast<VertexId>(r * cols + c);
  };
  for (std::size_t r = 0; r + 1 < rows; ++r) {
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      triangles.push_back({id(r, c), id(r, c + 1), id(r + 1, c + 1)});
      triangles.push_back({id(r, c), id(r + 1, c), id(r + 1, c + 1)});
    }
  }
  return build_complex(std::span<const std::vector<VertexId>>(triangles));
}

} // namespace dirac
