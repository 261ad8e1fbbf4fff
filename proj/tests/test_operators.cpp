#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "dirac/complex.hpp"
#include "dirac/error.hpp"
#include "dirac/operators.hpp"

using namespace dirac;
using Catch::Matchers::WithinAbs;

namespace {

Eigen::MatrixXd dense(const SparseMatrix& m) { return Eigen::MatrixXd(m); }

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Eigen::VectorXd sorted_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

std::vector<SimplicialComplex2> corpus() {
  std::vector<SimplicialComplex2> out{
      build_complex({{0, 1}}),
      build_complex({{0, 1, 2}}),
      build_complex({{0, 1}, {1, 2}, {0, 2}}),
      build_complex({{0, 1}, {2, 3}}),
      triangulated_grid(3, 4),
  };
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    out.push_back(ngf_generate({-1, 0.0, 10 + 25 * seed, seed}));
  }
  return out;
}

} // namespace

TEST_CASE("single-edge Dirac operator", "[operators]") {
  const auto c = build_complex({{0, 1}});
  const auto op = assemble_dirac(c, Normalization::none);
  // Oracle: [[0,0,-1],[0,0,1],[-1,1,0]] written by hand.
  Eigen::MatrixXd expected(3, 3);
  expected << 0, 0, -1, 0, 0, 1, -1, 1, 0;
  CHECK(max_abs(op.dense() - expected) == 0.0);

  const Eigen::VectorXd ev = sorted_eigenvalues(expected);
  CHECK_THAT(ev(0), WithinAbs(-std::sqrt(2.0), 1e-12));
  CHECK_THAT(ev(1), WithinAbs(0.0, 1e-12));
  CHECK_THAT(ev(2), WithinAbs(std::sqrt(2.0), 1e-12));
  CHECK_THAT(sorted_eigenvalues(op.dense())(2), WithinAbs(std::sqrt(2.0), 1e-12));

  const auto l = hodge_laplacians(op);
  REQUIRE(l.l1.rows() == 1);
  CHECK(dense(l.l1)(0, 0) == 2.0);
}

TEST_CASE("filled triangle spectrum", "[operators]") {
  const auto c = build_complex({{0, 1, 2}});
  const auto op = assemble_dirac(c, Normalization::none);
  // Frozen from a dense eigendecomposition of the hand-assembled 7x7 matrix.
  const Eigen::VectorXd ev = sorted_eigenvalues(op.dense());
  const double r3 = std::sqrt(3.0);
  const double expected[] = {-r3, -r3, -r3, 0.0, r3, r3, r3};
  for (int i = 0; i < 7; ++i) CHECK_THAT(ev(i), WithinAbs(expected[i], 1e-12));

  const auto l = hodge_laplacians(op);
  const Eigen::VectorXd l0 = sorted_eigenvalues(dense(l.l0));
  CHECK_THAT(l0(0), WithinAbs(0.0, 1e-12));
  CHECK_THAT(l0(1), WithinAbs(3.0, 1e-12));
  CHECK_THAT(l0(2), WithinAbs(3.0, 1e-12));
}

TEST_CASE("algebraic identities over a corpus", "[operators]") {
  for (const auto& c : corpus()) {
    for (auto mode : {Normalization::none, Normalization::spectral}) {
      const auto op = assemble_dirac(c, mode);
      const SparseMatrix d = op.matrix();
      const auto [d1, d2] = dirac_split(op);
      const auto l = hodge_laplacians(op);

      CHECK(max_abs(dense(d) - dense(d).transpose()) == 0.0);
      CHECK(max_abs(dense(d - d1 - d2)) == 0.0);
      CHECK(max_abs(dense(d1 * d2)) <= 1e-12);
      CHECK(max_abs(dense(d2 * d1)) <= 1e-12);
      CHECK(max_abs(dense(d * d) - dense(l.block_diagonal())) <= 1e-10);
      CHECK(max_abs(dense(l.l1) - dense(l.l1_down) - dense(l.l1_up)) <= 1e-14);

      for (const auto* lk : {&l.l0, &l.l1, &l.l2}) {
        if (lk->rows() == 0) continue;
        CHECK(sorted_eigenvalues(dense(*lk))(0) >= -1e-10);
      }
      if (mode == Normalization::spectral) {
        CHECK(sorted_eigenvalues(dense(d)).cwiseAbs().maxCoeff() <= 1.0 + 1e-10);
      }
    }
  }
}

TEST_CASE("image of one part lies in the kernel of the other", "[operators]") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  const auto c = ngf_generate({-1, 0.0, 60, 3});
  const auto op = assemble_dirac(c);
  const auto [d1, d2] = dirac_split(op);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(op.size()));
    for (auto& v : x) v = normal(rng);
    CHECK((d1 * (d2 * x)).norm() <= 1e-10 * x.norm());
    CHECK((d2 * (d1 * x)).norm() <= 1e-10 * x.norm());
  }
}

TEST_CASE("dirac_split block structure", "[operators]") {
  SECTION("no triangles means D2 = 0") {
    const auto op = assemble_dirac(build_complex({{0, 1}, {1, 2}, {0, 2}}));
    const auto [d1, d2] = dirac_split(op);
    CHECK(d2.nonZeros() == 0);
    CHECK(max_abs(dense(op.matrix() - d1)) == 0.0);
  }
  SECTION("D1 touches only nodes and edges") {
    const auto op = assemble_dirac(ngf_generate({-1, 0.0, 20, 1}));
    const auto n0 = static_cast<Eigen::Index>(op.layout().nodes);
    const auto n1 = static_cast<Eigen::Index>(op.layout().edges);
    const auto n2 = static_cast<Eigen::Index>(op.layout().triangles);
    const Eigen::MatrixXd d1 = dense(op.d1());
    const Eigen::MatrixXd d2 = dense(op.d2());
    CHECK(max_abs(d1.bottomRows(n2)) == 0.0);
    CHECK(max_abs(d1.rightCols(n2)) == 0.0);
    CHECK(max_abs(d2.topRows(n0)) == 0.0);
    CHECK(max_abs(d2.leftCols(n0)) == 0.0);
    CHECK(max_abs(d1.block(n0, n0, n1, n1)) == 0.0);
  }
}

TEST_CASE("spectral normalization records its scales", "[operators]") {
  const auto c = build_complex({{0, 1, 2}});
  const auto op = assemble_dirac(c, Normalization::spectral);
  CHECK(op.normalization().mode == Normalization::spectral);
  CHECK_THAT(op.normalization().scale1, WithinAbs(std::sqrt(3.0), 1e-12));
  CHECK_THAT(op.normalization().scale2, WithinAbs(std::sqrt(3.0), 1e-12));
  const Eigen::VectorXd ev = sorted_eigenvalues(op.dense());
  CHECK_THAT(ev(0), WithinAbs(-1.0, 1e-12));
  CHECK_THAT(ev(6), WithinAbs(1.0, 1e-12));
}

TEST_CASE("weights are validated against the complex", "[operators]") {
  const auto c = build_complex({{0, 1, 2}});
  auto w = WeightingScheme::unit(c);
  w.g1 = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(assemble_dirac(c, w, Normalization::none), InvalidArgument);
  w = WeightingScheme::unit(c);
  w.g0(1) = -1.0;
  CHECK_THROWS_AS(assemble_dirac(c, w, Normalization::none), InvalidArgument);
}

TEST_CASE("weighted spectral normalization keeps the spectrum in [-1, 1]", "[operators]") {
  const auto c = ngf_generate({-1, 0.0, 40, 8});
  auto w = WeightingScheme::unit(c);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.2, 5.0);
  for (auto* g : {&w.g0, &w.g1, &w.g2}) {
    for (auto& x : *g) x = u(rng);
  }
  const auto op = assemble_dirac(c, w, Normalization::spectral);
  CHECK(sorted_eigenvalues(op.dense()).cwiseAbs().maxCoeff() <= 1.0 + 1e-10);
  CHECK(max_abs(dense(op.d1() * op.d2())) <= 1e-12);
}

TEST_CASE("apply_dirac matches the assembled matrix", "[operators]") {
  SECTION("zero signal") {
    const auto op = assemble_dirac(build_complex({{0, 1, 2}}));
    CHECK(apply_dirac(op, SimplicialSignal::zeros(op.layout())).norm() == 0.0);
  }
  SECTION("edge indicator on a single edge") {
    const auto op = assemble_dirac(build_complex({{0, 1}}), Normalization::none);
    SimplicialSignal s(op.layout());
    s.edge_block()(0) = 1.0;
    const auto out = apply_dirac(op, s);
    CHECK(out.node_block()(0) == -1.0);
    CHECK(out.node_block()(1) == 1.0);
    CHECK(out.edge_block()(0) == 0.0);

    const auto nop = assemble_dirac(build_complex({{0, 1}}), Normalization::spectral);
    const auto scaled = apply_dirac(nop, SimplicialSignal(nop.layout(), s.values()));
    CHECK_THAT(scaled.node_block()(1), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  }
  SECTION("random signals") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> normal;
    const auto op = assemble_dirac(ngf_generate({-1, 0.0, 30, 2}));
    Eigen::VectorXd x(static_cast<Eigen::Index>(op.size()));
    for (auto& v : x) v = normal(rng);
    const auto out = apply_dirac(op, SimplicialSignal(op.layout(), x));
    CHECK((out.values() - op.matrix() * x).norm() <= 1e-13);
  }
  SECTION("harmonic signal maps to zero") {
    // Constant node signal spans ker L0 of a connected complex.
    const auto op = assemble_dirac(build_complex({{0, 1, 2}}), Normalization::none);
    SimplicialSignal s(op.layout());
    s.node_block().setConstant(1.0);
    CHECK(apply_dirac(op, s).norm() == 0.0);
  }
  SECTION("length mismatch") {
    const auto op = assemble_dirac(build_complex({{0, 1, 2}}));
    CHECK_THROWS_AS(apply_dirac(op, SimplicialSignal::zeros({3, 3, 0})), DataError);
  }
}
