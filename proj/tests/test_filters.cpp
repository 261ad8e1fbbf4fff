#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "dirac/complex.hpp"
#include "dirac/error.hpp"
#include "dirac/filters.hpp"
#include "dirac/spectral.hpp"

using namespace dirac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Eigen::MatrixXd dense(const SparseMatrix& m) { return Eigen::MatrixXd(m); }

Eigen::VectorXd random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (auto& v : x) v = normal(rng);
  return x;
}

FilterSpec spec_of(int variant, double z, double gamma) {
  FilterSpec s;
  s.variant = variant;
  s.z = z;
  s.gamma = gamma;
  return s;
}

} // namespace

TEST_CASE("FilterSpec validation", "[filters]") {
  CHECK_NOTHROW(spec_of(1, 0.95, 1.0).validate());
  CHECK_THROWS_AS(spec_of(1, 1.0, 1.0).validate(), InvalidArgument);
  CHECK_THROWS_AS(spec_of(2, -1.0, 1.0).validate(), InvalidArgument);
  CHECK_THROWS_AS(spec_of(1, 0.0, -0.1).validate(), InvalidArgument);
  CHECK_THROWS_AS(spec_of(3, 0.0, 1.0).validate(), InvalidArgument);
}

TEST_CASE("build_regularizer", "[filters]") {
  const auto c = ngf_generate({-1, 0.0, 30, 21});
  const auto op = assemble_dirac(c);
  const auto l = hodge_laplacians(op);

  SECTION("z = 0 gives diag(L0, L1_down, 0)") {
    const Eigen::MatrixXd q = dense(build_regularizer(op, spec_of(1, 0.0, 1.0)));
    const auto n0 = static_cast<Eigen::Index>(op.layout().nodes);
    const auto n1 = static_cast<Eigen::Index>(op.layout().edges);
    const auto n2 = static_cast<Eigen::Index>(op.layout().triangles);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(q.rows(), q.cols());
    expected.block(0, 0, n0, n0) = dense(l.l0);
    expected.block(n0, n0, n1, n1) = dense(l.l1_down);
    CHECK((q - expected).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(q.bottomRows(n2).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("functional calculus on eigenvectors") {
    const auto basis = compute_basis(op);
    for (int n : {1, 2}) {
      for (double z : {-0.95, 0.3, 0.95}) {
        const Eigen::MatrixXd q = dense(build_regularizer(op, spec_of(n, z, 1.0)));
        CHECK((q - q.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
        for (Eigen::Index j = 0; j < basis.aligned(n).cols(); ++j) {
          const double s = (n == 1 ? basis.svd1 : basis.svd2).sigma(j);
          for (double lambda : {s, -s}) {
            const Eigen::VectorXd phi =
                lambda > 0 ? basis.aligned(n).col(j) : basis.anti(n).col(j);
            const double expected = lambda * lambda - z * lambda * lambda * lambda;
            CHECK((q * phi - expected * phi).norm() <= 1e-10);
          }
        }
      }
    }
  }
  SECTION("z = 0.95 on a normalized operator is PSD") {
    for (int n : {1, 2}) {
      const Eigen::MatrixXd q = dense(build_regularizer(op, spec_of(n, 0.95, 1.0)));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q, Eigen::EigenvaluesOnly);
      CHECK(eig.eigenvalues()(0) >= -1e-10);
    }
  }
  SECTION("general coefficients") {
    FilterSpec general;
    general.a = {0.0, 0.0, 1.0};
    general.b = {0.0, 0.0, 2.0};
    const Eigen::MatrixXd q = dense(build_regularizer(op, general));
    const Eigen::MatrixXd d1 = dense(op.d1()), d2 = dense(op.d2());
    CHECK((q - (d1 * d1 + 2.0 * d2 * d2)).cwiseAbs().maxCoeff() <= 1e-12);

    FilterSpec indefinite;
    indefinite.a = {0.0, 1.0};
    CHECK_THROWS_AS(build_regularizer(op, indefinite), InvalidArgument);
  }
}

TEST_CASE("frequency_response", "[filters]") {
  CHECK(frequency_response(spec_of(1, 0.7, 3.0), 0.0) == 1.0);
  for (double lambda : {0.1, 0.5, 1.0}) {
    CHECK(frequency_response(spec_of(1, 0.0, 2.0), lambda) ==
          frequency_response(spec_of(1, 0.0, 2.0), -lambda));
    // z > 0 suppresses the negative (anti-aligned) side more.
    CHECK(frequency_response(spec_of(1, 0.95, 2.0), -lambda) <
          frequency_response(spec_of(1, 0.95, 2.0), lambda));
    CHECK(frequency_response(spec_of(1, -0.95, 2.0), -lambda) >
          frequency_response(spec_of(1, -0.95, 2.0), lambda));
    // Mirror symmetry in (z, lambda).
    CHECK_THAT(frequency_response(spec_of(1, 0.4, 2.0), lambda),
               WithinRel(frequency_response(spec_of(1, -0.4, 2.0), -lambda), 1e-15));
  }
  // Frozen from 1 / (1 + 2.82 (1 - z lambda^3)) evaluated at lambda = -1, +1.
  CHECK_THAT(frequency_response(spec_of(1, -0.95, 2.82), -1.0),
             WithinAbs(0.8764241893076249, 1e-15));
  CHECK_THAT(frequency_response(spec_of(1, -0.95, 2.82), 1.0),
             WithinAbs(0.1538698261270965, 1e-15));
}

TEST_CASE("apply_filter", "[filters]") {
  const auto c = ngf_generate({-1, 0.0, 40, 33});
  const auto op = assemble_dirac(c);
  const auto basis = compute_basis(op);
  std::mt19937_64 rng(101);

  SECTION("gamma = 0 is the identity") {
    const SimplicialSignal s(op.layout(), random_vector(op.size(), rng));
    const auto out = apply_filter(op, spec_of(1, 0.5, 0.0), s);
    CHECK(out.s_hat.values() == s.values());
    CHECK(out.solve_residual == 0.0);
  }
  SECTION("harmonic signals pass through") {
    const SimplicialSignal h(op.layout(), basis.phi_harm * random_vector(basis.harmonic_dim(), rng));
    for (int n : {1, 2}) {
      for (double z : {-0.95, 0.0, 0.95}) {
        for (double gamma : {0.1, 10.0, 100.0}) {
          const auto out = apply_filter(op, spec_of(n, z, gamma), h);
          CHECK((out.s_hat.values() - h.values()).norm() <= 1e-10);
        }
      }
    }
  }
  SECTION("eigenvector responses match the closed form") {
    for (int n : {1, 2}) {
      const auto spec = spec_of(n, -0.95, 2.82);
      const IirFilter filter(op, spec);
      for (const auto& pair : sorted_eigenpairs(basis)) {
        const auto out = filter.apply(SimplicialSignal(op.layout(), pair.vector));
        const double expected =
            pair.family == n ? frequency_response(spec, pair.eigenvalue) : 1.0;
        CHECK((out.s_hat.values() - expected * pair.vector).norm() <= 1e-8);
      }
    }
  }
  SECTION("optimality, energy decrease, and non-interaction") {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + trial % 2;
      const double z = std::uniform_real_distribution<double>(-0.99, 0.99)(rng);
      const double gamma = std::pow(10.0, std::uniform_real_distribution<double>(-2, 2)(rng));
      const auto spec = spec_of(n, z, gamma);
      const SimplicialSignal s(op.layout(), random_vector(op.size(), rng));
      const auto out = apply_filter(op, spec, s);
      const SparseMatrix q = build_regularizer(op, spec);

      CHECK(out.solve_residual <= 1e-8);
      const Eigen::VectorXd grad = out.s_hat.values() + gamma * (q * out.s_hat.values()) -
                                   s.values();
      CHECK(grad.norm() <= 1e-8 * s.norm());
      CHECK(out.s_hat.values().dot(q * out.s_hat.values()) <=
            s.values().dot(q * s.values()) + 1e-8);

      const int other = 3 - n;
      const auto before = project_image(basis, other, s);
      const auto after = project_image(basis, other, out.s_hat);
      CHECK((before.values() - after.values()).norm() <= 1e-8);
    }
  }
  SECTION("unnormalized operator with large z and gamma breaks down") {
    const auto raw = assemble_dirac(c, Normalization::none);
    CHECK_THROWS_AS(IirFilter(raw, spec_of(1, 0.95, 100.0)), NumericalError);
  }
  SECTION("length mismatch") {
    CHECK_THROWS_AS(apply_filter(op, spec_of(1, 0.0, 1.0), SimplicialSignal::zeros({1, 0, 0})),
                    DataError);
  }
}
