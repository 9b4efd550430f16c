#include "helpers.hpp"
#include "zgv/refine.hpp"

using namespace zgv;
using namespace zgv::test;

TEST_CASE("init_vectors_svd: generic point takes the last singular pair") {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a.diagonal() << 3.0, 2.0, 1.0;
  const BivariatePencil p(a, ComplexMatrix::Identity(3, 3), ComplexMatrix::Zero(3, 3));
  const auto [x, y] = init_vectors_svd(p, 0.0, 0.0, 1);
  CHECK(std::abs(x(2)) == doctest::Approx(1.0));
  CHECK(std::abs(y(2)) == doctest::Approx(1.0));
}

TEST_CASE("init_vectors_svd: two-dimensional branch at a type-d point") {
  const BivariatePencil p = load_pencil("ex4x4.json");
  const auto [x, y] = init_vectors_svd(p, -1.0, 0.0, 3);
  CHECK(x.norm() == doctest::Approx(1.0));
  CHECK(y.norm() == doctest::Approx(1.0));
  CHECK(std::abs(y.dot(p.B() * x)) <= 1e-10);
  CHECK((p.evaluate(-1.0, 0.0) * x).norm() <= 1e-10 * p.scale(-1.0, 0.0));
}

TEST_CASE("Gauss-Newton at an exact ZGV point is a fixed point") {
  const BivariatePencil p = load_pencil("ex2x2.json");
  const auto [x, y] = init_vectors_svd(p, 1.0, -0.5, 1);
  const GaussNewtonResult r = gauss_newton_2d(p, 1.0, -0.5, x, y);
  CHECK(r.state.converged);
  CHECK(r.state.iteration <= 2);
  CHECK(r.state.residual_norm <= 1e-14 * p.scale(1.0, -0.5));
  CHECK(r.point.kind == PointKind::ZGV);
}

TEST_CASE("Gauss-Newton from the MFRD candidate converges quadratically") {
  const BivariatePencil p = load_pencil("ex2x2.json");
  const auto [x, y] = init_vectors_svd(p, 0.99503, -0.49999, 1);
  const GaussNewtonState s = gauss_newton_iterate(p, 0.99503, -0.49999, x, y);
  CHECK(s.converged);
  CHECK(dist(s.lambda, s.mu, 1.0, -0.5) <= 1e-12);
  const double floor = 100 * std::numeric_limits<double>::epsilon() * p.scale(1.0, -0.5);
  CHECK(convergence_order(s.trace, floor) >= 1.8);
  CHECK(jacobian_condition(p, s) >= 1e-8);
  CHECK(gn_jacobian(p, s).rows() == 2 * p.n() + 3);
  CHECK(gn_jacobian(p, s).cols() == 2 * p.n() + 2);
  CHECK(gn_residual(p, s).norm() <= 1e-12 * p.scale(s.lambda, s.mu));
}

TEST_CASE("Gauss-Newton near a type-d intersection") {
  const BivariatePencil p = load_pencil("ex4x4.json");
  const auto [x, y] = init_vectors_svd(p, -1.0 + 1e-3, 1e-3, 2);
  try {
    const GaussNewtonState s = gauss_newton_iterate(p, -1.0 + 1e-3, 1e-3, x, y);
    CHECK(s.residual_norm <= 1e-8 * p.scale(s.lambda, s.mu));
  } catch (const GaussNewtonError& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
    CHECK_FALSE(e.state().trace.empty());
  }
}

TEST_CASE("Gauss-Newton reports NoConvergence with its trace") {
  const BivariatePencil p = load_pencil("ex2x2.json");
  GaussNewtonOptions o;
  o.max_iter = 1;
  const auto [x, y] = init_vectors_svd(p, 0.9, -0.4, 1);
  try {
    gauss_newton_iterate(p, 0.9, -0.4, x, y, std::nullopt, std::nullopt, o);
    CHECK(false);
  } catch (const GaussNewtonError& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
    CHECK(e.state().trace.size() >= 1);
  }
}

TEST_CASE("convergence_order needs three residuals") {
  CHECK(std::isnan(convergence_order({{1.0, 0}, {0.1, 0}}, 0.0)));
  // 1e-1, 1e-2, 1e-4, 1e-8: order 2
  CHECK(convergence_order({{1e-1, 0}, {1e-2, 0}, {1e-4, 0}, {1e-8, 0}}, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("mfrd_candidates on the 2x2 example") {
  const BivariatePencil p = load_pencil("ex2x2.json");
  const auto c = mfrd_candidates(p, 1e-2);
  REQUIRE(c.size() == 4);
  int spurious = 0;
  bool c1 = false, c2 = false;
  for (const auto& m : c) {
    spurious += m.suspected_spurious;
    c1 = c1 || dist(m.lambda, m.mu, 0.99503, -0.49999) <= 1e-5;
    c2 = c2 || dist(m.lambda, m.mu, 2.98504, 1.49996) <= 1e-5;
  }
  CHECK(spurious == 2);
  CHECK(c1);
  CHECK(c2);
  try {
    mfrd_candidates(p, 0.0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularDelta0);
  }
}

TEST_CASE("mfrd on a pencil without 2D points") {
  // det = prod (a_i + lambda + mu): parallel lines, no 2D points. The MFRD 2EP
  // has the n spurious (0, -a_i) solutions and, for i != j, lambda = (a_i - a_j) / delta,
  // which Gauss-Newton cannot turn into 2D points.
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a.diagonal() << 1.0, 2.0, 3.0;
  const BivariatePencil p(a, ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3));
  const auto c = mfrd_candidates(p, 1e-2);
  REQUIRE(c.size() == 9);
  int spurious = 0;
  for (const auto& m : c) {
    if (m.suspected_spurious) {
      ++spurious;
    } else {
      CHECK(std::abs(m.lambda) >= 99.0);
    }
  }
  CHECK(spurious == 3);
  CHECK(mfrd_refine_all(p, 1e-2, Mode::All2D, 1).points.empty());
}

TEST_CASE("mfrd_refine_all") {
  const PipelineReport r = mfrd_refine_all(load_pencil("ex2x2.json"), 1e-2, Mode::ZGV, 1);
  REQUIRE(r.points.size() == 2);
  CHECK(dist(r.points[0].lambda, r.points[0].mu, 1.0, -0.5) <= 1e-12);
  CHECK(dist(r.points[1].lambda, r.points[1].mu, 3.0, 1.5) <= 1e-12);

  const PipelineReport f = mfrd_refine_all(load_pencil("ex4x4.json"), 1e-2, Mode::All2D, 1);
  CHECK(f.points.size() == 9);

  // (0, 0) lies on the spurious line and is only reached with refine_spurious
  MfrdOptions o;
  o.refine_spurious = true;
  const PipelineReport b = mfrd_refine_all(load_pencil("typeb.json"), 1e-2, Mode::All2D, 1, o);
  REQUIRE(b.points.size() == 1);
  CHECK(b.points[0].kind == PointKind::TwoD_b);
}
