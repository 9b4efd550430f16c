#include "helpers.hpp"
#include "zgv/errors.hpp"
#include "zgv/linalg.hpp"

using namespace zgv;
using namespace zgv::test;

TEST_CASE("kron: identity, structure and vectors") {
  ComplexMatrix m(2, 2);
  m << 1.0, cplx(2, 1), 3.0, 4.0;
  const ComplexMatrix k = kron(ComplexMatrix::Identity(2, 2), m);
  CHECK(k.block(0, 0, 2, 2) == m);
  CHECK(k.block(2, 2, 2, 2) == m);
  CHECK(k.block(0, 2, 2, 2).norm() == 0.0);

  ComplexMatrix n = ComplexMatrix::Zero(2, 2);
  n(0, 1) = 1.0;
  const ComplexMatrix k2 = kron(n, ComplexMatrix::Identity(2, 2));
  CHECK(k2.rows() == 4);
  CHECK(k2.block(0, 2, 2, 2) == ComplexMatrix::Identity(2, 2));
  CHECK(k2.norm() == doctest::Approx(std::sqrt(2.0)));

  ComplexMatrix a(2, 1), b(2, 1);
  a << 1.0, 2.0;
  b << 3.0, cplx(0, 1);
  const ComplexMatrix v = kron(a, b);
  CHECK(v.rows() == 4);
  CHECK(v.cols() == 1);
  CHECK(v(1, 0) == cplx(0, 1));
  CHECK(v(2, 0) == cplx(6, 0));
  CHECK(v(3, 0) == cplx(0, 2));
}

TEST_CASE("kron: mixed product property") {
  Rng rng(3);
  for (Index s : {2, 3}) {
    const ComplexMatrix a = rng.complex_gaussian(s, s), b = rng.complex_gaussian(s, s);
    const ComplexMatrix c = rng.complex_gaussian(s, s), d = rng.complex_gaussian(s, s);
    const ComplexMatrix lhs = kron(a, b) * kron(c, d);
    const ComplexMatrix rhs = kron(a * c, b * d);
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
  }
}

TEST_CASE("gep_solve: diagonal pencil") {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  p(1, 1) = 2.0;
  const EigentripleSet e = gep_solve(p, -ComplexMatrix::Identity(2, 2));
  REQUIRE(e.size() == 2);
  CHECK(has_value(e.values, 1.0, 1e-14));
  CHECK(has_value(e.values, 2.0, 1e-14));
  for (Index i = 0; i < 2; ++i) {
    const Index j = std::abs(e.values(i) - 1.0) < 0.5 ? 0 : 1;
    CHECK(std::abs(e.right(j, i)) == doctest::Approx(1.0));
    CHECK(std::abs(e.left(j, i)) == doctest::Approx(1.0));
  }
}

TEST_CASE("gep_solve: slice of the 2x2 example matches the characteristic polynomial") {
  const BivariatePencil p = load_pencil("ex2x2.json");
  for (cplx mu : {cplx(0.3, 0), cplx(-1.2, 0.5), cplx(1.5, 0)}) {
    // lambda-slice of det = lambda^2 - 2 lambda mu + 4 mu^2 - 3 lambda
    const EigentripleSet e = gep_solve(p.A() + mu * p.C(), p.B());
    REQUIRE(e.size() == 2);
    for (Index i = 0; i < 2; ++i) {
      REQUIRE(e.is_finite(i));
      const cplx l = e.values(i);
      CHECK(std::abs(l * l - 2.0 * l * mu + 4.0 * mu * mu - 3.0 * l) <= 1e-7 * (1 + std::norm(l)));
    }
  }
}

TEST_CASE("gep_solve: residual invariant on random pencils") {
  Rng rng(11);
  for (Index s : {3, 10, 50}) {
    const ComplexMatrix p = rng.complex_gaussian(s, s), q = rng.complex_gaussian(s, s);
    const EigentripleSet e = gep_solve(p, q);
    const double np = norm2(p), nq = norm2(q);
    for (Index i : e.finite_indices()) {
      const ComplexMatrix m = p + e.values(i) * q;
      const double bound = 1e-10 * (np + std::abs(e.values(i)) * nq);
      CHECK((m * e.right.col(i)).norm() <= bound);
      CHECK((e.left.col(i).adjoint() * m).norm() <= bound);
      CHECK(e.right.col(i).norm() == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("gep_solve: infinite eigenvalues are flagged") {
  ComplexMatrix q = ComplexMatrix::Zero(2, 2);
  q(0, 0) = 1.0;
  const EigentripleSet e = gep_solve(ComplexMatrix::Identity(2, 2), q);
  int inf = 0;
  for (Index i = 0; i < 2; ++i) {
    if (!e.is_finite(i)) {
      ++inf;
      CHECK(std::isnan(e.values(i).real()));
    } else {
      CHECK(std::abs(e.values(i) + 1.0) <= 1e-14);
    }
  }
  CHECK(inf == 1);
}

TEST_CASE("gep_solve: zero Q and a singular pencil") {
  const ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  CHECK_THROWS_AS(gep_solve(z, z), Error);
  try {
    gep_solve(z, z);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularPencil);
  }
  ComplexMatrix p = ComplexMatrix::Zero(2, 2), q = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  q(0, 0) = 1.0;  // second row and column vanish identically
  CHECK_THROWS_AS(gep_solve(p, q), Error);
}

TEST_CASE("svd and numerical_rank") {
  const RealVector s = singular_values(ComplexMatrix::Identity(3, 3));
  CHECK(s.size() == 3);
  for (Index i = 0; i < 3; ++i) CHECK(s(i) == doctest::Approx(1.0));

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  const SvdResult r = svd(d);
  CHECK(r.singular_values(0) == doctest::Approx(3.0));
  CHECK(r.singular_values(1) == 0.0);
  CHECK(std::abs(r.V(0, 0)) == doctest::Approx(1.0));

  CHECK(numerical_rank(ComplexMatrix::Identity(4, 4), 1e-10) == 4);
  CHECK(numerical_rank(ComplexMatrix::Zero(3, 3), 1e-10) == 0);

  const BivariatePencil p = load_pencil("ex2x2.json");
  CHECK(singular_values(p.evaluate(1.0, -0.5))(1) <= 1e-12);
  CHECK(singular_values(p.evaluate(3.0, 1.5))(1) <= 1e-12);
}

TEST_CASE("norm2_estimate agrees with norm2") {
  Rng rng(5);
  const ComplexMatrix m = rng.complex_gaussian(20, 20);
  CHECK(norm2_estimate(m, 200) == doctest::Approx(norm2(m)).epsilon(1e-6));
}

TEST_CASE("random_unitary: unitary and deterministic") {
  const ComplexMatrix u1 = random_unitary(1, 4);
  CHECK(std::abs(u1(0, 0)) == doctest::Approx(1.0));
  const ComplexMatrix u = random_unitary(8, 42);
  CHECK(norm2(u.adjoint() * u - ComplexMatrix::Identity(8, 8)) <= 1e-12);
  CHECK(u == random_unitary(8, 42));
  CHECK(u != random_unitary(8, 43));
}

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("require_finite rejects NaN") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  CHECK_NOTHROW(require_finite(m, "m"));
  m(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(require_finite(m, "m"), Error);
}
