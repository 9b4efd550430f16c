#include "helpers.hpp"
#include "zgv/polynomial.hpp"

using namespace zgv;
using namespace zgv::test;

TEST_CASE("char_poly of the 2x2 example") {
  const BivariatePoly f = char_poly(load_pencil("ex2x2.json"));
  // lambda^2 - 2 lambda mu + 4 mu^2 - 3 lambda
  ComplexMatrix want = ComplexMatrix::Zero(3, 3);
  want(2, 0) = 1.0;
  want(1, 1) = -2.0;
  want(0, 2) = 4.0;
  want(1, 0) = -3.0;
  const Index r = std::min<Index>(f.coeffs.rows(), 3), c = std::min<Index>(f.coeffs.cols(), 3);
  CHECK((f.coeffs.block(0, 0, r, c) - want.block(0, 0, r, c)).norm() <= 1e-12);
  CHECK(f.coeffs.norm() == doctest::Approx(want.norm()).epsilon(1e-12));
}

TEST_CASE("char_poly of the type-b pencil factors as (lambda + mu)(lambda + 2 mu)") {
  const BivariatePoly f = char_poly(load_pencil("typeb.json"));
  for (cplx l : {cplx(0.3, 0), cplx(-1, 2)}) {
    for (cplx m : {cplx(1.7, 0), cplx(0.2, -0.4)}) {
      CHECK(std::abs(f(l, m) - (l + m) * (l + 2.0 * m)) <= 1e-12 * f.magnitude(l, m));
    }
  }
}

TEST_CASE("char_poly agrees with det on random pencils") {
  for (Index n : {3, 4, 5}) {
    const BivariatePencil p = random_pencil(n, 77 + static_cast<std::uint64_t>(n));
    const BivariatePoly f = char_poly(p);
    CHECK(f.deg_lambda() <= n);
    const cplx l(0.4, -0.3), m(-0.2, 0.9);
    CHECK(std::abs(f(l, m) - p.evaluate(l, m).determinant()) <= 1e-10 * f.magnitude(l, m));
  }
}

TEST_CASE("derivatives and partial evaluation") {
  const BivariatePoly f = char_poly(load_pencil("ex2x2.json"));
  const cplx l(1.3, 0.2), m(-0.7, 0.1);
  CHECK(std::abs(f.d_lambda()(l, m) - (2.0 * l - 2.0 * m - 3.0)) <= 1e-12);
  CHECK(std::abs(f.d_mu()(l, m) - (-2.0 * l + 8.0 * m)) <= 1e-12);
  const ComplexVector in_mu = f.in_mu(l);
  cplx s = 0;
  for (Index j = in_mu.size() - 1; j >= 0; --j) s = s * m + in_mu(j);
  CHECK(std::abs(s - f(l, m)) <= 1e-12);
}

TEST_CASE("poly_roots") {
  ComplexVector c(3);
  c << 2.0, -3.0, 1.0;  // (z - 1)(z - 2)
  auto r = poly_roots(c);
  REQUIRE(r.size() == 2);
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(std::abs(r[0] - 1.0) <= 1e-13);
  CHECK(std::abs(r[1] - 2.0) <= 1e-13);
  ComplexVector lead_zero(4);
  lead_zero << -1.0, 0.0, 1.0, 0.0;  // vanishing leading coefficient drops a degree
  CHECK(poly_roots(lead_zero).size() == 2);
}

TEST_CASE("zgv_oracle on the published examples") {
  const auto two = zgv_oracle(load_pencil("ex2x2.json"));
  REQUIRE(two.size() == 2);
  bool z1 = false, z2 = false;
  for (const auto& [l, m] : two) {
    z1 = z1 || dist(l, m, 1.0, -0.5) <= 1e-12;
    z2 = z2 || dist(l, m, 3.0, 1.5) <= 1e-12;
  }
  CHECK(z1);
  CHECK(z2);

  const auto four = zgv_oracle(load_pencil("ex4x4.json"));
  CHECK(four.size() == 6);
  bool hit = false;
  for (const auto& [l, m] : four) hit = hit || dist(l, m, 0.28896, 0.28248) <= 1e-4;
  CHECK(hit);
}

TEST_CASE("zgv_oracle on a pencil without ZGV points") {
  CHECK(zgv_oracle(load_pencil("typeb.json")).empty());
}
