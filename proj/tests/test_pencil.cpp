#include "helpers.hpp"
#include "zgv/errors.hpp"
#include "zgv/pencil.hpp"

using namespace zgv;
using namespace zgv::test;

TEST_CASE("BivariatePencil validates its input") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(BivariatePencil(i2, i2, ComplexMatrix::Identity(3, 3)), Error);
  CHECK_THROWS_AS(BivariatePencil(ComplexMatrix::Zero(2, 3), ComplexMatrix::Zero(2, 3), ComplexMatrix::Zero(2, 3)),
                  Error);
  ComplexMatrix bad = i2;
  bad(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(BivariatePencil(i2, bad, i2), Error);
}

TEST_CASE("evaluate and scale") {
  const BivariatePencil p = load_pencil("ex2x2.json");
  const ComplexMatrix m = p.evaluate(2.0, 0.5);
  CHECK((m - (p.A() + 2.0 * p.B() + 0.5 * p.C())).norm() == 0.0);
  CHECK(p.scale(0, 0) == doctest::Approx(3.0));
  CHECK(p.scale(1, 1) > p.scale(0, 0));
}

TEST_CASE("mu_slice of the 2x2 example") {
  const BivariatePencil p = load_pencil("ex2x2.json");
  // p(1, mu) = 4 mu^2 - 2 mu - 2, roots 1 and -0.5
  const EigentripleSet e = mu_slice(p, 1.0);
  REQUIRE(e.size() == 2);
  CHECK(has_value(e.values, -0.5, 1e-12));
  CHECK(has_value(e.values, 1.0, 1e-12));
  // p(0, mu) = 4 mu^2: a double zero
  const EigentripleSet z = mu_slice(p, 0.0);
  for (Index i : z.finite_indices()) CHECK(std::abs(z.values(i)) <= 1e-7);
}

TEST_CASE("lambda_slice has the double eigenvalue at a ZGV point") {
  const BivariatePencil p = load_pencil("ex2x2.json");
  // p(lambda, 1.5) = (lambda - 3)^2
  const EigentripleSet e = lambda_slice(p, 1.5);
  REQUIRE(e.size() == 2);
  for (Index i = 0; i < 2; ++i) CHECK(std::abs(e.values(i) - 3.0) <= 1e-6);
  const MultiplicityEstimate m = estimate_multiplicity(e, 0);
  CHECK(m.algebraic == 2);
  CHECK(m.geometric == 1);
}

TEST_CASE("estimate_multiplicity on semisimple and simple eigenvalues") {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a(2, 2) = 5.0;
  const EigentripleSet e = gep_solve(a, -ComplexMatrix::Identity(3, 3));
  Index zero = 0;
  while (std::abs(e.values(zero)) > 1e-12) ++zero;
  const MultiplicityEstimate m = estimate_multiplicity(e, zero);
  CHECK(m.algebraic == 2);
  CHECK(m.geometric == 2);
  Index five = 0;
  while (std::abs(e.values(five) - 5.0) > 1e-12) ++five;
  CHECK(estimate_multiplicity(e, five).algebraic == 1);
}

TEST_CASE("LuSuBai slice at lambda = 1 has a triple eigenvalue") {
  const auto ms = load("lusubai.json", {"A", "B"});
  const Index n = ms[0].rows();
  const BivariatePencil p(ms[0], -ms[1], -ComplexMatrix::Identity(n, n));
  // lambda = 1 is a triple eigenvalue of A - lambda B, the mu = 0 slice
  const EigentripleSet e = lambda_slice(p, 0.0);
  Index target = 0;
  for (Index i : e.finite_indices())
    if (std::abs(e.values(i) - 1.0) < std::abs(e.values(target) - 1.0)) target = i;
  CHECK(std::abs(e.values(target) - 1.0) <= 1e-4);
  CHECK(estimate_multiplicity(e, target).algebraic == 3);
}

TEST_CASE("biregularity probes") {
  CHECK(is_biregular_probe(load_pencil("ex2x2.json"), 3, 1));
  CHECK_NOTHROW(require_biregular(load_pencil("ex4x4.json"), 1));

  // diag(1 + lambda, mu): det = (1 + lambda) mu has the factors lambda + 1 and mu
  ComplexMatrix a = ComplexMatrix::Zero(2, 2), b = ComplexMatrix::Zero(2, 2), c = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(0, 0) = 1.0;
  c(1, 1) = 1.0;
  const BivariatePencil factored(a, b, c);
  CHECK_FALSE(is_biregular_probe(factored, 3, 1));
  CHECK_THROWS_AS(require_biregular(factored, 1), Error);

  // A + lambda I + mu I with A nilpotent: (lambda + mu)^2 is a squared factor
  ComplexMatrix n = ComplexMatrix::Zero(2, 2);
  n(0, 1) = 1.0;
  const BivariatePencil squared(n, ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2));
  CHECK(has_repeated_component(squared, 1));
  try {
    require_biregular(squared, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotBiregular);
  }
}

TEST_CASE("sample_eigencurves: real where the discriminant is nonnegative") {
  const BivariatePencil p = load_pencil("ex2x2.json");
  std::vector<double> grid;
  for (int k = 0; k <= 40; ++k) grid.push_back(0.1 * k);
  const auto rows = sample_eigencurves(p, grid);
  REQUIRE(rows.size() == grid.size());
  for (const auto& r : rows) {
    // 4 mu^2 - 2 lambda mu + lambda^2 - 3 lambda, discriminant 48 lambda - 12 lambda^2
    const double disc = 48 * r.lambda - 12 * r.lambda * r.lambda;
    if (disc > 1e-6) CHECK(r.real_mu.size() == 2);
    if (disc < -1e-6) CHECK(r.real_mu.empty());
    CHECK(std::is_sorted(r.real_mu.begin(), r.real_mu.end()));
  }
}

TEST_CASE("sample_eigencurves: symmetric 4x4 pencil has real curves") {
  const BivariatePencil p = load_pencil("ex4x4.json");
  const auto rows = sample_eigencurves(p, {-3.0, -0.5, 0.0, 1.0, 2.5});
  for (const auto& r : rows) CHECK(r.real_mu.size() == 4);
}
