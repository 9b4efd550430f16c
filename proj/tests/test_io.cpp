#include "helpers.hpp"
#include "zgv/errors.hpp"

#include <sstream>

using namespace zgv;
using namespace zgv::test;

TEST_CASE("matrix JSON round trip is exact") {
  Rng rng(12);
  const ComplexMatrix m = rng.complex_gaussian(3, 4);
  const json j = json::parse(dump(matrix_to_json(m)));
  CHECK(matrix_from_json(j, "M") == m);
}

TEST_CASE("matrix_from_json accepts plain numbers and rejects ragged rows") {
  const json j = json::parse(R"([[1, [2, 3]], [4.5, 0]])");
  const ComplexMatrix m = matrix_from_json(j, "M");
  CHECK(m(0, 1) == cplx(2, 3));
  CHECK(m(1, 0) == cplx(4.5, 0));
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[1, 2], [3]]"), "M"), Error);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"([["x"]])"), "M"), Error);
}

TEST_CASE("pencil files") {
  const BivariatePencil p = load_pencil("ex2x2.json");
  CHECK(p.n() == 2);
  const BivariatePencil q = pencil_from_json(json::parse(dump(pencil_to_json(p))));
  CHECK(q.A() == p.A());
  CHECK(q.C() == p.C());
  json bad = pencil_to_json(p);
  bad["n"] = 3;
  CHECK_THROWS_AS(pencil_from_json(bad), Error);
  bad.erase("C");
  CHECK_THROWS_AS(pencil_from_json(bad), Error);
}

TEST_CASE("read_json_file errors are input errors") {
  try {
    read_json_file(data_path("no_such_file.json"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
    CHECK(is_input_error(e.code()));
  }
  CHECK_FALSE(is_input_error(ErrorCode::NotBiregular));
}

TEST_CASE("matrices_from_json checks names and sizes") {
  const auto ms = load("lusubai.json", {"A", "B"});
  CHECK(ms.size() == 2);
  CHECK_THROWS_AS(load("lusubai.json", {"A", "C"}), Error);
  const json j = json::parse(R"({"A": [[1]], "B": [[1, 0], [0, 1]]})");
  CHECK_THROWS_AS(matrices_from_json(j, {"A", "B"}), Error);
}

TEST_CASE("report JSON layout") {
  const PipelineReport r = critical_points_projected(load_pencil("ex2x2.json"), Mode::ZGV, 1e-8, 1e-10, 4);
  const json j = report_to_json(r);
  CHECK(j.at("method") == "projected");
  CHECK(j.at("seed") == 4);
  CHECK(j.at("points").size() == 2);
  CHECK(j.at("rejected").size() == 4);
  const json& pt = j.at("points")[0];
  CHECK(pt.at("kind") == "ZGV");
  CHECK(pt.at("lambda").size() == 2);
  CHECK(pt.at("lambda")[0].get<double>() == doctest::Approx(1.0));
  for (const char* k : {"right", "left", "yBx", "yCx", "scale"}) CHECK(pt.at("residuals").contains(k));
  CHECK(pt.at("multiplicities").at("lambda").at("algebraic") == 2);
  CHECK(dump(j) == dump(report_to_json(r)));
  CHECK(dump(j).back() == '\n');
}

TEST_CASE("non-finite numbers become null") {
  const json j = complex_to_json(cplx(std::numeric_limits<double>::quiet_NaN(), 1.0));
  CHECK(j[0].is_null());
  CHECK(j[1] == 1.0);
}

TEST_CASE("eigencurve CSV leaves complex cells empty") {
  const BivariatePencil p = load_pencil("ex2x2.json");
  std::ostringstream os;
  write_curves_csv(os, sample_eigencurves(p, {-1.0, 1.0}), p.n());
  std::istringstream is(os.str());
  std::string header, row1, row2;
  std::getline(is, header);
  std::getline(is, row1);
  std::getline(is, row2);
  CHECK(header == "lambda,mu_1,mu_2");
  // lambda = -1: discriminant negative, both mu complex
  CHECK(row1.substr(row1.find(',')) == ",,");
  // lambda = 1: mu = -0.5 and 1
  double l = 0, m1 = 0, m2 = 0;
  char c1 = 0, c2 = 0;
  std::istringstream r2(row2);
  r2 >> l >> c1 >> m1 >> c2 >> m2;
  CHECK(l == 1.0);
  CHECK(m1 == doctest::Approx(-0.5));
  CHECK(m2 == doctest::Approx(1.0));
}
