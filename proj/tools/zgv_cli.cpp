// zgv: critical points of A + lambda B + mu C from the command line.

#include "zgv/applications.hpp"
#include "zgv/errors.hpp"
#include "zgv/io.hpp"
#include "zgv/polynomial.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace zgv;

constexpr int kInputError = 2;
constexpr int kNumericalError = 3;

struct Common {
  std::string method = "direct";
  std::uint64_t seed = 1;
  std::string out;
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  f << text;
}

Method method_of(const std::string& s) {
  const auto m = parse_method(s);
  if (!m) throw Error(ErrorCode::InvalidArgument, "unknown method " + s);
  return *m;
}

json two_d_to_json(const TwoDEigenvalue& e) {
  return {{"lambda", e.lambda},   {"mu", e.mu},       {"kind", std::string(to_string(e.kind))},
          {"res_eig", e.res_eig}, {"res_b", e.res_b}, {"x", vector_to_json(e.x)}};
}

int report_error(ErrorCode code, const std::string& message) {
  const json j = {{"error", std::string(to_string(code))}, {"message", message}};
  std::cerr << j.dump() << "\n";
  return is_input_error(code) ? kInputError : kNumericalError;
}

void add_common(CLI::App* sub, Common& c, bool with_method) {
  if (with_method) {
    sub->add_option("--method", c.method, "direct, projected or mfrd")
        ->check(CLI::IsMember({"direct", "projected", "mfrd"}));
  }
  sub->add_option("--seed", c.seed, "random seed (default 1, or ZGV_SEED)");
  sub->add_option("--out", c.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical points (ZGV and 2D points) of bivariate pencils A + lambda B + mu C"};
  app.require_subcommand(1);

  Common common;
  if (const char* env = std::getenv("ZGV_SEED")) {
    try {
      common.seed = std::stoull(env);
    } catch (const std::exception&) {
      return report_error(ErrorCode::InvalidArgument, "ZGV_SEED must be a nonnegative integer");
    }
  }

  std::string input;
  std::string mode = "zgv";
  std::optional<double> delta, delta1, delta2;
  auto* zgv_cmd = app.add_subcommand("zgv", "ZGV or 2D points of a pencil file");
  zgv_cmd->add_option("pencil", input, "pencil JSON")->required();
  zgv_cmd->add_option("--mode", mode, "zgv or 2d")->check(CLI::IsMember({"zgv", "2d"}));
  zgv_cmd->add_option("--delta", delta, "slice filter (direct) or MFRD distance (mfrd)");
  zgv_cmd->add_option("--delta1", delta1, "residual filter (projected)");
  zgv_cmd->add_option("--delta2", delta2, "regularity filter (projected)");
  add_common(zgv_cmd, common, true);

  double lmin = -5, lmax = 5;
  int steps = 200;
  auto* curves_cmd = app.add_subcommand("curves", "eigencurves mu(lambda) on a lambda grid as CSV");
  curves_cmd->add_option("pencil", input, "pencil JSON")->required();
  curves_cmd->add_option("--lmin", lmin);
  curves_cmd->add_option("--lmax", lmax);
  curves_cmd->add_option("--steps", steps)->check(CLI::PositiveNumber);
  curves_cmd->add_option("--out", common.out, "output file (default stdout)");

  auto* twod_cmd = app.add_subcommand("2devp", "2D-eigenvalues of a Hermitian pair {A, B}");
  twod_cmd->add_option("matrices", input, "JSON with A and B")->required();
  add_common(twod_cmd, common, true);

  auto* dist_cmd = app.add_subcommand("dist-instab", "distance to instability of a stable A");
  dist_cmd->add_option("matrix", input, "JSON with A")->required();
  add_common(dist_cmd, common, true);

  auto* dbl_cmd = app.add_subcommand("double-eig", "mu such that A + mu B has a multiple eigenvalue");
  dbl_cmd->add_option("matrices", input, "JSON with A and B")->required();
  add_common(dbl_cmd, common, true);

  auto* qep_cmd = app.add_subcommand("qep-zgv", "ZGV points of (lambda^2 L2 + lambda L1 + L0 + omega^2 M) u = 0");
  qep_cmd->add_option("matrices", input, "JSON with L0, L1, L2, M")->required();
  add_common(qep_cmd, common, true);

  int mathieu_n = 25;
  std::vector<int> refine_ns = {50, 100};
  double mu_max = 100;
  auto* mathieu_cmd = app.add_subcommand("mathieu", "ZGV points of the modified Mathieu equation");
  mathieu_cmd->add_option("--n", mathieu_n, "coarse collocation points")->check(CLI::Range(8, 200));
  mathieu_cmd->add_option("--refine", refine_ns, "finer grids for the Gauss-Newton cascade")
      ->delimiter(',');
  mathieu_cmd->add_option("--mu-max", mu_max, "largest |mu| carried to the finer grids");
  add_common(mathieu_cmd, common, false);

  auto* oracle_cmd = app.add_subcommand("oracle", "resultant ZGV oracle for n <= 4");
  oracle_cmd->add_option("pencil", input, "pencil JSON")->required();
  oracle_cmd->add_option("--out", common.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(ErrorCode::InvalidArgument, e.what());
  }

  try {
    json out;
    if (*zgv_cmd) {
      const BivariatePencil p = pencil_from_json(read_json_file(input));
      const Method m = method_of(common.method);
      PipelineSettings s;
      if (delta) (m == Method::Mfrd ? s.mfrd_delta : s.delta) = *delta;
      if (delta1) s.delta1 = *delta1;
      if (delta2) s.delta2 = *delta2;
      out = report_to_json(
          find_critical_points(p, m, mode == "2d" ? Mode::All2D : Mode::ZGV, common.seed, s));
    } else if (*curves_cmd) {
      const BivariatePencil p = pencil_from_json(read_json_file(input));
      if (!(lmax > lmin)) throw Error(ErrorCode::InvalidArgument, "need lmin < lmax");
      std::vector<double> grid;
      for (int k = 0; k <= steps; ++k) grid.push_back(lmin + (lmax - lmin) * k / steps);
      std::ostringstream os;
      write_curves_csv(os, sample_eigencurves(p, grid), p.n());
      write_output(common.out, os.str());
      return 0;
    } else if (*twod_cmd) {
      const auto ms = matrices_from_json(read_json_file(input), {"A", "B"});
      const TwoDevpResult r = twod_eigenvalues(ms[0], ms[1], method_of(common.method), common.seed);
      json ev = json::array();
      for (const auto& e : r.eigenvalues) ev.push_back(two_d_to_json(e));
      out = {{"method", common.method}, {"seed", common.seed}, {"eigenvalues", ev},
             {"report", report_to_json(r.report)}};
    } else if (*dist_cmd) {
      const auto ms = matrices_from_json(read_json_file(input), {"A"});
      const InstabilityResult r = distance_to_instability(ms[0], method_of(common.method), common.seed);
      json pts = json::array();
      for (const auto& e : r.points) pts.push_back(two_d_to_json(e));
      out = {{"method", common.method}, {"seed", common.seed}, {"beta", r.beta},
             {"lambda", r.lambda},       {"refined", r.refined}, {"fallback", r.fallback},
             {"points", pts}};
    } else if (*dbl_cmd) {
      const auto ms = matrices_from_json(read_json_file(input), {"A", "B"});
      json pts = json::array();
      for (const auto& d : double_eigenvalue_points(ms[0], ms[1], method_of(common.method), common.seed)) {
        pts.push_back({{"mu", complex_to_json(d.mu)},
                       {"lambda", complex_to_json(d.lambda)},
                       {"kind", std::string(to_string(d.kind))}});
      }
      out = {{"method", common.method}, {"seed", common.seed}, {"points", pts}};
    } else if (*qep_cmd) {
      const auto ms = matrices_from_json(read_json_file(input), {"L0", "L1", "L2", "M"});
      json pts = json::array();
      for (const auto& q : qep_zgv(ms[0], ms[1], ms[2], ms[3], method_of(common.method), common.seed)) {
        pts.push_back({{"lambda", q.lambda}, {"omega", q.omega}, {"residual", q.residual}});
      }
      out = {{"method", common.method}, {"seed", common.seed}, {"points", pts}};
    } else if (*mathieu_cmd) {
      SturmLiouvilleOptions o;
      o.seed = common.seed;
      o.mu_max = mu_max;
      const auto d = discretize_sturm_liouville(mathieu_problem(), mathieu_n);
      const SturmLiouvilleResult r = sturm_liouville_critical(d, refine_ns, o);
      json pts = json::array();
      for (const auto& p : r.points) pts.push_back(point_to_json(p));
      json fails = json::array();
      for (const auto& f : r.failures) {
        fails.push_back({{"lambda", complex_to_json(f.lambda)}, {"mu", complex_to_json(f.mu)},
                         {"reason", f.reason}});
      }
      out = {{"method", "mfrd"}, {"seed", common.seed}, {"n", mathieu_n},
             {"refine", refine_ns}, {"points", pts}, {"failures", fails}};
    } else if (*oracle_cmd) {
      const BivariatePencil p = pencil_from_json(read_json_file(input));
      json pts = json::array();
      for (const auto& [l, m] : zgv_oracle(p)) {
        pts.push_back({{"lambda", complex_to_json(l)}, {"mu", complex_to_json(m)}});
      }
      out = {{"method", "oracle"}, {"points", pts}};
    }
    write_output(common.out, dump(out));
    return 0;
  } catch (const Error& e) {
    return report_error(e.code(), e.what());
  } catch (const std::exception& e) {
    const json j = {{"error", "InternalError"}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
    return kNumericalError;
  }
}
