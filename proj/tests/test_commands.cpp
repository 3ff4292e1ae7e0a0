#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "mdlreg/commands.hpp"
#include "mdlreg/emit.hpp"

using namespace mdlreg;

namespace {
// parse one CSV field by (row, col), skipping '#' comment lines
std::string csv_field(const std::string& doc, int row, int col) {
  std::istringstream in(doc);
  std::string line;
  int r = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    if (r++ < row) continue;
    std::istringstream ls(line);
    std::string field;
    for (int c = 0; std::getline(ls, field, ','); ++c)
      if (c == col) return field;
    return "";
  }
  return "";
}
}  // namespace

TEST_CASE("fmt_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0,
                   0.2775325944157924}) {
    CHECK(std::stod(fmt_double(v)) == v);
  }
  CHECK(fmt_double(0.5) == "0.5");
  CHECK(fmt_double(std::nan("")) == "nan");
  CHECK(fmt_double(1.0 / 0.0) == "inf");
}

TEST_CASE("write_atomic") {
  std::string path = "test_commands_tmp_out.txt";
  write_atomic(path, "alpha\n");
  write_atomic(path, "beta\n");  // overwrite, no partial state
  std::ifstream in(path);
  std::string got((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  CHECK(got == "beta\n");
  std::remove(path.c_str());
}

TEST_CASE("curve_csv: deterministic, correct values") {
  CurveConfig cfg;
  cfg.lambdas = {0.5, 1.0, 2.0};
  for (double g = 0.0; g <= 0.25001; g += 0.05) cfg.grid.push_back(g);
  std::string a = curve_csv(cfg);
  std::string b = curve_csv(cfg);
  CHECK(a == b);  // repeat calls byte-identical
  CHECK(a.find("lambda,L_star,ell,gl_lower,gl_bayes_upper,well_specified,"
               "critical_noise") != std::string::npos);
  // row 0: lambda=0.5, L*=0 -> critical_noise column = H^-1(1/2)
  CHECK(std::stod(csv_field(a, 1, 6)) ==
        doctest::Approx(0.11002786443835955).epsilon(1e-8));
  // lambda=1 block spans rows 7-12; L*=0.1 is row 9
  CHECK(std::stod(csv_field(a, 9, 0)) == 1.0);
  CHECK(std::stod(csv_field(a, 9, 1)) == doctest::Approx(0.1));
  CHECK(std::stod(csv_field(a, 9, 2)) ==
        doctest::Approx(0.2775325944157924).epsilon(1e-9));
  // lambda >= 1 rows leave the critical column empty
  CHECK(csv_field(a, 9, 6) == "");
  CurveConfig empty;
  CHECK_THROWS(curve_csv(empty));
  CurveConfig neg;
  neg.lambdas = {-1.0};
  CHECK_THROWS(curve_csv(neg));
}

TEST_CASE("curve_svg is well-formed") {
  CurveConfig cfg;
  cfg.lambdas = {1.0};
  cfg.grid = {0.0, 0.1, 0.2};
  std::string svg = curve_svg(cfg);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("lambda_sweep_csv: critical row inserted") {
  SweepConfig cfg;
  cfg.l_star = 0.1;
  cfg.lambdas = {0.1, 0.3, 1.0, 2.0};
  std::string out = lambda_sweep_csv(cfg);
  CHECK(out.find("# asymptote L_star=0.1") != std::string::npos);
  // critical lambda = H(0.1) = 0.4689955935892812; ell there is exactly 1/2
  CHECK(out.find("# critical lambda=H(L_star)=0.46899559358928") !=
        std::string::npos);
  // rows sorted by lambda; the inserted row lands between 0.3 and 1.0
  CHECK(std::stod(csv_field(out, 3, 0)) ==
        doctest::Approx(0.4689955935892812).epsilon(1e-12));
  CHECK(std::stod(csv_field(out, 3, 1)) == doctest::Approx(0.5).epsilon(1e-3));
  // monotone nonincreasing ell down the sweep
  double prev = 2.0;
  for (int r = 1; r <= 5; ++r) {
    double e = std::stod(csv_field(out, r, 1));
    CHECK(e <= prev + 1e-12);
    prev = e;
  }
  CHECK(lambda_sweep_csv(cfg) == out);
}

TEST_CASE("compare_gl_csv: row values and the strictness guard") {
  CompareGlConfig cfg;
  cfg.grid = {0.0, 0.1, 0.25};
  std::string out = compare_gl_csv(cfg);
  CHECK(out.find("L_star,gl_lower,ours,gl_bayes_upper") != std::string::npos);
  CHECK(std::stod(csv_field(out, 3, 0)) == 0.25);
  CHECK(std::stod(csv_field(out, 3, 1)) ==
        doctest::Approx(0.4056390622295664).epsilon(1e-9));
  CHECK(std::stod(csv_field(out, 3, 2)) ==
        doctest::Approx(0.4301232357613056).epsilon(1e-9));
  CHECK(std::stod(csv_field(out, 3, 3)) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-9));
  // ours strictly above gl_lower on the open grid
  for (int r = 2; r <= 3; ++r)
    CHECK(std::stod(csv_field(out, r, 2)) > std::stod(csv_field(out, r, 1)));
}

TEST_CASE("simulate_csv: smoke run and cross-jobs determinism") {
  SimulateConfig cfg;
  cfg.inst = {0.1, 0.25, {ScheduleKind::constant, 1.0, 0.5},
              Variant::two_hypothesis};
  cfg.m_grid = {100, 200};
  cfg.trials = 50;
  cfg.seed = 9;
  std::string a = simulate_csv(cfg);
  cfg.jobs = 4;
  std::string b = simulate_csv(cfg);
  CHECK(a == b);  // jobs only affect scheduling, never the bytes
  CHECK(a.find("m,lambda_m,trials,frac_bad,ci_low,ci_high,mean_error,"
               "infeasible_count,master_seed") != std::string::npos);
  CHECK(csv_field(a, 1, 0) == "100");
  CHECK(csv_field(a, 2, 0) == "200");
  double frac = std::stod(csv_field(a, 1, 3));
  CHECK(frac >= 0.0);
  CHECK(frac <= 1.0);
  double lo = std::stod(csv_field(a, 1, 4));
  double hi = std::stod(csv_field(a, 1, 5));
  CHECK(lo <= frac);
  CHECK(hi >= frac);
  SimulateConfig bad = cfg;
  bad.m_grid.clear();
  CHECK_THROWS(simulate_csv(bad));
}

TEST_CASE("simulate_json: structure and trial dump") {
  SimulateConfig cfg;
  cfg.inst = {0.1, 0.3, {ScheduleKind::constant, 1.0, 0.5},
              Variant::two_hypothesis};
  cfg.m_grid = {60};
  cfg.trials = 20;
  cfg.seed = 4;
  cfg.dump_trials = true;
  std::string out = simulate_json(cfg);
  CHECK(out.find("\"tool\": \"mdlreg 0.1.0\"") != std::string::npos);
  CHECK(out.find("\"rows\"") != std::string::npos);
  CHECK(out.find("\"trials_by_m\"") != std::string::npos);
  CHECK(out.find("\"winning_class\"") != std::string::npos);
  cfg.dump_trials = false;
  CHECK(simulate_json(cfg).find("trials_by_m") == std::string::npos);
}

TEST_CASE("bounds_json: every op and status") {
  BoundsRequest req;
  req.op = "kl-epsilon";
  req.desc_len = 10;
  req.m = 100;
  req.cfg.delta = 0.1;
  std::string out = bounds_json(req);
  CHECK(out.find("\"op\": \"kl-epsilon\"") != std::string::npos);
  CHECK(out.find("0.2098013957") != std::string::npos);
  CHECK(out.find("\"note\": \"up-to-constants\"") != std::string::npos);

  req = BoundsRequest{};
  req.op = "mdl-upper";
  req.lambda = 1.0;
  req.l_star = 0.1;
  req.desc_len = 4;
  req.m = 1000000;
  CHECK(bounds_json(req).find("\"vacuous\": false") != std::string::npos);

  req = BoundsRequest{};
  req.op = "srm";
  req.desc_len = 100;
  req.m = 100;
  req.cfg.delta = 0.5;
  CHECK(bounds_json(req).find("\"vacuous\": true") != std::string::npos);

  req = BoundsRequest{};
  req.op = "consistency";
  req.lambda = 2.0;
  req.l_star = 0.1;
  req.m = 10000;
  CHECK(bounds_json(req).find("\"value\"") != std::string::npos);

  req = BoundsRequest{};
  req.op = "tail-bracket";
  req.n = 20;
  req.p = 0.3;
  req.a = 0.1;
  out = bounds_json(req);
  CHECK(out.find("\"lower\"") != std::string::npos);
  CHECK(out.find("\"upper\"") != std::string::npos);

  req = BoundsRequest{};
  req.op = "min-binomial";
  req.log2_r = 1.0;
  req.m = 10;
  req.p = 0.5;
  req.cfg.delta = 0.1;
  CHECK(bounds_json(req).find("\"status\": \"condition-unmet\"") !=
        std::string::npos);
  req.log2_r = 100.0;
  req.m = 100;
  req.p = 0.3;
  CHECK(bounds_json(req).find("\"status\": \"zero-certificate\"") !=
        std::string::npos);
  req.log2_r = 40.0;
  req.m = 50;
  CHECK(bounds_json(req).find("\"status\": \"interval\"") !=
        std::string::npos);

  req.op = "no-such-op";
  CHECK_THROWS(bounds_json(req));
}

TEST_CASE("run_verify fast mode is green") {
  std::ostringstream sink;
  CHECK(run_verify(true, sink) == 0);
  std::string log = sink.str();
  CHECK(log.find("PASS") != std::string::npos);
  CHECK(log.find("FAIL") == std::string::npos);
}
