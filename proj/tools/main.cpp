#include <cstdint>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdlreg/commands.hpp"
#include "mdlreg/emit.hpp"

namespace {

using namespace mdlreg;

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

std::vector<std::uint64_t> parse_list_u64(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoull(tok));
  return out;
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
  std::vector<double> g;
  for (int i = 0;; ++i) {
    double v = start + step * i;
    if (v > stop + 1e-12) break;
    g.push_back(v > stop ? stop : v);
  }
  return g;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_atomic(out_path, content);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mdlreg: MDL_lambda tempering curves, bounds and simulations"};
  app.require_subcommand(1);

  std::string out_path, format = "csv";
  std::uint64_t seed = 0;
  int jobs = 1;
  for (auto* sub : {app.add_subcommand("curve", "tempering curve sweep"),
                    app.add_subcommand("lambda-sweep",
                                       "ell as a function of lambda"),
                    app.add_subcommand("compare-gl",
                                       "lower/upper reference comparison"),
                    app.add_subcommand("simulate",
                                       "Monte-Carlo hard-instance trials"),
                    app.add_subcommand("bounds", "finite-sample bounds"),
                    app.add_subcommand("verify", "invariant suites")}) {
    sub->add_option("--out", out_path, "output path (default: stdout)");
    sub->add_option("--format", format, "csv|json|svg");
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--jobs", jobs, "worker threads for simulate");
    // plain key=value file; command-line flags win on conflict
    sub->set_config("--config")->configurable(false);
  }

  auto* curve = app.get_subcommand("curve");
  std::string lambda_list = "0.1,0.5,1,2,5", grid_list;
  double grid_start = 0.0, grid_stop = 0.5, grid_step = 0.005;
  curve->add_option("--lambda", lambda_list, "comma-separated lambda values");
  curve->add_option("--grid", grid_list, "explicit comma-separated L* grid");
  curve->add_option("--grid-start", grid_start);
  curve->add_option("--grid-stop", grid_stop);
  curve->add_option("--grid-step", grid_step);

  auto* sweep = app.get_subcommand("lambda-sweep");
  double sweep_lstar = 0.1;
  std::string sweep_lambdas = "0.2,0.3,0.469,0.7,1,1.5,2,3,5,10,30,100";
  sweep->add_option("--lstar", sweep_lstar, "fixed noise level L*");
  sweep->add_option("--lambda", sweep_lambdas, "lambda grid");

  auto* cgl = app.get_subcommand("compare-gl");
  std::string cgl_grid;
  double cgl_step = 0.005;
  cgl->add_option("--grid", cgl_grid, "explicit L* grid");
  cgl->add_option("--grid-step", cgl_step);

  auto* sim = app.get_subcommand("simulate");
  std::string variant = "infinite-stream", schedule = "constant";
  std::string m_list = "1000,2000,4000";
  double lstar = 0.1, lprime = 0.25, sched_c = 1.0, sched_alpha = 0.5;
  std::uint64_t trials = 1000;
  bool dump_trials = false;
  sim->add_option("--variant", variant, "infinite-stream|two-hypothesis");
  sim->add_option("--lstar", lstar, "good predictor population error");
  sim->add_option("--lprime", lprime, "bad predictor population error");
  sim->add_option("--schedule", schedule,
                  "constant|power|inverse-log|linear");
  sim->add_option("--lambda", sched_c, "constant lambda / coefficient c");
  sim->add_option("--alpha", sched_alpha, "power schedule exponent");
  sim->add_option("--m", m_list, "comma-separated sample sizes");
  sim->add_option("--trials", trials, "trials per m");
  sim->add_flag("--dump-trials", dump_trials, "full per-trial JSON detail");

  auto* bnd = app.get_subcommand("bounds");
  BoundsRequest req;
  bnd->add_option("--op", req.op,
                  "mdl-upper|consistency|srm|kl-epsilon|tail-bracket|"
                  "min-binomial")
      ->required();
  bnd->add_option("--lambda", req.lambda);
  bnd->add_option("--lstar", req.l_star);
  bnd->add_option("--desc-len", req.desc_len);
  bnd->add_option("--m", req.m);
  bnd->add_option("--n", req.n);
  bnd->add_option("--p", req.p);
  bnd->add_option("--a", req.a);
  bnd->add_option("--log2-r", req.log2_r);
  bnd->add_option("--delta", req.cfg.delta);
  bnd->add_option("--mcdiarmid-constant", req.cfg.mcdiarmid_constant);
  bnd->add_option("--lemma-a1-constant", req.cfg.lemma_a1_constant);

  auto* ver = app.get_subcommand("verify");
  bool fast = false;
  ver->add_flag("--fast", fast, "sub-minute subset of the suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (curve->parsed()) {
      CurveConfig cfg;
      cfg.lambdas = parse_list(lambda_list);
      cfg.grid = grid_list.empty() ? make_grid(grid_start, grid_stop, grid_step)
                                   : parse_list(grid_list);
      emit(out_path, format == "svg" ? curve_svg(cfg) : curve_csv(cfg));
    } else if (sweep->parsed()) {
      SweepConfig cfg;
      cfg.l_star = sweep_lstar;
      cfg.lambdas = parse_list(sweep_lambdas);
      emit(out_path,
           format == "svg" ? lambda_sweep_svg(cfg) : lambda_sweep_csv(cfg));
    } else if (cgl->parsed()) {
      CompareGlConfig cfg;
      cfg.grid = cgl_grid.empty() ? make_grid(0.0, 0.5, cgl_step)
                                  : parse_list(cgl_grid);
      emit(out_path,
           format == "svg" ? compare_gl_svg(cfg) : compare_gl_csv(cfg));
    } else if (sim->parsed()) {
      SimulateConfig cfg;
      cfg.inst.l_star = lstar;
      cfg.inst.l_prime = lprime;
      cfg.inst.variant = variant == "two-hypothesis"
                             ? Variant::two_hypothesis
                             : Variant::infinite_stream;
      if (variant != "two-hypothesis" && variant != "infinite-stream")
        throw std::invalid_argument("unknown variant '" + variant + "'");
      if (schedule == "constant")
        cfg.inst.schedule.kind = ScheduleKind::constant;
      else if (schedule == "power")
        cfg.inst.schedule.kind = ScheduleKind::power;
      else if (schedule == "inverse-log")
        cfg.inst.schedule.kind = ScheduleKind::inverse_log;
      else if (schedule == "linear")
        cfg.inst.schedule.kind = ScheduleKind::linear;
      else
        throw std::invalid_argument("unknown schedule '" + schedule + "'");
      cfg.inst.schedule.c = sched_c;
      cfg.inst.schedule.alpha = sched_alpha;
      cfg.m_grid = parse_list_u64(m_list);
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.jobs = jobs;
      cfg.dump_trials = dump_trials;
      emit(out_path,
           format == "json" ? simulate_json(cfg) : simulate_csv(cfg));
    } else if (bnd->parsed()) {
      emit(out_path, bounds_json(req));
    } else if (ver->parsed()) {
      int failures = run_verify(fast, std::cout);
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
