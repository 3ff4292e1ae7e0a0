#include "mdlreg/commands.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "mdlreg/emit.hpp"

namespace mdlreg {

namespace {

using json = nlohmann::json;

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += fmt_double(v[i]);
  }
  return s;
}

std::string join_u64(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(v[i]);
  }
  return s;
}

const char* schedule_name(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::power: return "power";
    case ScheduleKind::inverse_log: return "inverse-log";
    case ScheduleKind::linear: return "linear";
  }
  return "constant";
}

const char* variant_name(Variant v) {
  return v == Variant::two_hypothesis ? "two-hypothesis" : "infinite-stream";
}

std::string simulate_header(const SimulateConfig& cfg) {
  std::string h = std::string("# ") + kToolVersion +
                  " config: command=simulate variant=" +
                  variant_name(cfg.inst.variant) +
                  " lstar=" + fmt_double(cfg.inst.l_star) +
                  " lprime=" + fmt_double(cfg.inst.l_prime) +
                  " schedule=" + schedule_name(cfg.inst.schedule.kind) +
                  " c=" + fmt_double(cfg.inst.schedule.c) +
                  " alpha=" + fmt_double(cfg.inst.schedule.alpha) +
                  " m=" + join_u64(cfg.m_grid) +
                  " trials=" + std::to_string(cfg.trials) +
                  " seed=" + std::to_string(cfg.seed) + "\n";
  return h;
}

void check_lambdas(const std::vector<double>& lambdas) {
  if (lambdas.empty())
    throw std::invalid_argument("lambda list must be nonempty");
  for (double l : lambdas)
    if (!(l > 0.0))
      throw std::invalid_argument("lambda values must be positive");
}

}  // namespace

std::string curve_csv(const CurveConfig& cfg) {
  check_lambdas(cfg.lambdas);
  std::string out = std::string("# ") + kToolVersion +
                    " config: command=curve lambda=" + join(cfg.lambdas) +
                    " grid=" + join(cfg.grid) + "\n";
  out += "lambda,L_star,ell,gl_lower,gl_bayes_upper,well_specified,critical_noise\n";
  for (double l : cfg.lambdas) {
    RegParam lam(l);
    TemperingCurve curve = sweep_curve(lam, cfg.grid);
    std::string crit =
        l < 1.0 ? fmt_double(critical_noise(lam).value()) : std::string();
    for (const auto& pt : curve.points) {
      out += fmt_double(l) + "," + fmt_double(pt.l_star) + "," +
             fmt_double(pt.ell) + "," + fmt_double(pt.gl_lower) + "," +
             fmt_double(pt.gl_bayes_upper) + "," +
             fmt_double(pt.well_specified) + "," + crit + "\n";
    }
  }
  return out;
}

std::string curve_svg(const CurveConfig& cfg) {
  check_lambdas(cfg.lambdas);
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                  "#d62728", "#9467bd", "#8c564b"};
  std::vector<SvgSeries> series;
  std::size_t ci = 0;
  for (double l : cfg.lambdas) {
    TemperingCurve curve = sweep_curve(RegParam(l), cfg.grid);
    SvgSeries s;
    s.label = "ell, lambda=" + fmt_double(l);
    s.color = palette[ci++ % 6];
    for (const auto& pt : curve.points) {
      s.x.push_back(pt.l_star);
      s.y.push_back(pt.ell);
    }
    series.push_back(std::move(s));
  }
  if (!cfg.grid.empty()) {
    SvgSeries lower{"H(L*)/2", "#7f7f7f", {}, {}};
    SvgSeries upper{"H(L*)", "#bcbd22", {}, {}};
    for (double g : cfg.grid) {
      double h = entropy(Prob(g));
      lower.x.push_back(g);
      lower.y.push_back(h / 2.0);
      upper.x.push_back(g);
      upper.y.push_back(h);
    }
    series.push_back(std::move(lower));
    series.push_back(std::move(upper));
  }
  return svg_line_chart("worst-case limiting error", "L*", "limiting error",
                        series);
}

std::string lambda_sweep_csv(const SweepConfig& cfg) {
  check_lambdas(cfg.lambdas);
  Prob ls(cfg.l_star);
  if (ls.value() > 0.5)
    throw std::invalid_argument("lambda-sweep: L* must be <= 1/2");
  std::vector<double> lambdas = cfg.lambdas;
  double crit = entropy(ls);  // ell reaches 1/2 exactly at lambda = H(L*)
  if (crit > 0.0 &&
      std::find(lambdas.begin(), lambdas.end(), crit) == lambdas.end())
    lambdas.push_back(crit);
  std::sort(lambdas.begin(), lambdas.end());
  std::string out = std::string("# ") + kToolVersion +
                    " config: command=lambda-sweep lstar=" +
                    fmt_double(cfg.l_star) + " lambda=" + join(cfg.lambdas) +
                    "\n";
  out += "# asymptote L_star=" + fmt_double(cfg.l_star) + "\n";
  out += "# critical lambda=H(L_star)=" + fmt_double(crit) + "\n";
  out += "lambda,ell\n";
  for (double l : lambdas)
    out += fmt_double(l) + "," + fmt_double(ell(RegParam(l), ls).value()) +
           "\n";
  return out;
}

std::string lambda_sweep_svg(const SweepConfig& cfg) {
  check_lambdas(cfg.lambdas);
  Prob ls(cfg.l_star);
  std::vector<double> lambdas = cfg.lambdas;
  std::sort(lambdas.begin(), lambdas.end());
  SvgSeries s{"ell_lambda(L*)", "#1f77b4", {}, {}};
  SvgSeries asym{"L*", "#7f7f7f", {}, {}};
  for (double l : lambdas) {
    s.x.push_back(l);
    s.y.push_back(ell(RegParam(l), ls).value());
    asym.x.push_back(l);
    asym.y.push_back(cfg.l_star);
  }
  return svg_line_chart("limiting error at fixed L*", "lambda",
                        "limiting error", {s, asym});
}

std::string compare_gl_csv(const CompareGlConfig& cfg) {
  std::string out = std::string("# ") + kToolVersion +
                    " config: command=compare-gl grid=" + join(cfg.grid) +
                    "\n";
  out += "L_star,gl_lower,ours,gl_bayes_upper\n";
  TemperingCurve curve = sweep_curve(RegParam(1.0), cfg.grid);
  for (const auto& pt : curve.points) {
    if (pt.l_star > 0.0 && pt.l_star < 0.5 && !(pt.ell > pt.gl_lower))
      throw std::runtime_error(
          "compare-gl: ell_1 not strictly above H(L*)/2 at L*=" +
          fmt_double(pt.l_star));
    out += fmt_double(pt.l_star) + "," + fmt_double(pt.gl_lower) + "," +
           fmt_double(pt.ell) + "," + fmt_double(pt.gl_bayes_upper) + "\n";
  }
  return out;
}

std::string compare_gl_svg(const CompareGlConfig& cfg) {
  TemperingCurve curve = sweep_curve(RegParam(1.0), cfg.grid);
  SvgSeries lower{"H(L*)/2", "#2ca02c", {}, {}};
  SvgSeries ours{"ell_1(L*)", "#1f77b4", {}, {}};
  SvgSeries upper{"H(L*)", "#d62728", {}, {}};
  for (const auto& pt : curve.points) {
    lower.x.push_back(pt.l_star);
    lower.y.push_back(pt.gl_lower);
    ours.x.push_back(pt.l_star);
    ours.y.push_back(pt.ell);
    upper.x.push_back(pt.l_star);
    upper.y.push_back(pt.gl_bayes_upper);
  }
  return svg_line_chart("lower/upper reference comparison", "L*",
                        "limiting error", {lower, ours, upper});
}

namespace {
std::string limit_rows_csv(const SimulateConfig& cfg,
                           const std::vector<LimitRow>& rows) {
  std::string out = simulate_header(cfg);
  out += "m,lambda_m,trials,frac_bad,ci_low,ci_high,mean_error,"
         "infeasible_count,master_seed\n";
  for (const auto& r : rows) {
    out += std::to_string(r.m) + "," + fmt_double(r.lambda_m) + "," +
           std::to_string(r.trials) + "," + fmt_double(r.frac_bad) + "," +
           fmt_double(r.ci_low) + "," + fmt_double(r.ci_high) + "," +
           fmt_double(r.mean_error) + "," +
           std::to_string(r.infeasible_count) + "," +
           std::to_string(cfg.seed) + "\n";
  }
  return out;
}
}  // namespace

std::string simulate_csv(const SimulateConfig& cfg) {
  cfg.inst.validate();
  if (cfg.m_grid.empty())
    throw std::invalid_argument("simulate: empty m grid");
  auto rows = estimate_limit(cfg.inst, cfg.m_grid, cfg.trials, cfg.seed,
                             cfg.jobs);
  return limit_rows_csv(cfg, rows);
}

std::string simulate_json(const SimulateConfig& cfg) {
  cfg.inst.validate();
  if (cfg.m_grid.empty())
    throw std::invalid_argument("simulate: empty m grid");
  json doc;
  doc["tool"] = kToolVersion;
  doc["config"] = {{"variant", variant_name(cfg.inst.variant)},
                   {"lstar", cfg.inst.l_star},
                   {"lprime", cfg.inst.l_prime},
                   {"schedule", schedule_name(cfg.inst.schedule.kind)},
                   {"c", cfg.inst.schedule.c},
                   {"alpha", cfg.inst.schedule.alpha},
                   {"m", cfg.m_grid},
                   {"trials", cfg.trials},
                   {"seed", cfg.seed}};
  json rows = json::array();
  json dumps = json::array();
  for (std::size_t i = 0; i < cfg.m_grid.size(); ++i) {
    auto outcomes = run_trials(cfg.inst, cfg.m_grid[i], cfg.trials, cfg.seed,
                               i * cfg.trials, cfg.jobs);
    LimitRow r = aggregate_trials(cfg.inst, outcomes);
    rows.push_back({{"m", r.m},
                    {"lambda_m", r.lambda_m},
                    {"trials", r.trials},
                    {"frac_bad", r.frac_bad},
                    {"ci_low", r.ci_low},
                    {"ci_high", r.ci_high},
                    {"mean_error", r.mean_error},
                    {"infeasible_count", r.infeasible_count}});
    if (cfg.dump_trials) {
      json tr = json::array();
      for (const auto& t : outcomes) {
        const char* win = t.winning_class == Winner::good ? "good"
                          : t.winning_class == Winner::bad
                              ? "bad"
                              : "both_infeasible";
        json jt = {{"m", t.m},
                   {"lambda_m", t.lambda_m},
                   {"good_error_count", t.good_error_count},
                   {"bad_error_count", t.bad_error_count},
                   {"winning_class", win},
                   {"good_objective", t.good_objective},
                   {"seed", t.seed}};
        if (t.winning_class != Winner::both_infeasible) {
          jt["winning_objective"] = t.winning_objective;
          jt["population_error"] = t.population_error;
        }
        tr.push_back(std::move(jt));
      }
      dumps.push_back(std::move(tr));
    }
  }
  doc["rows"] = std::move(rows);
  if (cfg.dump_trials) doc["trials_by_m"] = std::move(dumps);
  return doc.dump(2) + "\n";
}

std::string bounds_json(const BoundsRequest& req) {
  json doc;
  doc["tool"] = kToolVersion;
  doc["op"] = req.op;
  json constants = {{"delta", req.cfg.delta},
                    {"mcdiarmid_constant", req.cfg.mcdiarmid_constant},
                    {"lemma_a1_constant", req.cfg.lemma_a1_constant},
                    {"note", "up-to-constants"}};
  if (req.op == "mdl-upper" || req.op == "consistency") {
    BoundResult r =
        req.op == "mdl-upper"
            ? mdl_upper_bound(RegParam(req.lambda), Prob(req.l_star),
                              req.desc_len, req.m, req.cfg)
            : consistency_bound(RegParam(req.lambda), Prob(req.l_star),
                                req.desc_len, req.m, req.cfg);
    constants["delta"] = r.delta;
    doc["value"] = r.value;
    doc["vacuous"] = r.vacuous;
  } else if (req.op == "srm") {
    BoundResult r = srm_bound(req.desc_len, req.m, req.cfg);
    constants["delta"] = r.delta;
    doc["value"] = r.value;
    doc["vacuous"] = r.vacuous;
  } else if (req.op == "kl-epsilon") {
    double d = req.cfg.delta > 0.0
                   ? req.cfg.delta
                   : 1.0 / std::sqrt(static_cast<double>(req.m));
    constants["delta"] = d;
    doc["value"] = kl_concentration_epsilon(req.desc_len, req.m, d);
    doc["vacuous"] = false;
  } else if (req.op == "tail-bracket") {
    KLInterval iv = binomial_tail_bracket(req.n, Prob(req.p), Prob(req.a));
    doc["lower"] = iv.lower;
    doc["upper"] = iv.upper;
  } else if (req.op == "min-binomial") {
    double d = req.cfg.delta > 0.0
                   ? req.cfg.delta
                   : 1.0 / std::sqrt(static_cast<double>(req.m));
    constants["delta"] = d;
    MinBinomialResult r =
        min_binomial_interval(req.log2_r, req.m, Prob(req.p), d);
    doc["slack"] = r.slack;
    switch (r.status) {
      case MinBinomialStatus::interval:
        doc["status"] = "interval";
        doc["lower"] = r.interval.lower;
        doc["upper"] = r.interval.upper;
        break;
      case MinBinomialStatus::zero_certificate:
        doc["status"] = "zero-certificate";
        break;
      case MinBinomialStatus::condition_unmet:
        doc["status"] = "condition-unmet";
        break;
    }
  } else {
    throw std::invalid_argument("bounds: unknown op '" + req.op + "'");
  }
  doc["constants"] = std::move(constants);
  return doc.dump(2) + "\n";
}

}  // namespace mdlreg
