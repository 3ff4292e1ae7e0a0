// Acceptance gate: one line per criterion, exit code = number of failures.
// Every tolerance is pinned here, next to the check that uses it.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mdlreg/bounds.hpp"
#include "mdlreg/commands.hpp"
#include "mdlreg/learner.hpp"
#include "mdlreg/oracle.hpp"
#include "mdlreg/simlab.hpp"
#include "mdlreg/tempering.hpp"

using namespace mdlreg;
using clk = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool ok, clk::time_point t0,
            const std::string& detail) {
  double secs = std::chrono::duration<double>(clk::now() - t0).count();
  std::printf("%s  %02d %-28s (%.1fs%s%s)\n", ok ? "PASS" : "FAIL", id, name,
              secs, detail.empty() ? "" : ", ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string num(const char* label, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.3g", label, v);
  return buf;
}

// --- 1: closed-form Q against the exhaustive grid oracle --------------------
void c01() {
  auto t0 = clk::now();
  QOracle oracle(2.5e-7);
  const double lambdas[] = {0.3, 0.5, 0.8, 1.0, 1.2, 1.5, 2.0, 5.0};
  double worst = 0.0;
  for (double l : lambdas)
    for (int i = 1; i <= 49; ++i) {
      double q = 0.01 * i;
      double dev = std::fabs(big_Q(RegParam(l), Prob(q)) -
                             oracle.minimize_parallel(l, q));
      if (dev > worst) worst = dev;
    }
  report(1, "q-grid-oracle", worst <= 1e-6, t0, num("max_dev", worst));
}

// --- 2: U brackets H from below within lambda/(lambda-1)^2 ------------------
void c02() {
  auto t0 = clk::now();
  bool ok = true;
  for (double l : {1.01, 1.1, 2.0, 5.0, 50.0}) {
    double slack = l / ((l - 1.0) * (l - 1.0));
    for (int i = 1; i <= 499 && ok; ++i) {
      double q = 0.001 * i;
      double u = big_U(RegParam(l), Prob(q));
      double h = entropy(Prob(q));
      ok = u <= h + 1e-12 && h < u + slack;
    }
  }
  report(2, "u-bracket-lemma", ok, t0, "");
}

// --- 3: ell_1 value and strict separation from H/2 --------------------------
void c03() {
  auto t0 = clk::now();
  double v = ell(RegParam(1.0), Prob(0.1)).value();
  bool ok = std::fabs(v - 0.2775325944157924) <= 1e-5;
  for (int i = 1; i <= 49 && ok; ++i) {
    double ls = 0.01 * i;
    ok = ell(RegParam(1.0), Prob(ls)).value() > entropy(Prob(ls)) / 2.0;
  }
  report(3, "ell1-separation", ok, t0, num("ell1(0.1)", v));
}

// --- 4: critical noise solves ell_lambda(L*) = 1/2 ---------------------------
void c04() {
  auto t0 = clk::now();
  double worst = 0.0;
  for (double l : {0.1, 0.3, 0.5, 0.8}) {
    double at = ell(RegParam(l), critical_noise(RegParam(l))).value();
    worst = std::max(worst, std::fabs(at - 0.5));
  }
  report(4, "critical-noise-identity", worst <= 1e-6, t0,
         num("max_dev", worst));
}

// --- 5: Stirling gap of the code-length surrogate ----------------------------
void c05() {
  auto t0 = clk::now();
  bool ok = true;
  for (std::uint64_t m = 1; m <= 200 && ok; ++m) {
    double cap = std::log2(static_cast<double>(m + 1));
    for (std::uint64_t k = 0; k <= m && ok; ++k) {
      Objective o = objective(RegParam(0.0), 0.0, k, m);
      double gap = o.approx - o.exact;
      ok = gap >= -1e-9 && gap <= cap + 1e-9;
    }
  }
  report(5, "stirling-gap", ok, t0, "");
}

// --- 6: tail bracket encloses the exact log-CDF, exhaustive n <= 60 ----------
void c06() {
  auto t0 = clk::now();
  bool ok = true;
  for (std::uint64_t n = 1; n <= 60 && ok; ++n)
    for (int pi = 1; pi <= 19 && ok; ++pi) {
      double p = 0.05 * pi;
      auto k_max = static_cast<std::uint64_t>(std::floor(p * n));
      for (std::uint64_t k = 0; k <= k_max && ok; ++k) {
        double a = static_cast<double>(k) / static_cast<double>(n);
        if (a > p) continue;
        auto iv = binomial_tail_bracket(n, Prob(p), Prob(a));
        double exact = binomial_log_cdf(n, Prob(p), k).log2_value();
        ok = exact >= iv.lower - 1e-9 && exact <= iv.upper + 1e-9;
      }
    }
  report(6, "tail-bracket-exhaustive", ok, t0, "");
}

// --- 7: empirical coverage of the min-of-binomials interval ------------------
void c07() {
  auto t0 = clk::now();
  struct Set { std::uint64_t m; double p, delta, frac; };
  std::vector<Set> sets;
  int si = 0;
  for (std::uint64_t m : {50, 80, 100, 150, 200})
    for (double p : {0.3, 0.5}) {
      sets.push_back({m, p, si % 2 ? 0.1 : 0.05, 0.4});   // interval regime
      if (sets.size() < 20 && si % 3 == 0)
        sets.push_back({m, p, 0.1, 1.2});                  // zero certificate
      ++si;
    }
  sets.resize(20, {120, 0.4, 0.1, 0.4});
  bool ok = true;
  double worst_margin = 1.0;
  const int trials = 1000;
  for (std::size_t s = 0; s < sets.size() && ok; ++s) {
    const Set& st = sets[s];
    double kl0 = kl(Prob(0.0), Prob(st.p));
    double slack = c2_slack(st.delta, Prob(st.p), st.m);
    double log2_r = slack + st.frac * static_cast<double>(st.m) * kl0;
    auto res = min_binomial_interval(log2_r, st.m, Prob(st.p), st.delta);
    if (res.status == MinBinomialStatus::condition_unmet) {
      ok = false;
      break;
    }
    int covered = 0;
    for (int t = 0; t < trials; ++t) {
      Rng rng(splitmix64(0x5EED0 + 4096 * s + static_cast<std::uint64_t>(t)));
      auto z = min_of_binomials(st.m, Prob(st.p), log2_r, rng);
      if (!z) continue;
      double zf = static_cast<double>(*z) / static_cast<double>(st.m);
      if (res.status == MinBinomialStatus::zero_certificate) {
        covered += *z == 0;
      } else {
        covered += zf < st.p && kl(Prob(zf), Prob(st.p)) >= res.interval.lower &&
                   kl(Prob(zf), Prob(st.p)) <= res.interval.upper;
      }
    }
    double rate = static_cast<double>(covered) / trials;
    worst_margin = std::min(worst_margin, rate - (1.0 - st.delta));
    ok = rate >= 1.0 - st.delta - 0.03;
  }
  report(7, "min-binomial-coverage", ok, t0, num("worst_margin", worst_margin));
}

// --- 8: exact law of the minimum through the lazy stream sampler -------------
void c08() {
  auto t0 = clk::now();
  Rng rng(424242);
  const int n = 100000;
  int counts[3] = {0, 0, 0};
  for (int t = 0; t < n; ++t) {
    auto z = min_of_binomials(2, Prob(0.5), std::log2(3.0), rng);
    ++counts[*z];
  }
  double tv = 0.5 * (std::fabs(counts[0] / double(n) - 37.0 / 64.0) +
                     std::fabs(counts[1] / double(n) - 26.0 / 64.0) +
                     std::fabs(counts[2] / double(n) - 1.0 / 64.0));
  report(8, "min-sampler-exact-law", tv <= 0.01, t0, num("tv", tv));
}

// --- 9: failure of MDL_1 sets in on the hard stream instance -----------------
void c09() {
  auto t0 = clk::now();
  HardInstance inst{0.1, 0.25, {ScheduleKind::constant, 1.0, 0.5},
                    Variant::infinite_stream};
  auto rows = estimate_limit(inst, {1000, 2000, 4000}, 1000, 1107);
  bool ok = rows.back().frac_bad >= 0.9;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    ok = ok && (rows[i + 1].frac_bad >= rows[i].frac_bad ||
                rows[i + 1].ci_low <= rows[i].ci_high);
  report(9, "mdl1-limit-bad", ok, t0, num("frac_bad@4000", rows.back().frac_bad));
}

// --- 10: lambda = 2 winner concentrates at p*(2, L') -------------------------
void c10() {
  auto t0 = clk::now();
  HardInstance inst{0.05, 0.08, {ScheduleKind::constant, 2.0, 0.5},
                    Variant::infinite_stream};
  auto outcomes = run_trials(inst, 4000, 1000, 2210, 0, 1);
  int bad = 0, near = 0;
  const double target = 0.0075046904315196995;  // p*(2, 0.08)
  for (const auto& t : outcomes) {
    if (t.winning_class != Winner::bad) continue;
    ++bad;
    double frac = static_cast<double>(t.bad_error_count) / 4000.0;
    if (std::fabs(frac - target) <= 0.02) ++near;
  }
  bool ok = bad >= 850 && near >= static_cast<int>(std::ceil(0.95 * bad));
  report(10, "pstar-concentration", ok, t0,
         num("frac_bad", bad / 1000.0) + " " +
             num("near_rate", bad ? near / double(bad) : 0.0));
}

// --- 11: vanishing lambda drives the error to L' -----------------------------
void c11() {
  auto t0 = clk::now();
  HardInstance inst{0.1, 0.8, {ScheduleKind::inverse_log, 1.0, 0.5},
                    Variant::infinite_stream};
  auto rows = estimate_limit(inst, {2000}, 1000, 3311);
  bool ok = rows[0].frac_bad >= 0.9 && rows[0].mean_error >= 0.73;
  report(11, "vanishing-lambda-overfits", ok, t0,
         num("mean_error", rows[0].mean_error));
}

// --- 12: lambda = sqrt(m) keeps the good predictor ---------------------------
void c12() {
  auto t0 = clk::now();
  HardInstance inst{0.1, 0.25, {ScheduleKind::power, 1.0, 0.5},
                    Variant::infinite_stream};
  auto rows = estimate_limit(inst, {4000}, 1000, 4412);
  report(12, "sqrt-m-schedule-safe", rows[0].frac_bad <= 0.1, t0,
         num("frac_bad", rows[0].frac_bad));
}

// --- 13: super-linear schedule collapses to the max-prior predictor ----------
void c13() {
  auto t0 = clk::now();
  HardInstance inst{0.1, 0.4, {ScheduleKind::linear, 11.0, 0.5},
                    Variant::two_hypothesis};
  auto rows = estimate_limit(inst, {500}, 1000, 5513);
  report(13, "linear-schedule-prior-wins", rows[0].frac_bad >= 0.99, t0,
         num("frac_bad", rows[0].frac_bad));
}

// --- 14: the finite-sample upper bound closes onto ell -----------------------
void c14() {
  auto t0 = clk::now();
  double worst = 0.0;
  for (double l : {0.5, 1.0, 2.0}) {
    double target = ell(RegParam(l), Prob(0.1)).value();
    double v = mdl_upper_bound(RegParam(l), Prob(0.1), 4, 1000000000000ULL).value;
    worst = std::max(worst, v - target);
    if (v < target - 1e-9) worst = 1.0;  // the bound must stay above ell
  }
  report(14, "upper-bound-tightness", worst <= 1e-3, t0, num("max_gap", worst));
}

// --- 15: simulate output is byte-identical across job counts -----------------
void c15() {
  auto t0 = clk::now();
  SimulateConfig cfg;
  cfg.inst = {0.1, 0.25, {ScheduleKind::constant, 1.0, 0.5},
              Variant::infinite_stream};
  cfg.m_grid = {1000};
  cfg.trials = 300;
  cfg.seed = 1107;
  cfg.jobs = 1;
  std::string ref = simulate_csv(cfg);
  bool ok = true;
  for (int jobs : {4, 16}) {
    cfg.jobs = jobs;
    ok = ok && simulate_csv(cfg) == ref;
  }
  report(15, "csv-jobs-determinism", ok, t0, "");
}

}  // namespace

int main() {
  c01();
  c02();
  c03();
  c04();
  c05();
  c06();
  c07();
  c08();
  c09();
  c10();
  c11();
  c12();
  c13();
  c14();
  c15();
  std::printf("%d/15 criteria passed\n", 15 - g_failures);
  return g_failures;
}
