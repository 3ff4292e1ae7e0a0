#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mdlreg/bounds.hpp"
#include "mdlreg/commands.hpp"
#include "mdlreg/oracle.hpp"
#include "mdlreg/simlab.hpp"

namespace mdlreg {

namespace {

struct Suite {
  std::string name;
  bool pass;
  std::string detail;
};

Suite tempering_oracle_suite(bool fast) {
  // closed forms vs brute-force grid minimization of lambda*KL(p||q)+H(p)
  QOracle oracle(fast ? 1e-5 : 2.5e-7);
  std::vector<double> lambdas =
      fast ? std::vector<double>{0.5, 2.0}
           : std::vector<double>{0.1, 0.3, 0.5, 1.0, 1.5, 2.0, 5.0, 10.0};
  double worst = 0.0;
  for (double l : lambdas) {
    for (int i = 1; i <= 49; ++i) {
      double q = 0.01 * i;
      double diff =
          std::fabs(big_Q(RegParam(l), Prob(q)) - oracle.minimize_parallel(l, q));
      if (diff > worst) worst = diff;
    }
  }
  return {"tempering-oracle-grid", worst <= 1e-6,
          "max |closed form - grid min| = " + std::to_string(worst)};
}

Suite lemma_5_2_suite() {
  // U(q) <= H(q) < U(q) + lambda/(lambda-1)^2
  for (double l : {1.01, 1.1, 2.0, 5.0, 50.0}) {
    RegParam lam(l);
    double gap = l / ((l - 1.0) * (l - 1.0));
    for (int i = 1; i <= 499; ++i) {
      double q = 0.001 * i;
      double u = big_U(lam, Prob(q));
      double h = entropy(Prob(q));
      if (u > h + 1e-12 || !(h < u + gap))
        return {"lemma-5.2", false,
                "violated at lambda=" + std::to_string(l) +
                    " q=" + std::to_string(q)};
    }
  }
  return {"lemma-5.2", true, "5x499 grid"};
}

Suite stirling_gap_suite(bool fast) {
  std::uint64_t m_max = fast ? 100 : 200;
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    double cap = std::log2(static_cast<double>(m + 1));
    for (std::uint64_t k = 0; k <= m; ++k) {
      double gap = static_cast<double>(m) *
                       entropy(Prob(static_cast<double>(k) /
                                    static_cast<double>(m))) -
                   log_binomial(m, k);
      if (gap < -1e-9 || gap > cap + 1e-9)
        return {"stirling-gap", false,
                "m=" + std::to_string(m) + " k=" + std::to_string(k)};
    }
  }
  return {"stirling-gap", true, "all m <= " + std::to_string(m_max)};
}

Suite lemma_c1_suite(bool fast) {
  std::uint64_t n_max = fast ? 30 : 60;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    for (int pi = 1; pi <= 19; ++pi) {
      double p = 0.05 * pi;
      std::uint64_t k_max =
          static_cast<std::uint64_t>(std::floor(p * static_cast<double>(n)));
      for (std::uint64_t k = 0; k <= k_max; ++k) {
        double a = static_cast<double>(k) / static_cast<double>(n);
        if (a > p) continue;  // guard the k_max = floor rounding edge
        KLInterval iv = binomial_tail_bracket(n, Prob(p), Prob(a));
        double exact = binomial_log_cdf(n, Prob(p), k).log2_value();
        if (exact < iv.lower - 1e-9 || exact > iv.upper + 1e-9)
          return {"lemma-c1-exhaustive", false,
                  "n=" + std::to_string(n) + " p=" + std::to_string(p) +
                      " k=" + std::to_string(k)};
      }
    }
  }
  return {"lemma-c1-exhaustive", true, "n <= " + std::to_string(n_max)};
}

Suite sampler_tv_suite(bool fast) {
  // min of 3 i.i.d. Bin(2, 0.5) via the lazy stream (r = 3):
  // exact law (37/64, 26/64, 1/64)
  std::uint64_t n = fast ? 20000 : 100000;
  std::uint64_t counts[3] = {0, 0, 0};
  for (std::uint64_t t = 0; t < n; ++t) {
    Rng rng(splitmix64(0xC0FFEEULL + t));
    auto z = min_of_binomials(2, Prob(0.5), std::log2(3.0), rng);
    counts[z.value()]++;
  }
  double expect[3] = {37.0 / 64.0, 26.0 / 64.0, 1.0 / 64.0};
  double tv = 0.0;
  for (int i = 0; i < 3; ++i)
    tv += 0.5 * std::fabs(static_cast<double>(counts[i]) /
                              static_cast<double>(n) -
                          expect[i]);
  return {"min-sampler-tv", tv <= (fast ? 0.02 : 0.01),
          "TV = " + std::to_string(tv)};
}

Suite prior_kraft_suite() {
  // sum over i of 1/(i log2^2 i + 10) plus an integral tail bound stays <= 1
  double sum = 0.1;  // i = 0, the good predictor
  for (std::uint64_t i = 1; i <= 1000000; ++i) {
    double li = std::log2(static_cast<double>(i));
    sum += 1.0 / (static_cast<double>(i) * li * li + 10.0);
  }
  // tail: integral of dx/(x log2^2 x) from 1e6 = ln^2(2)/ln(1e6)
  constexpr double kLn2 = 0.6931471805599453;
  double tail = kLn2 * kLn2 / std::log(1e6);
  bool ok = sum + tail <= 1.0 && sum > 0.6 && sum < 0.75;
  return {"prior-kraft", ok,
          "partial sum = " + std::to_string(sum) +
              ", tail <= " + std::to_string(tail)};
}

Suite roundtrip_suite() {
  // big_U_inverse(big_U(q)) == q, deterministic pseudo-random points
  std::uint64_t s = 12345;
  for (int i = 0; i < 1000; ++i) {
    s = splitmix64(s);
    double l = 1.0 + 9.0 * (static_cast<double>(s >> 11) * 0x1p-53) + 1e-3;
    s = splitmix64(s);
    double q = 0.001 + 0.498 * (static_cast<double>(s >> 11) * 0x1p-53);
    RegParam lam(l);
    double back = big_U_inverse(lam, big_U(lam, Prob(q))).value();
    if (std::fabs(back - q) > 1e-9)
      return {"u-roundtrip", false,
              "lambda=" + std::to_string(l) + " q=" + std::to_string(q)};
  }
  return {"u-roundtrip", true, "1000 random points"};
}

}  // namespace

int run_verify(bool fast, std::ostream& out) {
  std::vector<Suite> suites;
  suites.push_back(tempering_oracle_suite(fast));
  suites.push_back(lemma_5_2_suite());
  suites.push_back(stirling_gap_suite(fast));
  suites.push_back(lemma_c1_suite(fast));
  suites.push_back(sampler_tv_suite(fast));
  suites.push_back(prior_kraft_suite());
  suites.push_back(roundtrip_suite());
  int failures = 0;
  for (const auto& s : suites) {
    out << (s.pass ? "PASS" : "FAIL") << "  " << s.name << "  (" << s.detail
        << ")\n";
    if (!s.pass) ++failures;
  }
  return failures;
}

}  // namespace mdlreg
