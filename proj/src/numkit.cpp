#include "mdlreg/numkit.hpp"

#include <cmath>
#include <stdexcept>

namespace mdlreg {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

Prob::Prob(double v) : v_(v) {
  if (std::isnan(v) || v < 0.0 || v > 1.0)
    throw std::invalid_argument("Prob: value outside [0,1]");
}

LogProb::LogProb(double log2_value) : lv_(log2_value) {
  if (std::isnan(log2_value))
    throw std::invalid_argument("LogProb: NaN");
  if (log2_value > 0.0) {
    // absorb sub-epsilon positive drift from log-sum-exp accumulation
    if (log2_value > 1e-9)
      throw std::invalid_argument("LogProb: log2 value > 0");
    lv_ = 0.0;
  }
}

double LogProb::value() const { return std::exp2(lv_); }

double log2_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  double hi = a > b ? a : b;
  double lo = a > b ? b : a;
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

double entropy(Prob p) {
  double v = p.value();
  if (v == 0.0 || v == 1.0) return 0.0;
  return -v * std::log2(v) - (1.0 - v) * std::log2(1.0 - v);
}

Prob entropy_inverse(double t) {
  if (std::isnan(t) || t < 0.0 || t > 1.0)
    throw std::invalid_argument("entropy_inverse: t outside [0,1]");
  if (t == 0.0) return Prob(0.0);
  if (t == 1.0) return Prob(0.5);
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 100; ++i) {
    double mid = 0.5 * (lo + hi);
    (entropy(Prob(mid)) < t ? lo : hi) = mid;
  }
  return Prob(0.5 * (lo + hi));
}

double kl(Prob pp, Prob qq) {
  double p = pp.value(), q = qq.value();
  if (p == q) return 0.0;
  if (q == 0.0 || q == 1.0) return kInf;
  double acc = 0.0;
  if (p > 0.0) acc += p * std::log2(p / q);
  if (p < 1.0) acc += (1.0 - p) * std::log2((1.0 - p) / (1.0 - q));
  return acc < 0.0 ? 0.0 : acc;  // rounding can dip a hair below zero
}

double log_binomial(std::uint64_t m, std::uint64_t k) {
  if (k > m) throw std::invalid_argument("log_binomial: k > m");
  if (k == 0 || k == m) return 0.0;
  double v = (std::lgamma(static_cast<double>(m) + 1.0) -
              std::lgamma(static_cast<double>(k) + 1.0) -
              std::lgamma(static_cast<double>(m - k) + 1.0)) /
             kLn2;
  return v < 0.0 ? 0.0 : v;
}

LogProb binomial_log_pmf(std::uint64_t m, Prob p, std::uint64_t k) {
  if (k > m) throw std::invalid_argument("binomial_log_pmf: k > m");
  double pv = p.value();
  if (pv == 0.0) return LogProb(k == 0 ? 0.0 : -kInf);
  if (pv == 1.0) return LogProb(k == m ? 0.0 : -kInf);
  double lv = log_binomial(m, k) + static_cast<double>(k) * std::log2(pv) +
              static_cast<double>(m - k) * std::log2(1.0 - pv);
  return LogProb(lv > 0.0 ? 0.0 : lv);
}

LogProb binomial_log_cdf(std::uint64_t m, Prob p, std::uint64_t k) {
  if (k > m) throw std::invalid_argument("binomial_log_cdf: k > m");
  if (k == m) return LogProb(0.0);
  double pv = p.value();
  if (pv == 0.0) return LogProb(0.0);  // k < m but all mass at 0
  if (pv == 1.0) return LogProb(-kInf);
  // ratio recurrence keeps this O(k) with one log per term
  double lratio = std::log2(pv) - std::log2(1.0 - pv);
  double lpmf = static_cast<double>(m) * std::log2(1.0 - pv);
  double acc = lpmf;
  for (std::uint64_t j = 0; j < k; ++j) {
    lpmf += std::log2(static_cast<double>(m - j) /
                      static_cast<double>(j + 1)) +
            lratio;
    acc = log2_add(acc, lpmf);
  }
  return LogProb(acc > 0.0 ? 0.0 : acc);
}

void binomial_log_pmf_table(std::uint64_t m, Prob p, double* out) {
  double pv = p.value();
  if (pv == 0.0) {
    out[0] = 0.0;
    for (std::uint64_t k = 1; k <= m; ++k) out[k] = -kInf;
    return;
  }
  if (pv == 1.0) {
    for (std::uint64_t k = 0; k < m; ++k) out[k] = -kInf;
    out[m] = 0.0;
    return;
  }
  double lratio = std::log2(pv) - std::log2(1.0 - pv);
  out[0] = static_cast<double>(m) * std::log2(1.0 - pv);
  for (std::uint64_t k = 0; k < m; ++k)
    out[k + 1] = out[k] +
                 std::log2(static_cast<double>(m - k) /
                           static_cast<double>(k + 1)) +
                 lratio;
}

}  // namespace mdlreg
