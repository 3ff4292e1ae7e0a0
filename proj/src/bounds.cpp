#include "mdlreg/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace mdlreg {

namespace {
constexpr double kLn2 = 0.6931471805599453;

double resolve_delta(const BoundConfig& cfg, std::uint64_t m) {
  double d = cfg.delta > 0.0 ? cfg.delta : 1.0 / std::sqrt(static_cast<double>(m));
  if (!(d > 0.0 && d < 1.0))
    throw std::invalid_argument("delta outside (0,1)");
  if (!(cfg.mcdiarmid_constant > 0.0) || !(cfg.lemma_a1_constant > 0.0))
    throw std::invalid_argument("bound constants must be positive");
  return d;
}

// C * sqrt(2 log2^2(m) * log2(2/delta) / m), the McDiarmid fluctuation term
double mcdiarmid_term(double c_const, std::uint64_t m, double delta) {
  double lm = std::log2(static_cast<double>(m));
  return c_const *
         std::sqrt(2.0 * lm * lm * std::log2(2.0 / delta) /
                   static_cast<double>(m));
}

BoundResult clamp01(double v, double delta) {
  if (v >= 1.0) return {1.0, true, delta};
  return {v < 0.0 ? 0.0 : v, false, delta};
}
}  // namespace

double kl_concentration_epsilon(double desc_len, std::uint64_t m,
                                double delta) {
  if (m == 0) throw std::invalid_argument("kl_concentration_epsilon: m = 0");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("kl_concentration_epsilon: delta outside (0,1)");
  if (desc_len < 0.0)
    throw std::invalid_argument("kl_concentration_epsilon: desc_len < 0");
  return (desc_len +
          std::log2(static_cast<double>(m + 1) / (delta / 2.0))) /
         static_cast<double>(m);
}

BoundResult mdl_upper_bound(RegParam lambda, Prob l_star, double desc_len,
                            std::uint64_t m, BoundConfig cfg) {
  double l = lambda.lambda();
  if (l == 0.0) throw std::invalid_argument("mdl_upper_bound: lambda = 0");
  if (!(l_star.value() < 0.5))
    throw std::invalid_argument("mdl_upper_bound: requires L* < 1/2");
  if (m == 0) throw std::invalid_argument("mdl_upper_bound: m = 0");
  double delta = resolve_delta(cfg, m);
  double md = static_cast<double>(m);
  double union_term = std::log2(static_cast<double>(m + 1) / (delta / 2.0)) / md;
  if (l <= 1.0) {
    double v = ell(lambda, l_star).value() +
               (cfg.mcdiarmid_constant / l) * mcdiarmid_term(1.0, m, delta) +
               union_term + desc_len / md + delta;
    return clamp01(v, delta);
  }
  // lambda > 1: push the slack through U^{-1} directly rather than via the
  // mean-value-theorem constant c; tighter and exact in the m -> inf limit.
  double slack = cfg.mcdiarmid_constant * mcdiarmid_term(1.0, m, delta) +
                 l * union_term + l * desc_len / md;
  double target = entropy(l_star) + slack;
  if (target >= 1.0) return {1.0, true, delta};
  double v = big_U_inverse(lambda, target).value() + delta;
  return clamp01(v, delta);
}

BoundResult consistency_bound(RegParam lambda, Prob l_star, double desc_len,
                              std::uint64_t m, BoundConfig cfg) {
  double l = lambda.lambda();
  if (!(l > 1.0))
    throw std::invalid_argument("consistency_bound: requires lambda > 1");
  if (!(l_star.value() < 0.5))
    throw std::invalid_argument("consistency_bound: requires L* < 1/2");
  if (m == 0) throw std::invalid_argument("consistency_bound: m = 0");
  double delta = resolve_delta(cfg, m);
  double md = static_cast<double>(m);
  double slack =
      cfg.mcdiarmid_constant * mcdiarmid_term(1.0, m, delta) +
      l * std::log2(static_cast<double>(m + 1) / (delta / 2.0)) / md +
      l * desc_len / md + l / ((l - 1.0) * (l - 1.0));
  double prefactor =
      (0.5 - l_star.value()) / (1.0 - entropy(l_star));
  double v = l_star.value() + prefactor * slack + delta;
  return clamp01(v, delta);
}

BoundResult srm_bound(double desc_len, std::uint64_t m, BoundConfig cfg) {
  if (m == 0) throw std::invalid_argument("srm_bound: m = 0");
  if (desc_len < 0.0) throw std::invalid_argument("srm_bound: desc_len < 0");
  double delta = resolve_delta(cfg, m);
  double v = cfg.mcdiarmid_constant *
             std::sqrt(kl_concentration_epsilon(desc_len, m, delta));
  return clamp01(v, delta);
}

KLInterval binomial_tail_bracket(std::uint64_t n, Prob p, Prob a) {
  if (n == 0) throw std::invalid_argument("binomial_tail_bracket: n = 0");
  if (!(p.value() < 1.0))
    throw std::invalid_argument("binomial_tail_bracket: requires p < 1");
  if (a.value() > p.value())
    throw std::invalid_argument("binomial_tail_bracket: requires a <= p");
  double center = -static_cast<double>(n) * kl(a, p);
  double slack = 4.0 * std::log2(static_cast<double>(n + 1));
  if (p.value() > 0.5)
    slack += std::log2(p.value() / (1.0 - p.value()));
  return {center - slack, center + slack};
}

double c2_slack(double delta, Prob p, std::uint64_t m) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("c2_slack: delta outside (0,1)");
  double s = std::log2(2.0 / delta) +
             4.0 * std::log2(static_cast<double>(m + 1));
  if (p.value() > 0.5) s += std::log2(p.value() / (1.0 - p.value()));
  return s;
}

MinBinomialResult min_binomial_interval(double log2_r, std::uint64_t m,
                                        Prob p, double delta) {
  if (m == 0) throw std::invalid_argument("min_binomial_interval: m = 0");
  if (log2_r < 0.0)
    throw std::invalid_argument("min_binomial_interval: r < 1");
  if (p.value() == 0.0 || p.value() == 1.0)
    throw std::invalid_argument("min_binomial_interval: degenerate p");
  double slack = c2_slack(delta, p, m);
  if (slack >= log2_r)
    return {MinBinomialStatus::condition_unmet, {0.0, 0.0}, slack};
  double lo = (log2_r - slack) / static_cast<double>(m);
  double hi = (log2_r + slack) / static_cast<double>(m);
  if (kl(Prob(0.0), p) < lo)
    return {MinBinomialStatus::zero_certificate, {lo, hi}, slack};
  return {MinBinomialStatus::interval, {lo, hi}, slack};
}

}  // namespace mdlreg
