#pragma once

#include <cstdint>

#include "mdlreg/tempering.hpp"

// Finite-sample guarantees: KL concentration radius, the explicit
// agnostic/consistency bounds, the SRM excess-risk radius, and the
// binomial tail machinery (tail bracket, min-of-binomials interval).
// The absolute constants hidden in the O(.) of the theorems are exposed
// in BoundConfig; every bound value is "up to constants" by nature.

namespace mdlreg {

struct BoundConfig {
  // delta <= 0 means "use 1/sqrt(m)", the proofs' default choice.
  double delta = -1.0;
  double mcdiarmid_constant = 1.0;  // the proofs' C
  double lemma_a1_constant = 0.09;  // the proofs' c
};

struct BoundResult {
  double value;   // clamped to [0,1]
  bool vacuous;   // true when the un-clamped value was >= 1
  double delta;   // the delta actually used
};

struct KLInterval {
  double lower;  // bits/sample
  double upper;
};

// (desc_len + log2((m+1)/(delta/2))) / m
double kl_concentration_epsilon(double desc_len, std::uint64_t m,
                                double delta);

BoundResult mdl_upper_bound(RegParam lambda, Prob l_star, double desc_len,
                            std::uint64_t m, BoundConfig cfg = {});

BoundResult consistency_bound(RegParam lambda, Prob l_star, double desc_len,
                              std::uint64_t m, BoundConfig cfg = {});

// sqrt((desc_len + log2((m+1)/(delta/2))) / m); value kept, vacuous flagged.
BoundResult srm_bound(double desc_len, std::uint64_t m, BoundConfig cfg = {});

// -n*KL(a||p) +- (4 log2(n+1) + [log2(p/(1-p))]_+); requires a <= p < 1.
KLInterval binomial_tail_bracket(std::uint64_t n, Prob p, Prob a);

// Slack term of the min-of-binomials interval.
double c2_slack(double delta, Prob p, std::uint64_t m);

enum class MinBinomialStatus {
  interval,          // KL(Z||p) in (log2 r +- slack)/m and Z < p, w.p. >= 1-delta
  zero_certificate,  // Z = 0 w.p. >= 1-delta
  condition_unmet,   // slack >= log2 r: the theorem is silent here
};

struct MinBinomialResult {
  MinBinomialStatus status;
  KLInterval interval{0.0, 0.0};  // meaningful only for status == interval
  double slack;
};

// r is passed as log2_r so that counts like 2^100 are representable.
MinBinomialResult min_binomial_interval(double log2_r, std::uint64_t m,
                                        Prob p, double delta);

}  // namespace mdlreg
