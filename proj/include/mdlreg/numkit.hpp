#pragma once

#include <cstdint>
#include <limits>

// Scalar primitives shared by every other module. All logarithms are base 2
// and all entropies are in bits. The 0*log(0) = 0 convention is implemented
// by explicit branching, never by limit evaluation.

namespace mdlreg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A probability. Construction rejects NaN and values outside [0,1].
class Prob {
 public:
  Prob() = default;
  explicit Prob(double v);
  double value() const { return v_; }

 private:
  double v_ = 0.0;
};

// Base-2 log of a probability; -inf is a legal value (probability zero).
class LogProb {
 public:
  LogProb() : lv_(-kInf) {}
  explicit LogProb(double log2_value);
  double log2_value() const { return lv_; }
  double value() const;  // exp2

 private:
  double lv_;
};

// log2(exp2(a) + exp2(b)) without leaving the log domain.
double log2_add(double a, double b);

double entropy(Prob p);                 // H(p), bits
Prob entropy_inverse(double t);         // unique p in [0, 1/2] with H(p) = t
double kl(Prob p, Prob q);              // KL(p||q), bits; +inf is a value
double log_binomial(std::uint64_t m, std::uint64_t k);  // log2 C(m,k)

LogProb binomial_log_pmf(std::uint64_t m, Prob p, std::uint64_t k);
LogProb binomial_log_cdf(std::uint64_t m, Prob p, std::uint64_t k);

// log2 pmf of Bin(m,p) for k = 0..m in one pass (ratio recurrence).
// Exposed because simlab builds categorical streams from it.
void binomial_log_pmf_table(std::uint64_t m, Prob p, double* out /* m+1 */);

}  // namespace mdlreg
