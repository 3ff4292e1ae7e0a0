#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mdlreg/numkit.hpp"
#include "mdlreg/tempering.hpp"

// Exact Monte-Carlo reproduction of the lower-bound constructions: one good
// predictor with population error L* plus an i.i.d. stream of bad predictors
// with error L' under the prior pi(h_i) = 1/(i log2^2 i + 10).  The stream is
// never enumerated: the joint law of the first-occurrence indices {I_e} of
// each empirical-error level e is sampled exactly and the MDL objective is
// minimized over it with a sound pruning rule.

namespace mdlreg {

std::uint64_t splitmix64(std::uint64_t x);

// mt19937_64 is bit-reproducible per the C++ standard; uniforms are derived
// by fixed bit manipulation (uniform_real_distribution is not pinned).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() {  // strictly inside (0,1)
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
  }
  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

enum class ScheduleKind { constant, power, inverse_log, linear };

struct LambdaSchedule {
  ScheduleKind kind = ScheduleKind::constant;
  double c = 1.0;      // constant value, power/linear coefficient
  double alpha = 0.5;  // power exponent
  double at(std::uint64_t m) const;
};

enum class Variant { infinite_stream, two_hypothesis };

struct HardInstance {
  double l_star;  // good predictor's population error, in (0, 1/2)
  double l_prime; // bad predictors' population error
  LambdaSchedule schedule;
  Variant variant = Variant::infinite_stream;
  void validate() const;  // throws std::invalid_argument
};

// Description length of stream index i, from log2(i).  Index 0 is the good
// predictor (pi(h_0) = 0.1).
double desc_len_of_index(double log2_index);
double good_desc_len();  // log2(10)

// Exact Bin(m,p) draw by inversion on the exact log-CDF (binary search).
std::uint64_t sample_binomial(std::uint64_t m, Prob p, Rng& rng);

struct FirstOccurrence {
  std::uint64_t error_count;
  double log2_index;  // log2 of the first stream index with this error level
};

// Lazy exact sampler of the joint first-occurrence indices of a categorical
// stream: given the unseen mass p_U, the gap to the next new category is
// Geometric(p_U) and the category is chosen with probability p_e/p_U.
// Indices are carried in log2 once they leave exact double range.
class FirstOccurrenceStream {
 public:
  // categories[i] has log2-mass log2_mass[i]; masses may sum to < 1 (the
  // remainder counts toward gaps but is never emitted).
  FirstOccurrenceStream(std::vector<double> log2_mass,
                        std::vector<std::uint64_t> categories, Rng& rng);

  // Next first occurrence in increasing index order; nullopt when exhausted.
  std::optional<FirstOccurrence> next();

 private:
  void recompute_unseen_mass();

  std::vector<double> log2_mass_;
  std::vector<std::uint64_t> cats_;
  std::vector<std::uint32_t> order_;  // unseen, by decreasing mass
  Rng& rng_;
  double log2_unseen_;      // log2 of total unseen mass
  double log2_index_;       // -inf before the first pull
  double linear_index_ = 0; // exact while <= 2^52, then NaN
  std::size_t emitted_since_recompute_ = 0;
};

// First occurrences of all error levels e = 0..m of an i.i.d. Bin(m,L')
// categorical stream, restricted to indices with log2_index <= budget.
std::vector<FirstOccurrence> sample_first_occurrences(std::uint64_t m,
                                                      Prob l_prime,
                                                      double budget,
                                                      Rng& rng);

// Scaled minimum of the first r stream draws (r as log2_r); used by the
// Theorem C.2 coverage checks.  Returns nullopt if r < 1 reaches nothing.
std::optional<std::uint64_t> min_of_binomials(std::uint64_t m, Prob p,
                                              double log2_r, Rng& rng);

struct StreamOptimum {
  double best_objective;
  std::uint64_t best_error_count;
  double best_desc_len;
};

// Exact argmin of lambda_m*desc(I_e) + log2 C(m,e) over the whole stream,
// restricted to feasible 2e <= m.  For lambda_m = 0 returns the interpolator
// (objective 0, e = 0 a.s.).
StreamOptimum optimize_bad_stream(std::uint64_t m, double lambda_m,
                                  Prob l_prime, Rng& rng);

enum class Winner { good, bad, both_infeasible };

struct TrialOutcome {
  std::uint64_t m;
  double lambda_m;
  std::uint64_t good_error_count;
  Winner winning_class;
  double winning_objective;
  double good_objective;       // +inf when the good predictor is infeasible
  std::uint64_t bad_error_count;
  double population_error;     // L* iff winning_class == good; NaN if neither
  std::uint64_t seed;
};

TrialOutcome run_trial(const HardInstance& inst, std::uint64_t m,
                       std::uint64_t seed);

// Per-trial seeds derive from (master_seed, global index) so the result is
// independent of schedule and worker count.
std::vector<TrialOutcome> run_trials(const HardInstance& inst,
                                     std::uint64_t m, std::uint64_t trials,
                                     std::uint64_t master_seed,
                                     std::uint64_t seed_offset, int jobs);
// Plain-loop reference used to pin down the parallel path in tests.
std::vector<TrialOutcome> run_trials_serial(const HardInstance& inst,
                                            std::uint64_t m,
                                            std::uint64_t trials,
                                            std::uint64_t master_seed,
                                            std::uint64_t seed_offset);

struct LimitRow {
  std::uint64_t m;
  double lambda_m;
  std::uint64_t trials;
  double frac_bad;   // over decided trials
  double ci_low;     // exact Clopper-Pearson 95%
  double ci_high;
  double mean_error; // frac_bad*L' + (1-frac_bad)*L*
  std::uint64_t infeasible_count;
};

LimitRow aggregate_trials(const HardInstance& inst,
                          const std::vector<TrialOutcome>& outcomes);

std::vector<LimitRow> estimate_limit(const HardInstance& inst,
                                     const std::vector<std::uint64_t>& m_grid,
                                     std::uint64_t trials,
                                     std::uint64_t master_seed, int jobs = 1);

// Exact 95% Clopper-Pearson interval for k successes out of n.
std::pair<double, double> clopper_pearson(std::uint64_t k, std::uint64_t n,
                                          double alpha = 0.05);

// log2 k(m), the witness-count diagnostic (not used by the optimizer).
double k_of_m(RegParam lambda, std::uint64_t m, Prob l_prime);

}  // namespace mdlreg
