#include "mdlreg/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mdlreg/numkit.hpp"

namespace mdlreg {

namespace {
constexpr double kLn2 = 0.6931471805599453;
const double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double LambdaSchedule::at(std::uint64_t m) const {
  double md = static_cast<double>(m);
  switch (kind) {
    case ScheduleKind::constant:
      return c;
    case ScheduleKind::power:
      return c * std::pow(md, alpha);
    case ScheduleKind::inverse_log:
      return 1.0 / std::log2(md);
    case ScheduleKind::linear:
      return c * md;
  }
  return c;
}

void HardInstance::validate() const {
  if (!(l_star > 0.0 && l_star < 0.5))
    throw std::invalid_argument("HardInstance: L* must be in (0, 1/2)");
  if (!(l_prime >= l_star))
    throw std::invalid_argument("HardInstance: requires L* <= L'");
  double cap = variant == Variant::two_hypothesis ? 0.5 : 1.0;
  if (!(l_prime < cap))
    throw std::invalid_argument(
        variant == Variant::two_hypothesis
            ? "HardInstance: two_hypothesis requires L' < 1/2"
            : "HardInstance: requires L' < 1");
  if (!(schedule.c >= 0.0) || std::isnan(schedule.alpha))
    throw std::invalid_argument("HardInstance: bad lambda schedule");
  if (!(schedule.at(2) >= 0.0))
    throw std::invalid_argument("HardInstance: schedule negative at m = 2");
}

double desc_len_of_index(double log2_index) {
  if (!(log2_index >= 0.0))
    throw std::invalid_argument("desc_len_of_index: log2_index < 0");
  double L = log2_index;
  if (L <= 40.0) {
    double i = std::exp2(L);
    return std::log2(i * L * L + 10.0);
  }
  // log2(i log2^2 i + 10) = log2 i + 2 log2 log2 i + O(10/(i log2^2 i));
  // the dropped term is below 2^-30 bits past this threshold
  return L + 2.0 * std::log2(L);
}

double good_desc_len() { return std::log2(10.0); }

std::uint64_t sample_binomial(std::uint64_t m, Prob p, Rng& rng) {
  if (m == 0) throw std::invalid_argument("sample_binomial: m = 0");
  if (p.value() == 0.0) return 0;
  if (p.value() == 1.0) return m;
  std::vector<double> lcdf(m + 1);
  binomial_log_pmf_table(m, p, lcdf.data());
  double acc = lcdf[0];
  for (std::uint64_t k = 1; k <= m; ++k) {
    acc = log2_add(acc, lcdf[k]);
    lcdf[k] = acc < lcdf[k - 1] ? lcdf[k - 1] : acc;  // enforce monotone
  }
  lcdf[m] = 0.0;
  double target = std::log2(rng.uniform());
  auto it = std::lower_bound(lcdf.begin(), lcdf.end(), target);
  return static_cast<std::uint64_t>(it - lcdf.begin());
}

FirstOccurrenceStream::FirstOccurrenceStream(std::vector<double> log2_mass,
                                             std::vector<std::uint64_t> cats,
                                             Rng& rng)
    : log2_mass_(std::move(log2_mass)),
      cats_(std::move(cats)),
      rng_(rng),
      log2_unseen_(-kInf),
      log2_index_(-kInf) {
  if (log2_mass_.size() != cats_.size())
    throw std::invalid_argument("FirstOccurrenceStream: size mismatch");
  order_.reserve(log2_mass_.size());
  for (std::uint32_t i = 0; i < log2_mass_.size(); ++i)
    if (log2_mass_[i] > -kInf) order_.push_back(i);
  std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
    return log2_mass_[a] > log2_mass_[b];
  });
  recompute_unseen_mass();
}

void FirstOccurrenceStream::recompute_unseen_mass() {
  if (order_.empty()) {
    log2_unseen_ = -kInf;
    return;
  }
  double hi = log2_mass_[order_.front()];  // order_ is sorted by mass
  double sum = 0.0;
  for (std::uint32_t idx : order_) {
    double d = log2_mass_[idx] - hi;
    if (d > -80.0) sum += std::exp2(d);  // below that the term is invisible
  }
  log2_unseen_ = hi + std::log2(sum);
  if (log2_unseen_ > 0.0) log2_unseen_ = 0.0;
  emitted_since_recompute_ = 0;
}

std::optional<FirstOccurrence> FirstOccurrenceStream::next() {
  if (order_.empty() || log2_unseen_ == -kInf) return std::nullopt;

  // Gap to the next unseen category: Geometric(p_U), p_U the unseen mass.
  double u = rng_.uniform();
  bool linear_ok = !std::isnan(linear_index_);
  if (linear_ok && log2_unseen_ >= -40.0) {
    double p_u = std::exp2(log2_unseen_);
    if (p_u > 1.0) p_u = 1.0;
    double gap =
        p_u >= 1.0 ? 1.0 : std::floor(std::log(u) / std::log1p(-p_u)) + 1.0;
    if (gap < 1.0) gap = 1.0;
    linear_index_ += gap;
    log2_index_ = std::log2(linear_index_);
    if (linear_index_ > 0x1p52) linear_index_ = kNaN;  // log2-only from here
  } else {
    // log-domain gap: log2 G = log2 ln(1/u) - log2(-ln(1-p_U)); for tiny
    // p_U, -ln(1-p_U) = p_U (1 + p_U/2 + ...) avoids the cancellation
    double log2_denom;
    if (log2_unseen_ >= -40.0) {
      log2_denom = std::log2(-std::log1p(-std::exp2(log2_unseen_)));
    } else {
      log2_denom =
          log2_unseen_ + std::log1p(0.5 * std::exp2(log2_unseen_)) / kLn2;
    }
    double lnu = -std::log(u);
    double log2_gap = std::log2(lnu) - log2_denom;
    if (log2_gap < 0.0) log2_gap = 0.0;  // the gap is an integer >= 1
    log2_index_ = log2_add(log2_index_, log2_gap);
    linear_index_ = kNaN;
  }

  // Category: e with probability p_e / p_U, walked in decreasing-mass order.
  double v = rng_.uniform();
  double acc = 0.0;
  std::size_t pick = order_.size() - 1;
  for (std::size_t j = 0; j < order_.size(); ++j) {
    acc += std::exp2(log2_mass_[order_[j]] - log2_unseen_);
    if (acc >= v) {
      pick = j;
      break;
    }
  }
  std::uint32_t idx = order_[pick];
  order_.erase(order_.begin() + static_cast<std::ptrdiff_t>(pick));
  FirstOccurrence fo{cats_[idx], log2_index_};

  if (order_.empty()) {
    log2_unseen_ = -kInf;
    return fo;
  }
  double d = log2_mass_[idx] - log2_unseen_;
  if (d > -1.0 || ++emitted_since_recompute_ >= 64) {
    recompute_unseen_mass();
  } else {
    log2_unseen_ += std::log1p(-std::exp2(d)) / kLn2;
  }
  return fo;
}

std::vector<FirstOccurrence> sample_first_occurrences(std::uint64_t m,
                                                      Prob l_prime,
                                                      double budget,
                                                      Rng& rng) {
  if (m == 0) throw std::invalid_argument("sample_first_occurrences: m = 0");
  if (!(l_prime.value() > 0.0 && l_prime.value() < 1.0))
    throw std::invalid_argument("sample_first_occurrences: L' not in (0,1)");
  std::vector<double> mass(m + 1);
  binomial_log_pmf_table(m, l_prime, mass.data());
  std::vector<std::uint64_t> cats(m + 1);
  for (std::uint64_t e = 0; e <= m; ++e) cats[e] = e;
  FirstOccurrenceStream stream(std::move(mass), std::move(cats), rng);
  std::vector<FirstOccurrence> out;
  while (auto fo = stream.next()) {
    if (fo->log2_index > budget) break;  // indices only grow from here
    out.push_back(*fo);
  }
  return out;
}

std::optional<std::uint64_t> min_of_binomials(std::uint64_t m, Prob p,
                                              double log2_r, Rng& rng) {
  if (log2_r < 0.0) return std::nullopt;
  auto occ = sample_first_occurrences(m, p, log2_r, rng);
  if (occ.empty()) return std::nullopt;
  std::uint64_t best = occ.front().error_count;
  for (const auto& fo : occ)
    if (fo.error_count < best) best = fo.error_count;
  return best;
}

StreamOptimum optimize_bad_stream(std::uint64_t m, double lambda_m,
                                  Prob l_prime, Rng& rng) {
  if (m == 0) throw std::invalid_argument("optimize_bad_stream: m = 0");
  std::uint64_t e_max = m / 2;  // feasibility: 2e <= m
  std::vector<double> mass(m + 1);
  binomial_log_pmf_table(m, l_prime, mass.data());
  mass.resize(e_max + 1);
  std::vector<std::uint64_t> cats(e_max + 1);
  for (std::uint64_t e = 0; e <= e_max; ++e) cats[e] = e;
  FirstOccurrenceStream stream(std::move(mass), std::move(cats), rng);

  if (lambda_m == 0.0) {
    // interpolator regime: objective 0 at e = 0, which occurs a.s.
    double desc = good_desc_len();
    while (auto fo = stream.next()) {
      if (fo->error_count == 0) {
        desc = desc_len_of_index(fo->log2_index);
        break;
      }
    }
    return {0.0, 0, desc};
  }

  bool found = false;
  StreamOptimum best{kInf, 0, kInf};
  while (auto fo = stream.next()) {
    double desc = desc_len_of_index(fo->log2_index);
    // later candidates have strictly larger indices, hence larger prior
    // cost, and the code-length term is nonnegative: sound cut-off
    if (found && lambda_m * desc > best.best_objective) break;
    double obj = lambda_m * desc + log_binomial(m, fo->error_count);
    if (!found || obj < best.best_objective ||
        (obj == best.best_objective && desc < best.best_desc_len)) {
      best = {obj, fo->error_count, desc};
      found = true;
    }
  }
  if (!found) throw std::runtime_error("optimize_bad_stream: empty stream");
  return best;
}

namespace {
// learner tie-break semantics on (objective, desc, error, id)
bool beats(double obj_a, double desc_a, std::uint64_t err_a, std::uint64_t id_a,
           double obj_b, double desc_b, std::uint64_t err_b,
           std::uint64_t id_b) {
  if (obj_a != obj_b) return obj_a < obj_b;
  if (desc_a != desc_b) return desc_a < desc_b;
  if (err_a != err_b) return err_a < err_b;
  return id_a < id_b;
}
}  // namespace

TrialOutcome run_trial(const HardInstance& inst, std::uint64_t m,
                       std::uint64_t seed) {
  inst.validate();
  if (m < 2) throw std::invalid_argument("run_trial: m < 2");
  Rng rng(seed);
  double lambda_m = inst.schedule.at(m);
  std::uint64_t good_e = sample_binomial(m, Prob(inst.l_star), rng);
  bool good_ok = 2 * good_e <= m;
  double good_obj =
      good_ok ? lambda_m * good_desc_len() + log_binomial(m, good_e) : kInf;

  TrialOutcome out{};
  out.m = m;
  out.lambda_m = lambda_m;
  out.good_error_count = good_e;
  out.good_objective = good_obj;
  out.seed = seed;

  if (inst.variant == Variant::infinite_stream) {
    StreamOptimum opt = optimize_bad_stream(m, lambda_m, Prob(inst.l_prime), rng);
    out.bad_error_count = opt.best_error_count;
    bool bad_wins =
        !good_ok || beats(opt.best_objective, opt.best_desc_len,
                          opt.best_error_count, 1, good_obj, good_desc_len(),
                          good_e, 0);
    out.winning_class = bad_wins ? Winner::bad : Winner::good;
    out.winning_objective = bad_wins ? opt.best_objective : good_obj;
    out.population_error = bad_wins ? inst.l_prime : inst.l_star;
    return out;
  }

  // two-hypothesis variant: pi(h0) = 0.1, pi(h1) = 0.9
  std::uint64_t bad_e = sample_binomial(m, Prob(inst.l_prime), rng);
  out.bad_error_count = bad_e;
  bool bad_ok = 2 * bad_e <= m;
  double bad_desc = std::log2(10.0 / 9.0);
  double bad_obj =
      bad_ok ? lambda_m * bad_desc + log_binomial(m, bad_e) : kInf;
  if (!good_ok && !bad_ok) {
    out.winning_class = Winner::both_infeasible;
    out.winning_objective = std::nan("");
    out.population_error = std::nan("");
    return out;
  }
  bool bad_wins =
      !good_ok || (bad_ok && beats(bad_obj, bad_desc, bad_e, 1, good_obj,
                                   good_desc_len(), good_e, 0));
  out.winning_class = bad_wins ? Winner::bad : Winner::good;
  out.winning_objective = bad_wins ? bad_obj : good_obj;
  out.population_error = bad_wins ? inst.l_prime : inst.l_star;
  return out;
}

namespace {
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t global_index) {
  return splitmix64(master + 0x9E3779B97F4A7C15ULL * (global_index + 1));
}
}  // namespace

std::vector<TrialOutcome> run_trials(const HardInstance& inst, std::uint64_t m,
                                     std::uint64_t trials,
                                     std::uint64_t master_seed,
                                     std::uint64_t seed_offset, int jobs) {
  if (trials == 0) throw std::invalid_argument("run_trials: trials = 0");
  if (jobs < 1) throw std::invalid_argument("run_trials: jobs < 1");
  std::vector<TrialOutcome> out(trials);
  std::int64_t n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs)
  for (std::int64_t i = 0; i < n; ++i) {
    std::uint64_t g = seed_offset + static_cast<std::uint64_t>(i);
    out[static_cast<std::size_t>(i)] =
        run_trial(inst, m, trial_seed(master_seed, g));
  }
  return out;
}

std::vector<TrialOutcome> run_trials_serial(const HardInstance& inst,
                                            std::uint64_t m,
                                            std::uint64_t trials,
                                            std::uint64_t master_seed,
                                            std::uint64_t seed_offset) {
  if (trials == 0) throw std::invalid_argument("run_trials: trials = 0");
  std::vector<TrialOutcome> out(trials);
  for (std::uint64_t i = 0; i < trials; ++i)
    out[i] = run_trial(inst, m, trial_seed(master_seed, seed_offset + i));
  return out;
}

std::pair<double, double> clopper_pearson(std::uint64_t k, std::uint64_t n,
                                          double alpha) {
  if (k > n || n == 0)
    throw std::invalid_argument("clopper_pearson: bad (k, n)");
  auto cdf = [&](std::uint64_t j, double p) {
    return std::exp2(binomial_log_cdf(n, Prob(p), j).log2_value());
  };
  double lo = 0.0;
  if (k > 0) {
    // largest p with P(X >= k) <= alpha/2, i.e. cdf(k-1, p) = 1 - alpha/2
    double a = 0.0, b = 1.0;
    for (int i = 0; i < 100; ++i) {
      double mid = 0.5 * (a + b);
      (cdf(k - 1, mid) > 1.0 - alpha / 2.0 ? a : b) = mid;
    }
    lo = 0.5 * (a + b);
  }
  double hi = 1.0;
  if (k < n) {
    // smallest p with P(X <= k) <= alpha/2
    double a = 0.0, b = 1.0;
    for (int i = 0; i < 100; ++i) {
      double mid = 0.5 * (a + b);
      (cdf(k, mid) > alpha / 2.0 ? a : b) = mid;
    }
    hi = 0.5 * (a + b);
  }
  return {lo, hi};
}

LimitRow aggregate_trials(const HardInstance& inst,
                          const std::vector<TrialOutcome>& outcomes) {
  if (outcomes.empty())
    throw std::invalid_argument("aggregate_trials: no outcomes");
  std::uint64_t bad = 0, infeasible = 0;
  for (const auto& t : outcomes) {
    if (t.winning_class == Winner::both_infeasible)
      ++infeasible;
    else if (t.winning_class == Winner::bad)
      ++bad;
  }
  std::uint64_t decided = outcomes.size() - infeasible;
  LimitRow row{};
  row.m = outcomes.front().m;
  row.lambda_m = outcomes.front().lambda_m;
  row.trials = outcomes.size();
  row.infeasible_count = infeasible;
  if (decided == 0) {
    row.frac_bad = std::nan("");
    row.ci_low = row.ci_high = row.mean_error = std::nan("");
    return row;
  }
  row.frac_bad = static_cast<double>(bad) / static_cast<double>(decided);
  auto ci = clopper_pearson(bad, decided);
  row.ci_low = ci.first;
  row.ci_high = ci.second;
  row.mean_error =
      row.frac_bad * inst.l_prime + (1.0 - row.frac_bad) * inst.l_star;
  return row;
}

std::vector<LimitRow> estimate_limit(const HardInstance& inst,
                                     const std::vector<std::uint64_t>& m_grid,
                                     std::uint64_t trials,
                                     std::uint64_t master_seed, int jobs) {
  if (trials == 0) throw std::invalid_argument("estimate_limit: trials = 0");
  inst.validate();
  std::vector<LimitRow> rows;
  rows.reserve(m_grid.size());
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    auto outcomes =
        run_trials(inst, m_grid[i], trials, master_seed, i * trials, jobs);
    rows.push_back(aggregate_trials(inst, outcomes));
  }
  return rows;
}

double k_of_m(RegParam lambda, std::uint64_t m, Prob l_prime) {
  if (m == 0) throw std::invalid_argument("k_of_m: m = 0");
  double md = static_cast<double>(m);
  if (lambda.lambda() <= 1.0)
    return 1.0 + 0.5 * std::log2(md) - md * std::log2(1.0 - l_prime.value());
  if (!(l_prime.value() > 0.0 && l_prime.value() < 0.5))
    throw std::invalid_argument("k_of_m: lambda > 1 needs L' in (0, 1/2)");
  return md * kl(p_star(lambda, l_prime), l_prime);
}

}  // namespace mdlreg
