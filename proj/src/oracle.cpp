#include "mdlreg/oracle.hpp"

#include <cmath>
#include <cstdint>

#include "mdlreg/numkit.hpp"

namespace mdlreg {

namespace {
// the defining objective, evaluated directly (no shared tables)
double q_objective(double lambda, double q, double p) {
  return lambda * kl(Prob(p), Prob(q)) + entropy(Prob(p));
}
}  // namespace

QOracle::QOracle(double step) : step_(step) {
  n_ = static_cast<std::size_t>(0.5 / step_) + 1;
  plogp_.resize(n_);
  plogp_[0] = 0.0;
  for (std::size_t i = 1; i < n_; ++i) {
    double p = static_cast<double>(i) * step_;
    plogp_[i] = p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p);
  }
}

// lambda*KL(p||q) + H(p) = (lambda-1)*[p log p + (1-p) log(1-p)]
//                          - lambda*[p log q + (1-p) log(1-q)],
// affine in the precomputed p-log-p table: the scan is pure arithmetic.
double QOracle::refine(double lambda, double q, std::size_t gmin) const {
  double lo = gmin > 0 ? static_cast<double>(gmin - 1) * step_ : 0.0;
  double hi = gmin + 1 < n_ ? static_cast<double>(gmin + 1) * step_ : 0.5;
  const double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = q_objective(lambda, q, x1), f2 = q_objective(lambda, q, x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = q_objective(lambda, q, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = q_objective(lambda, q, x2);
    }
  }
  double best = f1 < f2 ? f1 : f2;
  double edge = q_objective(lambda, q, lo);
  if (edge < best) best = edge;
  edge = q_objective(lambda, q, hi);
  if (edge < best) best = edge;
  return best;
}

double QOracle::minimize_serial(double lambda, double q) const {
  double ca = lambda - 1.0;
  double lq = std::log2(q), l1q = std::log2(1.0 - q);
  double cb = -lambda * (lq - l1q);
  double cc = -lambda * l1q;
  double best = cc;  // p = 0 term: plogp = 0
  std::size_t argmin = 0;
  for (std::size_t i = 1; i < n_; ++i) {
    double v = ca * plogp_[i] + cb * (static_cast<double>(i) * step_) + cc;
    if (v < best) {
      best = v;
      argmin = i;
    }
  }
  return refine(lambda, q, argmin);
}

double QOracle::minimize_parallel(double lambda, double q) const {
  double ca = lambda - 1.0;
  double lq = std::log2(q), l1q = std::log2(1.0 - q);
  double cb = -lambda * (lq - l1q);
  double cc = -lambda * l1q;
  double best = cc;
  std::size_t argmin = 0;
#pragma omp parallel
  {
    double lbest = cc;
    std::size_t largmin = 0;
#pragma omp for nowait
    for (std::int64_t i = 1; i < static_cast<std::int64_t>(n_); ++i) {
      double v = ca * plogp_[static_cast<std::size_t>(i)] +
                 cb * (static_cast<double>(i) * step_) + cc;
      if (v < lbest) {
        lbest = v;
        largmin = static_cast<std::size_t>(i);
      }
    }
#pragma omp critical
    {
      // deterministic reduction: prefer the smaller index on exact ties
      if (lbest < best || (lbest == best && largmin < argmin)) {
        best = lbest;
        argmin = largmin;
      }
    }
  }
  return refine(lambda, q, argmin);
}

}  // namespace mdlreg
