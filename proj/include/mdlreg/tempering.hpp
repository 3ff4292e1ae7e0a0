#pragma once

#include <vector>

#include "mdlreg/numkit.hpp"

// Limiting-error machinery: the variational objective Q_lambda, its closed
// forms (p*, U_lambda), the tempering curve ell_lambda(L*), the critical
// noise level and the reference curves.

namespace mdlreg {

class RegParam {
 public:
  RegParam() = default;
  explicit RegParam(double lambda);  // rejects NaN and lambda < 0
  double lambda() const { return l_; }

 private:
  double l_ = 0.0;
};

// p* = 1/(1 + ((1-q)/q)^(lambda/(lambda-1))), the argmin of
// p -> lambda*KL(p||q) + H(p) over [0, 1/2].  Requires lambda > 1.
Prob p_star(RegParam lambda, Prob q);

// U_lambda(q) = lambda*KL(p*||q) + H(p*).  Requires lambda > 1, 0 < q < 1/2.
double big_U(RegParam lambda, Prob q);

// Envelope-theorem derivative (lambda/ln2)*[(1-p*)/(1-q) - p*/q].
double big_U_prime(RegParam lambda, Prob q);

// Unique q in [0,1/2] with U_lambda(q) = t, bisection to 1e-12 absolute.
Prob big_U_inverse(RegParam lambda, double t);

// Q_lambda(q) = min_{0<=p<=1/2} lambda*KL(p||q) + H(p).
// Closed form -lambda*log2(1-q) for lambda <= 1, big_U for lambda > 1.
double big_Q(RegParam lambda, Prob q);

// The tempering curve ell_lambda(L*).  Requires lambda > 0.
Prob ell(RegParam lambda, Prob l_star);

// H^{-1}(lambda): the noise level where ell reaches 1/2.  Requires
// 0 < lambda < 1.
Prob critical_noise(RegParam lambda);

struct ReferenceCurves {
  double gl_lower;        // H(L*)/2
  double gl_bayes_upper;  // H(L*)
  double well_specified;  // 2 L* (1 - L*)
};
ReferenceCurves reference_curves(Prob l_star);

struct CurvePoint {
  double l_star;
  double ell;
  double gl_lower;
  double gl_bayes_upper;
  double well_specified;
};

struct TemperingCurve {
  double lambda;
  std::vector<CurvePoint> points;
};

// Evaluates ell and the reference curves on a strictly increasing grid
// within [0, 1/2].
TemperingCurve sweep_curve(RegParam lambda, const std::vector<double>& grid);

}  // namespace mdlreg
