#include "mdlreg/tempering.hpp"

#include <cmath>
#include <stdexcept>

namespace mdlreg {

namespace {
constexpr double kLn2 = 0.6931471805599453;

void require_u_domain(RegParam lambda, Prob q) {
  if (!(lambda.lambda() > 1.0))
    throw std::invalid_argument("requires lambda > 1");
  if (!(q.value() > 0.0 && q.value() < 0.5))
    throw std::invalid_argument("requires q in (0, 1/2)");
}
}  // namespace

RegParam::RegParam(double lambda) : l_(lambda) {
  if (std::isnan(lambda) || lambda < 0.0)
    throw std::invalid_argument("RegParam: lambda must be >= 0");
}

Prob p_star(RegParam lambda, Prob q) {
  require_u_domain(lambda, q);
  double l = lambda.lambda();
  // exponent kept in the log domain; ((1-q)/q)^(l/(l-1)) overflows early
  double t = (l / (l - 1.0)) * std::log2((1.0 - q.value()) / q.value());
  if (t > 1060.0) return Prob(std::exp2(-t));  // p* ~ 2^-t, may denormalize
  return Prob(1.0 / (1.0 + std::exp2(t)));
}

double big_U(RegParam lambda, Prob q) {
  Prob ps = p_star(lambda, q);
  return lambda.lambda() * kl(ps, q) + entropy(ps);
}

double big_U_prime(RegParam lambda, Prob q) {
  double ps = p_star(lambda, q).value();
  double qv = q.value();
  return (lambda.lambda() / kLn2) * ((1.0 - ps) / (1.0 - qv) - ps / qv);
}

Prob big_U_inverse(RegParam lambda, double t) {
  if (!(lambda.lambda() > 1.0))
    throw std::invalid_argument("big_U_inverse: requires lambda > 1");
  if (std::isnan(t) || t < 0.0 || t > 1.0)
    throw std::invalid_argument("big_U_inverse: t outside [0,1]");
  if (t == 0.0) return Prob(0.0);
  auto u_at = [&](double q) {
    if (q <= 0.0) return 0.0;
    if (q >= 0.5) return 1.0;  // U(1/2) = H(1/2) = 1 (p* = 1/2)
    return big_U(lambda, Prob(q));
  };
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 100; ++i) {
    double mid = 0.5 * (lo + hi);
    (u_at(mid) < t ? lo : hi) = mid;
  }
  return Prob(0.5 * (lo + hi));
}

double big_Q(RegParam lambda, Prob q) {
  double l = lambda.lambda();
  if (l == 0.0) throw std::invalid_argument("big_Q: requires lambda > 0");
  if (q.value() > 0.5)
    throw std::invalid_argument("big_Q: requires q <= 1/2");
  if (l <= 1.0) return -l * std::log2(1.0 - q.value());
  if (q.value() == 0.0) return 0.0;
  if (q.value() == 0.5) return 1.0;
  return big_U(lambda, q);
}

Prob ell(RegParam lambda, Prob l_star) {
  double l = lambda.lambda();
  if (l == 0.0)
    throw std::invalid_argument(
        "ell: lambda = 0 is the catastrophic regime, not on this curve");
  if (l_star.value() > 0.5)
    throw std::invalid_argument("ell: requires L* <= 1/2");
  double h = entropy(l_star);
  if (l <= 1.0) return Prob(1.0 - std::exp2(-h / l));
  return big_U_inverse(lambda, h);
}

Prob critical_noise(RegParam lambda) {
  double l = lambda.lambda();
  if (!(l > 0.0 && l < 1.0))
    throw std::invalid_argument("critical_noise: requires lambda in (0,1)");
  return entropy_inverse(l);
}

ReferenceCurves reference_curves(Prob l_star) {
  if (l_star.value() > 0.5)
    throw std::invalid_argument("reference_curves: requires L* <= 1/2");
  double h = entropy(l_star);
  double v = l_star.value();
  return {h / 2.0, h, 2.0 * v * (1.0 - v)};
}

TemperingCurve sweep_curve(RegParam lambda, const std::vector<double>& grid) {
  double prev = -1.0;
  for (double g : grid) {
    if (!(g >= 0.0 && g <= 0.5))
      throw std::invalid_argument("sweep_curve: grid outside [0, 1/2]");
    if (g <= prev)
      throw std::invalid_argument("sweep_curve: grid not strictly increasing");
    prev = g;
  }
  TemperingCurve curve{lambda.lambda(), {}};
  curve.points.reserve(grid.size());
  for (double g : grid) {
    Prob ls(g);
    ReferenceCurves ref = reference_curves(ls);
    curve.points.push_back({g, ell(lambda, ls).value(), ref.gl_lower,
                            ref.gl_bayes_upper, ref.well_specified});
  }
  return curve;
}

}  // namespace mdlreg
