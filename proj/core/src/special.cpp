#include "gevrey/special.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gevrey/quadrature.hpp"

namespace gevrey {

double log_gamma(double x) {
  if (!(x > 0.0)) throw domain_error("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double digamma(double x) {
  if (!(x > 0.0)) throw domain_error("digamma: argument must be positive");
  double acc = 0.0;
  while (x < 6.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // asymptotic series, |error| < B_16/(16 x^16)
  double inv = 1.0 / x, inv2 = inv * inv;
  double series = std::log(x) - 0.5 * inv;
  static const double b[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
                             1.0 / 132, -691.0 / 32760, 1.0 / 12};
  double p = inv2;
  for (double c : b) {
    series -= c * p;
    p *= inv2;
  }
  return acc + series;
}

double gamma_ratio(double x, double b) {
  if (!(x > 0.0) || !(x + b > 0.0))
    throw domain_error("gamma_ratio: requires x > 0 and x + b > 0");
  if (x >= 1e4 && x + b >= 1e4) {
    // log Gamma(x+b) - log Gamma(x) expanded so the large common part cancels
    // analytically: b log x + (x+b-1/2) log1p(b/x) - b + Stirling tail diffs
    double lr = b * std::log(x) + (x + b - 0.5) * std::log1p(b / x) - b;
    double u = 1.0 / (x + b), v = 1.0 / x;
    lr += (u - v) / 12.0 - (u * u * u - v * v * v) / 360.0 + (std::pow(u, 5) - std::pow(v, 5)) / 1260.0;
    return std::exp(lr);
  }
  return std::exp(std::lgamma(x + b) - std::lgamma(x));
}

std::pair<double, double> beta_check(double x, double y, int quad_panels) {
  if (!(x > 0.0) || !(y > 0.0)) throw domain_error("beta_check: arguments must be positive");
  // s = exp(pi/2 sinh v) maps R onto (0, inf) and makes both endpoint
  // behaviours double-exponentially small; integrand kept in log form.
  auto h = [x, y](double v) {
    double u = 0.5 * M_PI * std::sinh(v);
    double log1ps = (u > 0.0) ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
    double logval = y * u - (x + y) * log1ps + std::log(0.5 * M_PI * std::cosh(v));
    return logval < -745.0 ? 0.0 : std::exp(logval);
  };
  double lhs = integrate(h, -6.5, 6.5, quad_panels);
  double rhs = std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
  return {lhs, rhs};
}

double empirical_constant(InequalityKind kind, double b, double aux, int n_max) {
  if (!(b > -2.0)) throw domain_error("empirical_constant: requires b > -2");
  if ((kind == InequalityKind::rho || kind == InequalityKind::xi) && !(aux > 0.0))
    throw domain_error("empirical_constant: aux parameter must be positive");
  std::vector<double> lg(n_max + 1, 0.0);
  for (int n = 2; n <= n_max; ++n) lg[n] = std::lgamma(n + b);
  double best = 0.0;
  for (int n = 4; n <= n_max; ++n) {
    double denom = lg[n - 2];
    double q = 0.0;
    switch (kind) {
      case InequalityKind::conv:
        for (int k = 2; k <= n - 2; ++k) q += std::exp(lg[k] + lg[n - k] - denom);
        break;
      case InequalityKind::rho:
        for (int j = 2; j <= n - 2; ++j) q += std::exp((j - n + 2) * std::log(aux) + lg[j] - denom);
        break;
      case InequalityKind::xi:
        for (int l = 2; l <= n / 2; ++l)
          q += std::exp((l - 2) * std::log(aux) + lg[n - 2 * (l - 1)] - denom);
        break;
    }
    best = std::max(best, q);
  }
  return best;
}

}  // namespace gevrey
