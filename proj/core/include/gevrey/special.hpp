#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gevrey {

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// log Gamma(x) for x > 0.  Negative arguments never occur after
/// normalization and are rejected.
double log_gamma(double x);

/// psi(x) = Gamma'(x)/Gamma(x) for x > 0.
double digamma(double x);

/// Gamma(x+b)/Gamma(x) for x > 0, x + b > 0, evaluated without forming
/// either Gamma value.
double gamma_ratio(double x, double b);

/// Numerical quadrature of int_0^inf s^{y-1}/(1+s)^{x+y} ds versus the
/// gamma-function value Gamma(x)Gamma(y)/Gamma(x+y); returns (lhs, rhs).
std::pair<double, double> beta_check(double x, double y, int quad_panels = 128);

enum class InequalityKind { conv, rho, xi };

/// Max over 4 <= n <= n_max of the quotient LHS_n / Gamma(n-2+b) for the
/// three gamma-sequence sums (Gamma_n := Gamma(n+b), b > -2):
///   conv: sum_{k=2}^{n-2} Gamma_k Gamma_{n-k}
///   rho : sum_{j=2}^{n-2} rho^{j-n+2} Gamma_j      (aux = rho)
///   xi  : sum_{l=2}^{floor(n/2)} xi^{l-2} Gamma_{n-2(l-1)}  (aux = xi)
double empirical_constant(InequalityKind kind, double b, double aux, int n_max);

}  // namespace gevrey
