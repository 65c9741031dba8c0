#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace gevrey {

/// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
  static const GaussLegendre& get(int n);
};

/// Composite GL quadrature of f on [a, b] with `panels` equal panels of
/// `order` nodes each.
double integrate(const std::function<double(double)>& f, double a, double b, int panels,
                 int order = 64);

/// Single GL rule with `order` nodes along the straight segment [w0, w1];
/// exact for polynomial integrands of degree <= 2*order - 1.
std::complex<double> integrate_segment(const std::function<std::complex<double>(std::complex<double>)>& f,
                                       std::complex<double> w0, std::complex<double> w1, int order);

/// Composite version of integrate_segment.
std::complex<double> integrate_segment_panels(
    const std::function<std::complex<double>(std::complex<double>)>& f, std::complex<double> w0,
    std::complex<double> w1, int panels, int order = 64);

/// int_0^inf g(s) ds through the tanh-sinh substitution s = exp(pi/2 sinh v),
/// which flattens algebraic endpoint behaviour at s = 0; composite GL in v.
double integrate_halfline_ts(const std::function<double(double)>& g, int panels, int order = 64);

}  // namespace gevrey
