#include "gevrey/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace gevrey {

namespace {

GaussLegendre compute_rule(int n) {
  GaussLegendre r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double eps = 1e-15;
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= eps) break;
    }
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.weights[n - 1 - i] = r.weights[i];
  }
  return r;
}

}  // namespace

const GaussLegendre& GaussLegendre::get(int n) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels,
                 int order) {
  const GaussLegendre& gl = GaussLegendre::get(order);
  double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    double mid = lo + 0.5 * h;
    double half = 0.5 * h;
    double s = 0.0;
    for (int i = 0; i < order; ++i) s += gl.weights[i] * f(mid + half * gl.nodes[i]);
    acc += s * half;
  }
  return acc;
}

std::complex<double> integrate_segment(
    const std::function<std::complex<double>(std::complex<double>)>& f, std::complex<double> w0,
    std::complex<double> w1, int order) {
  const GaussLegendre& gl = GaussLegendre::get(order);
  std::complex<double> mid = 0.5 * (w0 + w1);
  std::complex<double> half = 0.5 * (w1 - w0);
  std::complex<double> s = 0.0;
  for (int i = 0; i < order; ++i) s += gl.weights[i] * f(mid + half * gl.nodes[i]);
  return s * half;
}

std::complex<double> integrate_segment_panels(
    const std::function<std::complex<double>(std::complex<double>)>& f, std::complex<double> w0,
    std::complex<double> w1, int panels, int order) {
  std::complex<double> acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    std::complex<double> a = w0 + (w1 - w0) * (static_cast<double>(p) / panels);
    std::complex<double> b = w0 + (w1 - w0) * (static_cast<double>(p + 1) / panels);
    acc += integrate_segment(f, a, b, order);
  }
  return acc;
}

double integrate_halfline_ts(const std::function<double(double)>& g, int panels, int order) {
  auto h = [&g](double v) {
    double u = 0.5 * M_PI * std::sinh(v);
    double s = std::exp(u);
    double jac = 0.5 * M_PI * std::cosh(v) * s;
    double gv = g(s);
    return std::isfinite(gv) ? gv * jac : 0.0;
  };
  return integrate(h, -6.5, 6.5, panels, order);
}

}  // namespace gevrey
