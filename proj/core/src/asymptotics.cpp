#include "gevrey/asymptotics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "gevrey/recursion.hpp"
#include "gevrey/special.hpp"

namespace gevrey {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double tail_noise(const Expansion& e) {
  double smax = 1.0;
  for (int n = e.s_first; n <= e.N; ++n)
    if (std::isfinite(e.s[n])) smax = std::max(smax, std::fabs(e.s[n]));
  return 1e-15 * std::sqrt(static_cast<double>(std::max(e.N, 1))) * smax;
}

}  // namespace

double Expansion::phi_double(int n) const {
  if (n < 0 || n > N) throw std::out_of_range("Expansion::phi_double: index out of range");
  if (!std::isnan(phi_d[n])) return phi_d[n];
  throw domain_error("Expansion::phi_double: coefficient exceeds double range");
}

Expansion expand_rescaled(const NormalizedSystem& sys, int N) {
  detail::RescaledResult rr = detail::rescaled_recursion(sys.a, sys.f0, sys.f2, N);
  Expansion e;
  e.a = sys.a;
  e.N = N;
  e.s_first = 1;
  e.s = std::move(rr.s);
  e.s.resize(N + 1, 0.0);
  e.phi.assign(N + 1, SignedLog{});
  e.phi_d.assign(N + 1, 0.0);
  for (int n = 2; n <= N; ++n) {
    double sn = e.s[n];
    if (sn == 0.0) {
      e.phi_d[n] = 0.0;
      continue;
    }
    int sign = (sn > 0 ? 1 : -1) * (n % 2 ? -1 : 1);
    e.phi[n] = SignedLog{sign, rr.lg[n] + std::log(std::fabs(sn))};
    e.phi_d[n] = e.phi[n].representable() ? e.phi[n].to_double() : kNaN;
  }
  e.noise_floor = tail_noise(e);
  return e;
}

Expansion expand_raw(const RawSystem& sys, int N) {
  if (N < 2) throw std::invalid_argument("expand_raw: N must be >= 2");
  Expansion e;
  e.a = sys.a;
  e.N = N;
  int n0 = 1;
  while (n0 + sys.a <= 0.0) ++n0;
  e.s_first = n0;
  e.s.assign(N + 1, kNaN);
  e.phi.assign(N + 1, SignedLog{});
  e.phi_d.assign(N + 1, kNaN);
  e.phi_d[0] = 0.0;

  bool fits = std::lgamma(N + std::max(sys.a, 0.0) + 6.0) < 600.0;
  if (fits) {
    std::vector<double> phi = detail::raw_recursion<double>(sys.f, sys.a, N);
    for (int n = 0; n <= N; ++n) {
      e.phi[n] = SignedLog::from_double(phi[n]);
      e.phi_d[n] = phi[n];
    }
  } else {
    reset_cancellation_counter();
    std::vector<SignedLog> phi = detail::raw_recursion<SignedLog>(sys.f, sys.a, N);
    e.cancellation_flag = cancellation_counter() > 0;
    for (int n = 0; n <= N; ++n) {
      e.phi[n] = phi[n];
      e.phi_d[n] = phi[n].representable() ? phi[n].to_double() : kNaN;
    }
  }
  for (int n = n0; n <= N; ++n) {
    if (e.phi[n].is_zero()) {
      e.s[n] = 0.0;
      continue;
    }
    double lg = std::lgamma(n + sys.a);
    e.s[n] = (n % 2 ? -1.0 : 1.0) * e.phi[n].sign * std::exp(e.phi[n].logmag - lg);
  }
  e.noise_floor = tail_noise(e);
  return e;
}

SinfEstimate estimate_sinf(const Expansion& e, SumMethod method) {
  if (e.N < 10) throw std::invalid_argument("estimate_sinf: need N >= 10");
  if (e.s_first > e.N - 2)
    throw std::invalid_argument("estimate_sinf: too few rescaled partial sums");
  SinfEstimate r;
  r.method = method;
  r.N_used = e.N;
  double last_err = std::fabs(e.s[e.N] - e.s[e.N - 1]) * (e.N / 2.0);
  if (method == SumMethod::last_term) {
    r.value = e.s[e.N];
    r.error_estimate = std::max(last_err, e.noise_floor);
    return r;
  }
  // Aitken delta-squared on the tail; skip steps with a vanishing second
  // difference (already-converged sums)
  std::vector<double> acc;
  int lo = std::max(e.s_first, e.N - 22);
  for (int n = lo; n + 2 <= e.N; ++n) {
    double d2 = e.s[n + 2] - 2.0 * e.s[n + 1] + e.s[n];
    double scale = std::fabs(e.s[n]) + std::fabs(e.s[n + 1]) + std::fabs(e.s[n + 2]);
    if (std::fabs(d2) <= 1e-15 * scale) continue;
    double d1 = e.s[n + 2] - e.s[n + 1];
    acc.push_back(e.s[n + 2] - d1 * d1 / d2);
  }
  if (acc.empty()) {
    r.value = e.s[e.N];
    r.error_estimate = std::max(last_err, e.noise_floor);
    return r;
  }
  r.value = acc.back();
  double err = acc.size() >= 2 ? std::fabs(acc.back() - acc[acc.size() - 2]) : last_err;
  r.error_estimate = std::max(err, e.noise_floor);
  return r;
}

DecayDiagnostics decay_diagnostics(const Expansion& e) {
  if (e.N < 50) throw std::invalid_argument("decay_diagnostics: need N >= 50");
  int lo = std::max(e.s_first + 1, e.N / 2);
  DecayDiagnostics d;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int n = lo; n <= e.N; ++n) {
    double dn = std::fabs(e.s[n] - e.s[n - 1]);
    d.K_hat = std::max(d.K_hat, dn * std::pow(n, 3));
    if (dn <= e.noise_floor) continue;
    double x = std::log(static_cast<double>(n)), y = std::log(dn);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++cnt;
  }
  if (cnt < 5) {
    d.slope = kNegInf;
    return d;
  }
  d.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return d;
}

void write_expansion_csv(std::ostream& os, const Expansion& e,
                         const std::vector<std::string>& header_lines) {
  for (const auto& h : header_lines) os << "# " << h << "\n";
  os << "n,sign_phi,log_abs_phi,s_n,delta_s\n";
  char buf[160];
  for (int n = 1; n <= e.N; ++n) {
    double sn = (n >= e.s_first) ? e.s[n] : kNaN;
    double dn = (n - 1 >= e.s_first) ? e.s[n] - e.s[n - 1] : kNaN;
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g\n", n, e.phi[n].sign,
                  e.phi[n].logmag, sn, dn);
    os << buf;
  }
}

}  // namespace gevrey
