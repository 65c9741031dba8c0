#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace gevrey {

/// Real scalar stored as (sign, log of magnitude) so that quantities growing
/// like Gamma(n+a) stay representable for arbitrary n.  sign == 0 is exact
/// zero regardless of logmag.
struct SignedLog {
  int sign = 0;
  double logmag = -std::numeric_limits<double>::infinity();

  SignedLog() = default;
  SignedLog(int s, double lm) : sign(s), logmag(lm) {}

  static SignedLog zero() { return SignedLog{}; }

  static SignedLog from_double(double x) {
    if (x == 0.0) return SignedLog{};
    return SignedLog{x > 0 ? 1 : -1, std::log(std::fabs(x))};
  }

  double to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(logmag);
  }

  bool is_zero() const { return sign == 0; }

  // true when to_double() neither overflows nor denormalizes
  bool representable() const { return sign == 0 || (logmag < 700.0 && logmag > -700.0); }

  SignedLog operator-() const { return sign == 0 ? SignedLog{} : SignedLog{-sign, logmag}; }

  friend SignedLog operator*(const SignedLog& a, const SignedLog& b) {
    if (a.sign == 0 || b.sign == 0) return SignedLog{};
    return SignedLog{a.sign * b.sign, a.logmag + b.logmag};
  }

  friend SignedLog operator/(const SignedLog& a, const SignedLog& b) {
    if (a.sign == 0) return SignedLog{};
    return SignedLog{a.sign * b.sign, a.logmag - b.logmag};
  }
};

namespace slog_detail {
// Cancellation events (relative cancellation beyond 1e12 in an
// opposite-sign add) are counted here so that long recursions can flag
// noise-dominated results.  Reset before a computation, read after.
inline thread_local std::uint64_t cancellation_events = 0;
inline constexpr double cancellation_log_threshold = 27.63102111592855;  // log(1e12)
}  // namespace slog_detail

inline void reset_cancellation_counter() { slog_detail::cancellation_events = 0; }
inline std::uint64_t cancellation_counter() { return slog_detail::cancellation_events; }

inline SignedLog operator+(const SignedLog& a, const SignedLog& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  // While both magnitudes are comfortably inside double range, the exact
  // float sum is both faster and more accurate than the log-domain formula.
  if (a.logmag < 670.0 && a.logmag > -670.0 && b.logmag < 670.0 && b.logmag > -670.0) {
    double s = a.to_double() + b.to_double();
    if (s == 0.0 && a.sign != b.sign) ++slog_detail::cancellation_events;
    return SignedLog::from_double(s);
  }
  const SignedLog& hi = (a.logmag >= b.logmag) ? a : b;
  const SignedLog& lo = (a.logmag >= b.logmag) ? b : a;
  double d = lo.logmag - hi.logmag;  // <= 0
  if (a.sign == b.sign) {
    return SignedLog{hi.sign, hi.logmag + std::log1p(std::exp(d))};
  }
  if (d == 0.0) {
    ++slog_detail::cancellation_events;
    return SignedLog{};
  }
  double lm = hi.logmag + std::log1p(-std::exp(d));
  if (hi.logmag - lm > slog_detail::cancellation_log_threshold)
    ++slog_detail::cancellation_events;
  return SignedLog{hi.sign, lm};
}

inline SignedLog operator-(const SignedLog& a, const SignedLog& b) { return a + (-b); }

}  // namespace gevrey
