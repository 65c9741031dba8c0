#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gevrey/signed_log.hpp"

namespace gevrey {

template <class T>
struct scalar_traits {
  static T zero() { return T(0); }
  static T one() { return T(1); }
  static T from_double(double x) { return T(x); }
  static bool is_zero(const T& x) { return x == T(0); }
};

template <>
struct scalar_traits<SignedLog> {
  static SignedLog zero() { return SignedLog{}; }
  static SignedLog one() { return SignedLog{1, 0.0}; }
  static SignedLog from_double(double x) { return SignedLog::from_double(x); }
  static bool is_zero(const SignedLog& x) { return x.is_zero(); }
};

/// Truncated univariate formal power series: coefficients of
/// x^leading .. x^trunc, nothing beyond trunc is ever read or written.
template <class T = double>
struct USeries {
  int leading = 0;
  int trunc = 0;
  std::vector<T> coeffs;  // coeffs[k - leading] is the coefficient of x^k

  USeries() = default;
  USeries(int lead, int N, std::vector<T> c) : leading(lead), trunc(N), coeffs(std::move(c)) {
    if (leading < 0) throw std::invalid_argument("USeries: leading order must be >= 0");
    if (static_cast<int>(coeffs.size()) > trunc - leading + 1)
      throw std::invalid_argument("USeries: coefficient array exceeds truncation order");
  }

  static USeries zero(int N) { return USeries(N + 1 > 0 ? 0 : 0, N, {}); }

  static USeries monomial(int k, double c, int N) {
    USeries s(k, N, {});
    if (k <= N) s.coeffs.push_back(scalar_traits<T>::from_double(c));
    return s;
  }

  bool is_zero() const {
    for (const auto& c : coeffs)
      if (!scalar_traits<T>::is_zero(c)) return false;
    return true;
  }

  T at(int k) const {
    int i = k - leading;
    if (i < 0 || i >= static_cast<int>(coeffs.size())) return scalar_traits<T>::zero();
    return coeffs[i];
  }

  void set(int k, const T& v) {
    if (k > trunc) throw std::out_of_range("USeries::set beyond truncation order");
    if (k < leading) {
      coeffs.insert(coeffs.begin(), leading - k, scalar_traits<T>::zero());
      leading = k;
    }
    int i = k - leading;
    if (i >= static_cast<int>(coeffs.size())) coeffs.resize(i + 1, scalar_traits<T>::zero());
    coeffs[i] = v;
  }

  /// Drop leading zero coefficients so `leading` names the first (possibly)
  /// nonzero order.
  void normalize_leading() {
    while (!coeffs.empty() && scalar_traits<T>::is_zero(coeffs.front())) {
      coeffs.erase(coeffs.begin());
      ++leading;
    }
    if (coeffs.empty()) leading = 0;
  }

  template <class S>
  S eval(const S& x) const {
    S acc{};
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) acc = acc * x + S(coeffs[i]);
    for (int k = 0; k < leading; ++k) acc = acc * x;
    return acc;
  }
};

/// Bivariate truncated series in (x, y): sparse map (n, l) -> coefficient of
/// x^n y^l.
struct BSeries {
  std::map<std::pair<int, int>, double> entries;

  double at(int n, int l) const {
    auto it = entries.find({n, l});
    return it == entries.end() ? 0.0 : it->second;
  }
  void add(int n, int l, double c) {
    if (c == 0.0) return;
    auto [it, inserted] = entries.emplace(std::pair{n, l}, c);
    if (!inserted) it->second += c;
  }
  int max_y_order() const {
    int L = 0;
    for (const auto& [nl, c] : entries) L = std::max(L, nl.second);
    return L;
  }
  bool empty() const { return entries.empty(); }
};

template <class T>
USeries<T> cauchy_product(const USeries<T>& a, const USeries<T>& b, int N) {
  if (N > a.trunc || N > b.trunc)
    throw std::invalid_argument("cauchy_product: N exceeds operand truncation capacity");
  int lead = a.leading + b.leading;
  if (lead > N || a.coeffs.empty() || b.coeffs.empty()) return USeries<T>(0, N, {});
  USeries<T> r(lead, N, {});
  r.coeffs.assign(N - lead + 1, scalar_traits<T>::zero());
  int na = static_cast<int>(a.coeffs.size());
  int nb = static_cast<int>(b.coeffs.size());
  for (int i = 0; i < na; ++i) {
    int ka = a.leading + i;
    if (ka > N) break;
    for (int j = 0; j < nb; ++j) {
      int k = ka + b.leading + j;
      if (k > N) break;
      r.coeffs[k - lead] = r.coeffs[k - lead] + a.coeffs[i] * b.coeffs[j];
    }
  }
  return r;
}

template <class T>
USeries<T> series_truncate(const USeries<T>& a, int N) {
  USeries<T> r = a;
  r.trunc = N;
  if (static_cast<int>(r.coeffs.size()) > N - r.leading + 1)
    r.coeffs.resize(std::max(0, N - r.leading + 1));
  if (r.leading > N) return USeries<T>(0, N, {});
  return r;
}

template <class T>
USeries<T> series_power(const USeries<T>& a, int l, int N) {
  if (l < 1) throw std::invalid_argument("series_power: exponent must be >= 1");
  USeries<T> base = series_truncate(a, N);
  USeries<T> r = base;
  for (int i = 1; i < l; ++i) r = cauchy_product(r, base, N);
  return r;
}

template <class T>
USeries<T> series_add(const USeries<T>& a, const USeries<T>& b, int N) {
  USeries<T> r(std::min(a.leading, b.leading), N, {});
  r.coeffs.assign(std::max(0, N - r.leading + 1), scalar_traits<T>::zero());
  for (int k = r.leading; k <= N; ++k) r.coeffs[k - r.leading] = a.at(k) + b.at(k);
  return r;
}

template <class T>
USeries<T> series_scale(const USeries<T>& a, double c, int N) {
  USeries<T> r(a.leading, N, {});
  T cc = scalar_traits<T>::from_double(c);
  for (int k = a.leading; k <= std::min(N, a.leading + static_cast<int>(a.coeffs.size()) - 1); ++k)
    r.set(k, a.at(k) * cc);
  return r;
}

/// Multiply by x^m (shift orders up).
template <class T>
USeries<T> series_shift(const USeries<T>& a, int m, int N) {
  if (a.leading + m > N || a.coeffs.empty()) return USeries<T>(0, N, {});
  USeries<T> r(a.leading + m, N, {});
  int count = std::max(0, std::min(static_cast<int>(a.coeffs.size()), N - r.leading + 1));
  r.coeffs.assign(a.coeffs.begin(), a.coeffs.begin() + count);
  return r;
}

/// a / b with b(0) != 0, both plain double series.
inline USeries<double> series_divide(const USeries<double>& a, const USeries<double>& b, int N) {
  double b0 = b.at(0);
  if (b0 == 0.0) throw std::invalid_argument("series_divide: divisor has zero constant term");
  USeries<double> r(0, N, std::vector<double>(N + 1, 0.0));
  for (int n = 0; n <= N; ++n) {
    double acc = a.at(n);
    for (int k = 1; k <= n; ++k) acc -= b.at(k) * r.coeffs[n - k];
    r.coeffs[n] = acc / b0;
  }
  r.leading = 0;
  r.normalize_leading();
  if (r.coeffs.empty()) return USeries<double>(0, N, {});
  return r;
}

/// Coefficients of f(x, phi(x)) up to order N.  phi must have leading order
/// >= 2 so each output coefficient is a finite sum over f-entries.
template <class T>
USeries<T> compose_f(const BSeries& f, const USeries<T>& phi, int N) {
  if (!phi.is_zero() && phi.leading < 2)
    throw std::invalid_argument("compose_f: phi must have leading order >= 2");
  int L = f.max_y_order();
  // phi^l vanishes beyond order N once 2l > N
  std::vector<USeries<T>> pow;  // pow[l] = phi^l, l >= 1
  pow.push_back(USeries<T>(0, N, {}));  // placeholder for l = 0
  pow.push_back(series_truncate(phi, N));
  for (int l = 2; l <= L && 2 * l <= N; ++l) pow.push_back(cauchy_product(pow.back(), pow[1], N));
  USeries<T> r(0, N, std::vector<T>(N + 1, scalar_traits<T>::zero()));
  for (const auto& [nl, c] : f.entries) {
    auto [m, l] = nl;
    if (m > N) continue;
    T cc = scalar_traits<T>::from_double(c);
    if (l == 0) {
      r.coeffs[m] = r.coeffs[m] + cc;
      continue;
    }
    if (l >= static_cast<int>(pow.size())) continue;  // contributes beyond N
    const USeries<T>& pl = pow[l];
    for (int k = pl.leading; k <= N - m; ++k) {
      T v = pl.at(k);
      if (!scalar_traits<T>::is_zero(v)) r.coeffs[m + k] = r.coeffs[m + k] + cc * v;
    }
  }
  r.normalize_leading();
  return r;
}

/// q(x) = exp(int_0^x s^-2 f1(s) ds) for f1 with leading order >= 2; q(0)=1.
inline USeries<double> exp_integral_series(const USeries<double>& f1, int N) {
  if (!f1.is_zero() && f1.leading < 2)
    throw std::invalid_argument("exp_integral_series: integrand requires leading order >= 2");
  // g = int s^-2 f1: coefficient of x^{m-1} is f1_m / (m-1)
  USeries<double> g(1, N, std::vector<double>(N, 0.0));
  for (int m = 2; m <= N + 1; ++m) {
    double fm = f1.at(m);
    if (fm != 0.0 && m - 1 <= N) g.coeffs[m - 2] = fm / (m - 1);
  }
  // q' = g' q  =>  n q_n = sum_{k=1}^{n} k g_k q_{n-k}
  USeries<double> q(0, N, std::vector<double>(N + 1, 0.0));
  q.coeffs[0] = 1.0;
  for (int n = 1; n <= N; ++n) {
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += k * g.at(k) * q.coeffs[n - k];
    q.coeffs[n] = acc / n;
  }
  return q;
}

namespace detail {
// factorial as the identically-rounded running product 1*2*...*n, so that
// dividing a value built from the same multiplications cancels exactly
inline double running_factorial(int n) {
  static thread_local std::vector<double> cache{1.0};
  while (static_cast<int>(cache.size()) <= n)
    cache.push_back(cache.back() * static_cast<double>(cache.size()));
  return cache[n];
}
}  // namespace detail

/// Borel transform at the coefficient level: Phi_{n-1} = phi_n / (n-1)!.
inline USeries<double> borel_coeffs(const USeries<double>& phi) {
  if (!phi.is_zero() && phi.leading < 1)
    throw std::invalid_argument("borel_coeffs: series must have zero constant term");
  int N = phi.trunc;
  USeries<double> r(std::max(0, phi.leading - 1), N - 1 >= 0 ? N - 1 : 0, {});
  for (int n = std::max(1, phi.leading); n <= N; ++n) {
    double c = phi.at(n);
    if (c == 0.0) continue;
    double b = (n - 1 <= 170) ? c / detail::running_factorial(n - 1)
                              : c * std::exp(-std::lgamma(static_cast<double>(n)));
    r.set(n - 1, b);
  }
  r.trunc = std::max(0, N - 1);
  return r;
}

/// Inverse of borel_coeffs: phi_n = (n-1)! Phi_{n-1}.
inline USeries<double> inverse_borel_coeffs(const USeries<double>& Phi) {
  int N = Phi.trunc + 1;
  USeries<double> r(Phi.leading + 1, N, {});
  for (int k = Phi.leading; k <= Phi.trunc; ++k) {
    double c = Phi.at(k);
    if (c == 0.0) continue;
    double v = (k <= 170) ? c * detail::running_factorial(k)
                          : c * std::exp(std::lgamma(static_cast<double>(k + 1)));
    r.set(k + 1, v);
  }
  r.trunc = N;
  return r;
}

inline USeries<SignedLog> to_signed_log(const USeries<double>& a) {
  USeries<SignedLog> r(a.leading, a.trunc, {});
  r.coeffs.reserve(a.coeffs.size());
  for (double c : a.coeffs) r.coeffs.push_back(SignedLog::from_double(c));
  return r;
}

}  // namespace gevrey
