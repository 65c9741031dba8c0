#pragma once

#include <stdexcept>
#include <vector>

#include "gevrey/series.hpp"
#include "gevrey/signed_log.hpp"

namespace gevrey::detail {

/// Order-by-order solve of x^2 y' = -(1+ax) y + f(x,y).  Returns phi with
/// phi[n] the coefficient of x^n, 0 <= n <= N, phi[0] = 0.  Power sums
/// (phi^l)_n are extended incrementally, so step n only touches phi_{<n}.
template <typename T>
std::vector<T> raw_recursion(const BSeries& f, double a, int N) {
  using tr = scalar_traits<T>;
  if (N < 1) throw std::invalid_argument("raw_recursion: N must be >= 1");
  int L = f.max_y_order();
  std::vector<T> phi(N + 1, tr::zero());
  // u[l][n] = (phi^l)_n; u[1] aliases phi, u[0] is the constant series 1
  std::vector<std::vector<T>> u(L + 1, std::vector<T>(N + 1, tr::zero()));
  if (L >= 0) u[0][0] = tr::one();
  for (int n = 1; n <= N; ++n) {
    for (int l = 2; l <= L; ++l) {
      T acc = tr::zero();
      for (int k = l - 1; k <= n - 1; ++k) acc = acc + u[l - 1][k] * phi[n - k];
      u[l][n] = acc;
    }
    T p = tr::zero();
    for (const auto& [key, c] : f.entries) {
      auto [m, j] = key;
      if (m > n || j > L) continue;
      const T& pw = (j == 0) ? u[0][n - m] : (j == 1 ? phi[n - m] : u[j][n - m]);
      p = p + tr::from_double(c) * pw;
    }
    phi[n] = p - tr::from_double(n - 1 + a) * phi[n - 1];
    if (L >= 1) u[1][n] = phi[n];
  }
  return phi;
}

struct RescaledResult {
  std::vector<double> s;               // s[n] = (-1)^n phi_n / Gamma(n+a), n >= 2
  std::vector<std::vector<double>> v;  // v[l][n] = (-1)^n (phi^l)_n / Gamma(n+a), l >= 1
  std::vector<double> lg;              // lg[n] = lgamma(n+a)
};

/// Overflow-free recursion for a system whose series solution has leading
/// order >= 2: f0[n] (n >= 2) is the y-free part, f2 entries (m, l) with
/// m >= 0, l >= 2.  Requires a > -2 so every Gamma(n+a) with n >= 2 is
/// positive; no intermediate leaves the double range.
RescaledResult rescaled_recursion(double a, const USeries<double>& f0, const BSeries& f2, int N);

}  // namespace gevrey::detail
