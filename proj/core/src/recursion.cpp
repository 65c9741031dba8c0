#include "gevrey/recursion.hpp"

#include <cmath>
#include <stdexcept>

namespace gevrey::detail {

RescaledResult rescaled_recursion(double a, const USeries<double>& f0, const BSeries& f2, int N) {
  if (!(a > -2.0)) throw std::invalid_argument("rescaled_recursion: requires a > -2");
  if (N < 2) throw std::invalid_argument("rescaled_recursion: N must be >= 2");
  if (!f0.is_zero() && f0.leading < 2)
    throw std::invalid_argument("rescaled_recursion: f0 must have leading order >= 2");
  for (const auto& [ml, c] : f2.entries) {
    if (ml.second < 2 || ml.first < 0)
      throw std::invalid_argument("rescaled_recursion: f2 entries need l >= 2, m >= 0");
  }
  int L = f2.max_y_order();
  if (L < 1) L = 1;

  RescaledResult r;
  r.lg.assign(N + 1, 0.0);
  for (int n = 2; n <= N; ++n) r.lg[n] = std::lgamma(n + a);
  r.s.assign(N + 1, 0.0);
  r.v.assign(L + 1, std::vector<double>(N + 1, 0.0));
  auto& s = r.s;
  auto& v = r.v;
  const auto& lg = r.lg;

  for (int n = 2; n <= N; ++n) {
    // v[l][n] = sum_k v[l-1][k] v[1][n-k] Gamma(k+a)Gamma(n-k+a)/Gamma(n+a);
    // only needs v[1] up to n-2, available from the previous step
    for (int l = 2; l <= L; ++l) {
      double acc = 0.0;
      for (int k = 2 * (l - 1); k <= n - 2; ++k) {
        double w = v[l - 1][k] * v[1][n - k];
        if (w != 0.0) acc += w * std::exp(lg[k] + lg[n - k] - lg[n]);
      }
      v[l][n] = acc;
    }
    double pi = 0.0;
    double f0n = f0.at(n);
    if (f0n != 0.0) pi += (n % 2 ? -1.0 : 1.0) * f0n * std::exp(-lg[n]);
    for (const auto& [ml, c] : f2.entries) {
      auto [m, l] = ml;
      int j = n - m;
      if (j < 2 || v[l][j] == 0.0) continue;
      pi += (m % 2 ? -1.0 : 1.0) * c * v[l][j] * std::exp(lg[j] - lg[n]);
    }
    s[n] = s[n - 1] + pi;
    v[1][n] = s[n];
  }
  return r;
}

}  // namespace gevrey::detail
