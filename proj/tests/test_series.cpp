#include <doctest.h>

#include <cmath>
#include <random>

#include "gevrey/series.hpp"
#include "gevrey/signed_log.hpp"

using namespace gevrey;

TEST_SUITE_BEGIN("series");

TEST_CASE("signed log round trip and products") {
  for (double x : {1.0, -3.5, 1e-200, -1e250, 0.0}) {
    SignedLog s = SignedLog::from_double(x);
    CHECK(s.to_double() == doctest::Approx(x).epsilon(1e-15));
  }
  SignedLog a = SignedLog::from_double(-2.0);
  SignedLog b = SignedLog::from_double(8.0);
  CHECK((a * b).to_double() == doctest::Approx(-16.0));
  CHECK((b / a).to_double() == doctest::Approx(-4.0));
  // product of log-magnitudes is exact addition
  SignedLog big{1, 5000.0}, small{-1, -300.0};
  CHECK((big * small).logmag == 4700.0);
  CHECK((big * small).sign == -1);
}

TEST_CASE("signed log addition matches doubles inside range") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    double x = uni(rng), y = uni(rng);
    double ref = x + y;
    SignedLog s = SignedLog::from_double(x) + SignedLog::from_double(y);
    CHECK(s.to_double() == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("signed log addition beyond double range") {
  SignedLog a{1, 1000.0}, b{1, 999.0};
  SignedLog s = a + b;
  CHECK(s.sign == 1);
  CHECK(s.logmag == doctest::Approx(1000.0 + std::log1p(std::exp(-1.0))).epsilon(1e-15));
  SignedLog d = a + SignedLog{-1, 999.0};
  CHECK(d.logmag == doctest::Approx(1000.0 + std::log1p(-std::exp(-1.0))).epsilon(1e-14));
}

TEST_CASE("cancellation counter fires on catastrophic opposite-sign adds") {
  reset_cancellation_counter();
  SignedLog a{1, 2000.0};
  SignedLog b{-1, 2000.0};
  SignedLog r = a + b;
  CHECK(r.is_zero());
  CHECK(cancellation_counter() == 1);
  reset_cancellation_counter();
}

TEST_CASE("cauchy product against direct sum") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  int N = 12;
  USeries<double> a(1, N, {}), b(0, N, {});
  for (int k = 1; k <= N; ++k) a.set(k, uni(rng));
  for (int k = 0; k <= N; ++k) b.set(k, uni(rng));
  USeries<double> c = cauchy_product(a, b, N);
  for (int n = 0; n <= N; ++n) {
    double ref = 0.0;
    for (int k = 0; k <= n; ++k) ref += a.at(k) * b.at(n - k);
    CHECK(c.at(n) == doctest::Approx(ref).epsilon(1e-14));
  }
  CHECK_THROWS_AS(cauchy_product(a, b, N + 1), std::invalid_argument);
}

TEST_CASE("series power and evaluation agree") {
  int N = 20;
  USeries<double> a(1, N, {});
  a.set(1, 1.0);
  a.set(2, -0.5);
  USeries<double> p3 = series_power(a, 3, N);
  double x = 0.1;
  double direct = std::pow(a.eval(x), 3);
  // truncation error at order N+1 is ~1e-21 at x = 0.1
  CHECK(p3.eval(x) == doctest::Approx(direct).epsilon(1e-12));
  CHECK_THROWS_AS(series_power(a, 0, N), std::invalid_argument);
}

TEST_CASE("series divide inverts multiplication") {
  int N = 15;
  USeries<double> b(0, N, {});
  b.set(0, 2.0);
  b.set(1, -1.0);
  b.set(3, 0.25);
  USeries<double> a(2, N, {});
  a.set(2, 1.0);
  a.set(5, -3.0);
  USeries<double> q = series_divide(a, b, N);
  USeries<double> back = cauchy_product(q, b, N);
  for (int n = 0; n <= N; ++n) CHECK(back.at(n) == doctest::Approx(a.at(n)).epsilon(1e-13));
  USeries<double> zeroconst(1, N, {});
  zeroconst.set(1, 1.0);
  CHECK_THROWS_AS(series_divide(a, zeroconst, N), std::invalid_argument);
}

TEST_CASE("exp integral series reproduces exp coefficients") {
  // f1 = x^2 gives q = exp(x), so q_n = 1/n!
  int N = 18;
  USeries<double> f1(2, N, {});
  f1.set(2, 1.0);
  USeries<double> q = exp_integral_series(f1, N);
  double fact = 1.0;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) fact *= n;
    CHECK(q.at(n) == doctest::Approx(1.0 / fact).epsilon(1e-14));
  }
  CHECK(q.at(0) == 1.0);
  USeries<double> bad(1, N, {});
  bad.set(1, 1.0);
  CHECK_THROWS_AS(exp_integral_series(bad, N), std::invalid_argument);
}

TEST_CASE("compose_f against pointwise evaluation") {
  BSeries f;
  f.add(2, 0, 0.3);
  f.add(1, 2, -0.7);
  f.add(0, 3, 0.2);
  int N = 16;
  USeries<double> phi(2, N, {});
  phi.set(2, 0.5);
  phi.set(3, -0.25);
  USeries<double> comp = compose_f(f, phi, N);
  double x = 0.2;
  double y = phi.eval(x);
  double ref = 0.3 * x * x - 0.7 * x * y * y + 0.2 * y * y * y;
  CHECK(comp.eval(x) == doctest::Approx(ref).epsilon(1e-9));
  USeries<double> shallow(1, N, {});
  shallow.set(1, 1.0);
  CHECK_THROWS_AS(compose_f(f, shallow, N), std::invalid_argument);
}

TEST_CASE("borel coefficients are exact for factorially scaled input") {
  int N = 120;
  USeries<double> phi(1, N, {});
  double fact = 1.0;  // (n-1)! as the running product
  for (int n = 1; n <= N; ++n) {
    if (n > 1) fact *= (n - 1);
    phi.set(n, (n % 2 ? 1.0 : -1.0) * fact);
  }
  USeries<double> B = borel_coeffs(phi);
  for (int j = 0; j < N; ++j) CHECK(B.at(j) == (j % 2 ? -1.0 : 1.0));
  USeries<double> back = inverse_borel_coeffs(B);
  for (int n = 1; n <= N; ++n) CHECK(back.at(n) == phi.at(n));
}

TEST_CASE("truncation orders are never exceeded") {
  int N = 6;
  USeries<double> a(0, N, {});
  for (int k = 0; k <= N; ++k) a.set(k, 1.0);
  CHECK_THROWS_AS(a.set(N + 1, 1.0), std::out_of_range);
  USeries<double> t = series_truncate(a, 3);
  CHECK(t.trunc == 3);
  CHECK(static_cast<int>(t.coeffs.size()) <= 4);
}

TEST_SUITE_END();
