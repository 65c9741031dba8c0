#include "gevrey/borel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "gevrey/quadrature.hpp"
#include "gevrey/special.hpp"

namespace gevrey {

cplx DiscFunction::eval(cplx w) const {
  if (has_coeffs) {
    cplx acc = 0.0;
    for (int i = static_cast<int>(coeffs.coeffs.size()) - 1; i >= 0; --i)
      acc = acc * w + coeffs.coeffs[i];
    for (int k = 0; k < coeffs.leading; ++k) acc *= w;
    return acc;
  }
  return fn(w);
}

DiscFunction DiscFunction::from_series(USeries<double> c, double radius) {
  DiscFunction d;
  d.coeffs = std::move(c);
  d.has_coeffs = true;
  d.radius_of_validity = radius;
  return d;
}

DiscFunction DiscFunction::from_fn(std::function<cplx(cplx)> f, double radius) {
  DiscFunction d;
  d.fn = std::move(f);
  d.radius_of_validity = radius;
  return d;
}

cplx convolve_quad(const DiscFunction& Y, const DiscFunction& Z, cplx w, int nodes) {
  if (nodes < 8) throw std::invalid_argument("convolve_quad: need at least 8 nodes");
  double rad = std::min(Y.radius_of_validity, Z.radius_of_validity);
  if (!(std::abs(w) < rad)) throw domain_error("convolve_quad: |w| outside validity radius");
  const GaussLegendre& gl = GaussLegendre::get(nodes);
  cplx acc = 0.0;
  for (int i = 0; i < nodes; ++i) {
    double t = 0.5 * (1.0 + gl.nodes[i]);
    acc += gl.weights[i] * Y.eval(w * t) * Z.eval(w * (1.0 - t));
  }
  return 0.5 * w * acc;
}

cplx solve_aux(const DiscFunction& H, double a, cplx w, int nodes) {
  if (!(a > 1.0)) throw domain_error("solve_aux: requires a > 1");
  if (w.imag() == 0.0 && w.real() <= -1.0) throw domain_error("solve_aux: w on the branch cut");
  if (std::abs(H.eval(0.0)) > 1e-12)
    throw std::invalid_argument("solve_aux: H(0) must vanish");
  cplx one_w = 1.0 + w;
  cplx integral = integrate_segment_panels(
      [&](cplx s) { return H.eval(s) * std::pow(1.0 + s, cplx(a - 1.0)); }, cplx(0.0), w, 1,
      nodes);
  return H.eval(w) / one_w - a * std::pow(one_w, cplx(-(a + 1.0))) * integral;
}

YeqnInput YeqnInput::from_normalized(const NormalizedSystem& sys) {
  YeqnInput in;
  in.a = sys.a;
  in.g = sys.f0;
  in.f2 = sys.f2;
  return in;
}

YeqnInput YeqnInput::from_raw(const RawSystem& sys) {
  YeqnInput in;
  in.a = sys.a;
  in.g = USeries<double>(1, 1, {});
  int maxn = 1;
  for (const auto& [nl, c] : sys.f.entries) {
    if (nl.second == 1 && c != 0.0)
      throw std::invalid_argument("residual check: y^1 terms are not part of the equation form");
    if (nl.second == 0) maxn = std::max(maxn, nl.first);
  }
  in.g = USeries<double>(1, maxn, {});
  for (const auto& [nl, c] : sys.f.entries) {
    if (nl.second == 0) in.g.set(nl.first, c);
    else if (nl.second >= 2) in.f2.add(nl.first, nl.second, c);
  }
  in.g.normalize_leading();
  return in;
}

std::vector<double> borel_from_expansion(const Expansion& e, int count) {
  if (count > e.N) throw std::invalid_argument("borel_from_expansion: not enough coefficients");
  std::vector<double> c(count, 0.0);
  for (int j = 0; j < count; ++j) {
    int n = j + 1;
    if (j <= 170 && !std::isnan(e.phi_d[n])) {
      c[j] = e.phi_d[n] / detail::running_factorial(j);
    } else if (!e.phi[n].is_zero()) {
      c[j] = e.phi[n].sign * std::exp(e.phi[n].logmag - std::lgamma(static_cast<double>(n)));
    }
  }
  return c;
}

namespace {

/// Borel coefficient arrays of phi^l, l = 1..L, rebuilt from the rescaled
/// partial sums so no Gamma value is ever formed.
std::vector<std::vector<double>> power_borel_arrays(const Expansion& e, int L) {
  int N = e.N;
  if (!(e.a > -2.0))
    throw domain_error("residual check: power convolutions need a > -2");
  std::vector<double> lg(N + 1, 0.0);
  for (int n = 2; n <= N; ++n) lg[n] = std::lgamma(n + e.a);
  // t[l][n] = (-1)^n (phi^l)_n / Gamma(n+a)
  std::vector<std::vector<double>> t(L + 1, std::vector<double>(N + 1, 0.0));
  for (int n = 2; n <= N; ++n)
    t[1][n] = e.phi[n].is_zero()
                  ? 0.0
                  : (n % 2 ? -1.0 : 1.0) * e.phi[n].sign * std::exp(e.phi[n].logmag - lg[n]);
  for (int l = 2; l <= L; ++l)
    for (int n = 2 * l; n <= N; ++n) {
      double acc = 0.0;
      for (int k = 2 * (l - 1); k <= n - 2; ++k) {
        double wgt = t[l - 1][k] * t[1][n - k];
        if (wgt != 0.0) acc += wgt * std::exp(lg[k] + lg[n - k] - lg[n]);
      }
      t[l][n] = acc;
    }
  std::vector<std::vector<double>> c(L + 1);
  for (int l = 1; l <= L; ++l) {
    c[l].assign(N, 0.0);
    for (int n = 2; n <= N; ++n) {
      if (t[l][n] == 0.0) continue;
      c[l][n - 1] = (n % 2 ? -1.0 : 1.0) * t[l][n] *
                    std::exp(lg[n] - std::lgamma(static_cast<double>(n)));
    }
  }
  return c;
}

DiscFunction borel_of_x_series(const USeries<double>& g) {
  USeries<double> b(std::max(0, g.leading - 1), std::max(0, g.trunc - 1), {});
  for (int n = std::max(1, g.leading); n <= g.trunc; ++n) {
    double c = g.at(n);
    if (c == 0.0) continue;
    b.set(n - 1, (n - 1 <= 170) ? c / detail::running_factorial(n - 1)
                                : c * std::exp(-std::lgamma(static_cast<double>(n))));
  }
  return DiscFunction::from_series(std::move(b), 2.0);
}

}  // namespace

double residual_yeqn(const YeqnInput& in, const Expansion& e, const std::vector<cplx>& points,
                     int nodes, int L_max, bool* truncated) {
  int Lf = in.f2.max_y_order();
  if (truncated) *truncated = Lf > L_max;
  int L = std::min(Lf, L_max);

  std::vector<double> phiB = borel_from_expansion(e, e.N);
  DiscFunction Phi =
      DiscFunction::from_series(USeries<double>(0, e.N - 1, phiB), 2.0);
  DiscFunction One = DiscFunction::from_fn([](cplx) { return cplx(1.0); }, 2.0);
  DiscFunction G = borel_of_x_series(in.g);

  std::vector<DiscFunction> Cpow(L + 1);
  if (L >= 2) {
    auto arrays = power_borel_arrays(e, L);
    for (int l = 2; l <= L; ++l)
      Cpow[l] = DiscFunction::from_series(USeries<double>(0, e.N - 1, arrays[l]), 2.0);
  }
  std::vector<DiscFunction> Frow(L + 1);
  for (int l = 2; l <= L; ++l) {
    USeries<double> row(0, 0, {});
    int maxn = 1;
    for (const auto& [nl, c] : in.f2.entries)
      if (nl.second == l) maxn = std::max(maxn, nl.first);
    row = USeries<double>(1, maxn, {});
    for (const auto& [nl, c] : in.f2.entries)
      if (nl.second == l) row.set(nl.first, c);
    Frow[l] = borel_of_x_series(row);
  }

  double worst = 0.0;
  for (cplx w : points) {
    cplx r = (w + 1.0) * Phi.eval(w) + in.a * convolve_quad(One, Phi, w, nodes) - G.eval(w);
    for (int l = 2; l <= L; ++l) r -= convolve_quad(Frow[l], Cpow[l], w, nodes);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

SingularityProfile deconvolve_profile(const std::vector<double>& Phi, double a) {
  SingularityProfile p;
  p.a = a;
  p.Phi = Phi;
  std::size_t n = Phi.size();
  std::vector<double> K(n, 0.0);
  if (n > 0) K[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) K[k] = K[k - 1] * (-(a + k) / static_cast<double>(k));
  p.Z.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = Phi[i];
    for (std::size_t k = 1; k <= i; ++k) acc -= K[k] * p.Z[i - k];
    p.Z[i] = acc;
  }
  for (double z : p.Z) p.sup_Z = std::max(p.sup_Z, std::fabs(z));
  return p;
}

SingularityProfile deconvolve_singularity(const Expansion& e, double a) {
  if (!(a > 1.0)) throw domain_error("deconvolve_singularity: requires a > 1");
  return deconvolve_profile(borel_from_expansion(e, e.N), a);
}

std::vector<double> reconvolve_profile(const SingularityProfile& p) {
  std::size_t n = p.Z.size();
  std::vector<double> K(n, 0.0);
  if (n > 0) K[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) K[k] = K[k - 1] * (-(p.a + k) / static_cast<double>(k));
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= i; ++k) acc += K[k] * p.Z[i - k];
    out[i] = acc;
  }
  return out;
}

NormParams NormParams::defaults(double a, double epsilon) {
  NormParams p;
  p.a = a;
  p.epsilon = epsilon;
  for (int ir = 1; ir <= 19; ++ir) {
    double r = ir / 20.0;
    for (int it = 0; it < 24; ++it) {
      double th = 2.0 * M_PI * it / 24.0;
      cplx w = std::polar(r, th);
      if (std::abs(w + 1.0) < 1e-6) continue;
      p.grid.push_back(w);
    }
  }
  return p;
}

double triple_norm_eval(const DiscFunction& Y, const NormParams& p) {
  if (p.grid.empty()) throw std::invalid_argument("triple_norm_eval: empty sample grid");
  double best = 0.0;
  double ie = 1.0 / p.epsilon;
  for (cplx w : p.grid) {
    double aw = std::abs(w);
    if (aw == 0.0 || std::abs(w + 1.0) < 1e-6) continue;
    double wgt = std::exp(-ie * aw) * (1.0 + std::pow(ie * aw, 4)) / aw *
                 std::pow(std::abs(1.0 + w), p.a + 1.0);
    best = std::max(best, std::abs(Y.eval(w)) * wgt);
  }
  return best;
}

SamplerResult sample_lowerbound1(double delta, long trials, std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("sample_lowerbound1: delta must lie in (0,1)");
  if (trials < 1) throw std::invalid_argument("sample_lowerbound1: trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  SamplerResult r;
  r.trials = trials;
  r.worst_margin = std::numeric_limits<double>::infinity();
  const double isq5 = 1.0 / std::sqrt(5.0);
  for (long i = 0; i < trials; ++i) {
    cplx w;
    do {  // delta-neighbourhood of -1 inside the closed unit disc
      double rad = delta * uni(rng);
      double th = 2.0 * M_PI * uni(rng);
      w = -1.0 + std::polar(rad, th);
    } while (std::abs(w) > 1.0);
    double t = uni(rng);
    double margin = std::abs(1.0 + w * (1.0 - t)) - isq5 * (std::abs(1.0 + w) + t);
    if (margin < r.worst_margin) r.worst_margin = margin;
    if (margin < 0.0) ++r.violations;
  }
  return r;
}

EmbeddingResult embedding_grid(int np, int nr) {
  auto g = [](double u) { return std::exp(-u) * (1.0 + u * u * u * u); };
  EmbeddingResult res;
  for (int ip = 0; ip < np; ++ip) {
    double pv = 20.0 * ip / (np - 1);
    double den = g(pv);
    for (int jr = 1; jr <= nr; ++jr) {
      double rv = 1.0 + 49.0 * jr / nr;
      double q = g(rv * pv) / den;
      if (q > res.max_value) {
        res.max_value = q;
        res.arg_p = pv;
        res.arg_r = rv;
      }
    }
  }
  return res;
}

double borel_pade_laplace(const Expansion& e, double x, int pade_order, int ray_panels,
                          double ray_cutoff) {
  if (!(x > 0.0)) throw std::invalid_argument("borel_pade_laplace: x must be positive");
  if (!(ray_cutoff >= 30.0 * x))
    throw std::invalid_argument("borel_pade_laplace: cutoff must be >= 30 x");
  if (pade_order < 0 || 2 * pade_order + 1 > e.N)
    throw std::invalid_argument("borel_pade_laplace: not enough coefficients for this order");
  std::vector<double> c = borel_from_expansion(e, 2 * pade_order + 1);
  bool allzero = true;
  for (double v : c) allzero = allzero && v == 0.0;
  if (allzero) return 0.0;

  // [m/m] Pade; a rank-deficient Toeplitz block (exactly rational transforms)
  // drops to the smallest solvable order
  int m = pade_order;
  std::vector<double> q, pnum;
  for (int mm = m;; --mm) {
    if (mm == 0) {
      q = {1.0};
      pnum.assign(c.begin(), c.begin() + m + 1);
      break;
    }
    Eigen::MatrixXd A(mm, mm);
    Eigen::VectorXd rhs(mm);
    for (int i = 0; i < mm; ++i) {
      for (int j = 0; j < mm; ++j) A(i, j) = c[m - 1 - j + i + 1];  // c_{m+i-j}
      rhs(i) = -c[m + 1 + i];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) continue;
    Eigen::VectorXd sol = lu.solve(rhs);
    if (!sol.allFinite()) continue;
    q.assign(mm + 1, 0.0);
    q[0] = 1.0;
    for (int j = 0; j < mm; ++j) q[j + 1] = sol(j);
    pnum.assign(m + 1, 0.0);
    for (int k = 0; k <= m; ++k)
      for (int j = 0; j <= std::min(k, mm); ++j) pnum[k] += q[j] * c[k - j];
    break;
  }

  auto evalpoly = [](const std::vector<double>& pc, double w) {
    double acc = 0.0;
    for (int i = static_cast<int>(pc.size()) - 1; i >= 0; --i) acc = acc * w + pc[i];
    return acc;
  };
  // positivity of Q on the ray; Q(0) = 1
  int checks = 4096;
  for (int i = 0; i <= checks; ++i) {
    double w = ray_cutoff * i / checks;
    if (!(evalpoly(q, w) > 1e-12))
      throw singular_approximant_error("borel_pade_laplace: denominator vanishes on the ray");
  }
  return integrate([&](double w) { return std::exp(-w / x) * evalpoly(pnum, w) / evalpoly(q, w); },
                   0.0, ray_cutoff, ray_panels);
}

}  // namespace gevrey
