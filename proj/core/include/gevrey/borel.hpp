#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gevrey/asymptotics.hpp"
#include "gevrey/series.hpp"
#include "gevrey/system.hpp"

namespace gevrey {

using cplx = std::complex<double>;

struct singular_approximant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Function on (a neighbourhood of) the unit disc, either a convergent Taylor
/// series at 0 or a closed-form callable.
struct DiscFunction {
  USeries<double> coeffs;
  bool has_coeffs = false;
  std::function<cplx(cplx)> fn;
  double radius_of_validity = 1.0;

  cplx eval(cplx w) const;
  static DiscFunction from_series(USeries<double> c, double radius = 1.0);
  static DiscFunction from_fn(std::function<cplx(cplx)> f, double radius = 1.0);
};

/// (Y * Z)(w) = w int_0^1 Y(wt) Z(w(1-t)) dt by a single Gauss-Legendre rule
/// with `nodes` points.
cplx convolve_quad(const DiscFunction& Y, const DiscFunction& Z, cplx w, int nodes);

/// Solution of (1+w) Y + a (1 * Y) = H:
///   Y(w) = H(w)/(1+w) - a (1+w)^{-(a+1)} int_0^w H(s) (1+s)^{a-1} ds,
/// principal branch, valid off the cut (-inf, -1].
cplx solve_aux(const DiscFunction& H, double a, cplx w, int nodes);

/// Coefficient-level data for the convolution equation of a system
/// x^2 y' = -(1+ax) y + g(x) + sum_l f_{2,l}(x) y^l:
/// g is the y-free part (orders >= 2), rows holds the f2 entries.
struct YeqnInput {
  double a = 0.0;
  USeries<double> g;
  BSeries f2;

  static YeqnInput from_normalized(const NormalizedSystem& sys);
  static YeqnInput from_raw(const RawSystem& sys);  // requires no y^1 terms in f
};

/// Max over `points` of |(1+w) Phi + a (1*Phi) - G - sum_l F_{2,l} * Phi^{*l}|
/// with every Borel transform taken from the expansion coefficients.  Rows
/// with l > L_max are dropped and flagged through `truncated`.
double residual_yeqn(const YeqnInput& in, const Expansion& e, const std::vector<cplx>& points,
                     int nodes, int L_max, bool* truncated = nullptr);

/// Borel coefficients Phi_n = phi_{n+1}/n! of an expansion, 0-based.
std::vector<double> borel_from_expansion(const Expansion& e, int count);

struct SingularityProfile {
  double a = 0.0;
  std::vector<double> Phi;  // input Borel coefficients
  std::vector<double> Z;    // coefficients of Z = Phi * (1+w)^{a+1} formally
  double sup_Z = 0.0;       // max |Z_n| over the tail half
};

/// Triangular deconvolution of Phi against the kernel (1+w)^{-(a+1)}: Z with
/// Phi_n = sum_k Z_{n-k} K_k, K_k = (-1)^k Gamma(a+1+k)/(k! Gamma(a+1)).
SingularityProfile deconvolve_profile(const std::vector<double>& Phi, double a);
SingularityProfile deconvolve_singularity(const Expansion& e, double a);

/// Forward kernel sum, the inverse of deconvolve_profile (round-trip check).
std::vector<double> reconvolve_profile(const SingularityProfile& p);

struct NormParams {
  double epsilon = 0.1;
  double a = 2.0;
  std::vector<cplx> grid;

  static NormParams defaults(double a, double epsilon);
};

/// sup over the grid of |Y(w)| e^{-|w|/eps} (1 + |w|^4/eps^4) |1+w|^{a+1}/|w|.
double triple_norm_eval(const DiscFunction& Y, const NormParams& p);

struct SamplerResult {
  long trials = 0;
  long violations = 0;
  double worst_margin = 0.0;  // min over trials of lhs - rhs
};

/// Monte Carlo check of |1+w(1-t)| >= (|1+w| + t)/sqrt(5) for w in the
/// delta-neighbourhood of -1 inside the unit disc, t in [0, 1].
SamplerResult sample_lowerbound1(double delta, long trials, std::uint64_t seed = 12345);

struct EmbeddingResult {
  double max_value = 0.0;
  double arg_p = 0.0;
  double arg_r = 0.0;
};

/// Grid maximum of e^{-rp}(1+(rp)^4)(1+r)^{?}-style weight quotient
/// sup_{p in [0,20], r in (1,50]} e^{-rp}(1+(rp)^4) r / (r-1) ... see impl.
EmbeddingResult embedding_grid(int np = 4001, int nr = 2451);

/// Laplace sum of the Pade approximant of the Borel transform along [0,
/// cutoff].  Requires cutoff >= 30 x; throws singular_approximant_error if the
/// (reduced) denominator vanishes on the ray.
double borel_pade_laplace(const Expansion& e, double x, int pade_order, int ray_panels,
                          double ray_cutoff);

}  // namespace gevrey
