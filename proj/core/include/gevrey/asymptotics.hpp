#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gevrey/signed_log.hpp"
#include "gevrey/system.hpp"

namespace gevrey {

/// Coefficient table phi_1 .. phi_N together with the rescaled partial sums
/// s_n = (-1)^n phi_n / Gamma(n+a), which converge to the resurgence constant
/// when the decay hypothesis holds.
struct Expansion {
  double a = 0.0;  // shift used inside Gamma(n+a)
  int N = 0;
  std::vector<SignedLog> phi;  // phi[n], 0 <= n <= N
  std::vector<double> phi_d;   // same values as plain doubles, NaN once unrepresentable
  std::vector<double> s;       // s[n]; NaN for n < s_first
  int s_first = 1;             // first n with n + a > 0
  bool cancellation_flag = false;
  double noise_floor = 0.0;    // absolute noise estimate for the s tail

  double phi_double(int n) const;  // throws domain_error if not representable
};

/// Recursion on a normalized system, entirely in rescaled variables; safe for
/// any N.
Expansion expand_rescaled(const NormalizedSystem& sys, int N);

/// Recursion on a raw system.  Runs in plain doubles while Gamma-scale
/// magnitudes fit, otherwise in signed-log arithmetic.  s_n is populated for
/// n + a > 0.
Expansion expand_raw(const RawSystem& sys, int N);

enum class SumMethod { last_term, aitken };

struct SinfEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  SumMethod method = SumMethod::last_term;
  int N_used = 0;
};

SinfEstimate estimate_sinf(const Expansion& e, SumMethod method);

struct DecayDiagnostics {
  double slope = 0.0;  // least-squares slope of log|s_n - s_{n-1}| vs log n
  double K_hat = 0.0;  // max over the window of |s_n - s_{n-1}| n^3
};

/// Fitted over n in [N/2, N]; slope is -inf when the tail is identically zero
/// or below the noise floor.
DecayDiagnostics decay_diagnostics(const Expansion& e);

/// CSV rows (n, sign phi_n, log|phi_n|, s_n, s_n - s_{n-1}) at full precision.
/// `header_lines` are emitted first as '#' comments.
void write_expansion_csv(std::ostream& os, const Expansion& e,
                         const std::vector<std::string>& header_lines);

}  // namespace gevrey
