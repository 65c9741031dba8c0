#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gevrey/series.hpp"

namespace gevrey {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// x^2 y' = -(1+ax) y + f(x,y) with f(0,0) = f'_y(0,0) = f''_xy(0,0) = 0.
struct RawSystem {
  double a = 0.0;
  BSeries f;

  static RawSystem make(double a, BSeries f);  // validates the three vanishing coefficients
};

/// x^2 y' = -(1+ax) y + x^2 f0(x) + x^2 y^2 f2(x,y) with a >= 2.
/// f0 holds coefficients of x^n (n >= 2) of the full y-independent part;
/// f2 entries (n, l) are coefficients of x^n y^l with n >= 2, l >= 2.
struct NormalizedSystem {
  double a = 2.0;
  USeries<double> f0;
  BSeries f2;

  static NormalizedSystem make(double a, USeries<double> f0, BSeries f2);
  BSeries as_bseries() const;  // f0 + f2 merged, for the generic recursion
};

/// Bookkeeping for Lemma-2.2-style pull-back of a normalized expansion.
struct TransformRecord {
  int M = 2;
  std::vector<double> prefix;  // phi_1 .. phi_{M+1} of the original system
  USeries<double> q;           // q(0) = 1
  double a_original = 0.0;
  double a_normalized = 2.0;

  TransformRecord() = default;
  TransformRecord(int M_, std::vector<double> prefix_, USeries<double> q_, double a_orig,
                  double a_norm, bool allow_degenerate = false);
};

enum class SystemKind { raw, normalized, riccati };

struct ParsedSystem {
  SystemKind kind;
  double a = 0.0;
  double b = 0.0;  // riccati only
  std::optional<RawSystem> raw;                // raw and riccati kinds
  std::optional<NormalizedSystem> normalized;  // normalized kind
};

/// x^2 y' = -(1+ax) y + b x^2 + y^2  (the c = 1 family).
RawSystem make_riccati(double a, double b);

ParsedSystem parse_system(std::istream& in);
ParsedSystem parse_system_text(const std::string& text);
std::string serialize_normalized(const NormalizedSystem& sys, const TransformRecord* rec = nullptr);

/// phi_1 .. phi_K of the formal center manifold of `sys`, from the order-by-
/// order recursion phi_n = [f(x,phi)]_n - (n-1+a) phi_{n-1}.
std::vector<double> low_order_prefix(const RawSystem& sys, int K);

/// Lemma-2.1 pipeline: translation by the exact prefix, integrating factor
/// q = exp(int s^-2 f1), blow-up y = x^M y~.  All series carried to order N.
std::pair<NormalizedSystem, TransformRecord> normalize(const RawSystem& sys, int N);

/// Coefficients of  prefix(x) + x^M q(x) tilde_phi(x)  up to order N.
USeries<double> pullback_expansion(const USeries<double>& tilde_phi, const TransformRecord& rec,
                                   int N);

}  // namespace gevrey
