#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gevrey {

/// Rescaled partial sum s_N for x^2 y' = -(1+ax) y + b x^2 + y^2.  Direct
/// recursion for a > -2; a <= -2 goes through normalization first, so the
/// value reported is the constant of the normalized system.
double riccati_sn(double a, double b, int N);

/// s_N sampled over a uniform (a, b) grid, stored b-fastest.
struct SignMap {
  double a_min = 0, a_max = 0, b_min = 0, b_max = 0;
  int na = 0, nb = 0;
  int N_used = 0;
  std::vector<double> value;  // value[i * nb + j]
  std::vector<int> sign;      // -1, 0, +1

  double a_at(int i) const { return na > 1 ? a_min + (a_max - a_min) * i / (na - 1) : a_min; }
  double b_at(int j) const { return nb > 1 ? b_min + (b_max - b_min) * j / (nb - 1) : b_min; }
};

SignMap scan(double a_min, double a_max, double b_min, double b_max, int na, int nb, int N,
             int workers);

struct Polyline {
  std::vector<std::pair<double, double>> pts;  // (a, b)
};

/// Zero level set of the sampled map by marching squares with linear
/// interpolation along cell edges.
std::vector<Polyline> zero_contours(const SignMap& m);

struct BranchFit {
  int k = 0;
  double slope = 0.0;      // d a / d b
  double intercept = 0.0;  // a at b = 0
  double rms = 0.0;
  int n_points = 0;
};

/// Least-squares line a = slope * b + intercept through contour points near
/// (a, b) = (-k, 0), excluding the b = 0 axis contour.
BranchFit branch_fit(const std::vector<Polyline>& contours, int k, const SignMap& m);

/// Central difference of s_N in b at b = 0.
double derivative_probe(double a, double h, int N);

struct QProbeResult {
  double value = 0.0;
  bool extrapolated = false;
  double second_difference = 0.0;  // (s(h) + s(-h)) / h^2 at the smallest |b|
};

/// s_N(-2, b) / b^2 extrapolated to b = 0 by two-point Richardson in b.
QProbeResult q_probe(const std::vector<double>& b_values, int N);

void write_scan_csv(std::ostream& os, const SignMap& m,
                    const std::vector<std::string>& header_lines);
void write_scan_pgm(std::ostream& os, const SignMap& m);
void write_contours_csv(std::ostream& os, const std::vector<Polyline>& contours,
                        const std::vector<std::string>& header_lines);

}  // namespace gevrey
