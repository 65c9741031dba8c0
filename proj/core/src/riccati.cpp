#include "gevrey/riccati.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "gevrey/recursion.hpp"
#include "gevrey/special.hpp"
#include "gevrey/system.hpp"
#include "gevrey/asymptotics.hpp"

namespace gevrey {

double riccati_sn(double a, double b, int N) {
  if (N < 2) throw std::invalid_argument("riccati_sn: N must be >= 2");
  if (b == 0.0) return 0.0;  // p_n vanishes identically
  if (a > -2.0) {
    USeries<double> f0 = USeries<double>::monomial(2, b, N);
    BSeries f2;
    f2.add(0, 2, 1.0);
    return detail::rescaled_recursion(a, f0, f2, N).s[N];
  }
  // a <= -2: (-1)^N phi_N / Gamma(N+a) from the plain recursion, indices at
  // Gamma poles never enter since only n = N is read off
  if (!(N + a > 1.0)) throw std::invalid_argument("riccati_sn: need N + a > 1");
  Expansion e = expand_raw(make_riccati(a, b), N);
  return e.s[N];
}

SignMap scan(double a_min, double a_max, double b_min, double b_max, int na, int nb, int N,
             int workers) {
  if (na < 2 || nb < 2) throw std::invalid_argument("scan: grid must be at least 2x2");
  if (!(a_max > a_min) || !(b_max > b_min))
    throw std::invalid_argument("scan: ranges must be increasing");
  if (workers <= 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, na);
  SignMap m;
  m.a_min = a_min; m.a_max = a_max; m.b_min = b_min; m.b_max = b_max;
  m.na = na; m.nb = nb; m.N_used = N;
  m.value.assign(static_cast<std::size_t>(na) * nb, 0.0);
  m.sign.assign(m.value.size(), 0);

  std::atomic<int> next{0};
  auto work = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= na) return;
      double a = m.a_at(i);
      for (int j = 0; j < nb; ++j) {
        double v = riccati_sn(a, m.b_at(j), N);
        m.value[static_cast<std::size_t>(i) * nb + j] = v;
        m.sign[static_cast<std::size_t>(i) * nb + j] = (v > 0.0) - (v < 0.0);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return m;
}

namespace {

using Pt = std::pair<double, double>;

std::int64_t quant(double x, double scale) {
  return static_cast<std::int64_t>(std::llround(x * scale));
}

}  // namespace

std::vector<Polyline> zero_contours(const SignMap& m) {
  double ca = (m.a_max - m.a_min) / (m.na - 1);
  double cb = (m.b_max - m.b_min) / (m.nb - 1);
  auto val = [&](int i, int j) { return m.value[static_cast<std::size_t>(i) * m.nb + j]; };
  auto cross = [](double v0, double v1) { return v0 == v1 ? 0.5 : v0 / (v0 - v1); };

  std::vector<std::pair<Pt, Pt>> segs;
  for (int i = 0; i + 1 < m.na; ++i) {
    for (int j = 0; j + 1 < m.nb; ++j) {
      double v00 = val(i, j), v10 = val(i + 1, j), v11 = val(i + 1, j + 1), v01 = val(i, j + 1);
      int mask = (v00 >= 0) | ((v10 >= 0) << 1) | ((v11 >= 0) << 2) | ((v01 >= 0) << 3);
      if (mask == 0 || mask == 15) continue;
      double a0 = m.a_at(i), b0 = m.b_at(j);
      Pt S{a0 + ca * cross(v00, v10), b0};
      Pt Nn{a0 + ca * cross(v01, v11), b0 + cb};
      Pt W{a0, b0 + cb * cross(v00, v01)};
      Pt E{a0 + ca, b0 + cb * cross(v10, v11)};
      auto emit = [&](const Pt& p, const Pt& q) { segs.push_back({p, q}); };
      switch (mask) {
        case 1: case 14: emit(S, W); break;
        case 2: case 13: emit(S, E); break;
        case 3: case 12: emit(W, E); break;
        case 4: case 11: emit(E, Nn); break;
        case 6: case 9:  emit(S, Nn); break;
        case 7: case 8:  emit(W, Nn); break;
        case 5: case 10: {
          // saddle, disambiguated by the cell-center average
          double c = 0.25 * (v00 + v10 + v11 + v01);
          bool centerPos = c >= 0;
          if ((mask == 5) == centerPos) { emit(S, E); emit(W, Nn); }
          else { emit(S, W); emit(E, Nn); }
          break;
        }
      }
    }
  }

  // chain segments into polylines through shared (quantized) endpoints
  double qs = 1024.0 / std::min(ca, cb);
  std::multimap<std::pair<std::int64_t, std::int64_t>, std::size_t> ends;
  auto key = [&](const Pt& p) { return std::pair{quant(p.first, qs), quant(p.second, qs)}; };
  for (std::size_t k = 0; k < segs.size(); ++k) {
    ends.emplace(key(segs[k].first), k);
    ends.emplace(key(segs[k].second), k);
  }
  std::vector<bool> used(segs.size(), false);
  std::vector<Polyline> out;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (used[k]) continue;
    used[k] = true;
    std::vector<Pt> line{segs[k].first, segs[k].second};
    for (int dir = 0; dir < 2; ++dir) {
      for (;;) {
        Pt tip = dir == 0 ? line.back() : line.front();
        auto range = ends.equal_range(key(tip));
        std::size_t found = segs.size();
        for (auto it = range.first; it != range.second; ++it)
          if (!used[it->second]) { found = it->second; break; }
        if (found == segs.size()) break;
        used[found] = true;
        const auto& sg = segs[found];
        Pt nextPt = (key(sg.first) == key(tip)) ? sg.second : sg.first;
        if (dir == 0) line.push_back(nextPt);
        else line.insert(line.begin(), nextPt);
      }
    }
    out.push_back(Polyline{std::move(line)});
  }
  return out;
}

BranchFit branch_fit(const std::vector<Polyline>& contours, int k, const SignMap& m) {
  if (k < 2) throw std::invalid_argument("branch_fit: k must be >= 2");
  double ca = (m.a_max - m.a_min) / (m.na - 1);
  double cb = (m.b_max - m.b_min) / (m.nb - 1);
  bool anchor = false;
  std::vector<Pt> pts;
  for (const auto& c : contours) {
    for (const auto& [a, b] : c.pts) {
      if (std::fabs(a + k) <= 2 * ca && std::fabs(b) <= 2 * cb) anchor = true;
      // stay off the b = 0 axis contour and away from the neighbouring
      // branches; adjacent lines come within 0.75 of a = -k at |b| = 0.5
      if (std::fabs(b) < 1.5 * cb || std::fabs(b) > 0.5) continue;
      if (std::fabs(a + k) > 0.35) continue;
      pts.push_back({a, b});
    }
  }
  if (!anchor || pts.size() < 5)
    throw std::domain_error("branch_fit: no contour branch found near (-k, 0)");
  double sb = 0, sa = 0, sbb = 0, sba = 0;
  for (const auto& [a, b] : pts) { sb += b; sa += a; sbb += b * b; sba += b * a; }
  double n = static_cast<double>(pts.size());
  BranchFit f;
  f.k = k;
  f.n_points = static_cast<int>(pts.size());
  f.slope = (n * sba - sb * sa) / (n * sbb - sb * sb);
  f.intercept = (sa - f.slope * sb) / n;
  double ss = 0;
  for (const auto& [a, b] : pts) {
    double r = a - (f.slope * b + f.intercept);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

double derivative_probe(double a, double h, int N) {
  if (!(h > 0.0)) throw std::invalid_argument("derivative_probe: h must be positive");
  return (riccati_sn(a, h, N) - riccati_sn(a, -h, N)) / (2.0 * h);
}

QProbeResult q_probe(const std::vector<double>& b_values, int N) {
  if (b_values.empty()) throw std::invalid_argument("q_probe: need at least one b value");
  for (double b : b_values)
    if (b == 0.0 || !std::isfinite(b)) throw std::invalid_argument("q_probe: b values must be nonzero");
  std::vector<std::pair<double, double>> rb;  // (b, s/b^2)
  for (double b : b_values) rb.push_back({b, riccati_sn(-2.0, b, N) / (b * b)});
  std::sort(rb.begin(), rb.end(),
            [](const auto& x, const auto& y) { return std::fabs(x.first) < std::fabs(y.first); });
  QProbeResult r;
  double h = std::fabs(rb[0].first);
  r.second_difference = (riccati_sn(-2.0, h, N) + riccati_sn(-2.0, -h, N)) / (h * h);
  if (rb.size() == 1) {
    r.value = rb[0].second;
    r.extrapolated = false;
    return r;
  }
  // r(b) = Q + C b + O(b^2): eliminate the linear term from the two smallest
  double b2 = rb[0].first, r2 = rb[0].second;
  double b1 = rb[1].first, r1 = rb[1].second;
  if (b1 == b2) throw std::invalid_argument("q_probe: b values must be distinct");
  r.value = (b1 * r2 - b2 * r1) / (b1 - b2);
  r.extrapolated = true;
  return r;
}

void write_scan_csv(std::ostream& os, const SignMap& m,
                    const std::vector<std::string>& header_lines) {
  for (const auto& h : header_lines) os << "# " << h << "\n";
  os << "a,b,S_N,sign\n";
  char buf[160];
  for (int i = 0; i < m.na; ++i) {
    for (int j = 0; j < m.nb; ++j) {
      std::size_t idx = static_cast<std::size_t>(i) * m.nb + j;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", m.a_at(i), m.b_at(j),
                    m.value[idx], m.sign[idx]);
      os << buf;
    }
  }
}

void write_scan_pgm(std::ostream& os, const SignMap& m) {
  os << "P2\n" << m.na << " " << m.nb << "\n2\n";
  for (int j = m.nb - 1; j >= 0; --j) {
    for (int i = 0; i < m.na; ++i) {
      os << (m.sign[static_cast<std::size_t>(i) * m.nb + j] + 1);
      os << (i + 1 < m.na ? ' ' : '\n');
    }
  }
}

void write_contours_csv(std::ostream& os, const std::vector<Polyline>& contours,
                        const std::vector<std::string>& header_lines) {
  for (const auto& h : header_lines) os << "# " << h << "\n";
  os << "contour_id,a,b\n";
  char buf[120];
  for (std::size_t c = 0; c < contours.size(); ++c) {
    for (const auto& [a, b] : contours[c].pts) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", c, a, b);
      os << buf;
    }
  }
}

}  // namespace gevrey
