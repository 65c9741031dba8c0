#include "gevrey/system.hpp"

#include <cmath>
#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gevrey/recursion.hpp"

namespace gevrey {

using json = nlohmann::json;

RawSystem RawSystem::make(double a, BSeries f) {
  if (!std::isfinite(a)) throw validation_error("raw system: a must be finite");
  if (f.at(0, 0) != 0.0 || f.at(0, 1) != 0.0 || f.at(1, 1) != 0.0)
    throw validation_error("raw system: coefficients (0,0), (0,1), (1,1) must vanish");
  for (const auto& [ml, c] : f.entries) {
    if (ml.first < 0 || ml.second < 0)
      throw validation_error("raw system: negative exponent in f");
    if (!std::isfinite(c)) throw validation_error("raw system: non-finite coefficient in f");
  }
  return RawSystem{a, std::move(f)};
}

NormalizedSystem NormalizedSystem::make(double a, USeries<double> f0, BSeries f2) {
  if (!(a >= 2.0)) throw validation_error("normalized system: requires a >= 2");
  if (!f0.is_zero() && f0.leading < 2)
    throw validation_error("normalized system: f0 must start at order 2");
  for (const auto& [ml, c] : f2.entries) {
    if (ml.first < 2 || ml.second < 2)
      throw validation_error("normalized system: f2 entries need n >= 2 and l >= 2");
    if (!std::isfinite(c)) throw validation_error("normalized system: non-finite coefficient");
  }
  return NormalizedSystem{a, std::move(f0), std::move(f2)};
}

BSeries NormalizedSystem::as_bseries() const {
  BSeries f = f2;
  for (int n = f0.leading; n <= f0.trunc; ++n) {
    double c = f0.at(n);
    if (c != 0.0) f.add(n, 0, c);
  }
  return f;
}

TransformRecord::TransformRecord(int M_, std::vector<double> prefix_, USeries<double> q_,
                                 double a_orig, double a_norm, bool allow_degenerate)
    : M(M_), prefix(std::move(prefix_)), q(std::move(q_)), a_original(a_orig),
      a_normalized(a_norm) {
  if (!allow_degenerate && M < 2) throw validation_error("transform record: M must be >= 2");
  if (M >= 2 && static_cast<int>(prefix.size()) != M + 1)
    throw validation_error("transform record: prefix must hold phi_1 .. phi_{M+1}");
  if (q.at(0) != 1.0) throw validation_error("transform record: q(0) must equal 1");
}

RawSystem make_riccati(double a, double b) {
  BSeries f;
  f.add(2, 0, b);
  f.add(0, 2, 1.0);
  return RawSystem::make(a, std::move(f));
}

namespace {

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw parse_error(std::string("system file: missing or non-numeric field '") + key + "'");
  return j[key].get<double>();
}

int require_int(const json& e, std::size_t idx, const char* what) {
  if (!e[idx].is_number_integer())
    throw parse_error(std::string("system file: ") + what + " exponent must be an integer");
  return e[idx].get<int>();
}

}  // namespace

ParsedSystem parse_system_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("system file: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("system file: top level must be an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw parse_error("system file: missing string field 'kind'");
  std::string kind = j["kind"].get<std::string>();

  ParsedSystem out;
  out.a = require_number(j, "a");
  if (kind == "riccati") {
    out.kind = SystemKind::riccati;
    out.b = require_number(j, "b");
    out.raw = make_riccati(out.a, out.b);
    return out;
  }
  if (kind == "raw") {
    out.kind = SystemKind::raw;
    BSeries f;
    if (j.contains("f")) {
      if (!j["f"].is_array()) throw parse_error("system file: 'f' must be an array of triples");
      for (const auto& e : j["f"]) {
        if (!e.is_array() || e.size() != 3)
          throw parse_error("system file: each 'f' entry must be [n, l, coeff]");
        int n = require_int(e, 0, "f"), l = require_int(e, 1, "f");
        if (!e[2].is_number()) throw parse_error("system file: 'f' coefficient must be numeric");
        if (f.entries.count({n, l})) throw parse_error("system file: duplicate 'f' entry");
        f.add(n, l, e[2].get<double>());
      }
    }
    out.raw = RawSystem::make(out.a, std::move(f));
    return out;
  }
  if (kind == "normalized") {
    out.kind = SystemKind::normalized;
    USeries<double> f0(2, 2, {});
    if (j.contains("f0")) {
      if (!j["f0"].is_array()) throw parse_error("system file: 'f0' must be an array of pairs");
      int maxn = 2;
      for (const auto& e : j["f0"]) {
        if (!e.is_array() || e.size() != 2)
          throw parse_error("system file: each 'f0' entry must be [n, coeff]");
        maxn = std::max(maxn, require_int(e, 0, "f0"));
      }
      f0 = USeries<double>(2, maxn, {});
      for (const auto& e : j["f0"]) {
        int n = require_int(e, 0, "f0");
        if (n < 2) throw parse_error("system file: 'f0' orders must be >= 2");
        if (!e[1].is_number()) throw parse_error("system file: 'f0' coefficient must be numeric");
        if (f0.at(n) != 0.0) throw parse_error("system file: duplicate 'f0' entry");
        f0.set(n, e[1].get<double>());
      }
    }
    BSeries f2;
    if (j.contains("f2")) {
      if (!j["f2"].is_array()) throw parse_error("system file: 'f2' must be an array of triples");
      for (const auto& e : j["f2"]) {
        if (!e.is_array() || e.size() != 3)
          throw parse_error("system file: each 'f2' entry must be [n, l, coeff]");
        int n = require_int(e, 0, "f2"), l = require_int(e, 1, "f2");
        if (!e[2].is_number()) throw parse_error("system file: 'f2' coefficient must be numeric");
        if (f2.entries.count({n, l})) throw parse_error("system file: duplicate 'f2' entry");
        f2.add(n, l, e[2].get<double>());
      }
    }
    out.normalized = NormalizedSystem::make(out.a, std::move(f0), std::move(f2));
    return out;
  }
  throw parse_error("system file: kind must be one of raw, normalized, riccati");
}

ParsedSystem parse_system(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system_text(ss.str());
}

std::string serialize_normalized(const NormalizedSystem& sys, const TransformRecord* rec) {
  json j;
  j["kind"] = "normalized";
  j["a"] = sys.a;
  json f0 = json::array();
  for (int n = sys.f0.leading; n <= sys.f0.trunc; ++n) {
    double c = sys.f0.at(n);
    if (c != 0.0) f0.push_back(json::array({n, c}));
  }
  j["f0"] = f0;
  json f2 = json::array();
  for (const auto& [nl, c] : sys.f2.entries)
    f2.push_back(json::array({nl.first, nl.second, c}));
  j["f2"] = f2;
  if (rec) {
    json t;
    t["M"] = rec->M;
    t["prefix"] = rec->prefix;
    json qc = json::array();
    for (int k = 0; k <= rec->q.trunc; ++k) qc.push_back(rec->q.at(k));
    t["q"] = qc;
    t["a_original"] = rec->a_original;
    t["a_normalized"] = rec->a_normalized;
    j["transform"] = t;
  }
  return j.dump(1);
}

std::vector<double> low_order_prefix(const RawSystem& sys, int K) {
  if (K < 1) throw std::invalid_argument("low_order_prefix: K must be >= 1");
  std::vector<double> phi = detail::raw_recursion<double>(sys.f, sys.a, K);
  return std::vector<double>(phi.begin() + 1, phi.end());
}

std::pair<NormalizedSystem, TransformRecord> normalize(const RawSystem& sys, int N) {
  // The xy coefficient reappearing after translation is 2 f_{0,2} phi_1 and is
  // absorbed into a, so M is chosen against the shifted value.
  double phi1 = sys.f.at(1, 0);
  double c_pred = 2.0 * sys.f.at(0, 2) * phi1;
  double a_eff_pred = sys.a - c_pred;
  int M = std::max(2, 2 + static_cast<int>(std::ceil(-a_eff_pred)));
  if (N < M + 4) throw validation_error("normalize: order too small, need N >= M + 4");
  int NW = N + M;  // row 0 is later divided by x^M

  std::vector<double> prefix = low_order_prefix(sys, M + 1);
  USeries<double> P(1, NW, {});
  for (int n = 1; n <= M + 1; ++n) P.set(n, prefix[n - 1]);
  P.normalize_leading();

  int L = sys.f.max_y_order();
  std::vector<USeries<double>> Ppow;  // Ppow[j] = P^j
  Ppow.push_back(USeries<double>::monomial(0, 1.0, NW));
  if (L >= 1) Ppow.push_back(P);
  for (int jj = 2; jj <= L; ++jj) Ppow.push_back(cauchy_product(Ppow.back(), P, NW));

  // binomial weights C(j, l)
  std::vector<std::vector<double>> binom(L + 1, std::vector<double>(L + 1, 0.0));
  for (int j = 0; j <= L; ++j) {
    binom[j][0] = 1.0;
    for (int l = 1; l <= j; ++l)
      binom[j][l] = binom[j - 1][l - 1] + (l <= j - 1 ? binom[j - 1][l] : 0.0);
  }

  // rows of f(x, P + y) in powers of the new y
  std::vector<USeries<double>> row(L + 1, USeries<double>(0, NW, {}));
  for (const auto& [ml, c] : sys.f.entries) {
    auto [m, jexp] = ml;
    if (m > NW) continue;
    for (int l = 0; l <= jexp; ++l) {
      double w = c * binom[jexp][l];
      USeries<double> term = series_shift(series_scale(Ppow[jexp - l], w, NW), m, NW);
      row[l] = series_add(row[l], term, NW);
    }
  }
  // row 0 also absorbs -(1+ax)P - x^2 P'
  USeries<double> lin = series_add(P, series_scale(series_shift(P, 1, NW), sys.a, NW), NW);
  USeries<double> x2dP(0, NW, {});
  for (int n = 2; n <= NW; ++n) {
    double p = P.at(n - 1);
    if (p != 0.0) x2dP.set(n, (n - 1) * p);
  }
  row[0] = series_add(row[0], series_scale(series_add(lin, x2dP, NW), -1.0, NW), NW);
  // orders <= M+1 of row 0 vanish by construction of the prefix; clear rounding residue
  for (int n = 0; n <= M + 1; ++n) row[0].set(n, 0.0);
  row[0].normalize_leading();

  // xy coefficient moves into a; the rest of row 1 feeds the integrating factor
  USeries<double> f1 = (L >= 1) ? row[1] : USeries<double>(0, NW, {});
  double c_actual = f1.at(1);
  double a_eff = sys.a - c_actual;
  f1.set(0, 0.0);
  f1.set(1, 0.0);
  f1.normalize_leading();
  USeries<double> q = exp_integral_series(f1, NW);

  // y = q z: y-free part divides by q, row l picks up q^{l-1}
  USeries<double> f0q = series_divide(row[0], q, NW);
  USeries<double> f0n(2, N, {});
  for (int n = 2; n <= N; ++n) {
    double cval = f0q.at(n + M);
    if (cval != 0.0) f0n.set(n, cval);
  }
  f0n.normalize_leading();

  BSeries f2n;
  USeries<double> qpow = USeries<double>::monomial(0, 1.0, NW);  // q^{l-1}
  for (int l = 2; l <= L; ++l) {
    qpow = cauchy_product(qpow, q, NW);
    USeries<double> rl = cauchy_product(row[l], qpow, NW);
    int off = M * (l - 1);  // blow-up z = x^M u multiplies row l by x^{M(l-1)}
    for (int k = rl.leading; k <= std::min(rl.trunc, N - off); ++k) {
      double cval = rl.at(k);
      if (cval != 0.0) f2n.add(k + off, l, cval);
    }
  }

  double a_norm = a_eff + M;
  NormalizedSystem ns = NormalizedSystem::make(a_norm, std::move(f0n), std::move(f2n));
  TransformRecord rec(M, std::move(prefix), series_truncate(q, N), sys.a, a_norm);
  return {std::move(ns), std::move(rec)};
}

USeries<double> pullback_expansion(const USeries<double>& tilde_phi, const TransformRecord& rec,
                                   int N) {
  if (tilde_phi.trunc < N - rec.M)
    throw validation_error("pullback_expansion: expansion shorter than requested order");
  USeries<double> acc(1, N, {});
  for (int n = 1; n <= std::min<int>(static_cast<int>(rec.prefix.size()), N); ++n)
    acc.set(n, rec.prefix[n - 1]);
  USeries<double> q = rec.q;
  if (q.trunc < N) q.trunc = N;
  USeries<double> t = tilde_phi;
  if (t.trunc < N) t.trunc = N;
  USeries<double> tail = series_shift(cauchy_product(q, t, N - rec.M >= 0 ? N - rec.M : 0), rec.M, N);
  return series_add(acc, tail, N);
}

}  // namespace gevrey
