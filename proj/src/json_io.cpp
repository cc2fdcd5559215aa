#include "dworklab/json_io.hpp"

#include <algorithm>

namespace dworklab {

namespace {

// Decimal string or JSON integer reduced mod p^N; any sign, any length.
Residue residue_from_json(const PadicCtx& ctx, const json& j) {
  const Residue q = ctx.modulus_value();
  if (j.is_number_integer()) {
    const std::int64_t v = j.get<std::int64_t>();
    return ctx.reduce(v);
  }
  if (!j.is_string()) fail(ErrorCode::ConfigError, "expected a decimal string, got " + j.dump());
  const std::string s = j.get<std::string>();
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) negative = s[pos++] == '-';
  if (pos == s.size()) fail(ErrorCode::ConfigError, "empty number '" + s + "'");
  unsigned __int128 acc = 0;
  for (; pos < s.size(); ++pos) {
    if (s[pos] < '0' || s[pos] > '9') fail(ErrorCode::ConfigError, "not a decimal integer: '" + s + "'");
    acc = (acc * 10 + static_cast<unsigned>(s[pos] - '0')) % q;
  }
  const auto r = static_cast<Residue>(acc);
  return negative && r != 0 ? q - r : r;
}

json coeff_json(const ExtElem& c) {
  if (c.degree() == 1) return std::to_string(c[0]);
  return to_json(c);
}

int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) fail(ErrorCode::ConfigError, std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

}  // namespace

json to_json(const PadicCtx& ctx) {
  json mod = json::array();
  for (Residue c : ctx.defining_poly()) mod.push_back(c);
  return {{"p", ctx.p()}, {"N", ctx.precision()}, {"m", ctx.degree()}, {"modulus", mod}};
}

PadicCtx ctx_from_json(const json& j) {
  const auto p = j.at("p").get<std::uint64_t>();
  const auto N = j.at("N").get<unsigned>();
  if (!j.contains("modulus")) return PadicCtx::create(p, N, j.value("m", 1u));
  return PadicCtx::from_modulus(p, N, j.at("modulus").get<std::vector<Residue>>());
}

json to_json(const ExtElem& x) {
  json a = json::array();
  for (unsigned i = 0; i < x.degree(); ++i) a.push_back(std::to_string(x[i]));
  return a;
}

ExtElem elem_from_json(const PadicCtx& ctx, const json& j) {
  ExtElem x = ctx.zero();
  if (!j.is_array()) {
    x[0] = residue_from_json(ctx, j);
    return x;
  }
  if (j.size() > ctx.degree())
    fail(ErrorCode::ConfigError, "element has " + std::to_string(j.size()) + " coordinates, ring degree is " +
                                     std::to_string(ctx.degree()));
  for (std::size_t i = 0; i < j.size(); ++i) x[static_cast<unsigned>(i)] = residue_from_json(ctx, j[i]);
  return x;
}

json to_json(const LaurentPoly& f) {
  std::vector<std::pair<std::vector<int>, ExtElem>> terms;
  for (std::size_t k = 0; k < f.size(); ++k) terms.emplace_back(f.exponents(k), f.coeff(k));
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  json arr = json::array();
  for (const auto& [e, c] : terms) {
    json t = json::array(), z = json::array();
    for (int v = 0; v < f.r(); ++v) t.push_back(e[static_cast<std::size_t>(v)]);
    for (int v = 0; v < f.n(); ++v) z.push_back(e[static_cast<std::size_t>(f.r() + v)]);
    arr.push_back({{"t", t}, {"z", z}, {"c", coeff_json(c)}});
  }
  return {{"r", f.r()}, {"n", f.n()}, {"terms", arr}};
}

LaurentPoly poly_from_json(const PadicCtx& ctx, const json& j) {
  if (!j.is_object()) fail(ErrorCode::ConfigError, "polynomial must be a JSON object");
  const int n = int_field(j, "n");
  if (j.contains("factors")) {
    FactoredPoly f(ctx, n);
    for (const auto& fac : j["factors"]) {
      LinearFactor lf;
      if (fac.contains("z")) {
        lf.z_index = fac["z"].get<int>() - 1;
        if (lf.z_index < 0 || lf.z_index >= n) fail(ErrorCode::ConfigError, "factor z index out of range");
        lf.root = ctx.zero();
      } else {
        lf.root = elem_from_json(ctx, fac.at("root"));
      }
      f = f.times_linear(lf, fac.value("e", std::uint64_t{1}));
    }
    if (j.contains("scalar")) f = f.scaled(elem_from_json(ctx, j["scalar"]));
    return LaurentPoly::from_factored(f);
  }
  const int r = int_field(j, "r");
  std::vector<std::pair<std::vector<int>, ExtElem>> terms;
  for (const auto& t : j.at("terms")) {
    std::vector<int> e = t.value("t", std::vector<int>{});
    const std::vector<int> z = t.value("z", std::vector<int>{});
    if (static_cast<int>(e.size()) != r || static_cast<int>(z.size()) != n)
      fail(ErrorCode::ConfigError, "term exponent lengths do not match r and n: " + t.dump());
    e.insert(e.end(), z.begin(), z.end());
    terms.emplace_back(std::move(e), elem_from_json(ctx, t.at("c")));
  }
  return LaurentPoly::from_terms(ctx, r, n, terms);
}

json to_json(const ScalarMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const PolyMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

std::vector<ExtElem> point_from_json(const PadicCtx& ctx, const json& j) {
  const json& arr = j.is_object() ? j.at("point") : j;
  if (!arr.is_array()) fail(ErrorCode::ConfigError, "point must be an array of elements");
  std::vector<ExtElem> a;
  for (const auto& x : arr) a.push_back(elem_from_json(ctx, x));
  return a;
}

GhostTuple tuple_from_json(const PadicCtx& ctx, const json& j, Delta delta) {
  GhostTuple T;
  T.delta = std::move(delta);
  const json& arr = j.is_object() ? j.at("lambdas") : j;
  if (!arr.is_array() || arr.empty()) fail(ErrorCode::ConfigError, "tuple needs a nonempty list of polynomials");
  for (const auto& f : arr) T.lambdas.push_back(poly_from_json(ctx, f));
  T.periodic = j.is_object() && j.value("periodic", false);
  for (const auto& f : T.lambdas)
    if (f.r() != T.lambdas[0].r() || f.n() != T.lambdas[0].n())
      fail(ErrorCode::ConfigError, "tuple entries must share r and n");
  return T;
}

json to_json(const CongruenceReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"claimed", c.claimed}, {"observed", c.observed}, {"pass", c.pass()}});
  json out = {{"theorem_id", r.theorem_id},
              {"statement", r.statement},
              {"mode", r.mode},
              {"claimed_valuation", r.claimed_valuation},
              {"observed_min_valuation", r.observed_min_valuation},
              {"pass", r.pass},
              {"points", r.points},
              {"checks", checks}};
  if (!r.per_point.empty()) out["per_point"] = r.per_point;
  out["witness"] = r.witness ? json(*r.witness) : json(nullptr);
  return out;
}

json to_json(const PadicCtx& ctx, const DomainPoint& p) {
  json res = json::array(), lift = json::array();
  for (const auto& x : p.residues) res.push_back(to_json(ctx.truncate(x, 1)));
  for (const auto& x : p.lift) lift.push_back(to_json(x));
  return {{"index", p.index}, {"residues", res}, {"lift", lift}, {"in_D", p.in_D}, {"in_D_o", p.in_D_o}};
}

json to_json(const AdmissibilityVerdict& v) {
  json out = {{"admissible", v.admissible},
              {"all_lengths", v.all_lengths},
              {"max_window_checked", v.max_window_checked},
              {"note", v.note}};
  if (!v.admissible) out["witness"] = {{"window", {v.window_i, v.window_j}}, {"q", v.q}};
  return out;
}

json to_json(const PadicCtx& ctx, const LimitReport& r) {
  json A_i = json::array(), I_i = json::array();
  for (const auto& m : r.I.A_i) A_i.push_back(to_json(m));
  for (const auto& m : r.I.I_i) I_i.push_back(to_json(m));
  return {{"point", to_json(ctx, r.point)},
          {"s_max", r.s_max},
          {"decay_A", r.A.decay},
          {"det_valuations", r.A.det_valuations},
          {"decay_I", r.I.decay_I},
          {"decay_I_i", r.I.decay_I_i},
          {"decay_A_i", r.I.decay_A_i},
          {"A_approx", to_json(r.A.approx)},
          {"I_approx", to_json(r.I.I)},
          {"I_i_approx", I_i},
          {"A_i_approx", A_i},
          {"decay_ok", r.decay_ok},
          {"kz_mc", to_json(r.kz_mc)},
          {"invariance", to_json(r.invariance)},
          {"rank", to_json(r.rank)},
          {"pass", r.pass()}};
}

}  // namespace dworklab
