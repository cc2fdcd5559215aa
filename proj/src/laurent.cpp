#include "dworklab/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace dworklab {

namespace {

constexpr unsigned slot_shift(int var) { return 16u * static_cast<unsigned>(7 - var); }

constexpr MonoKey bias_key() {
  MonoKey k = 0;
  for (int v = 0; v < kMaxVars; ++v) k |= static_cast<MonoKey>(kExpBias) << slot_shift(v);
  return k;
}

constexpr MonoKey kBiasKey = bias_key();

// Keeps the top `r` slots of a key and resets the rest to exponent zero.
MonoKey keep_top_slots(MonoKey key, int r) {
  if (r == 0) return kBiasKey;
  const unsigned low_bits = 16u * static_cast<unsigned>(kMaxVars - r);
  const MonoKey top_mask = ~((static_cast<MonoKey>(1) << low_bits) - 1);
  return (key & top_mask) | (kBiasKey & ~top_mask);
}

// Drops the top `r` slots, moving the remaining slots up.
MonoKey drop_top_slots(MonoKey key, int r) {
  if (r == 0) return key;
  const unsigned bits = 16u * static_cast<unsigned>(r);
  const MonoKey low_fill = kBiasKey & ((static_cast<MonoKey>(1) << bits) - 1);
  return (key << bits) | low_fill;
}

// Inserts a top slot holding `e`, moving every other slot down one place.
MonoKey push_top_slot(MonoKey key, int e) {
  return (key >> 16) | (static_cast<MonoKey>(static_cast<unsigned>(e + kExpBias)) << slot_shift(0));
}

struct KeyHash {
  std::size_t operator()(MonoKey k) const noexcept {
    auto mix = [](std::uint64_t x) {
      x += 0x9e3779b97f4a7c15ULL;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      return x ^ (x >> 31);
    };
    return static_cast<std::size_t>(mix(static_cast<std::uint64_t>(k) ^ mix(static_cast<std::uint64_t>(k >> 64))));
  }
};

void check_arity(int r, int n) {
  if (r < 0 || n < 0 || r + n > kMaxVars) fail(ErrorCode::UnsupportedArity, "at most 8 variables are supported");
}

void check_same_space(const LaurentPoly& f, const LaurentPoly& g, const char* what) {
  if (!(f.ctx() == g.ctx()) || f.r() != g.r() || f.n() != g.n()) fail(ErrorCode::CtxMismatch, what);
}

ExtElem load(const PadicCtx& ctx, const Residue* src) {
  ExtElem e(ctx.degree());
  for (unsigned u = 0; u < ctx.degree(); ++u) e[u] = src[u];
  return e;
}

}  // namespace

MonoKey pack_exponents(std::span<const int> exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars)) fail(ErrorCode::UnsupportedArity, "too many variables");
  MonoKey key = kBiasKey;
  for (std::size_t v = 0; v < exps.size(); ++v) {
    const int e = exps[v];
    if (e < kMinExp || e > kMaxExp) fail(ErrorCode::SizeCapExceeded, "exponent outside the packed range");
    const unsigned sh = slot_shift(static_cast<int>(v));
    key &= ~(static_cast<MonoKey>(0xFFFF) << sh);
    key |= static_cast<MonoKey>(static_cast<unsigned>(e + kExpBias)) << sh;
  }
  return key;
}

int key_exponent(MonoKey key, int var) {
  return static_cast<int>(static_cast<unsigned>(key >> slot_shift(var)) & 0xFFFFu) - kExpBias;
}

void unpack_exponents(MonoKey key, std::span<int> out) {
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = key_exponent(key, static_cast<int>(v));
}

/// Assembles LaurentPoly values from raw key/coefficient arrays.
class TermBuilder {
 public:
  // Keys strictly increasing; zero coefficients are dropped here.
  static LaurentPoly from_sorted(const PadicCtx& ctx, int r, int n, const std::vector<MonoKey>& keys,
                                 const std::vector<Residue>& coeffs) {
    LaurentPoly f(ctx, r, n);
    const unsigned m = ctx.degree();
    f.keys_.reserve(keys.size());
    f.coeffs_.reserve(coeffs.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
      bool zero = true;
      for (unsigned u = 0; u < m; ++u) zero = zero && coeffs[i * m + u] == 0;
      if (zero) continue;
      f.keys_.push_back(keys[i]);
      f.coeffs_.insert(f.coeffs_.end(), coeffs.begin() + static_cast<long>(i * m),
                       coeffs.begin() + static_cast<long>((i + 1) * m));
    }
    if (f.keys_.size() > kTermCap) fail(ErrorCode::SizeCapExceeded, "term count exceeds the soft cap");
    return f;
  }

  // Arbitrary order, duplicates summed.
  static LaurentPoly from_unsorted(const PadicCtx& ctx, int r, int n, const std::vector<MonoKey>& keys,
                                   const std::vector<Residue>& coeffs) {
    const unsigned m = ctx.degree();
    std::vector<std::size_t> order(keys.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<MonoKey> sk;
    std::vector<Residue> sc;
    for (std::size_t idx : order) {
      if (!sk.empty() && sk.back() == keys[idx]) {
        Residue* dst = sc.data() + (sk.size() - 1) * m;
        for (unsigned u = 0; u < m; ++u) dst[u] = ctx.add_r(dst[u], coeffs[idx * m + u]);
      } else {
        sk.push_back(keys[idx]);
        sc.insert(sc.end(), coeffs.begin() + static_cast<long>(idx * m),
                  coeffs.begin() + static_cast<long>((idx + 1) * m));
      }
    }
    return from_sorted(ctx, r, n, sk, sc);
  }

  static const std::vector<Residue>& raw(const LaurentPoly& f) { return f.coeffs_; }
  static void set_factored(LaurentPoly& f, std::optional<FactoredPoly> fp) { f.factored_ = std::move(fp); }
};

namespace {

// Adds `delta` to variable `var` in every key, scaling coefficients by the
// old exponent when `derive` is set (formal partial derivative).
LaurentPoly shift_variable(const LaurentPoly& f, int var, int delta, bool derive) {
  const PadicCtx& ctx = f.ctx();
  const unsigned m = ctx.degree();
  const auto& raw = TermBuilder::raw(f);
  std::vector<MonoKey> keys;
  std::vector<Residue> coeffs;
  keys.reserve(f.size());
  coeffs.reserve(raw.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const MonoKey key = f.keys()[k];
    const int e = key_exponent(key, var);
    if (derive && e == 0) continue;
    const int ne = e + delta;
    if (ne < kMinExp || ne > kMaxExp) fail(ErrorCode::SizeCapExceeded, "exponent outside the packed range");
    const MonoKey step = static_cast<MonoKey>(static_cast<unsigned>(std::abs(delta))) << slot_shift(var);
    keys.push_back(delta >= 0 ? key + step : key - step);
    const Residue factor = derive ? ctx.reduce(e) : 1;
    for (unsigned u = 0; u < m; ++u) coeffs.push_back(ctx.mul_r(raw[k * m + u], factor));
  }
  return TermBuilder::from_sorted(ctx, f.r(), f.n(), keys, coeffs);
}

struct ExpRange {
  std::vector<int> lo, hi;
};

ExpRange exponent_range(const LaurentPoly& f) {
  const int nv = f.nvars();
  ExpRange r{std::vector<int>(static_cast<std::size_t>(nv), kMaxExp),
             std::vector<int>(static_cast<std::size_t>(nv), kMinExp)};
  for (MonoKey key : f.keys())
    for (int v = 0; v < nv; ++v) {
      const int e = key_exponent(key, v);
      r.lo[static_cast<std::size_t>(v)] = std::min(r.lo[static_cast<std::size_t>(v)], e);
      r.hi[static_cast<std::size_t>(v)] = std::max(r.hi[static_cast<std::size_t>(v)], e);
    }
  return r;
}

}  // namespace

LaurentPoly::LaurentPoly(PadicCtx ctx, int r, int n) : ctx_(std::move(ctx)), r_(r), n_(n) { check_arity(r, n); }

LaurentPoly LaurentPoly::constant(const PadicCtx& ctx, int r, int n, const ExtElem& c) {
  std::vector<int> zero(static_cast<std::size_t>(r + n), 0);
  return monomial(ctx, r, n, zero, c);
}

LaurentPoly LaurentPoly::monomial(const PadicCtx& ctx, int r, int n, std::span<const int> exps, const ExtElem& c) {
  check_arity(r, n);
  if (static_cast<int>(exps.size()) != r + n) fail(ErrorCode::InvalidArgument, "exponent vector has wrong length");
  std::vector<Residue> coeffs(c.coeffs().begin(), c.coeffs().end());
  return TermBuilder::from_sorted(ctx, r, n, {pack_exponents(exps)}, coeffs);
}

LaurentPoly LaurentPoly::t_var(const PadicCtx& ctx, int r, int n, int i) {
  if (i < 0 || i >= r) fail(ErrorCode::IndexOutOfRange, "t-variable index");
  std::vector<int> e(static_cast<std::size_t>(r + n), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return monomial(ctx, r, n, e, ctx.one());
}

LaurentPoly LaurentPoly::z_var(const PadicCtx& ctx, int r, int n, int i) {
  if (i < 0 || i >= n) fail(ErrorCode::IndexOutOfRange, "z-variable index");
  std::vector<int> e(static_cast<std::size_t>(r + n), 0);
  e[static_cast<std::size_t>(r + i)] = 1;
  return monomial(ctx, r, n, e, ctx.one());
}

LaurentPoly LaurentPoly::from_terms(const PadicCtx& ctx, int r, int n,
                                    const std::vector<std::pair<std::vector<int>, ExtElem>>& terms) {
  check_arity(r, n);
  std::vector<MonoKey> keys;
  std::vector<Residue> coeffs;
  for (const auto& [exps, c] : terms) {
    if (static_cast<int>(exps.size()) != r + n) fail(ErrorCode::InvalidArgument, "exponent vector has wrong length");
    if (c.degree() != ctx.degree()) fail(ErrorCode::CtxMismatch, "coefficient degree");
    keys.push_back(pack_exponents(exps));
    coeffs.insert(coeffs.end(), c.coeffs().begin(), c.coeffs().end());
  }
  return TermBuilder::from_unsorted(ctx, r, n, keys, coeffs);
}

LaurentPoly LaurentPoly::from_factored(const FactoredPoly& f) {
  LaurentPoly p = f.expand();
  TermBuilder::set_factored(p, f);
  return p;
}

LaurentPoly LaurentPoly::from_dense(const UPoly& f) {
  const PadicCtx& ctx = f.ctx();
  std::vector<MonoKey> keys;
  std::vector<Residue> coeffs;
  for (long k = f.low(); !f.is_zero() && k <= f.high(); ++k) {
    const int e = static_cast<int>(k);
    keys.push_back(pack_exponents(std::span<const int>(&e, 1)));
    const ExtElem c = f.coeff(k);
    coeffs.insert(coeffs.end(), c.coeffs().begin(), c.coeffs().end());
  }
  return TermBuilder::from_sorted(ctx, 1, 0, keys, coeffs);
}

std::vector<int> LaurentPoly::exponents(std::size_t k) const {
  std::vector<int> e(static_cast<std::size_t>(nvars()));
  unpack_exponents(keys_[k], e);
  return e;
}

ExtElem LaurentPoly::coeff(std::size_t k) const { return load(ctx_, coeffs_.data() + k * ctx_.degree()); }

ExtElem LaurentPoly::coefficient(std::span<const int> exps) const {
  const MonoKey key = pack_exponents(exps);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return ctx_.zero();
  return coeff(static_cast<std::size_t>(it - keys_.begin()));
}

int LaurentPoly::min_valuation() const {
  int best = static_cast<int>(ctx_.precision());
  for (std::size_t k = 0; k < size(); ++k) best = std::min(best, ctx_.valuation(coeff(k)));
  return best;
}

UPoly LaurentPoly::to_dense() const {
  if (r_ != 1 || n_ != 0) fail(ErrorCode::InvalidArgument, "dense form needs r = 1, n = 0");
  if (is_zero()) return UPoly(ctx_);
  const unsigned m = ctx_.degree();
  const long lo = key_exponent(keys_.front(), 0), hi = key_exponent(keys_.back(), 0);
  std::vector<Residue> flat(static_cast<std::size_t>(hi - lo + 1) * m, 0);
  for (std::size_t k = 0; k < size(); ++k) {
    const auto off = static_cast<std::size_t>(key_exponent(keys_[k], 0) - lo) * m;
    for (unsigned u = 0; u < m; ++u) flat[off + u] = coeffs_[k * m + u];
  }
  return UPoly(ctx_, lo, std::move(flat));
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  check_same_space(*this, o, "polynomial addition");
  const unsigned m = ctx_.degree();
  std::vector<MonoKey> keys;
  std::vector<Residue> coeffs;
  keys.reserve(size() + o.size());
  coeffs.reserve((size() + o.size()) * m);
  std::size_t i = 0, j = 0;
  while (i < size() || j < o.size()) {
    if (j == o.size() || (i < size() && keys_[i] < o.keys_[j])) {
      keys.push_back(keys_[i]);
      coeffs.insert(coeffs.end(), coeffs_.begin() + static_cast<long>(i * m),
                    coeffs_.begin() + static_cast<long>((i + 1) * m));
      ++i;
    } else if (i == size() || o.keys_[j] < keys_[i]) {
      keys.push_back(o.keys_[j]);
      coeffs.insert(coeffs.end(), o.coeffs_.begin() + static_cast<long>(j * m),
                    o.coeffs_.begin() + static_cast<long>((j + 1) * m));
      ++j;
    } else {
      keys.push_back(keys_[i]);
      for (unsigned u = 0; u < m; ++u) coeffs.push_back(ctx_.add_r(coeffs_[i * m + u], o.coeffs_[j * m + u]));
      ++i;
      ++j;
    }
  }
  return TermBuilder::from_sorted(ctx_, r_, n_, keys, coeffs);
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& c : r.coeffs_) c = ctx_.sub_r(0, c);
  if (r.factored_) r.factored_ = r.factored_->scaled(ctx_.from_int(-1));
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const { return poly_mul(*this, o); }

LaurentPoly LaurentPoly::scaled(const ExtElem& k) const {
  const unsigned m = ctx_.degree();
  std::vector<Residue> coeffs(coeffs_.size());
  for (std::size_t i = 0; i < size(); ++i) {
    const ExtElem c = ctx_.mul(coeff(i), k);
    for (unsigned u = 0; u < m; ++u) coeffs[i * m + u] = c[u];
  }
  LaurentPoly r = TermBuilder::from_sorted(ctx_, r_, n_, keys_, coeffs);
  if (factored_) r.factored_ = factored_->scaled(k);
  return r;
}

LaurentPoly poly_mul(const LaurentPoly& f, const LaurentPoly& g) {
  check_same_space(f, g, "polynomial multiplication");
  const PadicCtx& ctx = f.ctx();
  LaurentPoly zero(ctx, f.r(), f.n());
  if (f.is_zero() || g.is_zero()) return zero;

  const ExpRange rf = exponent_range(f), rg = exponent_range(g);
  for (std::size_t v = 0; v < rf.lo.size(); ++v)
    if (rf.lo[v] + rg.lo[v] < kMinExp || rf.hi[v] + rg.hi[v] > kMaxExp)
      fail(ErrorCode::SizeCapExceeded, "product exponent outside the packed range");
  if (static_cast<double>(f.size()) * static_cast<double>(g.size()) > 4e9)
    fail(ErrorCode::SizeCapExceeded, "product work exceeds the symbolic budget");

  const unsigned m = ctx.degree();
  const auto& fc = TermBuilder::raw(f);
  const auto& gc = TermBuilder::raw(g);
  std::unordered_map<MonoKey, std::uint32_t, KeyHash> slot;
  slot.reserve(std::min<std::size_t>(f.size() * g.size(), kTermCap));
  std::vector<MonoKey> keys;
  std::vector<Residue> acc;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const MonoKey ki = f.keys()[i];
    const ExtElem ci = f.coeff(i);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const MonoKey key = ki + g.keys()[j] - kBiasKey;
      auto [it, inserted] = slot.try_emplace(key, static_cast<std::uint32_t>(keys.size()));
      if (inserted) {
        if (keys.size() >= kTermCap) fail(ErrorCode::SizeCapExceeded, "product term count exceeds the soft cap");
        keys.push_back(key);
        acc.resize(acc.size() + m, 0);
      }
      Residue* dst = acc.data() + static_cast<std::size_t>(it->second) * m;
      if (m == 1) {
        dst[0] = ctx.add_r(dst[0], ctx.mul_r(fc[i], gc[j]));
      } else {
        const ExtElem prod = ctx.mul(ci, load(ctx, gc.data() + j * m));
        for (unsigned u = 0; u < m; ++u) dst[u] = ctx.add_r(dst[u], prod[u]);
      }
    }
  }
  LaurentPoly result = TermBuilder::from_unsorted(ctx, f.r(), f.n(), keys, acc);
  if (f.factored() && g.factored()) TermBuilder::set_factored(result, f.factored()->times(*g.factored()));
  return result;
}

LaurentPoly poly_pow(const LaurentPoly& f, std::uint64_t e) {
  if (f.factored() && f.r() == 1) return LaurentPoly::from_factored(f.factored()->pow(e));
  LaurentPoly result = LaurentPoly::constant(f.ctx(), f.r(), f.n(), f.ctx().one());
  if (e == 0) return result;
  LaurentPoly base = f;
  bool first = true;
  while (e) {
    if (e & 1) {
      result = first ? base : poly_mul(result, base);
      first = false;
    }
    e >>= 1;
    if (e) base = poly_mul(base, base);
  }
  return result;
}

LaurentPoly frobenius_sub(const LaurentPoly& f, unsigned k) {
  if (k == 0) return f;
  long factor = 1;
  for (unsigned i = 0; i < k; ++i) {
    factor *= static_cast<long>(f.ctx().p());
    if (factor > kMaxExp) break;
  }
  const int nv = f.nvars();
  std::vector<MonoKey> keys;
  keys.reserve(f.size());
  std::vector<int> e(static_cast<std::size_t>(nv));
  for (MonoKey key : f.keys()) {
    unpack_exponents(key, e);
    for (auto& x : e) {
      const long y = static_cast<long>(x) * factor;
      if (y < kMinExp || y > kMaxExp) fail(ErrorCode::SizeCapExceeded, "Frobenius exponent outside the packed range");
      x = static_cast<int>(y);
    }
    keys.push_back(pack_exponents(e));
  }
  return TermBuilder::from_sorted(f.ctx(), f.r(), f.n(), keys, TermBuilder::raw(f));
}

LaurentPoly coeff_t(const LaurentPoly& f, std::span<const int> v) {
  if (static_cast<int>(v.size()) != f.r()) fail(ErrorCode::InvalidArgument, "t-exponent has wrong length");
  for (int x : v)
    if (x < kMinExp || x > kMaxExp) return LaurentPoly(f.ctx(), 0, f.n());
  std::vector<int> lo_e(static_cast<std::size_t>(f.nvars()), kMinExp), hi_e(static_cast<std::size_t>(f.nvars()), kMaxExp);
  for (int i = 0; i < f.r(); ++i) lo_e[static_cast<std::size_t>(i)] = hi_e[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
  const MonoKey lo = pack_exponents(lo_e), hi = pack_exponents(hi_e);
  auto keys = f.keys();
  auto first = std::lower_bound(keys.begin(), keys.end(), lo);
  auto last = std::upper_bound(first, keys.end(), hi);
  const unsigned m = f.ctx().degree();
  const auto& raw = TermBuilder::raw(f);
  std::vector<MonoKey> out;
  std::vector<Residue> coeffs;
  for (auto it = first; it != last; ++it) {
    const auto idx = static_cast<std::size_t>(it - keys.begin());
    out.push_back(drop_top_slots(*it, f.r()));
    coeffs.insert(coeffs.end(), raw.begin() + static_cast<long>(idx * m), raw.begin() + static_cast<long>((idx + 1) * m));
  }
  return TermBuilder::from_sorted(f.ctx(), 0, f.n(), out, coeffs);
}

LaurentPoly partial_z(const LaurentPoly& f, int i) {
  if (i < 0 || i >= f.n()) fail(ErrorCode::IndexOutOfRange, "z-variable index");
  return shift_variable(f, f.r() + i, -1, true);
}

LaurentPoly partial_t(const LaurentPoly& f, int i) {
  if (i < 0 || i >= f.r()) fail(ErrorCode::IndexOutOfRange, "t-variable index");
  return shift_variable(f, i, -1, true);
}

LaurentPoly eval_z(const LaurentPoly& f, std::span<const ExtElem> a) {
  const PadicCtx& ctx = f.ctx();
  if (static_cast<int>(a.size()) != f.n()) fail(ErrorCode::InvalidArgument, "point has wrong arity");
  LaurentPoly result(ctx, f.r(), 0);
  if (f.is_zero()) return result;
  const ExpRange range = exponent_range(f);

  // Power tables a_i^e over the exponent range actually used.
  std::vector<std::vector<ExtElem>> powers(static_cast<std::size_t>(f.n()));
  for (int i = 0; i < f.n(); ++i) {
    const int lo = range.lo[static_cast<std::size_t>(f.r() + i)], hi = range.hi[static_cast<std::size_t>(f.r() + i)];
    const ExtElem& x = a[static_cast<std::size_t>(i)];
    if (lo < 0 && !ctx.is_unit(x))
      fail(ErrorCode::NonUnitAtNegativeExponent, "z_" + std::to_string(i + 1) + " is not a unit");
    auto& tab = powers[static_cast<std::size_t>(i)];
    tab.resize(static_cast<std::size_t>(hi - lo + 1));
    const ExtElem base = lo < 0 ? ctx.unit_inverse(x) : x;
    ExtElem cur = ctx.pow(base, static_cast<std::uint64_t>(std::abs(lo)));
    for (int e = lo; e <= hi; ++e) {
      tab[static_cast<std::size_t>(e - lo)] = cur;
      cur = ctx.mul(cur, x);
    }
  }

  const unsigned m = ctx.degree();
  std::vector<MonoKey> keys;
  std::vector<Residue> coeffs;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const MonoKey key = f.keys()[k];
    ExtElem c = f.coeff(k);
    for (int i = 0; i < f.n(); ++i) {
      const int e = key_exponent(key, f.r() + i);
      c = ctx.mul(c, powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(e - range.lo[static_cast<std::size_t>(f.r() + i)])]);
    }
    const MonoKey tk = keep_top_slots(key, f.r());
    if (keys.empty() || keys.back() != tk) {
      keys.push_back(tk);
      coeffs.insert(coeffs.end(), c.coeffs().begin(), c.coeffs().end());
    } else {
      Residue* dst = coeffs.data() + (keys.size() - 1) * m;
      for (unsigned u = 0; u < m; ++u) dst[u] = ctx.add_r(dst[u], c[u]);
    }
  }
  result = TermBuilder::from_sorted(ctx, f.r(), 0, keys, coeffs);
  if (f.factored()) TermBuilder::set_factored(result, f.factored()->at(a));
  return result;
}

UPoly eval_z_dense(const LaurentPoly& f, std::span<const ExtElem> a) {
  if (f.r() != 1) fail(ErrorCode::UnsupportedArity, "dense evaluation needs r = 1");
  if (f.factored()) return f.factored()->at(a).expand_dense();
  return eval_z(f, a).to_dense();
}

namespace {

// Synthetic division in t with coefficients in z; multiply_root maps a
// z-polynomial q to root * q.
template <class MulRoot>
LaurentPoly divide_linear_generic(const LaurentPoly& f, MulRoot multiply_root) {
  if (f.r() != 1) fail(ErrorCode::UnsupportedArity, "linear division needs r = 1");
  if (f.is_zero()) return f;
  const int lo = key_exponent(f.keys().front(), 0), hi = key_exponent(f.keys().back(), 0);
  if (hi == lo) fail(ErrorCode::NotDivisible, "polynomial is constant in t");
  std::vector<LaurentPoly> q;  // q[k - lo] is the coefficient of t^k in the quotient
  q.reserve(static_cast<std::size_t>(hi - lo));
  std::vector<LaurentPoly> rev;
  LaurentPoly carry = coeff_t(f, std::span<const int>(&hi, 1));
  for (int k = hi - 1; k >= lo; --k) {
    rev.push_back(carry);
    carry = coeff_t(f, std::span<const int>(&k, 1)) + multiply_root(carry);
  }
  if (!carry.is_zero()) fail(ErrorCode::NotDivisible, "nonzero remainder in synthetic division");
  const unsigned m = f.ctx().degree();
  std::vector<MonoKey> keys;
  std::vector<Residue> coeffs;
  // rev[0] is the coefficient of t^{hi-1}; emit in increasing t order.
  for (std::size_t idx = rev.size(); idx-- > 0;) {
    const int texp = hi - 1 - static_cast<int>(idx);
    const LaurentPoly& c = rev[idx];
    const auto& raw = TermBuilder::raw(c);
    for (std::size_t k = 0; k < c.size(); ++k) {
      keys.push_back(push_top_slot(c.keys()[k], texp));
      coeffs.insert(coeffs.end(), raw.begin() + static_cast<long>(k * m), raw.begin() + static_cast<long>((k + 1) * m));
    }
  }
  return TermBuilder::from_sorted(f.ctx(), 1, f.n(), keys, coeffs);
}

}  // namespace

LaurentPoly synth_div_linear(const LaurentPoly& f, int z_index) {
  if (z_index < 0 || z_index >= f.n()) fail(ErrorCode::IndexOutOfRange, "z-variable index");
  if (f.factored() && f.factored()->multiplicity(z_index) > 0)
    return LaurentPoly::from_factored(f.factored()->divide_z(z_index));
  return divide_linear_generic(f, [&](const LaurentPoly& q) { return shift_variable(q, z_index, 1, false); });
}

LaurentPoly synth_div_linear(const LaurentPoly& f, const ExtElem& root) {
  if (f.factored()) {
    for (const auto& [lf, e] : f.factored()->factors())
      if (lf.z_index < 0 && lf.root == root) return LaurentPoly::from_factored(f.factored()->divide_root(root));
  }
  return divide_linear_generic(f, [&](const LaurentPoly& q) { return q.scaled(root); });
}

TBox newton_box(const LaurentPoly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "Newton box of the zero polynomial");
  const ExpRange r = exponent_range(f);
  TBox box;
  box.lo.assign(r.lo.begin(), r.lo.begin() + f.r());
  box.hi.assign(r.hi.begin(), r.hi.begin() + f.r());
  return box;
}

LeadingTerm leading_term_lex(const LaurentPoly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "leading term of the zero polynomial");
  return {f.coeff(f.size() - 1), f.exponents(f.size() - 1)};
}

ExtElem evaluate(const LaurentPoly& f, std::span<const ExtElem> tv, std::span<const ExtElem> zv) {
  const PadicCtx& ctx = f.ctx();
  if (static_cast<int>(tv.size()) != f.r() || static_cast<int>(zv.size()) != f.n())
    fail(ErrorCode::InvalidArgument, "evaluation point has wrong arity");
  auto power = [&](const ExtElem& x, int e) {
    if (e >= 0) return ctx.pow(x, static_cast<std::uint64_t>(e));
    if (!ctx.is_unit(x)) fail(ErrorCode::NonUnitAtNegativeExponent, "negative power of a non-unit");
    return ctx.pow(ctx.unit_inverse(x), static_cast<std::uint64_t>(-e));
  };
  ExtElem acc = ctx.zero();
  for (std::size_t k = 0; k < f.size(); ++k) {
    ExtElem c = f.coeff(k);
    for (int v = 0; v < f.nvars(); ++v) {
      const ExtElem& x = v < f.r() ? tv[static_cast<std::size_t>(v)] : zv[static_cast<std::size_t>(v - f.r())];
      c = ctx.mul(c, power(x, key_exponent(f.keys()[k], v)));
    }
    acc = ctx.add(acc, c);
  }
  return acc;
}

int z_homogeneous_degree(const LaurentPoly& f) {
  int deg = 0;
  bool first = true;
  for (MonoKey key : f.keys()) {
    int d = 0;
    for (int i = 0; i < f.n(); ++i) d += key_exponent(key, f.r() + i);
    if (first) {
      deg = d;
      first = false;
    } else if (d != deg) {
      return -1;
    }
  }
  return deg;
}

}  // namespace dworklab
