#include "dworklab/ghosts.hpp"

#include <algorithm>
#include <optional>

namespace dworklab {

namespace {

using i128 = __int128;

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

constexpr i128 kHugeScale = static_cast<i128>(1) << 100;

// First q with q * pL in delta_k + [lo, hi] for some delta_k, q not in delta.
std::optional<long> interval_failure(i128 lo, i128 hi, i128 pL, const std::vector<long>& delta) {
  for (long d : delta) {
    const i128 qlo = ceil_div(d + lo, pL), qhi = floor_div(d + hi, pL);
    // More candidates than elements of delta means one of the first
    // |delta| + 1 of them is missing.
    const i128 last = std::min(qhi, qlo + static_cast<i128>(delta.size()));
    for (i128 q = qlo; q <= last; ++q)
      if (std::find(delta.begin(), delta.end(), static_cast<long>(q)) == delta.end()) return static_cast<long>(q);
  }
  return std::nullopt;
}

// Box version for r > 1: every lattice point of the box must lie in delta.
std::optional<std::vector<long>> box_failure(const std::vector<i128>& lo, const std::vector<i128>& hi, i128 pL,
                                             const std::vector<std::vector<long>>& delta, std::size_t cap) {
  const std::size_t r = lo.size();
  for (const auto& d : delta) {
    std::vector<i128> qlo(r), qhi(r);
    double count = 1;
    for (std::size_t k = 0; k < r; ++k) {
      qlo[k] = ceil_div(d[k] + lo[k], pL);
      qhi[k] = floor_div(d[k] + hi[k], pL);
      if (qhi[k] < qlo[k]) count = 0;
      count *= static_cast<double>(qhi[k] - qlo[k] + 1);
    }
    if (count == 0) continue;
    if (count > static_cast<double>(cap))
      fail(ErrorCode::UnsupportedArity, "lattice enumeration exceeds the cap for r > 1");
    std::vector<i128> q = qlo;
    for (;;) {
      std::vector<long> ql(q.begin(), q.end());
      if (std::find(delta.begin(), delta.end(), ql) == delta.end()) return ql;
      std::size_t k = 0;
      while (k < r && q[k] == qhi[k]) {
        q[k] = qlo[k];
        ++k;
      }
      if (k == r) break;
      ++q[k];
    }
  }
  return std::nullopt;
}

AdmissibilityVerdict fail_verdict(std::size_t i, std::size_t j, std::vector<long> q, std::size_t checked) {
  AdmissibilityVerdict v;
  v.admissible = false;
  v.window_i = i;
  v.window_j = j;
  v.q = std::move(q);
  v.max_window_checked = checked;
  return v;
}

}  // namespace

const LaurentPoly& GhostTuple::lambda(std::size_t i) const {
  if (lambdas.empty()) fail(ErrorCode::InvalidArgument, "empty tuple");
  if (periodic) return lambdas[i % lambdas.size()];
  if (i >= lambdas.size()) fail(ErrorCode::IndexOutOfRange, "tuple index " + std::to_string(i));
  return lambdas[i];
}

AdmissibilityVerdict check_admissible(std::span<const Interval> polytopes, bool periodic, const std::vector<long>& delta,
                                      std::uint64_t p, std::size_t depth) {
  if (polytopes.empty()) fail(ErrorCode::InvalidArgument, "no polytopes");
  if (delta.empty()) fail(ErrorCode::InvalidArgument, "index set is empty");
  if (depth < 1) fail(ErrorCode::InvalidArgument, "depth must be >= 1");
  const i128 P = static_cast<i128>(p);

  if (periodic && polytopes.size() == 1) {
    AdmissibilityVerdict v;
    v.all_lengths = true;
    const Interval N = polytopes[0];
    if (N.empty) {
      v.note = "empty polytope: condition is vacuous";
      return v;
    }
    // Past L*, the q-sets no longer change with the window length.
    i128 spread = 0;
    for (long d : delta) {
      spread = std::max(spread, static_cast<i128>(d) * (P - 1) - N.lo < 0 ? N.lo - static_cast<i128>(d) * (P - 1)
                                                                           : static_cast<i128>(d) * (P - 1) - N.lo);
      spread = std::max(spread, static_cast<i128>(d) * (P - 1) - N.hi < 0 ? N.hi - static_cast<i128>(d) * (P - 1)
                                                                           : static_cast<i128>(d) * (P - 1) - N.hi);
    }
    std::size_t Lstar = 1;
    i128 pL = P;
    while (pL <= spread) {
      pL *= P;
      ++Lstar;
    }
    i128 lo = 0, hi = 0, scale = 1;
    pL = 1;
    for (std::size_t L = 1; L <= Lstar; ++L) {
      lo += scale * N.lo;
      hi += scale * N.hi;
      scale *= P;
      pL *= P;
      if (auto q = interval_failure(lo, hi, pL, delta)) return fail_verdict(0, L - 1, {*q}, L);
    }
    v.max_window_checked = Lstar;
    v.note = "constant pattern: q-sets stable from window length " + std::to_string(Lstar);
    return v;
  }

  const std::size_t len = polytopes.size();
  // Finite tuples: windows 0 <= i <= j < l with l = len - 1.
  const std::size_t starts = periodic ? len : (len >= 1 ? len - 1 : 0);
  const std::size_t max_len = periodic ? depth : std::min(depth, len - 1);
  AdmissibilityVerdict v;
  for (std::size_t i = 0; i < starts; ++i) {
    i128 lo = 0, hi = 0, scale = 1;
    bool empty = false;
    for (std::size_t L = 1; L <= max_len; ++L) {
      const std::size_t j = i + L - 1;
      if (!periodic && j >= len - 1) break;
      const Interval& N = polytopes[j % len];
      empty = empty || N.empty;
      lo += scale * N.lo;
      hi += scale * N.hi;
      scale *= P;
      if (scale > kHugeScale) fail(ErrorCode::TooLarge, "window too long for exact interval arithmetic");
      if (empty) continue;
      if (auto q = interval_failure(lo, hi, scale, delta)) return fail_verdict(i, j, {*q}, max_len);
    }
  }
  v.max_window_checked = max_len;
  v.all_lengths = !periodic && depth >= len - 1;
  if (periodic) v.note = "periodic pattern: checked window lengths up to " + std::to_string(depth);
  return v;
}

AdmissibilityVerdict check_admissible(const GhostTuple& tuple, std::size_t depth, std::size_t enumeration_cap) {
  if (tuple.lambdas.empty()) fail(ErrorCode::InvalidArgument, "empty tuple");
  const int r = tuple.lambdas[0].r();
  const std::uint64_t p = tuple.lambdas[0].ctx().p();
  if (r == 1) {
    std::vector<Interval> iv;
    for (const auto& f : tuple.lambdas) {
      if (f.is_zero()) {
        iv.push_back({0, 0, true});
      } else {
        const TBox b = newton_box(f);
        iv.push_back({b.lo[0], b.hi[0], false});
      }
    }
    std::vector<long> d;
    for (const auto& x : tuple.delta) d.push_back(x.at(0));
    return check_admissible(iv, tuple.periodic, d, p, depth);
  }

  std::vector<std::vector<long>> delta;
  for (const auto& x : tuple.delta) delta.emplace_back(x.begin(), x.end());
  const std::size_t len = tuple.lambdas.size();
  const std::size_t starts = tuple.periodic ? len : len - 1;
  const std::size_t max_len = tuple.periodic ? depth : std::min(depth, len - 1);
  const i128 P = static_cast<i128>(p);
  for (std::size_t i = 0; i < starts; ++i) {
    std::vector<i128> lo(static_cast<std::size_t>(r), 0), hi(static_cast<std::size_t>(r), 0);
    i128 scale = 1;
    bool empty = false;
    for (std::size_t L = 1; L <= max_len; ++L) {
      const std::size_t j = i + L - 1;
      if (!tuple.periodic && j >= len - 1) break;
      const LaurentPoly& f = tuple.lambdas[j % len];
      if (f.is_zero()) {
        empty = true;
      } else {
        const TBox b = newton_box(f);
        for (int k = 0; k < r; ++k) {
          lo[static_cast<std::size_t>(k)] += scale * b.lo[static_cast<std::size_t>(k)];
          hi[static_cast<std::size_t>(k)] += scale * b.hi[static_cast<std::size_t>(k)];
        }
      }
      scale *= P;
      if (scale > kHugeScale) fail(ErrorCode::TooLarge, "window too long for exact box arithmetic");
      if (empty) continue;
      if (auto q = box_failure(lo, hi, scale, delta, enumeration_cap)) {
        auto v = fail_verdict(i, j, *q, max_len);
        v.note = "box over-approximation for r > 1: failure is inconclusive";
        return v;
      }
    }
  }
  AdmissibilityVerdict v;
  v.max_window_checked = max_len;
  v.all_lengths = !tuple.periodic && depth >= len - 1;
  v.note = "box over-approximation for r > 1: pass is sound";
  return v;
}

LaurentPoly big_product(const GhostTuple& tuple, std::size_t s, std::size_t j) {
  if (j > s || s >= tuple.length()) fail(ErrorCode::IndexOutOfRange, "big product indices");
  const std::uint64_t p = tuple.lambda(0).ctx().p();
  LaurentPoly w = tuple.lambda(s);
  for (std::size_t k = s; k-- > j;) w = poly_mul(tuple.lambda(k), poly_pow(w, p));
  return w;
}

GhostSeq::GhostSeq(GhostTuple tuple, std::size_t l) : tuple_(std::move(tuple)) {
  if (l >= tuple_.length()) fail(ErrorCode::IndexOutOfRange, "tuple is shorter than l + 1");
  const PadicCtx& ctx = tuple_.lambda(0).ctx();
  require_precision(ctx, static_cast<unsigned>(l), "ghost divisibility");
  V_.push_back(tuple_.lambda(0));
  for (std::size_t s = 1; s <= l; ++s) {
    LaurentPoly v = W(0, s);
    for (std::size_t j = 1; j <= s; ++j) v = v - poly_mul(V_[j - 1], frobenius_sub(W(j, s), static_cast<unsigned>(j)));
    V_.push_back(std::move(v));
  }
}

const LaurentPoly& GhostSeq::V(std::size_t s) const {
  if (s >= V_.size()) fail(ErrorCode::IndexOutOfRange, "ghost index");
  return V_[s];
}

const LaurentPoly& GhostSeq::W(std::size_t j, std::size_t s) {
  if (j > s || s >= tuple_.length()) fail(ErrorCode::IndexOutOfRange, "big product indices");
  auto key = std::make_pair(j, s);
  auto it = W_.find(key);
  if (it != W_.end()) return it->second;
  const std::uint64_t p = tuple_.lambda(0).ctx().p();
  LaurentPoly w = j == s ? tuple_.lambda(s) : poly_mul(tuple_.lambda(j), poly_pow(W(j + 1, s), p));
  return W_.emplace(key, std::move(w)).first->second;
}

PointGhosts::PointGhosts(const GhostTuple& tuple, std::vector<ExtElem> a) : tuple_(tuple) {
  points_.emplace(0u, std::move(a));
}

const std::vector<ExtElem>& PointGhosts::point(unsigned frob) {
  auto it = points_.find(frob);
  if (it != points_.end()) return it->second;
  const PadicCtx& ctx = tuple_.lambda(0).ctx();
  std::vector<ExtElem> b = points_.at(0);
  for (auto& x : b) x = ctx.frobenius(x, frob);
  return points_.emplace(frob, std::move(b)).first->second;
}

const UPoly& PointGhosts::lambda(std::size_t k, unsigned frob) {
  auto key = std::make_pair(k, frob);
  auto it = lambda_.find(key);
  if (it != lambda_.end()) return it->second;
  UPoly f = eval_z_dense(tuple_.lambda(k), point(frob));
  return lambda_.emplace(key, std::move(f)).first->second;
}

const UPoly& PointGhosts::W(std::size_t j, std::size_t s, unsigned frob) {
  if (j > s || s >= tuple_.length()) fail(ErrorCode::IndexOutOfRange, "big product indices");
  auto key = std::make_tuple(j, s, frob);
  auto it = W_.find(key);
  if (it != W_.end()) return it->second;
  const std::uint64_t p = tuple_.lambda(0).ctx().p();
  UPoly w = j == s ? lambda(s, frob) : lambda(j, frob) * W(j + 1, s, frob).pow(p);
  return W_.emplace(key, std::move(w)).first->second;
}

const UPoly& PointGhosts::V(std::size_t s) {
  if (s >= tuple_.length()) fail(ErrorCode::IndexOutOfRange, "ghost index");
  while (V_.size() <= s) {
    const std::size_t k = V_.size();
    UPoly v = W(0, k, 0);
    for (std::size_t j = 1; j <= k; ++j) v = v - V_[j - 1] * W(j, k, static_cast<unsigned>(j)).frobenius_t(static_cast<unsigned>(j));
    V_.push_back(std::move(v));
  }
  return V_[s];
}

}  // namespace dworklab
