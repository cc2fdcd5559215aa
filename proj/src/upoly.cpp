#include "dworklab/upoly.hpp"

#include <gmp.h>

#include <algorithm>
#include <bit>

namespace dworklab {

namespace detail {

namespace {

// Folds an unreduced product in (Z/p^N)[x] of x-degree <= 2m-2 back into the
// ring, for each t-coefficient. `wide` has stride 2m-1.
std::vector<Residue> fold_modulus(const PadicCtx& ctx, std::vector<Residue>& wide, std::size_t len) {
  const unsigned m = ctx.degree();
  const std::size_t stride = 2 * m - 1;
  std::vector<Residue> out(len * m);
  const auto mod = ctx.defining_poly();
  for (std::size_t k = 0; k < len; ++k) {
    Residue* t = wide.data() + k * stride;
    for (std::size_t d = stride - 1; d >= m; --d) {
      const Residue c = t[d];
      if (c == 0) continue;
      for (unsigned i = 0; i < m; ++i) t[d - m + i] = ctx.sub_r(t[d - m + i], ctx.mul_r(c, mod[i]));
    }
    std::copy(t, t + m, out.begin() + static_cast<long>(k * m));
  }
  return out;
}

}  // namespace

std::vector<Residue> dense_mul_schoolbook(const PadicCtx& ctx, std::span<const Residue> a,
                                          std::span<const Residue> b) {
  const unsigned m = ctx.degree();
  const std::size_t la = a.size() / m, lb = b.size() / m;
  if (la == 0 || lb == 0) return {};
  const std::size_t len = la + lb - 1;
  const std::size_t stride = 2 * m - 1;
  const Residue q = ctx.modulus_value();
  std::vector<Residue> wide(len * stride, 0);
  if (q < (1ULL << 32)) {
    // Products fit in 64 bits, so 128-bit accumulators never overflow here.
    std::vector<unsigned __int128> acc(len * stride, 0);
    for (std::size_t i = 0; i < la; ++i) {
      for (unsigned u = 0; u < m; ++u) {
        const Residue av = a[i * m + u];
        if (av == 0) continue;
        for (std::size_t j = 0; j < lb; ++j) {
          unsigned __int128* dst = acc.data() + (i + j) * stride + u;
          const Residue* src = b.data() + j * m;
          for (unsigned w = 0; w < m; ++w) dst[w] += static_cast<std::uint64_t>(av) * src[w];
        }
      }
    }
    for (std::size_t k = 0; k < acc.size(); ++k) wide[k] = static_cast<Residue>(acc[k] % q);
  } else {
    for (std::size_t i = 0; i < la; ++i)
      for (unsigned u = 0; u < m; ++u) {
        const Residue av = a[i * m + u];
        if (av == 0) continue;
        for (std::size_t j = 0; j < lb; ++j)
          for (unsigned w = 0; w < m; ++w) {
            Residue& dst = wide[(i + j) * stride + u + w];
            dst = ctx.add_r(dst, ctx.mul_r(av, b[j * m + w]));
          }
      }
  }
  return fold_modulus(ctx, wide, len);
}

std::vector<Residue> dense_mul_kronecker(const PadicCtx& ctx, std::span<const Residue> a,
                                         std::span<const Residue> b) {
  const unsigned m = ctx.degree();
  const std::size_t la = a.size() / m, lb = b.size() / m;
  if (la == 0 || lb == 0) return {};
  const std::size_t len = la + lb - 1;
  const std::size_t stride = 2 * m - 1;
  const Residue q = ctx.modulus_value();

  // Every output slot is a sum of at most min(la, lb) * m products < q^2.
  const unsigned qbits = static_cast<unsigned>(std::bit_width(q - 1));
  const unsigned cbits = static_cast<unsigned>(std::bit_width(std::min(la, lb) * m));
  const std::size_t words = (2 * qbits + cbits + 1 + 63) / 64;

  auto pack = [&](mpz_t z, std::span<const Residue> src, std::size_t l) {
    std::vector<std::uint64_t> limbs(l * stride * words, 0);
    for (std::size_t k = 0; k < l; ++k)
      for (unsigned u = 0; u < m; ++u) limbs[(k * stride + u) * words] = src[k * m + u];
    mpz_import(z, limbs.size(), -1, sizeof(std::uint64_t), 0, 0, limbs.data());
  };
  mpz_t za, zb, zc;
  mpz_inits(za, zb, zc, nullptr);
  pack(za, a, la);
  pack(zb, b, lb);
  mpz_mul(zc, za, zb);

  std::vector<std::uint64_t> limbs(len * stride * words, 0);
  std::size_t count = 0;
  if (mpz_sgn(zc) != 0) {
    const std::size_t need = (mpz_sizeinbase(zc, 2) + 63) / 64;
    if (need > limbs.size()) limbs.resize(need, 0);
    mpz_export(limbs.data(), &count, -1, sizeof(std::uint64_t), 0, 0, zc);
  }
  mpz_clear(za);
  mpz_clear(zb);
  mpz_clear(zc);

  std::vector<Residue> wide(len * stride, 0);
  for (std::size_t s = 0; s < len * stride; ++s) {
    unsigned __int128 r = 0;
    for (std::size_t w = words; w-- > 0;) {
      r = ((r << 64) | limbs[s * words + w]) % q;
    }
    wide[s] = static_cast<Residue>(r);
  }
  return fold_modulus(ctx, wide, len);
}

std::vector<Residue> dense_mul(const PadicCtx& ctx, std::span<const Residue> a, std::span<const Residue> b) {
  const unsigned m = ctx.degree();
  const std::size_t la = a.size() / m, lb = b.size() / m;
  if (std::max(la, lb) > kKroneckerDegree + 1 && std::min(la, lb) > 16) return dense_mul_kronecker(ctx, a, b);
  return dense_mul_schoolbook(ctx, a, b);
}

}  // namespace detail

UPoly::UPoly(PadicCtx ctx, long low, std::vector<Residue> flat) : ctx_(std::move(ctx)), low_(low), c_(std::move(flat)) {
  if (c_.size() % ctx_.degree() != 0) fail(ErrorCode::InvalidArgument, "flat coefficient block has wrong stride");
  normalize();
}

void UPoly::normalize() {
  const unsigned m = ctx_.degree();
  std::size_t len = c_.size() / m;
  std::size_t lead = 0;
  while (lead < len) {
    bool zero = true;
    for (unsigned u = 0; u < m; ++u) zero = zero && c_[lead * m + u] == 0;
    if (!zero) break;
    ++lead;
  }
  if (lead == len) {
    c_.clear();
    low_ = 0;
    return;
  }
  std::size_t tail = len;
  while (tail > lead) {
    bool zero = true;
    for (unsigned u = 0; u < m; ++u) zero = zero && c_[(tail - 1) * m + u] == 0;
    if (!zero) break;
    --tail;
  }
  if (lead > 0 || tail < len) {
    c_ = std::vector<Residue>(c_.begin() + static_cast<long>(lead * m), c_.begin() + static_cast<long>(tail * m));
    low_ += static_cast<long>(lead);
  }
}

UPoly UPoly::constant(const PadicCtx& ctx, const ExtElem& c) { return monomial(ctx, 0, c); }

UPoly UPoly::monomial(const PadicCtx& ctx, long k, const ExtElem& c) {
  std::vector<Residue> flat(c.coeffs().begin(), c.coeffs().end());
  return UPoly(ctx, k, std::move(flat));
}

UPoly UPoly::linear(const PadicCtx& ctx, const ExtElem& root) {
  const unsigned m = ctx.degree();
  std::vector<Residue> flat(2 * m, 0);
  const ExtElem nr = ctx.neg(root);
  for (unsigned u = 0; u < m; ++u) flat[u] = nr[u];
  flat[m] = 1;
  return UPoly(ctx, 0, std::move(flat));
}

ExtElem UPoly::coeff(long k) const {
  ExtElem e = ctx_.zero();
  if (is_zero() || k < low_ || k > high()) return e;
  const unsigned m = ctx_.degree();
  const auto base = static_cast<std::size_t>(k - low_) * m;
  for (unsigned u = 0; u < m; ++u) e[u] = c_[base + u];
  return e;
}

UPoly UPoly::operator+(const UPoly& o) const {
  if (!(ctx_ == o.ctx_)) fail(ErrorCode::CtxMismatch, "UPoly addition");
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  const unsigned m = ctx_.degree();
  const long lo = std::min(low_, o.low_), hi = std::max(high(), o.high());
  std::vector<Residue> flat(static_cast<std::size_t>(hi - lo + 1) * m, 0);
  auto accumulate = [&](const UPoly& src) {
    const auto off = static_cast<std::size_t>(src.low_ - lo) * m;
    for (std::size_t i = 0; i < src.c_.size(); ++i) flat[off + i] = ctx_.add_r(flat[off + i], src.c_[i]);
  };
  accumulate(*this);
  accumulate(o);
  return UPoly(ctx_, lo, std::move(flat));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + o.scaled(ctx_.from_int(-1)); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (!(ctx_ == o.ctx_)) fail(ErrorCode::CtxMismatch, "UPoly multiplication");
  if (is_zero() || o.is_zero()) return UPoly(ctx_);
  return UPoly(ctx_, low_ + o.low_, detail::dense_mul(ctx_, c_, o.c_));
}

UPoly UPoly::scaled(const ExtElem& k) const {
  const unsigned m = ctx_.degree();
  std::vector<Residue> flat(c_.size());
  ExtElem e(m);
  for (std::size_t i = 0; i < length(); ++i) {
    for (unsigned u = 0; u < m; ++u) e[u] = c_[i * m + u];
    const ExtElem r = ctx_.mul(e, k);
    for (unsigned u = 0; u < m; ++u) flat[i * m + u] = r[u];
  }
  return UPoly(ctx_, low_, std::move(flat));
}

UPoly UPoly::pow(std::uint64_t e) const {
  UPoly result = constant(ctx_, ctx_.one());
  if (e == 0) return result;
  UPoly base = *this;
  bool first = true;
  while (e) {
    if (e & 1) {
      result = first ? base : result * base;
      first = false;
    }
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

UPoly UPoly::substitute_power(std::uint64_t d) const {
  if (d == 1 || is_zero()) return *this;
  const unsigned m = ctx_.degree();
  const std::size_t len = length();
  std::vector<Residue> flat(((len - 1) * d + 1) * m, 0);
  for (std::size_t i = 0; i < len; ++i)
    for (unsigned u = 0; u < m; ++u) flat[i * d * m + u] = c_[i * m + u];
  return UPoly(ctx_, low_ * static_cast<long>(d), std::move(flat));
}

UPoly UPoly::frobenius_t(unsigned k) const {
  std::uint64_t d = 1;
  for (unsigned i = 0; i < k; ++i) d *= ctx_.p();
  return substitute_power(d);
}

UPoly UPoly::div_linear(const ExtElem& root) const {
  if (is_zero()) return *this;
  const unsigned m = ctx_.degree();
  // Synthetic division over exponents base..high; base drops to 0 so that t itself divides.
  const long base = std::min<long>(low_, 0);
  const std::size_t len = static_cast<std::size_t>(high() - base + 1);
  if (len < 2) fail(ErrorCode::NotDivisible, "constant is not divisible by a linear factor");
  std::vector<Residue> quot((len - 1) * m, 0);
  ExtElem carry = coeff(high());
  for (std::size_t k = len - 1; k-- > 0;) {
    for (unsigned u = 0; u < m; ++u) quot[k * m + u] = carry[u];
    carry = ctx_.add(coeff(base + static_cast<long>(k)), ctx_.mul(root, carry));
  }
  if (!carry.is_zero()) fail(ErrorCode::NotDivisible, "nonzero remainder in synthetic division");
  return UPoly(ctx_, base, std::move(quot));
}

UPoly UPoly::derivative() const {
  if (is_zero()) return *this;
  const unsigned m = ctx_.degree();
  std::vector<Residue> flat(c_.size(), 0);
  for (std::size_t i = 0; i < length(); ++i) {
    const Residue k = ctx_.reduce(low_ + static_cast<long>(i));
    for (unsigned u = 0; u < m; ++u) flat[i * m + u] = ctx_.mul_r(c_[i * m + u], k);
  }
  // Exponents shift down by one.
  return UPoly(ctx_, low_ - 1, std::move(flat));
}

ExtElem UPoly::evaluate(const ExtElem& t) const {
  ExtElem acc = ctx_.zero();
  if (is_zero()) return acc;
  for (long k = high(); k >= low_; --k) acc = ctx_.add(ctx_.mul(acc, t), coeff(k));
  if (low_ < 0) {
    acc = ctx_.mul(acc, ctx_.pow(ctx_.unit_inverse(t), static_cast<std::uint64_t>(-low_)));
  } else if (low_ > 0) {
    acc = ctx_.mul(acc, ctx_.pow(t, static_cast<std::uint64_t>(low_)));
  }
  return acc;
}

int UPoly::min_valuation() const {
  int best = static_cast<int>(ctx_.precision());
  const unsigned m = ctx_.degree();
  ExtElem e(m);
  for (std::size_t i = 0; i < length(); ++i) {
    for (unsigned u = 0; u < m; ++u) e[u] = c_[i * m + u];
    best = std::min(best, ctx_.valuation(e));
  }
  return best;
}

}  // namespace dworklab
