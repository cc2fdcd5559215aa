#include "dworklab/padic.hpp"

#include <algorithm>
#include <sstream>

namespace dworklab {

namespace {

using FpPoly = std::vector<std::uint64_t>;

std::uint64_t mulmod_p(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod_p(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod_p(r, a, p);
    a = mulmod_p(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) { return powmod_p(a, p - 2, p); }

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a by b (b nonzero, trimmed).
FpPoly fp_rem(FpPoly a, const FpPoly& b, std::uint64_t p) {
  trim(a);
  const std::uint64_t lead_inv = inv_mod_p(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = mulmod_p(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod_p(c, b[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod_p(a[i], b[j], p)) % p;
  trim(c);
  return c;
}

FpPoly fp_sub(FpPoly a, const FpPoly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = fp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& f, std::uint64_t p) {
  FpPoly r{1};
  base = fp_rem(std::move(base), f, p);
  while (e) {
    if (e & 1) r = fp_rem(fp_mul(r, base, p), f, p);
    base = fp_rem(fp_mul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

// s with s*a = 1 mod f over F_p; f irreducible, a nonzero mod f.
FpPoly fp_inverse_mod(const FpPoly& a, const FpPoly& f, std::uint64_t p) {
  FpPoly r0 = f, r1 = fp_rem(a, f, p);
  FpPoly s0{}, s1{1};
  while (!r1.empty() && r1.size() > 1) {
    // One long-division step sequence: r0 = q*r1 + r.
    FpPoly q, r = r0;
    trim(r);
    const std::uint64_t lead_inv = inv_mod_p(r1.back(), p);
    q.assign(r.size() >= r1.size() ? r.size() - r1.size() + 1 : 1, 0);
    while (r.size() >= r1.size()) {
      const std::uint64_t c = mulmod_p(r.back(), lead_inv, p);
      const std::size_t shift = r.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) r[shift + i] = (r[shift + i] + p - mulmod_p(c, r1[i], p)) % p;
      trim(r);
    }
    trim(q);
    FpPoly s = fp_sub(s0, fp_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty()) fail(ErrorCode::NotAUnit, "element is zero in the residue field");
  const std::uint64_t c = inv_mod_p(r1[0], p);
  for (auto& v : s1) v = mulmod_p(v, c, p);
  return fp_rem(s1, f, p);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible_mod_p(std::span<const Residue> monic, std::uint64_t p) {
  FpPoly f(monic.begin(), monic.end());
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  // Ben-Or: no irreducible factor of degree i <= m/2 divides f.
  FpPoly x{0, 1};
  FpPoly h = x;
  for (std::size_t i = 1; i <= m / 2; ++i) {
    h = fp_powmod(h, p, f, p);
    FpPoly g = fp_gcd(f, fp_sub(h, x, p), p);
    if (g.size() > 1) return false;
  }
  return true;
}

void require_precision(const PadicCtx& ctx, unsigned needed, const std::string& what) {
  if (ctx.precision() < needed) {
    fail(ErrorCode::PrecisionTooLow, what + " needs precision N >= " + std::to_string(needed) + ", have N = " +
                                         std::to_string(ctx.precision()));
  }
}

PadicCtx::PadicCtx(std::uint64_t p, unsigned N, unsigned m, const std::vector<Residue>& modulus)
    : p_(p), N_(N), m_(m) {
  if (p == 2) fail(ErrorCode::OddPrimeRequired, "p = 2 is not supported");
  if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (N < 1) fail(ErrorCode::InvalidArgument, "precision N must be >= 1");
  if (m < 1 || m > kMaxExtDegree) fail(ErrorCode::InvalidArgument, "extension degree must be in [1, 12]");
  if (p >= (1ULL << 31)) fail(ErrorCode::PrecisionTooLarge, "p must be below 2^31");
  ppow_[0] = 1;
  for (unsigned k = 1; k <= N; ++k) {
    if (k >= ppow_.size() || ppow_[k - 1] > ((1ULL << 62) / p))
      fail(ErrorCode::PrecisionTooLarge, "p^N must stay below 2^62");
    ppow_[k] = ppow_[k - 1] * p;
  }
  q_ = ppow_[N];
  if (modulus.size() != m + 1 || modulus.back() != 1)
    fail(ErrorCode::InvalidArgument, "modulus must be monic of degree m");
  for (unsigned i = 0; i <= m; ++i) mod_[i] = modulus[i] % q_;
  if (m > 1) {
    std::vector<Residue> red(m + 1);
    for (unsigned i = 0; i <= m; ++i) red[i] = modulus[i] % p;
    if (!is_irreducible_mod_p(red, p)) fail(ErrorCode::NotIrreducible, "modulus is reducible mod p");
  } else if (modulus[0] % q_ != 0) {
    // Degree one: any x - c works, but the canonical choice keeps reports stable.
    fail(ErrorCode::InvalidArgument, "degree-one modulus must be x");
  }
}

PadicCtx PadicCtx::create(std::uint64_t p, unsigned N, unsigned m) {
  if (p == 2) fail(ErrorCode::OddPrimeRequired, "p = 2 is not supported");
  if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (m < 1 || m > kMaxExtDegree) fail(ErrorCode::InvalidArgument, "extension degree must be in [1, 12]");
  if (m == 1) return PadicCtx(p, N, 1, {0, 1});
  // Enumerate monic polynomials by the base-p integer whose most significant
  // digit is the x^{m-1} coefficient.
  std::vector<Residue> cand(m + 1, 0);
  cand[m] = 1;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < m; ++i) total *= p;
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t v = k;
    for (unsigned i = 0; i < m; ++i) {
      cand[i] = v % p;
      v /= p;
    }
    if (cand[0] == 0) continue;
    if (is_irreducible_mod_p(cand, p)) return PadicCtx(p, N, m, cand);
  }
  fail(ErrorCode::InvalidArgument, "no irreducible polynomial found");
}

PadicCtx PadicCtx::from_modulus(std::uint64_t p, unsigned N, const std::vector<Residue>& modulus) {
  if (modulus.size() < 2) fail(ErrorCode::InvalidArgument, "modulus must have degree >= 1");
  return PadicCtx(p, N, static_cast<unsigned>(modulus.size() - 1), modulus);
}

PadicCtx PadicCtx::with_precision(unsigned N) const {
  std::vector<Residue> mod(mod_.begin(), mod_.begin() + m_ + 1);
  for (auto& c : mod) c %= p_;
  mod[m_] = 1;
  return PadicCtx(p_, N, m_, mod);
}

Residue PadicCtx::reduce(std::int64_t v) const noexcept {
  const auto q = static_cast<std::int64_t>(q_);
  std::int64_t r = v % q;
  if (r < 0) r += q;
  return static_cast<Residue>(r);
}

ExtElem PadicCtx::from_int(std::int64_t v) const {
  ExtElem e(m_);
  e[0] = reduce(v);
  return e;
}

ExtElem PadicCtx::from_coeffs(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() > m_) fail(ErrorCode::InvalidArgument, "too many coefficients for extension element");
  ExtElem e(m_);
  for (std::size_t i = 0; i < coeffs.size(); ++i) e[i] = reduce(coeffs[i]);
  return e;
}

ExtElem PadicCtx::add(const ExtElem& a, const ExtElem& b) const {
  ExtElem r(m_);
  for (unsigned i = 0; i < m_; ++i) r[i] = add_r(a[i], b[i]);
  return r;
}

ExtElem PadicCtx::sub(const ExtElem& a, const ExtElem& b) const {
  ExtElem r(m_);
  for (unsigned i = 0; i < m_; ++i) r[i] = sub_r(a[i], b[i]);
  return r;
}

ExtElem PadicCtx::neg(const ExtElem& a) const {
  ExtElem r(m_);
  for (unsigned i = 0; i < m_; ++i) r[i] = a[i] == 0 ? 0 : q_ - a[i];
  return r;
}

ExtElem PadicCtx::scale(const ExtElem& a, Residue k) const {
  ExtElem r(m_);
  for (unsigned i = 0; i < m_; ++i) r[i] = mul_r(a[i], k);
  return r;
}

ExtElem PadicCtx::mul(const ExtElem& a, const ExtElem& b) const {
  ExtElem r(m_);
  if (m_ == 1) {
    r[0] = mul_r(a[0], b[0]);
    return r;
  }
  std::array<Residue, 2 * kMaxExtDegree> t{};
  for (unsigned i = 0; i < m_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < m_; ++j) t[i + j] = add_r(t[i + j], mul_r(a[i], b[j]));
  }
  for (unsigned k = 2 * m_ - 2; k >= m_; --k) {
    const Residue c = t[k];
    if (c == 0) continue;
    for (unsigned i = 0; i < m_; ++i) t[k - m_ + i] = sub_r(t[k - m_ + i], mul_r(c, mod_[i]));
  }
  for (unsigned i = 0; i < m_; ++i) r[i] = t[i];
  return r;
}

ExtElem PadicCtx::pow(const ExtElem& a, std::uint64_t e) const {
  ExtElem r = one();
  ExtElem b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

ExtElem PadicCtx::frobenius(const ExtElem& a, unsigned k) const {
  ExtElem r = a;
  for (unsigned i = 0; i < k; ++i) r = pow(r, p_);
  return r;
}

int PadicCtx::valuation(const ExtElem& x) const {
  int best = static_cast<int>(N_);
  for (unsigned i = 0; i < m_; ++i) {
    Residue v = x[i];
    if (v == 0) continue;
    int k = 0;
    while (v % p_ == 0) {
      v /= p_;
      ++k;
    }
    best = std::min(best, k);
  }
  return best;
}

ExtElem PadicCtx::teichmueller(const ExtElem& u) const {
  // Each pass through x -> x^{p^m} gains one p-adic digit.
  ExtElem x = u;
  for (unsigned i = 0; i < N_; ++i) x = frobenius(x, m_);
  return x;
}

ExtElem PadicCtx::unit_inverse(const ExtElem& x) const {
  if (valuation(x) != 0) fail(ErrorCode::NotAUnit, "element has positive valuation");
  ExtElem y(m_);
  if (m_ == 1) {
    y[0] = inv_mod_p(x[0] % p_, p_);
  } else {
    FpPoly f(m_ + 1), a(m_);
    for (unsigned i = 0; i <= m_; ++i) f[i] = mod_[i] % p_;
    for (unsigned i = 0; i < m_; ++i) a[i] = x[i] % p_;
    trim(a);
    FpPoly s = fp_inverse_mod(a, f, p_);
    for (std::size_t i = 0; i < s.size(); ++i) y[i] = s[i];
  }
  // Newton: y <- y (2 - x y), doubling the number of correct digits.
  const ExtElem two = from_int(2);
  for (unsigned correct = 1; correct < N_; correct *= 2) y = mul(y, sub(two, mul(x, y)));
  return y;
}

ExtElem PadicCtx::truncate(const ExtElem& x, unsigned k) const {
  ExtElem r(m_);
  const Residue pk = ppow_[std::min(k, N_)];
  for (unsigned i = 0; i < m_; ++i) r[i] = x[i] % pk;
  return r;
}

std::string PadicCtx::describe() const {
  std::ostringstream os;
  os << "Z_" << p_ << "^(" << m_ << ") mod " << p_ << "^" << N_;
  return os.str();
}

}  // namespace dworklab
