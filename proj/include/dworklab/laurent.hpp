#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dworklab/factored.hpp"
#include "dworklab/padic.hpp"
#include "dworklab/upoly.hpp"

namespace dworklab {

/// Packed exponent vector: 8 slots of 16-bit biased exponents, variable 0 in
/// the most significant slot. t-variables come first, then z_0, z_1, ...
/// Unsigned comparison of keys is lexicographic order on exponent vectors.
using MonoKey = unsigned __int128;

inline constexpr int kMaxVars = 8;
inline constexpr int kExpBias = 32768;
inline constexpr int kMinExp = -kExpBias;
inline constexpr int kMaxExp = kExpBias - 1;
/// Soft limit on the number of stored terms for symbolic computations.
inline constexpr std::size_t kTermCap = 10'000'000;

MonoKey pack_exponents(std::span<const int> exps);
int key_exponent(MonoKey key, int var);
void unpack_exponents(MonoKey key, std::span<int> out);

/// Bounding box of the t-support; exact Newton interval when r = 1.
struct TBox {
  std::vector<int> lo, hi;
};

struct LeadingTerm {
  ExtElem coeff;
  std::vector<int> exponents;
};

/// Sparse Laurent polynomial in t_0..t_{r-1}, z_0..z_{n-1} over a PadicCtx.
///
/// Terms are kept sorted by key with no zero coefficients, so equality is
/// structural. An optional factored form is carried along by products and
/// powers of master polynomials; it never changes the value.
class LaurentPoly {
 public:
  LaurentPoly(PadicCtx ctx, int r, int n);

  static LaurentPoly constant(const PadicCtx& ctx, int r, int n, const ExtElem& c);
  static LaurentPoly monomial(const PadicCtx& ctx, int r, int n, std::span<const int> exps, const ExtElem& c);
  static LaurentPoly t_var(const PadicCtx& ctx, int r, int n, int i);
  static LaurentPoly z_var(const PadicCtx& ctx, int r, int n, int i);
  /// Sums duplicate exponent vectors.
  static LaurentPoly from_terms(const PadicCtx& ctx, int r, int n,
                                const std::vector<std::pair<std::vector<int>, ExtElem>>& terms);
  /// Expands a factored product (r = 1) and keeps the factored form attached.
  static LaurentPoly from_factored(const FactoredPoly& f);
  static LaurentPoly from_dense(const UPoly& f);

  const PadicCtx& ctx() const noexcept { return ctx_; }
  int r() const noexcept { return r_; }
  int n() const noexcept { return n_; }
  int nvars() const noexcept { return r_ + n_; }
  std::size_t size() const noexcept { return keys_.size(); }
  bool is_zero() const noexcept { return keys_.empty(); }
  std::span<const MonoKey> keys() const noexcept { return keys_; }
  std::vector<int> exponents(std::size_t k) const;
  ExtElem coeff(std::size_t k) const;
  /// Coefficient of the given exponent vector (zero if absent).
  ExtElem coefficient(std::span<const int> exps) const;
  const std::optional<FactoredPoly>& factored() const noexcept { return factored_; }
  int min_valuation() const;
  /// Dense form of a polynomial with r = 1 and n = 0.
  UPoly to_dense() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly scaled(const ExtElem& k) const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.ctx_ == b.ctx_ && a.r_ == b.r_ && a.n_ == b.n_ && a.keys_ == b.keys_ && a.coeffs_ == b.coeffs_;
  }

 private:
  friend class TermBuilder;

  PadicCtx ctx_;
  int r_ = 0;
  int n_ = 0;
  std::vector<MonoKey> keys_;
  std::vector<Residue> coeffs_;
  std::optional<FactoredPoly> factored_;
};

LaurentPoly poly_mul(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly poly_pow(const LaurentPoly& f, std::uint64_t e);
/// Every exponent multiplied by p^k (all variables).
LaurentPoly frobenius_sub(const LaurentPoly& f, unsigned k);
/// Coefficient of t^v as a polynomial in z (r = 0).
LaurentPoly coeff_t(const LaurentPoly& f, std::span<const int> v);
LaurentPoly partial_z(const LaurentPoly& f, int i);
LaurentPoly partial_t(const LaurentPoly& f, int i);
/// Substitutes z = a; the result has n = 0.
LaurentPoly eval_z(const LaurentPoly& f, std::span<const ExtElem> a);
/// eval_z for r = 1, returned densely (through the factored form when present).
UPoly eval_z_dense(const LaurentPoly& f, std::span<const ExtElem> a);
/// Exact quotient by (t - z_i), r = 1.
LaurentPoly synth_div_linear(const LaurentPoly& f, int z_index);
/// Exact quotient by (t - root), r = 1.
LaurentPoly synth_div_linear(const LaurentPoly& f, const ExtElem& root);
TBox newton_box(const LaurentPoly& f);
/// Term with the lexicographically largest exponent vector.
LeadingTerm leading_term_lex(const LaurentPoly& f);
/// Full evaluation at t = tv, z = zv.
ExtElem evaluate(const LaurentPoly& f, std::span<const ExtElem> tv, std::span<const ExtElem> zv);
/// Total z-degree of every term, or -1 if not homogeneous in z.
int z_homogeneous_degree(const LaurentPoly& f);

}  // namespace dworklab
