#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dworklab/error.hpp"

namespace dworklab {

using Residue = std::uint64_t;

inline constexpr unsigned kMaxExtDegree = 12;

/// Element of (Z/p^N)[x]/(modulus): m residues, constant coefficient first.
/// Carries no context; all arithmetic goes through a PadicCtx.
class ExtElem {
 public:
  ExtElem() = default;
  explicit ExtElem(unsigned degree) : degree_(degree) {}

  unsigned degree() const noexcept { return degree_; }
  Residue operator[](std::size_t i) const noexcept { return c_[i]; }
  Residue& operator[](std::size_t i) noexcept { return c_[i]; }
  std::span<const Residue> coeffs() const noexcept { return {c_.data(), degree_}; }

  bool is_zero() const noexcept {
    for (unsigned i = 0; i < degree_; ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const ExtElem& a, const ExtElem& b) noexcept {
    if (a.degree_ != b.degree_) return false;
    for (unsigned i = 0; i < a.degree_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

 private:
  std::array<Residue, kMaxExtDegree> c_{};
  unsigned degree_ = 1;
};

/// Truncated unramified p-adic ring Z_p^(m) / p^N.
///
/// The modulus is monic of degree m and irreducible mod p. For m = 1 it is the
/// variable itself and elements are plain residues mod p^N. Values are
/// immutable after construction and cheap to copy.
class PadicCtx {
 public:
  /// Picks the lexicographically smallest monic irreducible of degree m over
  /// F_p (coefficients compared from x^{m-1} down to x^0), lifted with
  /// coefficients in [0, p).
  static PadicCtx create(std::uint64_t p, unsigned N, unsigned m = 1);

  /// Rebuilds a context from a serialized modulus (m + 1 coefficients, low
  /// degree first, leading coefficient 1). Irreducibility mod p is re-checked.
  static PadicCtx from_modulus(std::uint64_t p, unsigned N, const std::vector<Residue>& modulus);

  std::uint64_t p() const noexcept { return p_; }
  unsigned precision() const noexcept { return N_; }
  unsigned degree() const noexcept { return m_; }
  /// p^N.
  Residue modulus_value() const noexcept { return q_; }
  /// p^k for k <= N.
  Residue p_power(unsigned k) const noexcept { return ppow_[k]; }
  /// Defining polynomial, m + 1 coefficients, constant term first.
  std::span<const Residue> defining_poly() const noexcept { return {mod_.data(), m_ + 1}; }

  /// Same ring with a different precision (modulus is reused).
  PadicCtx with_precision(unsigned N) const;

  ExtElem zero() const { return ExtElem(m_); }
  ExtElem one() const { return from_int(1); }
  ExtElem from_int(std::int64_t v) const;
  ExtElem from_coeffs(std::span<const std::int64_t> coeffs) const;
  Residue reduce(std::int64_t v) const noexcept;

  Residue add_r(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Residue sub_r(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + q_ - b; }
  Residue mul_r(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % q_);
  }

  ExtElem add(const ExtElem& a, const ExtElem& b) const;
  ExtElem sub(const ExtElem& a, const ExtElem& b) const;
  ExtElem neg(const ExtElem& a) const;
  ExtElem mul(const ExtElem& a, const ExtElem& b) const;
  ExtElem scale(const ExtElem& a, Residue k) const;
  ExtElem pow(const ExtElem& a, std::uint64_t e) const;
  /// a^{p^k}, the k-th Frobenius power on Teichmueller-anchored points.
  ExtElem frobenius(const ExtElem& a, unsigned k = 1) const;

  /// Largest k <= N with p^k | x. Returns N when x = 0 mod p^N, which stands
  /// for "at least N": truncation cannot see further.
  int valuation(const ExtElem& x) const;
  bool is_unit(const ExtElem& x) const { return valuation(x) == 0; }

  /// Unique x with x^{p^m} = x and x = u mod p.
  ExtElem teichmueller(const ExtElem& u) const;
  /// Inverse mod p^N of a unit: field inverse in F_{p^m}, then Newton lifting.
  ExtElem unit_inverse(const ExtElem& x) const;

  /// Reduction of x mod p^k (k <= N), kept as an element of this ring.
  ExtElem truncate(const ExtElem& x, unsigned k) const;

  std::string describe() const;

  friend bool operator==(const PadicCtx& a, const PadicCtx& b) noexcept {
    if (a.p_ != b.p_ || a.N_ != b.N_ || a.m_ != b.m_) return false;
    for (unsigned i = 0; i <= a.m_; ++i)
      if (a.mod_[i] != b.mod_[i]) return false;
    return true;
  }

 private:
  PadicCtx(std::uint64_t p, unsigned N, unsigned m, const std::vector<Residue>& modulus);

  std::uint64_t p_ = 3;
  unsigned N_ = 1;
  unsigned m_ = 1;
  Residue q_ = 3;
  std::array<Residue, kMaxExtDegree + 1> mod_{};
  std::array<Residue, 64> ppow_{};
};

bool is_prime(std::uint64_t n);

/// Irreducibility of a monic polynomial over F_p (coefficients low degree
/// first, values already reduced mod p).
bool is_irreducible_mod_p(std::span<const Residue> monic, std::uint64_t p);

/// Requires ctx.precision() >= needed, naming the check that needs it.
void require_precision(const PadicCtx& ctx, unsigned needed, const std::string& what);

}  // namespace dworklab
