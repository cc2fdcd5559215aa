#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dworklab/padic.hpp"

namespace dworklab {

/// Dense univariate Laurent polynomial in t over a PadicCtx.
///
/// This is the working representation for everything evaluated at a point:
/// master polynomials specialized at z = a are dense in t, so they are
/// powered and divided here rather than in the sparse map form.
class UPoly {
 public:
  explicit UPoly(PadicCtx ctx) : ctx_(std::move(ctx)) {}
  /// `flat` holds consecutive coefficients starting at t^low, m residues each.
  UPoly(PadicCtx ctx, long low, std::vector<Residue> flat);

  static UPoly constant(const PadicCtx& ctx, const ExtElem& c);
  static UPoly monomial(const PadicCtx& ctx, long k, const ExtElem& c);
  /// t - root.
  static UPoly linear(const PadicCtx& ctx, const ExtElem& root);

  const PadicCtx& ctx() const noexcept { return ctx_; }
  bool is_zero() const noexcept { return c_.empty(); }
  long low() const noexcept { return low_; }
  long high() const noexcept { return low_ + static_cast<long>(length()) - 1; }
  std::size_t length() const noexcept { return c_.size() / ctx_.degree(); }
  std::span<const Residue> flat() const noexcept { return c_; }
  ExtElem coeff(long k) const;

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly scaled(const ExtElem& k) const;

  UPoly pow(std::uint64_t e) const;
  /// t -> t^d.
  UPoly substitute_power(std::uint64_t d) const;
  /// t -> t^{p^k}.
  UPoly frobenius_t(unsigned k) const;
  /// Exact quotient by (t - root); NotDivisible if the remainder is nonzero.
  UPoly div_linear(const ExtElem& root) const;
  UPoly derivative() const;
  ExtElem evaluate(const ExtElem& t) const;
  /// Minimum coefficient valuation (N for the zero polynomial).
  int min_valuation() const;

  friend bool operator==(const UPoly& a, const UPoly& b) {
    return a.ctx_ == b.ctx_ && a.low_ == b.low_ && a.c_ == b.c_;
  }

 private:
  void normalize();

  PadicCtx ctx_;
  long low_ = 0;
  std::vector<Residue> c_;
};

namespace detail {

/// Product of two dense coefficient blocks (m residues per coefficient).
/// Picks the schoolbook or Kronecker path; both give identical results.
std::vector<Residue> dense_mul(const PadicCtx& ctx, std::span<const Residue> a, std::span<const Residue> b);
std::vector<Residue> dense_mul_schoolbook(const PadicCtx& ctx, std::span<const Residue> a,
                                          std::span<const Residue> b);
std::vector<Residue> dense_mul_kronecker(const PadicCtx& ctx, std::span<const Residue> a,
                                         std::span<const Residue> b);

inline constexpr std::size_t kKroneckerDegree = 512;

}  // namespace detail

}  // namespace dworklab
