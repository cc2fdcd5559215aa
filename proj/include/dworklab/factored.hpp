#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dworklab/padic.hpp"
#include "dworklab/upoly.hpp"

namespace dworklab {

class LaurentPoly;

/// t - z_i when z_index >= 0, otherwise t - root.
struct LinearFactor {
  int z_index = -1;
  ExtElem root;

  bool same_as(const LinearFactor& o) const { return z_index == o.z_index && (z_index >= 0 || root == o.root); }
};

/// scalar * prod (t - root_k)^{e_k}, the product shape of master polynomials.
///
/// Derivatives in z_v follow from the chain rule on a single factor, which is
/// how the point-evaluated pipeline avoids symbolic z-derivatives.
class FactoredPoly {
 public:
  using Factor = std::pair<LinearFactor, std::uint64_t>;

  /// The constant 1 in n z-variables.
  FactoredPoly(PadicCtx ctx, int n);

  /// prod_{i < n} (t - z_i)^e.
  static FactoredPoly master(const PadicCtx& ctx, int n, std::uint64_t e);

  const PadicCtx& ctx() const noexcept { return ctx_; }
  int n() const noexcept { return n_; }
  const ExtElem& scalar() const noexcept { return scalar_; }
  std::span<const Factor> factors() const noexcept { return factors_; }
  std::uint64_t multiplicity(int z_index) const;
  std::uint64_t degree() const;
  bool has_symbolic_roots() const;

  FactoredPoly times(const FactoredPoly& o) const;
  FactoredPoly times_linear(const LinearFactor& f, std::uint64_t e = 1) const;
  FactoredPoly pow(std::uint64_t e) const;
  FactoredPoly scaled(const ExtElem& k) const;
  /// Removes one (t - z_i); NotDivisible if absent.
  FactoredPoly divide_z(int z_index) const;
  /// Removes one (t - root) for a scalar root; NotDivisible if absent.
  FactoredPoly divide_root(const ExtElem& root) const;
  /// D_{z_v}: -e_v * F / (t - z_v); the zero polynomial when z_v is absent.
  FactoredPoly derivative_z(int v) const;
  /// Substitutes z = a; the result has only scalar roots and n = 0.
  FactoredPoly at(std::span<const ExtElem> a) const;

  /// Sparse expansion in (t; z_0..z_{n-1}).
  LaurentPoly expand() const;
  /// Dense expansion; requires all roots to be scalars.
  UPoly expand_dense() const;

 private:
  void merge(const LinearFactor& f, std::uint64_t e);

  PadicCtx ctx_;
  int n_ = 0;
  ExtElem scalar_;
  std::vector<Factor> factors_;
};

}  // namespace dworklab
