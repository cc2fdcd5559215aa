#include <gmpxx.h>

#include <algorithm>
#include <map>

#include "dworklab/laurent.hpp"

namespace dworklab {

namespace {

// C(e, k) mod q for k = 0..e, through exact big integers.
std::vector<Residue> binomial_row(const PadicCtx& ctx, std::uint64_t e) {
  std::vector<Residue> row(e + 1);
  mpz_class c = 1, q;
  mpz_set_ui(q.get_mpz_t(), ctx.modulus_value());
  for (std::uint64_t k = 0; k <= e; ++k) {
    mpz_class r = c % q;
    row[k] = mpz_get_ui(r.get_mpz_t());
    c *= static_cast<unsigned long>(e - k);
    c /= static_cast<unsigned long>(k + 1);
  }
  return row;
}

}  // namespace

FactoredPoly::FactoredPoly(PadicCtx ctx, int n) : ctx_(std::move(ctx)), n_(n), scalar_(ctx_.one()) {}

FactoredPoly FactoredPoly::master(const PadicCtx& ctx, int n, std::uint64_t e) {
  FactoredPoly f(ctx, n);
  for (int i = 0; i < n; ++i) f.merge(LinearFactor{i, ctx.zero()}, e);
  return f;
}

void FactoredPoly::merge(const LinearFactor& f, std::uint64_t e) {
  if (e == 0) return;
  for (auto& [g, k] : factors_) {
    if (g.same_as(f)) {
      k += e;
      return;
    }
  }
  factors_.emplace_back(f, e);
}

std::uint64_t FactoredPoly::multiplicity(int z_index) const {
  for (const auto& [f, e] : factors_)
    if (f.z_index == z_index) return e;
  return 0;
}

std::uint64_t FactoredPoly::degree() const {
  std::uint64_t d = 0;
  for (const auto& fe : factors_) d += fe.second;
  return d;
}

bool FactoredPoly::has_symbolic_roots() const {
  return std::any_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.first.z_index >= 0; });
}

FactoredPoly FactoredPoly::times(const FactoredPoly& o) const {
  if (!(ctx_ == o.ctx_) || n_ != o.n_) fail(ErrorCode::CtxMismatch, "factored product");
  FactoredPoly r = *this;
  r.scalar_ = ctx_.mul(scalar_, o.scalar_);
  for (const auto& [f, e] : o.factors_) r.merge(f, e);
  return r;
}

FactoredPoly FactoredPoly::times_linear(const LinearFactor& f, std::uint64_t e) const {
  FactoredPoly r = *this;
  r.merge(f, e);
  return r;
}

FactoredPoly FactoredPoly::pow(std::uint64_t e) const {
  FactoredPoly r(ctx_, n_);
  r.scalar_ = ctx_.pow(scalar_, e);
  if (e == 0) return r;
  for (const auto& [f, k] : factors_) r.merge(f, k * e);
  return r;
}

FactoredPoly FactoredPoly::scaled(const ExtElem& k) const {
  FactoredPoly r = *this;
  r.scalar_ = ctx_.mul(scalar_, k);
  return r;
}

FactoredPoly FactoredPoly::divide_z(int z_index) const {
  FactoredPoly r = *this;
  for (auto it = r.factors_.begin(); it != r.factors_.end(); ++it) {
    if (it->first.z_index == z_index) {
      if (--it->second == 0) r.factors_.erase(it);
      return r;
    }
  }
  fail(ErrorCode::NotDivisible, "factor t - z_" + std::to_string(z_index + 1) + " is absent");
}

FactoredPoly FactoredPoly::divide_root(const ExtElem& root) const {
  FactoredPoly r = *this;
  const LinearFactor target{-1, root};
  for (auto it = r.factors_.begin(); it != r.factors_.end(); ++it) {
    if (it->first.same_as(target)) {
      if (--it->second == 0) r.factors_.erase(it);
      return r;
    }
  }
  fail(ErrorCode::NotDivisible, "scalar linear factor is absent");
}

FactoredPoly FactoredPoly::derivative_z(int v) const {
  const std::uint64_t e = multiplicity(v);
  if (e == 0) {
    FactoredPoly zero(ctx_, n_);
    zero.scalar_ = ctx_.zero();
    return zero;
  }
  const Residue er = static_cast<Residue>(e % ctx_.modulus_value());
  ExtElem k = ctx_.zero();
  k[0] = er;
  return divide_z(v).scaled(ctx_.neg(k));
}

FactoredPoly FactoredPoly::at(std::span<const ExtElem> a) const {
  if (static_cast<int>(a.size()) != n_) fail(ErrorCode::InvalidArgument, "point has wrong arity");
  FactoredPoly r(ctx_, 0);
  r.scalar_ = scalar_;
  for (const auto& [f, e] : factors_) {
    LinearFactor g{-1, f.z_index >= 0 ? a[static_cast<std::size_t>(f.z_index)] : f.root};
    r.merge(g, e);
  }
  return r;
}

UPoly FactoredPoly::expand_dense() const {
  if (has_symbolic_roots()) fail(ErrorCode::InvalidArgument, "dense expansion needs scalar roots");
  // Factors sharing a multiplicity are multiplied first and powered once.
  std::map<std::uint64_t, UPoly> by_mult;
  for (const auto& [f, e] : factors_) {
    auto it = by_mult.find(e);
    UPoly lin = UPoly::linear(ctx_, f.root);
    if (it == by_mult.end())
      by_mult.emplace(e, lin);
    else
      it->second = it->second * lin;
  }
  UPoly result = UPoly::constant(ctx_, scalar_);
  for (const auto& [e, base] : by_mult) result = result * base.pow(e);
  return result;
}

LaurentPoly FactoredPoly::expand() const {
  double estimate = 1.0;
  std::uint64_t scalar_degree = 0;
  for (const auto& [f, e] : factors_) {
    if (f.z_index >= 0)
      estimate *= static_cast<double>(e + 1);
    else
      scalar_degree += e;
  }
  estimate *= static_cast<double>(scalar_degree + 1);
  if (estimate > static_cast<double>(kTermCap))
    fail(ErrorCode::SizeCapExceeded, "symbolic expansion would exceed the term cap");

  FactoredPoly scalar_part(ctx_, 0);
  scalar_part.scalar_ = scalar_;
  for (const auto& [f, e] : factors_)
    if (f.z_index < 0) scalar_part.merge(f, e);
  const UPoly dense = scalar_part.expand_dense();

  std::vector<std::pair<std::vector<int>, ExtElem>> terms;
  for (long k = dense.low(); !dense.is_zero() && k <= dense.high(); ++k) {
    ExtElem c = dense.coeff(k);
    if (c.is_zero()) continue;
    std::vector<int> exps(static_cast<std::size_t>(n_ + 1), 0);
    exps[0] = static_cast<int>(k);
    terms.emplace_back(std::move(exps), c);
  }
  LaurentPoly result = LaurentPoly::from_terms(ctx_, 1, n_, terms);

  for (const auto& [f, e] : factors_) {
    if (f.z_index < 0) continue;
    // (t - z)^e = sum_k C(e,k) t^k (-z)^{e-k}
    const auto row = binomial_row(ctx_, e);
    std::vector<std::pair<std::vector<int>, ExtElem>> bt;
    for (std::uint64_t k = 0; k <= e; ++k) {
      ExtElem c = ctx_.zero();
      c[0] = row[k];
      if ((e - k) % 2 == 1) c = ctx_.neg(c);
      if (c.is_zero()) continue;
      std::vector<int> exps(static_cast<std::size_t>(n_ + 1), 0);
      exps[0] = static_cast<int>(k);
      exps[static_cast<std::size_t>(f.z_index) + 1] = static_cast<int>(e - k);
      bt.emplace_back(std::move(exps), c);
    }
    result = poly_mul(result, LaurentPoly::from_terms(ctx_, 1, n_, bt));
  }
  return result;
}

}  // namespace dworklab
