#pragma once

// Independent reference implementations used only by the tests. They share
// nothing with the library beyond the ExtElem container: integer arithmetic
// runs through GMP and polynomial products through plain nested loops.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "dworklab/laurent.hpp"
#include "dworklab/padic.hpp"

namespace oracle {

using dworklab::ExtElem;
using dworklab::Residue;

inline mpz_class to_mpz(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

inline std::uint64_t from_mpz(const mpz_class& z) {
  std::uint64_t v = 0;
  std::size_t count = 0;
  mpz_export(&v, &count, -1, sizeof(v), 0, 0, z.get_mpz_t());
  return v;
}

inline mpz_class mod_pow(std::uint64_t p, unsigned N) {
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, N);
  return q;
}

// Ring element as a coefficient vector of big integers, reduced mod q and
// mod the monic modulus.
struct BigRing {
  std::uint64_t p;
  unsigned N;
  std::vector<mpz_class> modulus;  // m + 1, constant first
  mpz_class q;

  BigRing(std::uint64_t p_, unsigned N_, std::span<const Residue> mod) : p(p_), N(N_), q(mod_pow(p_, N_)) {
    for (Residue r : mod) modulus.push_back(to_mpz(r));
  }
  unsigned m() const { return static_cast<unsigned>(modulus.size() - 1); }

  std::vector<mpz_class> lift(const ExtElem& e) const {
    std::vector<mpz_class> v(m());
    for (unsigned i = 0; i < m(); ++i) v[i] = to_mpz(e[i]);
    return v;
  }

  ExtElem lower(std::vector<mpz_class> v) const {
    const unsigned deg = m();
    for (std::size_t d = v.size(); d-- > deg;) {
      mpz_class c = v[d];
      for (unsigned i = 0; i <= deg; ++i) v[d - deg + i] -= c * modulus[i];
    }
    ExtElem e(deg);
    for (unsigned i = 0; i < deg; ++i) {
      mpz_class r = v[i] % q;
      if (r < 0) r += q;
      e[i] = from_mpz(r);
    }
    return e;
  }

  ExtElem mul(const ExtElem& a, const ExtElem& b) const {
    auto x = lift(a), y = lift(b);
    std::vector<mpz_class> r(2 * m() - 1, 0);
    for (unsigned i = 0; i < m(); ++i)
      for (unsigned j = 0; j < m(); ++j) r[i + j] += x[i] * y[j];
    return lower(std::move(r));
  }

  ExtElem add(const ExtElem& a, const ExtElem& b) const {
    auto x = lift(a), y = lift(b);
    for (unsigned i = 0; i < m(); ++i) x[i] += y[i];
    return lower(std::move(x));
  }

  ExtElem pow(ExtElem a, std::uint64_t e) const {
    ExtElem r(m());
    r[0] = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  int valuation(const ExtElem& a) const {
    int best = static_cast<int>(N);
    for (unsigned i = 0; i < m(); ++i) {
      mpz_class v = to_mpz(a[i]);
      if (v == 0) continue;
      int k = 0;
      while (v % p == 0) {
        v /= p;
        ++k;
      }
      best = std::min(best, k);
    }
    return best;
  }
};

// Monic irreducibility over F_p by trial division with every monic
// polynomial of degree 1..m/2.
inline bool irreducible_by_search(const std::vector<Residue>& f, std::uint64_t p) {
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  auto rem_is_zero = [&](const std::vector<Residue>& g) {
    std::vector<std::int64_t> r(f.begin(), f.end());
    const unsigned dg = static_cast<unsigned>(g.size() - 1);
    const auto P = static_cast<std::int64_t>(p);
    for (unsigned d = m; d >= dg && d <= m; --d) {
      const std::int64_t c = ((r[d] % P) + P) % P;
      if (c != 0)
        for (unsigned i = 0; i <= dg; ++i)
          r[d - dg + i] = ((r[d - dg + i] - c * static_cast<std::int64_t>(g[i])) % P + P) % P;
      if (d == 0) break;
    }
    for (unsigned i = 0; i < dg; ++i)
      if (((r[i] % P) + P) % P != 0) return false;
    return true;
  };
  for (unsigned d = 1; d <= m / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t k = 0; k < count; ++k) {
      std::vector<Residue> g(d + 1);
      std::uint64_t x = k;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = x % p;
        x /= p;
      }
      g[d] = 1;
      if (rem_is_zero(g)) return false;
    }
  }
  return true;
}

// Dense product of coefficient lists by the defining double sum, one ring
// multiplication per pair.
inline std::vector<ExtElem> convolve(const dworklab::PadicCtx& ctx, const std::vector<ExtElem>& a,
                                     const std::vector<ExtElem>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<ExtElem> c(a.size() + b.size() - 1, ctx.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = ctx.add(c[i + j], ctx.mul(a[i], b[j]));
  return c;
}

inline ExtElem random_elem(const dworklab::PadicCtx& ctx, std::mt19937_64& rng) {
  ExtElem e(ctx.degree());
  for (unsigned i = 0; i < ctx.degree(); ++i) e[i] = rng() % ctx.modulus_value();
  return e;
}

inline ExtElem random_unit(const dworklab::PadicCtx& ctx, std::mt19937_64& rng) {
  for (;;) {
    ExtElem e = random_elem(ctx, rng);
    if (ctx.is_unit(e)) return e;
  }
}

// Dense multivariate polynomial over a box of exponents. Products are the
// defining double sum over all cells; nothing is shared with the sparse code.
struct DensePoly {
  const dworklab::PadicCtx* ctx;
  std::vector<int> lo, len;
  std::vector<ExtElem> cells;

  std::size_t index(const std::vector<int>& e) const {
    std::size_t idx = 0;
    for (std::size_t v = 0; v < lo.size(); ++v) idx = idx * static_cast<std::size_t>(len[v]) + static_cast<std::size_t>(e[v] - lo[v]);
    return idx;
  }
  std::vector<int> exps_of(std::size_t idx) const {
    std::vector<int> e(lo.size());
    for (std::size_t v = lo.size(); v-- > 0;) {
      e[v] = lo[v] + static_cast<int>(idx % static_cast<std::size_t>(len[v]));
      idx /= static_cast<std::size_t>(len[v]);
    }
    return e;
  }

  static DensePoly box(const dworklab::PadicCtx& ctx, std::vector<int> lo, std::vector<int> len) {
    std::size_t total = 1;
    for (int l : len) total *= static_cast<std::size_t>(l);
    return DensePoly{&ctx, std::move(lo), std::move(len), std::vector<ExtElem>(total, ctx.zero())};
  }

  static DensePoly from(const dworklab::PadicCtx& ctx, const dworklab::LaurentPoly& f) {
    const int nv = f.nvars();
    std::vector<int> lo(static_cast<std::size_t>(nv), 0), hi(static_cast<std::size_t>(nv), 0);
    for (std::size_t k = 0; k < f.size(); ++k) {
      auto e = f.exponents(k);
      for (int v = 0; v < nv; ++v) {
        if (k == 0 || e[v] < lo[v]) lo[v] = e[v];
        if (k == 0 || e[v] > hi[v]) hi[v] = e[v];
      }
    }
    std::vector<int> len(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) len[v] = hi[v] - lo[v] + 1;
    DensePoly d = box(ctx, lo, len);
    for (std::size_t k = 0; k < f.size(); ++k) d.cells[d.index(f.exponents(k))] = f.coeff(k);
    return d;
  }

  dworklab::LaurentPoly to_sparse(int r, int n) const {
    std::vector<std::pair<std::vector<int>, ExtElem>> terms;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (!cells[i].is_zero()) terms.emplace_back(exps_of(i), cells[i]);
    return dworklab::LaurentPoly::from_terms(*ctx, r, n, terms);
  }

  DensePoly times(const DensePoly& o) const {
    std::vector<int> nlo(lo.size()), nlen(lo.size());
    for (std::size_t v = 0; v < lo.size(); ++v) {
      nlo[v] = lo[v] + o.lo[v];
      nlen[v] = len[v] + o.len[v] - 1;
    }
    DensePoly out = box(*ctx, nlo, nlen);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].is_zero()) continue;
      auto ei = exps_of(i);
      for (std::size_t j = 0; j < o.cells.size(); ++j) {
        if (o.cells[j].is_zero()) continue;
        auto ej = o.exps_of(j);
        for (std::size_t v = 0; v < ei.size(); ++v) ej[v] += ei[v];
        auto& dst = out.cells[out.index(ej)];
        dst = ctx->add(dst, ctx->mul(cells[i], o.cells[j]));
      }
    }
    return out;
  }

  DensePoly plus(const DensePoly& o) const {
    std::vector<int> nlo(lo.size()), nlen(lo.size());
    for (std::size_t v = 0; v < lo.size(); ++v) {
      nlo[v] = std::min(lo[v], o.lo[v]);
      nlen[v] = std::max(lo[v] + len[v], o.lo[v] + o.len[v]) - nlo[v];
    }
    DensePoly out = box(*ctx, nlo, nlen);
    for (const DensePoly* src : {this, &o})
      for (std::size_t i = 0; i < src->cells.size(); ++i) {
        auto& dst = out.cells[out.index(src->exps_of(i))];
        dst = ctx->add(dst, src->cells[i]);
      }
    return out;
  }

  // Coefficient of t^v (first variable) as a polynomial in the rest.
  DensePoly coeff_first(int v) const {
    std::vector<int> nlo(lo.begin() + 1, lo.end()), nlen(len.begin() + 1, len.end());
    DensePoly out = box(*ctx, nlo, nlen);
    if (v < lo[0] || v >= lo[0] + len[0]) {
      for (auto& c : out.cells) c = ctx->zero();
      return out;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      auto e = exps_of(i);
      if (e[0] != v) continue;
      out.cells[out.index(std::vector<int>(e.begin() + 1, e.end()))] = cells[i];
    }
    return out;
  }

  // Formal derivative in variable `var`.
  DensePoly derivative(std::size_t var) const {
    DensePoly out = *this;
    out.lo[var] -= 1;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      auto e = exps_of(i);
      const std::int64_t k = e[var];
      auto ne = e;
      ne[var] -= 1;
      out.cells[out.index(ne)] = ctx->mul(cells[i], ctx->from_int(k));
    }
    return out;
  }
};

// Random sparse polynomial with `terms` terms, t-exponents in [tlo, thi] and
// z-exponents in [zlo, zhi].
inline dworklab::LaurentPoly random_poly(const dworklab::PadicCtx& ctx, int r, int n, int terms, int tlo, int thi,
                                         int zlo, int zhi, std::mt19937_64& rng) {
  std::vector<std::pair<std::vector<int>, ExtElem>> t;
  for (int k = 0; k < terms; ++k) {
    std::vector<int> e(static_cast<std::size_t>(r + n));
    for (int v = 0; v < r + n; ++v) {
      const int lo = v < r ? tlo : zlo, hi = v < r ? thi : zhi;
      e[static_cast<std::size_t>(v)] = lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    t.emplace_back(std::move(e), random_elem(ctx, rng));
  }
  return dworklab::LaurentPoly::from_terms(ctx, r, n, t);
}

}  // namespace oracle
