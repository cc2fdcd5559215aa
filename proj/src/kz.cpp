#include "dworklab/kz.hpp"

#include <algorithm>

namespace dworklab {

namespace {

std::uint64_t ipow(std::uint64_t p, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

void require_point(int g, std::span<const ExtElem> a) {
  if (static_cast<int>(a.size()) != 2 * g + 1) fail(ErrorCode::InvalidArgument, "point has the wrong number of coordinates");
}

// Column extraction from one dense quotient Phi_s(a)/(t - a_i).
void fill_row(ScalarMatrix& out, std::size_t row, const UPoly& q, std::uint64_t ps, int g) {
  for (int l = 1; l <= g; ++l)
    out(row, static_cast<std::size_t>(l - 1)) = q.coeff(static_cast<long>(static_cast<std::uint64_t>(l) * ps) - 1);
}

// z_i - z_j as an (r, n) polynomial.
LaurentPoly zdiff(const PadicCtx& ctx, int r, int n, int i, int j) {
  return LaurentPoly::z_var(ctx, r, n, i) - LaurentPoly::z_var(ctx, r, n, j);
}

// prod_{j != i, j not in skip} (z_i - z_j).
LaurentPoly zdiff_product(const PadicCtx& ctx, int r, int n, int i, int skip) {
  LaurentPoly out = LaurentPoly::constant(ctx, r, n, ctx.one());
  for (int j = 0; j < n; ++j)
    if (j != i && j != skip) out = poly_mul(out, zdiff(ctx, r, n, i, j));
  return out;
}

ScalarMatrix checked_inverse(const PadicCtx& ctx, const ScalarMatrix& a) {
  if (!ctx.is_unit(determinant(ScalarOps{ctx}, a)))
    fail(ErrorCode::OutsideDomain, "Hasse-Witt determinant is not a unit at the point");
  return inverse(ctx, a);
}

int column_sum_valuation(const PadicCtx& ctx, const ScalarMatrix& I) {
  ScalarMatrix sums(1, I.cols(), ctx.zero());
  for (std::size_t i = 0; i < I.rows(); ++i)
    for (std::size_t l = 0; l < I.cols(); ++l) sums(0, l) = ctx.add(sums(0, l), I(i, l));
  return min_valuation(ctx, sums);
}

int column_sum_valuation(const PolyMatrix& I) {
  PolyMatrix sums(1, I.cols(), LaurentPoly(I(0, 0).ctx(), I(0, 0).r(), I(0, 0).n()));
  for (std::size_t i = 0; i < I.rows(); ++i)
    for (std::size_t l = 0; l < I.cols(); ++l) sums(0, l) = sums(0, l) + I(i, l);
  return min_valuation(sums);
}

}  // namespace

void validate_kz(const PadicCtx& ctx, int g) {
  if (ctx.p() == 2) fail(ErrorCode::OddPrimeRequired, "the KZ setting needs an odd prime");
  if (g < 1) fail(ErrorCode::InvalidArgument, "g must be >= 1");
  if (ctx.p() < static_cast<std::uint64_t>(2 * g + 1))
    fail(ErrorCode::InvalidArgument, "the KZ setting needs p >= 2g + 1");
}

std::uint64_t master_exponent(std::uint64_t p, unsigned s) { return (ipow(p, s) - 1) / 2; }

FactoredPoly master_polynomial(const PadicCtx& ctx, int g, unsigned s) {
  validate_kz(ctx, g);
  if (s < 1) fail(ErrorCode::InvalidArgument, "master polynomial needs s >= 1");
  return FactoredPoly::master(ctx, 2 * g + 1, master_exponent(ctx.p(), s));
}

GhostTuple kz_tuple(const PadicCtx& ctx, int g) {
  GhostTuple T;
  T.lambdas = {LaurentPoly::from_factored(master_polynomial(ctx, g, 1))};
  T.periodic = true;
  T.delta = delta_range(g);
  return T;
}

PolyMatrix ps_solutions(const PadicCtx& ctx, int g, unsigned s) {
  const int n = 2 * g + 1;
  const FactoredPoly phi = master_polynomial(ctx, g, s);
  const std::uint64_t ps = ipow(ctx.p(), s);
  PolyMatrix I(static_cast<std::size_t>(n), static_cast<std::size_t>(g), LaurentPoly(ctx, 0, n));
  for (int i = 0; i < n; ++i) {
    const LaurentPoly q = phi.divide_z(i).expand();
    for (int l = 1; l <= g; ++l) {
      const int k = static_cast<int>(static_cast<std::uint64_t>(l) * ps) - 1;
      I(static_cast<std::size_t>(i), static_cast<std::size_t>(l - 1)) = coeff_t(q, std::span<const int>(&k, 1));
    }
  }
  return I;
}

ScalarMatrix ps_solutions_at(const PadicCtx& ctx, int g, unsigned s, std::span<const ExtElem> a) {
  require_point(g, a);
  const int n = 2 * g + 1;
  const UPoly phi = master_polynomial(ctx, g, s).at(a).expand_dense();
  const std::uint64_t ps = ipow(ctx.p(), s);
  ScalarMatrix I(static_cast<std::size_t>(n), static_cast<std::size_t>(g), ctx.zero());
  for (int i = 0; i < n; ++i) fill_row(I, static_cast<std::size_t>(i), phi.div_linear(a[static_cast<std::size_t>(i)]), ps, g);
  return I;
}

ScalarMatrix ps_solutions_derivative_at(const PadicCtx& ctx, int g, unsigned s, std::span<const ExtElem> a, int v) {
  require_point(g, a);
  const int n = 2 * g + 1;
  if (v < 0 || v >= n) fail(ErrorCode::IndexOutOfRange, "z-variable index");
  const UPoly phi = master_polynomial(ctx, g, s).at(a).expand_dense();
  const std::uint64_t e = master_exponent(ctx.p(), s);
  const std::uint64_t ps = ipow(ctx.p(), s);
  const ExtElem& av = a[static_cast<std::size_t>(v)];
  ScalarMatrix out(static_cast<std::size_t>(n), static_cast<std::size_t>(g), ctx.zero());
  for (int i = 0; i < n; ++i) {
    // d/dz_v of Phi_s/(t - z_i) = -e_v Phi_s/((t - z_i)(t - z_v)), e_v its multiplicity of z_v.
    const std::uint64_t ev = e - (i == v ? 1 : 0);
    if (ev == 0) continue;
    UPoly q = phi.div_linear(a[static_cast<std::size_t>(i)]).div_linear(av);
    q = q.scaled(ctx.neg(ctx.from_int(static_cast<std::int64_t>(ev))));
    fill_row(out, static_cast<std::size_t>(i), q, ps, g);
  }
  return out;
}

PolyMatrix hw_master(const PadicCtx& ctx, int g, unsigned s) {
  return hw_matrix(s, master_polynomial(ctx, g, s).expand(), delta_range(g));
}

ScalarMatrix hw_master_at(const PadicCtx& ctx, int g, unsigned s, std::span<const ExtElem> a) {
  require_point(g, a);
  return hw_matrix_dense(s, master_polynomial(ctx, g, s).at(a).expand_dense(), delta_range(g));
}

ScalarMatrix hw_master_derivative_at(const PadicCtx& ctx, int g, unsigned s, std::span<const ExtElem> a, int v) {
  require_point(g, a);
  return hw_derivative_at(s, master_polynomial(ctx, g, s), delta_range(g), a, v);
}

ScalarMatrix gaudin(const PadicCtx& ctx, std::span<const ExtElem> a, int i) {
  const int n = static_cast<int>(a.size());
  if (i < 0 || i >= n) fail(ErrorCode::IndexOutOfRange, "Gaudin index");
  const ExtElem half = ctx.unit_inverse(ctx.from_int(2));
  ScalarMatrix H(a.size(), a.size(), ctx.zero());
  const auto I = static_cast<std::size_t>(i);
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j == I) continue;
    const ExtElem d = ctx.sub(a[I], a[j]);
    if (!ctx.is_unit(d))
      fail(ErrorCode::NonUnitDifference, "a_" + std::to_string(i + 1) + " - a_" + std::to_string(j + 1) + " is not a unit");
    const ExtElem c = ctx.mul(half, ctx.unit_inverse(d));
    H(I, I) = ctx.sub(H(I, I), c);
    H(j, j) = ctx.sub(H(j, j), c);
    H(I, j) = ctx.add(H(I, j), c);
    H(j, I) = ctx.add(H(j, I), c);
  }
  return H;
}

CongruenceReport kz_residual(const PadicCtx& ctx, int g, unsigned s, const CheckMode& mode) {
  validate_kz(ctx, g);
  const int n = 2 * g + 1;
  const int claimed = static_cast<int>(s);
  require_precision(ctx, s, "KZ residual");
  const std::vector<SubCheck> subs{{"column sums = 0 mod p^s", claimed, 0}};
  if (mode.symbolic) {
    return run_congruence_check("residual", claimed, mode, subs, [&](const std::vector<ExtElem>*) {
      const PolyMatrix I = ps_solutions(ctx, g, s);
      PolyOps ops{ctx, n};
      const ExtElem half = ctx.unit_inverse(ctx.from_int(2));
      Deviation worst{static_cast<int>(ctx.precision()), 0, 0};
      for (int i = 0; i < n; ++i) {
        const auto row_i = static_cast<std::size_t>(i);
        PolyMatrix lhs = mat_scale(ops, partial_matrix(I, i), zdiff_product(ctx, 0, n, i, -1));
        PolyMatrix rhs(I.rows(), I.cols(), ops.zero());
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          const auto row_j = static_cast<std::size_t>(j);
          const LaurentPoly w = zdiff_product(ctx, 0, n, i, j).scaled(half);
          for (std::size_t l = 0; l < I.cols(); ++l) {
            const LaurentPoly d = poly_mul(I(row_j, l) - I(row_i, l), w);
            rhs(row_i, l) = rhs(row_i, l) + d;
            rhs(row_j, l) = rhs(row_j, l) - d;
          }
        }
        auto dev = deviation(lhs, rhs);
        if (dev.valuation < worst.valuation) worst = dev;
      }
      return CheckOutcome{worst, {column_sum_valuation(I)}};
    });
  }
  return run_congruence_check("residual", claimed, mode, subs, [&](const std::vector<ExtElem>* a) {
    const ScalarMatrix I = ps_solutions_at(ctx, g, s, *a);
    ScalarOps ops{ctx};
    Deviation worst{static_cast<int>(ctx.precision()), 0, 0};
    for (int i = 0; i < n; ++i) {
      auto dev = deviation(ctx, ps_solutions_derivative_at(ctx, g, s, *a, i), mat_mul(ops, gaudin(ctx, *a, i), I));
      if (dev.valuation < worst.valuation) worst = dev;
    }
    return CheckOutcome{worst, {column_sum_valuation(ctx, I)}};
  });
}

CongruenceReport verify_phi_identities(const PadicCtx& ctx, int g, unsigned s) {
  validate_kz(ctx, g);
  const int n = 2 * g + 1;
  const int N = static_cast<int>(ctx.precision());
  const std::vector<SubCheck> subs{{"sum identity", N, 0}, {"connection identity", N, 0}};
  return run_congruence_check("phi", N, CheckMode::make_symbolic(), subs, [&](const std::vector<ExtElem>*) {
    const FactoredPoly phi = master_polynomial(ctx, g, s);
    const ExtElem h = ctx.from_int(static_cast<std::int64_t>(master_exponent(ctx.p(), s)));
    std::vector<LaurentPoly> Q;
    for (int i = 0; i < n; ++i) Q.push_back(phi.divide_z(i).expand());

    LaurentPoly sum(ctx, 1, n);
    for (const auto& q : Q) sum = sum + q;
    const Deviation first = deviation(PolyMatrix(1, 1, sum.scaled(h)), PolyMatrix(1, 1, partial_t(phi.expand(), 0)));

    Deviation second{N, 0, 0};
    for (int i = 0; i < n; ++i) {
      const LaurentPoly D = zdiff_product(ctx, 1, n, i, -1);
      PolyMatrix lhs(static_cast<std::size_t>(n), 1, LaurentPoly(ctx, 1, n));
      PolyMatrix rhs = lhs;
      for (int k = 0; k < n; ++k) lhs(static_cast<std::size_t>(k), 0) = poly_mul(D, partial_z(Q[static_cast<std::size_t>(k)], i));
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const LaurentPoly w = zdiff_product(ctx, 1, n, i, j).scaled(h);
        const LaurentPoly d = poly_mul(Q[static_cast<std::size_t>(j)] - Q[static_cast<std::size_t>(i)], w);
        lhs(static_cast<std::size_t>(i), 0) = lhs(static_cast<std::size_t>(i), 0) + d;
        lhs(static_cast<std::size_t>(j), 0) = lhs(static_cast<std::size_t>(j), 0) - d;
      }
      rhs(static_cast<std::size_t>(i), 0) = -poly_mul(D, partial_t(Q[static_cast<std::size_t>(i)], 0));
      auto dev = deviation(lhs, rhs);
      if (dev.valuation < second.valuation) second = dev;
    }
    return CheckOutcome{first.valuation <= second.valuation ? first : second, {first.valuation, second.valuation}};
  });
}

CongruenceReport verify_solution_congruence(const PadicCtx& ctx, int g, unsigned s, const CheckMode& mode) {
  validate_kz(ctx, g);
  const int n = 2 * g + 1;
  const int claimed = static_cast<int>(s);
  if (s < 1) fail(ErrorCode::InvalidArgument, "solution congruence needs s >= 1");
  require_precision(ctx, s, "solution congruence");
  const std::vector<SubCheck> subs{{"derivative form mod p^s", claimed, 0}, {"agreement with level 1 mod p", 1, 0}};
  if (mode.symbolic) {
    return run_congruence_check("coS", claimed, mode, subs, [&](const std::vector<ExtElem>*) {
      PolyOps ops{ctx, n};
      auto clear = [&](const PolyMatrix& X, const PolyMatrix& A, const PolyMatrix& Y, const PolyMatrix& B) {
        auto dA = determinant(ops, A), dB = determinant(ops, B);
        return deviation(mat_scale(ops, mat_mul(ops, X, adjugate(ops, A)), dB),
                         mat_scale(ops, mat_mul(ops, Y, adjugate(ops, B)), dA));
      };
      const PolyMatrix I0 = ps_solutions(ctx, g, s), I1 = ps_solutions(ctx, g, s + 1);
      const PolyMatrix A0 = hw_master(ctx, g, s), A1 = hw_master(ctx, g, s + 1);
      const Deviation main = clear(I1, A1, I0, A0);
      int deriv = static_cast<int>(ctx.precision());
      for (int j = 0; j < n; ++j)
        deriv = std::min(deriv, clear(partial_matrix(I1, j), A1, partial_matrix(I0, j), A0).valuation);
      const int base = s == 1 ? static_cast<int>(ctx.precision())
                              : clear(I0, A0, ps_solutions(ctx, g, 1), hw_master(ctx, g, 1)).valuation;
      return CheckOutcome{main, {deriv, base}};
    });
  }
  return run_congruence_check("coS", claimed, mode, subs, [&](const std::vector<ExtElem>* a) {
    ScalarOps ops{ctx};
    const ScalarMatrix inv0 = checked_inverse(ctx, hw_master_at(ctx, g, s, *a));
    const ScalarMatrix inv1 = checked_inverse(ctx, hw_master_at(ctx, g, s + 1, *a));
    const Deviation main =
        deviation(ctx, mat_mul(ops, ps_solutions_at(ctx, g, s + 1, *a), inv1), mat_mul(ops, ps_solutions_at(ctx, g, s, *a), inv0));
    int deriv = static_cast<int>(ctx.precision());
    for (int j = 0; j < n; ++j)
      deriv = std::min(deriv, deviation(ctx, mat_mul(ops, ps_solutions_derivative_at(ctx, g, s + 1, *a, j), inv1),
                                        mat_mul(ops, ps_solutions_derivative_at(ctx, g, s, *a, j), inv0))
                                  .valuation);
    const ScalarMatrix base = mat_mul(ops, ps_solutions_at(ctx, g, 1, *a), checked_inverse(ctx, hw_master_at(ctx, g, 1, *a)));
    const int stab = deviation(ctx, mat_mul(ops, ps_solutions_at(ctx, g, s, *a), inv0), base).valuation;
    return CheckOutcome{main, {deriv, stab}};
  });
}

CongruenceReport verify_minor(const PadicCtx& ctx, int g) {
  validate_kz(ctx, g);
  const int n = 2 * g + 1;
  const int h = static_cast<int>(ctx.p() - 1) / 2;
  const std::vector<SubCheck> subs{{"leading monomial", 1, 0},
                                   {"degree g^2(p-1)/2 - g(g+1)/2", 1, 0},
                                   {"leading coefficient vs +-prod binom((p-1)/2, l) (informational)", 0, 0}};
  return run_congruence_check("minor", 1, CheckMode::make_symbolic(), subs, [&](const std::vector<ExtElem>*) {
    const PolyMatrix I = ps_solutions(ctx, g, 1);
    std::vector<std::size_t> rows, cols;
    for (int k = 0; k < g; ++k) {
      rows.push_back(static_cast<std::size_t>(2 * k));
      cols.push_back(static_cast<std::size_t>(k));
    }
    const LaurentPoly minor = determinant(PolyOps{ctx, n}, submatrix(I, rows, cols));
    std::vector<int> expect(static_cast<std::size_t>(n), 0);
    long coeff = 1;
    for (int l = 1; l <= g; ++l) {
      long b = 1;
      for (int k = 1; k <= l; ++k) b = b * (h - l + k) / k;
      coeff *= b;
      for (int k = 0; k < 2 * g - 2 * l; ++k) expect[static_cast<std::size_t>(k)] += h;
      expect[static_cast<std::size_t>(2 * g - 2 * l)] += h - l;
    }
    if (minor.is_zero()) return CheckOutcome{{0, 0, 0}, {0, 0, 0}};
    const LeadingTerm lt = leading_term_lex(minor);
    const int vplus = ctx.valuation(ctx.sub(lt.coeff, ctx.from_int(coeff)));
    const int vminus = ctx.valuation(ctx.add(lt.coeff, ctx.from_int(coeff)));
    const int degree_ok = z_homogeneous_degree(minor) == g * g * h - g * (g + 1) / 2;
    const int unit = ctx.is_unit(lt.coeff) ? 1 : 0;
    return CheckOutcome{{unit, 0, 0}, {lt.exponents == expect ? 1 : 0, degree_ok, std::max(vplus, vminus)}};
  });
}

}  // namespace dworklab
