#include "dworklab/limit.hpp"

#include <algorithm>

namespace dworklab {

namespace {

void require_limit(const PadicCtx& ctx, int g, std::span<const ExtElem> a, unsigned s_max) {
  validate_kz(ctx, g);
  if (s_max < 1) fail(ErrorCode::InvalidArgument, "s_max must be >= 1");
  require_precision(ctx, s_max + 1, "limit iteration");
  if (!in_domain(ctx, g, a)) fail(ErrorCode::OutsideDomain, "det A(1, Phi_1) is not a unit at the point");
}

ScalarMatrix unit_inverse_matrix(const PadicCtx& ctx, const ScalarMatrix& a) {
  if (!ctx.is_unit(determinant(ScalarOps{ctx}, a)))
    fail(ErrorCode::OutsideDomain, "Hasse-Witt determinant is not a unit at the point");
  return inverse(ctx, a);
}

int diff_valuation(const PadicCtx& ctx, const ScalarMatrix& a, const ScalarMatrix& b) {
  return deviation(ctx, a, b).valuation;
}

}  // namespace

LimitAReport limit_A(const PadicCtx& ctx, int g, std::span<const ExtElem> a, unsigned s_max) {
  require_limit(ctx, g, a, s_max);
  ScalarOps ops{ctx};
  std::vector<ExtElem> ap;
  for (const auto& x : a) ap.push_back(ctx.frobenius(x, 1));
  LimitAReport rep;
  ScalarMatrix prev;
  for (unsigned s = 0; s < s_max; ++s) {
    const ScalarMatrix num = hw_master_at(ctx, g, s + 1, a);
    const ScalarMatrix den = s == 0 ? identity_matrix(ops, static_cast<std::size_t>(g)) : hw_master_at(ctx, g, s, ap);
    const ScalarMatrix R = mat_mul(ops, num, unit_inverse_matrix(ctx, den));
    rep.det_valuations.push_back(ctx.valuation(determinant(ops, R)));
    if (s > 0) rep.decay.push_back(diff_valuation(ctx, R, prev));
    prev = R;
  }
  rep.approx = prev;
  return rep;
}

LimitIReport limit_I(const PadicCtx& ctx, int g, std::span<const ExtElem> a, unsigned s_max) {
  require_limit(ctx, g, a, s_max);
  const int n = 2 * g + 1;
  ScalarOps ops{ctx};
  LimitIReport rep;
  rep.decay_I_i.resize(static_cast<std::size_t>(n));
  rep.decay_A_i.resize(static_cast<std::size_t>(n));
  for (unsigned s = 1; s <= s_max; ++s) {
    const ScalarMatrix inv = unit_inverse_matrix(ctx, hw_master_at(ctx, g, s, a));
    ScalarMatrix J = mat_mul(ops, ps_solutions_at(ctx, g, s, a), inv);
    std::vector<ScalarMatrix> Ji, Ai;
    for (int i = 0; i < n; ++i) {
      Ji.push_back(mat_mul(ops, ps_solutions_derivative_at(ctx, g, s, a, i), inv));
      Ai.push_back(mat_mul(ops, hw_master_derivative_at(ctx, g, s, a, i), inv));
    }
    if (s > 1) {
      rep.decay_I.push_back(diff_valuation(ctx, J, rep.I));
      for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        rep.decay_I_i[i].push_back(diff_valuation(ctx, Ji[i], rep.I_i[i]));
        rep.decay_A_i[i].push_back(diff_valuation(ctx, Ai[i], rep.A_i[i]));
      }
    }
    if (s > 1) {
      rep.prev_I = std::move(rep.I);
      rep.prev_I_i = std::move(rep.I_i);
      rep.prev_A_i = std::move(rep.A_i);
    } else {
      rep.prev_I = J;
      rep.prev_I_i = Ji;
      rep.prev_A_i = Ai;
    }
    rep.I = std::move(J);
    rep.I_i = std::move(Ji);
    rep.A_i = std::move(Ai);
  }
  return rep;
}

CongruenceReport verify_kz_mc(const PadicCtx& ctx, std::span<const ExtElem> a, const LimitIReport& lim,
                              unsigned s_max) {
  const int claimed = static_cast<int>(s_max) - 1;
  auto rep = run_congruence_check("kz-mc", claimed, CheckMode::at({std::vector<ExtElem>(a.begin(), a.end())}), {},
                                  [&](const std::vector<ExtElem>*) {
                                    ScalarOps ops{ctx};
                                    Deviation worst{static_cast<int>(ctx.precision()), 0, 0};
                                    for (std::size_t i = 0; i < lim.I_i.size(); ++i) {
                                      auto H = gaudin(ctx, a, static_cast<int>(i));
                                      auto d = deviation(ctx, lim.I_i[i], mat_mul(ops, H, lim.I));
                                      if (d.valuation < worst.valuation) worst = d;
                                    }
                                    return CheckOutcome{worst, {}};
                                  });
  return rep;
}

std::optional<std::vector<std::size_t>> unit_minor_rows(const PadicCtx& ctx, const ScalarMatrix& m) {
  const std::size_t n = m.rows(), g = m.cols();
  if (g > n) return std::nullopt;
  std::vector<std::size_t> cols(g);
  for (std::size_t k = 0; k < g; ++k) cols[k] = k;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(g), true);
  // prev_permutation on a sorted-descending mask walks subsets in lexicographic order.
  do {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) rows.push_back(i);
    if (ctx.is_unit(determinant(ScalarOps{ctx}, submatrix(m, rows, cols)))) return rows;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return std::nullopt;
}

CongruenceReport verify_invariance(const PadicCtx& ctx, std::span<const ExtElem> a, const LimitIReport& lim,
                                   unsigned s_max) {
  const int claimed = static_cast<int>(s_max) - 1;
  const std::vector<SubCheck> subs{{"recovered coefficient matrix = -A^(i)", claimed, 0}};
  return run_congruence_check(
      "invariance", claimed, CheckMode::at({std::vector<ExtElem>(a.begin(), a.end())}), subs,
      [&](const std::vector<ExtElem>*) {
        ScalarOps ops{ctx};
        const ScalarMatrix& J = lim.prev_I;
        const auto rows = unit_minor_rows(ctx, J);
        std::vector<std::size_t> cols(J.cols());
        for (std::size_t k = 0; k < cols.size(); ++k) cols[k] = k;
        Deviation worst{static_cast<int>(ctx.precision()), 0, 0};
        int recovered = rows ? static_cast<int>(ctx.precision()) : 0;
        for (std::size_t i = 0; i < lim.I_i.size(); ++i) {
          const auto H = gaudin(ctx, a, static_cast<int>(i));
          // d(I_s A_s^{-1}) = (dI_s) A_s^{-1} - (I_s A_s^{-1}) (D_i A_s A_s^{-1}) at the top level.
          const auto dJ = mat_sub(ops, lim.I_i[i], mat_mul(ops, lim.I, lim.A_i[i]));
          const auto cov = mat_sub(ops, dJ, mat_mul(ops, H, J));
          const auto d = deviation(ctx, mat_add(ops, cov, mat_mul(ops, J, lim.prev_A_i[i])),
                                   ScalarMatrix(J.rows(), J.cols(), ctx.zero()));
          if (d.valuation < worst.valuation) worst = d;
          if (rows) {
            const auto X = mat_mul(ops, inverse(ctx, submatrix(J, *rows, cols)), submatrix(cov, *rows, cols));
            const auto minusA = mat_scale(ops, lim.prev_A_i[i], ctx.from_int(-1));
            recovered = std::min(recovered, deviation(ctx, X, minusA).valuation);
          }
        }
        return CheckOutcome{worst, {recovered}};
      });
}

CongruenceReport rank_check(const PadicCtx& ctx, int g, std::span<const ExtElem> a) {
  validate_kz(ctx, g);
  if (!in_domain(ctx, g, a)) fail(ErrorCode::OutsideDomain, "det A(1, Phi_1) is not a unit at the point");
  const std::vector<SubCheck> subs{{"minor in rows 1,3,...,2g-1 is a unit (informational)", 0, 0}};
  return run_congruence_check("rank", 1, CheckMode::at({std::vector<ExtElem>(a.begin(), a.end())}), subs,
                              [&](const std::vector<ExtElem>*) {
                                ScalarOps ops{ctx};
                                const auto J = mat_mul(ops, ps_solutions_at(ctx, g, 1, a),
                                                       unit_inverse_matrix(ctx, hw_master_at(ctx, g, 1, a)));
                                std::vector<std::size_t> rows, cols;
                                for (int k = 0; k < g; ++k) {
                                  rows.push_back(static_cast<std::size_t>(2 * k));
                                  cols.push_back(static_cast<std::size_t>(k));
                                }
                                const bool designated = ctx.is_unit(determinant(ops, submatrix(J, rows, cols)));
                                const bool any = designated || unit_minor_rows(ctx, J).has_value();
                                return CheckOutcome{{any ? 1 : 0, 0, 0}, {designated ? 1 : 0}};
                              });
}

LimitReport run_limit(const PadicCtx& ctx, int g, const DomainPoint& point, unsigned s_max) {
  if (!point.in_D_o) fail(ErrorCode::OutsideDomain, "limit certificates need a residue-distinct domain point");
  LimitReport rep;
  rep.point = point;
  rep.s_max = s_max;
  rep.A = limit_A(ctx, g, point.lift, s_max);
  rep.I = limit_I(ctx, g, point.lift, s_max);
  rep.kz_mc = verify_kz_mc(ctx, point.lift, rep.I, s_max);
  rep.invariance = verify_invariance(ctx, point.lift, rep.I, s_max);
  rep.rank = rank_check(ctx, g, point.lift);
  bool ok = std::all_of(rep.A.det_valuations.begin(), rep.A.det_valuations.end(), [](int v) { return v == 0; });
  for (std::size_t k = 0; k < rep.A.decay.size(); ++k) ok = ok && rep.A.decay[k] >= static_cast<int>(k) + 1;
  auto check_profile = [&](const std::vector<int>& prof) {
    for (std::size_t k = 0; k < prof.size(); ++k) ok = ok && prof[k] >= static_cast<int>(k) + 1;
  };
  check_profile(rep.I.decay_I);
  for (const auto& p : rep.I.decay_I_i) check_profile(p);
  for (const auto& p : rep.I.decay_A_i) check_profile(p);
  rep.decay_ok = ok;
  return rep;
}

}  // namespace dworklab
