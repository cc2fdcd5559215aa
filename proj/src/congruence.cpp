#include "dworklab/congruence.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>

#include "dworklab/parallel.hpp"

namespace dworklab {

namespace {

std::uint64_t ipow(std::uint64_t p, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

const PadicCtx& tuple_ctx(const GhostTuple& T) {
  if (T.lambdas.empty()) fail(ErrorCode::InvalidArgument, "empty tuple");
  return T.lambdas[0].ctx();
}

void require_tuple(const GhostTuple& T, std::size_t s) {
  tuple_ctx(T);
  if (!T.periodic && T.lambdas.size() < s + 1)
    fail(ErrorCode::IndexOutOfRange, "tuple needs " + std::to_string(s + 1) + " entries");
  auto v = check_admissible(T, s + 2);
  if (!v.admissible)
    fail(ErrorCode::NotAdmissible, "tuple is not admissible: window [" + std::to_string(v.window_i) + ", " +
                                       std::to_string(v.window_j) + "]");
}

void require_pointwise(const GhostTuple& T) {
  if (T.lambdas[0].r() != 1) fail(ErrorCode::UnsupportedArity, "pointwise checks need r = 1");
}

// det A(1, Lambda_k) must be nonzero mod p for the entries involved.
void require_nondegenerate_symbolic(const GhostTuple& T, std::size_t s) {
  const PadicCtx& ctx = tuple_ctx(T);
  PolyOps ops{ctx, T.lambdas[0].n()};
  const std::size_t distinct = T.periodic ? std::min(T.lambdas.size(), s + 1) : s + 1;
  for (std::size_t k = 0; k < distinct; ++k) {
    auto det = determinant(ops, hw_matrix(1, T.lambda(k), T.delta));
    if (det.min_valuation() > 0)
      fail(ErrorCode::DegenerateTuple, "det A(1, Lambda_" + std::to_string(k) + ") vanishes mod p");
  }
}

ScalarMatrix checked_inverse(const PadicCtx& ctx, const ScalarMatrix& a, const std::string& what) {
  if (!ctx.is_unit(determinant(ScalarOps{ctx}, a))) fail(ErrorCode::DegenerateTuple, what + " is not invertible at the point");
  return inverse(ctx, a);
}

ScalarMatrix scalar_identity(const PadicCtx& ctx, std::size_t g) { return identity_matrix(ScalarOps{ctx}, g); }

PolyMatrix poly_identity(const PadicCtx& ctx, int n, std::size_t g) { return identity_matrix(PolyOps{ctx, n}, g); }

PolyMatrix to_1x1(const LaurentPoly& f) { return PolyMatrix(1, 1, f); }
ScalarMatrix to_1x1(const ExtElem& x) { return ScalarMatrix(1, 1, x); }

// X adj(A) det(B) - Y adj(B) det(A): the two sides of X A^{-1} = Y B^{-1}
// with denominators cleared.
std::pair<PolyMatrix, PolyMatrix> cleared(const PolyOps& ops, const PolyMatrix& X, const PolyMatrix& A,
                                          const PolyMatrix& Y, const PolyMatrix& B) {
  auto dA = determinant(ops, A), dB = determinant(ops, B);
  return {mat_scale(ops, mat_mul(ops, X, adjugate(ops, A)), dB), mat_scale(ops, mat_mul(ops, Y, adjugate(ops, B)), dA)};
}

ScalarMatrix hw_at(unsigned level, const UPoly& f, const Delta& delta) { return hw_matrix_dense(level, f, delta); }

std::string entry_text(const Deviation& d) {
  return "entry (" + std::to_string(d.row + 1) + ", " + std::to_string(d.col + 1) + ") valuation " +
         std::to_string(d.valuation);
}

}  // namespace

CongruenceReport run_congruence_check(const std::string& id, int claimed, const CheckMode& mode,
                                      const std::vector<SubCheck>& subs,
                                      const std::function<CheckOutcome(const std::vector<ExtElem>*)>& body) {
  CongruenceReport rep;
  rep.theorem_id = id;
  rep.statement = theorem_statement(id);
  rep.claimed_valuation = claimed;
  rep.checks = subs;
  if (mode.symbolic) {
    rep.mode = "symbolic";
    CheckOutcome o = body(nullptr);
    rep.observed_min_valuation = o.dev.valuation;
    for (std::size_t k = 0; k < subs.size(); ++k) rep.checks[k].observed = o.subs.at(k);
    if (o.dev.valuation < claimed) rep.witness = entry_text(o.dev);
  } else {
    rep.mode = "pointwise";
    if (mode.points.empty()) fail(ErrorCode::InvalidArgument, "pointwise check without points");
    std::vector<CheckOutcome> results(mode.points.size());
    parallel_for(mode.points.size(), [&](std::size_t i) { results[i] = body(&mode.points[i]); });
    rep.points = results.size();
    rep.observed_min_valuation = std::numeric_limits<int>::max();
    for (auto& c : rep.checks) c.observed = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& o = results[i];
      rep.per_point.push_back(o.dev.valuation);
      rep.observed_min_valuation = std::min(rep.observed_min_valuation, o.dev.valuation);
      if (o.dev.valuation < claimed && !rep.witness) rep.witness = "point " + std::to_string(i) + ", " + entry_text(o.dev);
      for (std::size_t k = 0; k < subs.size(); ++k) rep.checks[k].observed = std::min(rep.checks[k].observed, o.subs.at(k));
    }
  }
  rep.finalize();
  return rep;
}

void CongruenceReport::finalize() {
  pass = observed_min_valuation >= claimed_valuation;
  for (const auto& c : checks) pass = pass && c.pass();
}

Deviation deviation(const PadicCtx& ctx, const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorCode::InvalidArgument, "matrix shapes do not match");
  Deviation d{static_cast<int>(ctx.precision()), 0, 0};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const int v = ctx.valuation(ctx.sub(a(i, j), b(i, j)));
      if (v < d.valuation) d = {v, i, j};
    }
  return d;
}

Deviation deviation(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorCode::InvalidArgument, "matrix shapes do not match");
  Deviation d{static_cast<int>(a(0, 0).ctx().precision()), 0, 0};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const int v = (a(i, j) - b(i, j)).min_valuation();
      if (v < d.valuation) d = {v, i, j};
    }
  return d;
}

std::string theorem_statement(const std::string& id) {
  static const std::map<std::string, std::string> statements = {
      {"decomp",
       "A(s+1,W_s) = sum_{j=1..s} A(j,V_{j-1}) sigma^j(A(s-j+1,W_s^(j))) + A(s+1,V_s) exactly, "
       "and A(s+1,V_s) = 0 mod p^s"},
      {"1.6i", "A(s+1,W_s) = A(1,Lambda_0) sigma(A(1,Lambda_1)) ... sigma^s(A(1,Lambda_s)) mod p"},
      {"1.6ii",
       "A(s+1,W_s) sigma(A(s,W_s^(1)))^-1 = A(s,W_{s-1}) sigma(A(s-1,W_{s-1}^(1)))^-1 mod p^s"},
      {"det",
       "det A(s+1,W_s) det sigma(A(s-1,W_{s-1}^(1))) = det A(s,W_{s-1}) det sigma(A(s,W_s^(1))) mod p^s"},
      {"der",
       "D_v(sigma^m A(s+1,W_s)) sigma^m(A(s+1,W_s))^-1 = D_v(sigma^m A(s,W_{s-1})) sigma^m(A(s,W_{s-1}))^-1 "
       "mod p^(s+m)"},
      {"der2", "D_u D_v A(s+1,W_s) A(s+1,W_s)^-1 = D_u D_v A(s,W_{s-1}) A(s,W_{s-1})^-1 mod p^s"},
      {"residual",
       "I_s solves d/dz_i I = H_i I mod p^s (denominators cleared) and its columns sum to 0 mod p^s"},
      {"phi",
       "(p^s-1)/2 sum_i Phi_s/(t-z_i) = dPhi_s/dt and (d/dz_i + (p^s-1)/2 sum_j Omega_ij/(z_i-z_j)) Q = dPsi_s^i/dt "
       "exactly"},
      {"coS",
       "I_{s+1} A(s+1,Phi_{s+1})^-1 = I_s A(s,Phi_s)^-1 and d/dz_j I_{s+1} A(s+1,Phi_{s+1})^-1 = "
       "d/dz_j I_s A(s,Phi_s)^-1 mod p^s; I_s A(s,Phi_s)^-1 = I_1 A(1,Phi_1)^-1 mod p"},
      {"minor",
       "the g x g minor of I_1 in rows 1,3,...,2g-1 is nonzero mod p, with leading monomial "
       "prod_l z_1^((p-1)/2)...z_{2g-2l}^((p-1)/2) z_{2g-2l+1}^((p-1)/2-l) and degree g^2(p-1)/2 - g(g+1)/2"},
      {"limit-A", "R_s = A(s+1,Phi_{s+1}) sigma(A(s,Phi_s))^-1 converges with |det| = 1: R_{s+1} = R_s mod p^(s+1)"},
      {"limit-I", "I_s A(s,Phi_s)^-1, d/dz_i I_s A(s,Phi_s)^-1 and D_i A(s,Phi_s) A(s,Phi_s)^-1 converge mod p^s"},
      {"kz-mc", "the limit frames satisfy I^(i) = H_i I"},
      {"invariance", "dI/dz_i - H_i I = -I A^(i): the KZ connection preserves the span of the limit frame"},
      {"rank", "the limit frame I has rank g: a g x g minor is a unit mod p"},
  };
  auto it = statements.find(id);
  if (it == statements.end()) fail(ErrorCode::ConfigError, "unknown theorem id '" + id + "'");
  return it->second;
}

FactoredPoly factored_big_product(const GhostTuple& tuple, std::size_t s, std::size_t j) {
  if (j > s || s >= tuple.length()) fail(ErrorCode::IndexOutOfRange, "big product indices");
  auto fac = [&](std::size_t k) -> const FactoredPoly& {
    const auto& f = tuple.lambda(k).factored();
    if (!f) fail(ErrorCode::NotFactored, "tuple entry " + std::to_string(k) + " has no factored form");
    return *f;
  };
  const std::uint64_t p = tuple_ctx(tuple).p();
  FactoredPoly w = fac(s);
  for (std::size_t k = s; k-- > j;) w = fac(k).times(w.pow(p));
  return w;
}

CongruenceReport verify_decomposition(const GhostTuple& T, std::size_t s, const CheckMode& mode) {
  require_tuple(T, s);
  const PadicCtx& ctx = tuple_ctx(T);
  const int N = static_cast<int>(ctx.precision());
  const std::vector<SubCheck> subs{{"A(s+1,V_s) = 0 mod p^s", static_cast<int>(s), 0}};
  const unsigned S = static_cast<unsigned>(s);
  if (mode.symbolic) {
    return run_congruence_check("decomp", N, mode, subs, [&](const std::vector<ExtElem>*) {
      GhostSeq G(T, s);
      PolyOps ops{ctx, T.lambdas[0].n()};
      PolyMatrix lhs = hw_matrix(S + 1, G.W(0, s), T.delta);
      PolyMatrix last = hw_matrix(S + 1, G.V(s), T.delta);
      PolyMatrix rhs = last;
      for (std::size_t j = 1; j <= s; ++j) {
        const unsigned J = static_cast<unsigned>(j);
        rhs = mat_add(ops, rhs,
                      mat_mul(ops, hw_matrix(J, G.V(j - 1), T.delta),
                              frobenius_matrix(hw_matrix(S - J + 1, G.W(j, s), T.delta), J)));
      }
      return CheckOutcome{deviation(lhs, rhs), {min_valuation(last)}};
    });
  }
  require_pointwise(T);
  return run_congruence_check("decomp", N, mode, subs, [&](const std::vector<ExtElem>* a) {
    PointGhosts P(T, *a);
    ScalarOps ops{ctx};
    ScalarMatrix lhs = hw_at(S + 1, P.W(0, s, 0), T.delta);
    ScalarMatrix last = hw_at(S + 1, P.V(s), T.delta);
    ScalarMatrix rhs = last;
    for (std::size_t j = 1; j <= s; ++j) {
      const unsigned J = static_cast<unsigned>(j);
      rhs = mat_add(ops, rhs, mat_mul(ops, hw_at(J, P.V(j - 1), T.delta), hw_at(S - J + 1, P.W(j, s, J), T.delta)));
    }
    return CheckOutcome{deviation(ctx, lhs, rhs), {min_valuation(ctx, last)}};
  });
}

CongruenceReport verify_frobenius_factorization(const GhostTuple& T, std::size_t s, const CheckMode& mode) {
  require_tuple(T, s);
  const PadicCtx& ctx = tuple_ctx(T);
  const unsigned S = static_cast<unsigned>(s);
  if (mode.symbolic) {
    return run_congruence_check("1.6i", 1, mode, {}, [&](const std::vector<ExtElem>*) {
      PolyOps ops{ctx, T.lambdas[0].n()};
      PolyMatrix lhs = hw_matrix(S + 1, big_product(T, s, 0), T.delta);
      PolyMatrix rhs = hw_matrix(1, T.lambda(0), T.delta);
      for (std::size_t k = 1; k <= s; ++k)
        rhs = mat_mul(ops, rhs, frobenius_matrix(hw_matrix(1, T.lambda(k), T.delta), static_cast<unsigned>(k)));
      return CheckOutcome{deviation(lhs, rhs), {}};
    });
  }
  require_pointwise(T);
  return run_congruence_check("1.6i", 1, mode, {}, [&](const std::vector<ExtElem>* a) {
    PointGhosts P(T, *a);
    ScalarOps ops{ctx};
    ScalarMatrix lhs = hw_at(S + 1, P.W(0, s, 0), T.delta);
    ScalarMatrix rhs = hw_at(1, P.lambda(0, 0), T.delta);
    for (std::size_t k = 1; k <= s; ++k)
      rhs = mat_mul(ops, rhs, hw_at(1, P.lambda(k, static_cast<unsigned>(k)), T.delta));
    return CheckOutcome{deviation(ctx, lhs, rhs), {}};
  });
}

namespace {

// The four matrices of the ratio congruence: A(s+1,W_s), sigma A(s,W_s^(1)),
// A(s,W_{s-1}), sigma A(s-1,W_{s-1}^(1)) (identity when s = 1).
struct RatioPieces {
  PolyMatrix L1, B1, L0, B0;
};

RatioPieces symbolic_pieces(const GhostTuple& T, std::size_t s) {
  const PadicCtx& ctx = tuple_ctx(T);
  GhostSeq G(T, s);
  const unsigned S = static_cast<unsigned>(s);
  const std::size_t g = T.delta.size();
  return {hw_matrix(S + 1, G.W(0, s), T.delta), frobenius_matrix(hw_matrix(S, G.W(1, s), T.delta), 1),
          hw_matrix(S, G.W(0, s - 1), T.delta),
          s == 1 ? poly_identity(ctx, T.lambdas[0].n(), g) : frobenius_matrix(hw_matrix(S - 1, G.W(1, s - 1), T.delta), 1)};
}

struct ScalarPieces {
  ScalarMatrix L1, B1, L0, B0;
};

ScalarPieces point_pieces(const GhostTuple& T, std::size_t s, const std::vector<ExtElem>& a) {
  const PadicCtx& ctx = tuple_ctx(T);
  PointGhosts P(T, a);
  const unsigned S = static_cast<unsigned>(s);
  return {hw_at(S + 1, P.W(0, s, 0), T.delta), hw_at(S, P.W(1, s, 1), T.delta), hw_at(S, P.W(0, s - 1, 0), T.delta),
          s == 1 ? scalar_identity(ctx, T.delta.size()) : hw_at(S - 1, P.W(1, s - 1, 1), T.delta)};
}

void require_level(const PadicCtx& ctx, std::size_t s, int claimed, const std::string& what) {
  if (s < 1) fail(ErrorCode::InvalidArgument, what + " needs s >= 1");
  require_precision(ctx, static_cast<unsigned>(claimed), what);
}

}  // namespace

CongruenceReport verify_dwork_ratio(const GhostTuple& T, std::size_t s, const CheckMode& mode) {
  require_tuple(T, s);
  const PadicCtx& ctx = tuple_ctx(T);
  const int claimed = static_cast<int>(s);
  require_level(ctx, s, claimed, "ratio congruence");
  if (mode.symbolic) {
    require_nondegenerate_symbolic(T, s);
    return run_congruence_check("1.6ii", claimed, mode, {}, [&](const std::vector<ExtElem>*) {
      auto P = symbolic_pieces(T, s);
      PolyOps ops{ctx, T.lambdas[0].n()};
      auto [x, y] = cleared(ops, P.L1, P.B1, P.L0, P.B0);
      return CheckOutcome{deviation(x, y), {}};
    });
  }
  require_pointwise(T);
  return run_congruence_check("1.6ii", claimed, mode, {}, [&](const std::vector<ExtElem>* a) {
    auto P = point_pieces(T, s, *a);
    ScalarOps ops{ctx};
    auto lhs = mat_mul(ops, P.L1, checked_inverse(ctx, P.B1, "sigma A(s,W_s^(1))"));
    auto rhs = mat_mul(ops, P.L0, checked_inverse(ctx, P.B0, "sigma A(s-1,W_{s-1}^(1))"));
    return CheckOutcome{deviation(ctx, lhs, rhs), {}};
  });
}

CongruenceReport verify_det_congruence(const GhostTuple& T, std::size_t s, const CheckMode& mode) {
  require_tuple(T, s);
  const PadicCtx& ctx = tuple_ctx(T);
  const int claimed = static_cast<int>(s);
  require_level(ctx, s, claimed, "determinant congruence");
  if (mode.symbolic) {
    require_nondegenerate_symbolic(T, s);
    return run_congruence_check("det", claimed, mode, {}, [&](const std::vector<ExtElem>*) {
      auto P = symbolic_pieces(T, s);
      PolyOps ops{ctx, T.lambdas[0].n()};
      auto lhs = poly_mul(determinant(ops, P.L1), determinant(ops, P.B0));
      auto rhs = poly_mul(determinant(ops, P.L0), determinant(ops, P.B1));
      return CheckOutcome{deviation(to_1x1(lhs), to_1x1(rhs)), {}};
    });
  }
  require_pointwise(T);
  return run_congruence_check("det", claimed, mode, {}, [&](const std::vector<ExtElem>* a) {
    auto P = point_pieces(T, s, *a);
    ScalarOps ops{ctx};
    const ExtElem dB1 = determinant(ops, P.B1);
    if (!ctx.is_unit(dB1)) fail(ErrorCode::DegenerateTuple, "det sigma A(s,W_s^(1)) is not a unit at the point");
    auto lhs = ctx.mul(determinant(ops, P.L1), determinant(ops, P.B0));
    auto rhs = ctx.mul(determinant(ops, P.L0), dB1);
    return CheckOutcome{deviation(ctx, to_1x1(lhs), to_1x1(rhs)), {}};
  });
}

CongruenceReport verify_derivative_congruence(const GhostTuple& T, std::size_t s, unsigned m, int v,
                                              const CheckMode& mode) {
  require_tuple(T, s);
  const PadicCtx& ctx = tuple_ctx(T);
  const int n = T.lambdas[0].n();
  if (v < 0 || v >= n) fail(ErrorCode::IndexOutOfRange, "z-variable index");
  const int claimed = static_cast<int>(s + m);
  require_level(ctx, s, claimed, "derivative congruence");
  const unsigned S = static_cast<unsigned>(s);
  if (mode.symbolic) {
    require_nondegenerate_symbolic(T, s);
    return run_congruence_check("der", claimed, mode, {}, [&](const std::vector<ExtElem>*) {
      GhostSeq G(T, s);
      PolyOps ops{ctx, n};
      auto L = frobenius_matrix(hw_matrix(S + 1, G.W(0, s), T.delta), m);
      auto R = frobenius_matrix(hw_matrix(S, G.W(0, s - 1), T.delta), m);
      auto [x, y] = cleared(ops, partial_matrix(L, v), L, partial_matrix(R, v), R);
      return CheckOutcome{deviation(x, y), {}};
    });
  }
  require_pointwise(T);
  const FactoredPoly WL = factored_big_product(T, s, 0), WR = factored_big_product(T, s - 1, 0);
  const std::uint64_t pm = ipow(ctx.p(), m);
  return run_congruence_check("der", claimed, mode, {}, [&](const std::vector<ExtElem>* a) {
    ScalarOps ops{ctx};
    std::vector<ExtElem> b;
    for (const auto& x : *a) b.push_back(ctx.frobenius(x, m));
    // d/dz_v of f(z^{p^m}) is p^m z_v^{p^m-1} (D_v f)(z^{p^m}).
    const ExtElem chain = ctx.mul(ctx.from_int(static_cast<std::int64_t>(pm)), ctx.pow((*a)[static_cast<std::size_t>(v)], pm - 1));
    auto AL = hw_at(S + 1, WL.at(b).expand_dense(), T.delta);
    auto AR = hw_at(S, WR.at(b).expand_dense(), T.delta);
    auto DL = mat_scale(ops, hw_derivative_at(S + 1, WL, T.delta, b, v), chain);
    auto DR = mat_scale(ops, hw_derivative_at(S, WR, T.delta, b, v), chain);
    auto lhs = mat_mul(ops, DL, checked_inverse(ctx, AL, "sigma^m A(s+1,W_s)"));
    auto rhs = mat_mul(ops, DR, checked_inverse(ctx, AR, "sigma^m A(s,W_{s-1})"));
    return CheckOutcome{deviation(ctx, lhs, rhs), {}};
  });
}

CongruenceReport verify_second_derivative_congruence(const GhostTuple& T, std::size_t s, int u, int v,
                                                     const CheckMode& mode) {
  require_tuple(T, s);
  const PadicCtx& ctx = tuple_ctx(T);
  const int n = T.lambdas[0].n();
  if (u < 0 || u >= n || v < 0 || v >= n) fail(ErrorCode::IndexOutOfRange, "z-variable index");
  const int claimed = static_cast<int>(s);
  require_level(ctx, s, claimed, "second derivative congruence");
  const unsigned S = static_cast<unsigned>(s);
  if (mode.symbolic) {
    require_nondegenerate_symbolic(T, s);
    return run_congruence_check("der2", claimed, mode, {}, [&](const std::vector<ExtElem>*) {
      GhostSeq G(T, s);
      PolyOps ops{ctx, n};
      auto L = hw_matrix(S + 1, G.W(0, s), T.delta);
      auto R = hw_matrix(S, G.W(0, s - 1), T.delta);
      auto [x, y] = cleared(ops, partial_matrix(partial_matrix(L, v), u), L, partial_matrix(partial_matrix(R, v), u), R);
      return CheckOutcome{deviation(x, y), {}};
    });
  }
  require_pointwise(T);
  const FactoredPoly WL = factored_big_product(T, s, 0), WR = factored_big_product(T, s - 1, 0);
  return run_congruence_check("der2", claimed, mode, {}, [&](const std::vector<ExtElem>* a) {
    ScalarOps ops{ctx};
    auto AL = hw_at(S + 1, WL.at(*a).expand_dense(), T.delta);
    auto AR = hw_at(S, WR.at(*a).expand_dense(), T.delta);
    auto lhs = mat_mul(ops, hw_second_derivative_at(S + 1, WL, T.delta, *a, u, v),
                       checked_inverse(ctx, AL, "A(s+1,W_s)"));
    auto rhs = mat_mul(ops, hw_second_derivative_at(S, WR, T.delta, *a, u, v), checked_inverse(ctx, AR, "A(s,W_{s-1})"));
    return CheckOutcome{deviation(ctx, lhs, rhs), {}};
  });
}

}  // namespace dworklab
