#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dworklab/domain.hpp"
#include "dworklab/kz.hpp"
#include "oracles.hpp"

using namespace dworklab;

namespace {

std::vector<std::vector<ExtElem>> lifts(const std::vector<DomainPoint>& pts) {
  std::vector<std::vector<ExtElem>> out;
  for (const auto& p : pts) out.push_back(p.lift);
  return out;
}

void require_pass(const CongruenceReport& r) {
  INFO(r.theorem_id << " " << r.mode << " claimed " << r.claimed_valuation << " observed "
                    << r.observed_min_valuation << " " << r.witness.value_or(""));
  CHECK(r.pass);
  CHECK(r.observed_min_valuation >= r.claimed_valuation);
  for (const auto& c : r.checks) {
    INFO(c.name);
    CHECK(c.pass());
  }
}

// c * (t - x_1)(t - x_2)(t - x_3), each x a z-variable or a unit constant.
LaurentPoly random_cubic(const PadicCtx& ctx, int n, std::mt19937_64& rng) {
  FactoredPoly f(ctx, n);
  for (int k = 0; k < 3; ++k) {
    LinearFactor lf;
    if (rng() % 2 == 0) {
      lf.z_index = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      lf.root = ctx.zero();
    } else {
      lf.root = oracle::random_unit(ctx, rng);
    }
    f = f.times_linear(lf);
  }
  return LaurentPoly::from_factored(f.scaled(oracle::random_unit(ctx, rng)));
}

GhostTuple finite_tuple(std::vector<LaurentPoly> lambdas, int g) {
  GhostTuple T;
  T.lambdas = std::move(lambdas);
  T.delta = delta_range(g);
  return T;
}

PolyMatrix random_poly_matrix(const PadicCtx& ctx, std::size_t g, int n, std::mt19937_64& rng) {
  PolyMatrix m(g, g, LaurentPoly(ctx, 0, n));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) m(i, j) = oracle::random_poly(ctx, 0, n, 3, 0, 0, 0, 2, rng);
  return m;
}

}  // namespace

TEST_CASE("KZ tuple symbolic at p = 3, g = 1") {
  auto ctx = PadicCtx::create(3, 4);
  auto T = kz_tuple(ctx, 1);
  for (std::size_t s = 0; s <= 2; ++s) {
    auto d = verify_decomposition(T, s, CheckMode::make_symbolic());
    require_pass(d);
    CHECK(d.claimed_valuation == 4);
    CHECK(d.observed_min_valuation == 4);
    require_pass(verify_frobenius_factorization(T, s, CheckMode::make_symbolic()));
  }
  for (std::size_t s = 1; s <= 2; ++s) {
    auto r = verify_dwork_ratio(T, s, CheckMode::make_symbolic());
    require_pass(r);
    CHECK(r.claimed_valuation == static_cast<int>(s));
    auto d = verify_det_congruence(T, s, CheckMode::make_symbolic());
    require_pass(d);
    // 1 x 1 matrices: the determinant form is the same statement.
    CHECK(d.observed_min_valuation == r.observed_min_valuation);
  }
  for (int v = 0; v < 3; ++v) {
    auto r0 = verify_derivative_congruence(T, 2, 0, v, CheckMode::make_symbolic());
    require_pass(r0);
    CHECK(r0.claimed_valuation == 2);
    auto r1 = verify_derivative_congruence(T, 1, 1, v, CheckMode::make_symbolic());
    require_pass(r1);
    CHECK(r1.claimed_valuation == 2);
  }
  for (int u = 0; u < 3; ++u)
    for (int v = u; v < 3; ++v) require_pass(verify_second_derivative_congruence(T, 2, u, v, CheckMode::make_symbolic()));
}

TEST_CASE("ratio congruence fails to lift one level") {
  // The congruence at level s is sharp for the KZ tuple: no extra power of p.
  auto ctx = PadicCtx::create(3, 4);
  auto T = kz_tuple(ctx, 1);
  auto r = verify_dwork_ratio(T, 2, CheckMode::make_symbolic());
  CHECK(r.observed_min_valuation == 2);
}

TEST_CASE("constant-one tuple") {
  auto ctx = PadicCtx::create(3, 3);
  GhostTuple T;
  T.lambdas = {LaurentPoly::constant(ctx, 1, 3, ctx.one())};
  T.periodic = true;
  T.delta = delta_range(1);
  for (std::size_t s = 0; s <= 2; ++s) {
    auto r = verify_frobenius_factorization(T, s, CheckMode::make_symbolic());
    CHECK(r.pass);
    CHECK(r.observed_min_valuation == 3);
  }
}

TEST_CASE("KZ tuple pointwise at p = 5, g = 2") {
  auto ctx = PadicCtx::create(5, 5, 2);
  auto T = kz_tuple(ctx, 2);
  const auto mode = CheckMode::at(lifts(domain_points(ctx, 2, 20, 11)));
  for (std::size_t s = 1; s <= 3; ++s) {
    auto d = verify_decomposition(T, s, mode);
    require_pass(d);
    CHECK(d.points == 20);
    require_pass(verify_frobenius_factorization(T, s, mode));
    require_pass(verify_dwork_ratio(T, s, mode));
    require_pass(verify_det_congruence(T, s, mode));
  }
  for (int v : {0, 4}) {
    require_pass(verify_derivative_congruence(T, 3, 0, v, mode));
    auto r = verify_derivative_congruence(T, 2, 1, v, mode);
    require_pass(r);
    CHECK(r.claimed_valuation == 3);
  }
  require_pass(verify_second_derivative_congruence(T, 3, 0, 1, mode));
  require_pass(verify_second_derivative_congruence(T, 3, 2, 2, mode));
}

TEST_CASE("factorization mod p pointwise at p = 7, g = 2") {
  auto ctx = PadicCtx::create(7, 3, 2);
  auto T = kz_tuple(ctx, 2);
  const auto mode = CheckMode::at(lifts(domain_points(ctx, 2, 5, 3)));
  for (std::size_t s = 1; s <= 3; ++s) require_pass(verify_frobenius_factorization(T, s, mode));
}

TEST_CASE("symbolic and pointwise modes agree") {
  auto ctx = PadicCtx::create(3, 4, 2);
  auto T = kz_tuple(ctx, 1);
  const auto mode = CheckMode::at(lifts(domain_points(ctx, 1, 20, 5)));
  using Fn = CongruenceReport (*)(const GhostTuple&, std::size_t, const CheckMode&);
  for (Fn f : {Fn{verify_frobenius_factorization}, Fn{verify_dwork_ratio}, Fn{verify_det_congruence}}) {
    for (std::size_t s = 1; s <= 2; ++s) {
      auto sym = f(T, s, CheckMode::make_symbolic());
      auto pw = f(T, s, mode);
      REQUIRE(sym.pass);
      for (int v : pw.per_point) CHECK(v >= sym.observed_min_valuation);
    }
  }
  auto sym = verify_derivative_congruence(T, 2, 0, 1, CheckMode::make_symbolic());
  auto pw = verify_derivative_congruence(T, 2, 0, 1, mode);
  for (int v : pw.per_point) CHECK(v >= sym.observed_min_valuation);
  auto sym2 = verify_second_derivative_congruence(T, 2, 1, 1, CheckMode::make_symbolic());
  auto pw2 = verify_second_derivative_congruence(T, 2, 1, 1, mode);
  for (int v : pw2.per_point) CHECK(v >= sym2.observed_min_valuation);
}

TEST_CASE("ratio valuations are nondecreasing in s") {
  auto ctx = PadicCtx::create(3, 6, 2);
  auto T = kz_tuple(ctx, 1);
  const auto mode = CheckMode::at(lifts(domain_points(ctx, 1, 10, 21)));
  int prev = 0;
  for (std::size_t s = 1; s <= 4; ++s) {
    auto r = verify_dwork_ratio(T, s, mode);
    require_pass(r);
    CHECK(r.observed_min_valuation >= prev);
    prev = r.observed_min_valuation;
  }
}

TEST_CASE("random factored tuples satisfy the congruences") {
  auto ctx = PadicCtx::create(3, 4);
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<LaurentPoly> lambdas;
    for (int k = 0; k < 4; ++k) lambdas.push_back(random_cubic(ctx, 3, rng));
    auto T = finite_tuple(lambdas, 1);
    REQUIRE(check_admissible(T, 6).admissible);
    for (std::size_t s = 0; s <= 2; ++s) {
      require_pass(verify_decomposition(T, s, CheckMode::make_symbolic()));
      require_pass(verify_frobenius_factorization(T, s, CheckMode::make_symbolic()));
    }
    try {
      for (std::size_t s = 1; s <= 2; ++s) {
        require_pass(verify_dwork_ratio(T, s, CheckMode::make_symbolic()));
        require_pass(verify_derivative_congruence(T, s, 0, 0, CheckMode::make_symbolic()));
      }
      ++checked;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateTuple);
    }
  }
  CHECK(checked >= 6);
}

TEST_CASE("derivative of an inverse, exactly") {
  // A = I + pM has inverse sum_{k<N} (-pM)^k over Z/p^N.
  auto ctx = PadicCtx::create(5, 4);
  const int n = 3;
  PolyOps ops{ctx, n};
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t g = 1 + trial % 3;
    const auto pM = mat_scale(ops, random_poly_matrix(ctx, g, n, rng), LaurentPoly::constant(ctx, 0, n, ctx.from_int(5)));
    const auto A = mat_add(ops, identity_matrix(ops, g), pM);
    auto Ainv = identity_matrix(ops, g);
    auto term = identity_matrix(ops, g);
    const auto minus_pM = mat_scale(ops, pM, LaurentPoly::constant(ctx, 0, n, ctx.from_int(-1)));
    for (int k = 1; k < 4; ++k) {
      term = mat_mul(ops, term, minus_pM);
      Ainv = mat_add(ops, Ainv, term);
    }
    REQUIRE(mat_mul(ops, A, Ainv) == identity_matrix(ops, g));
    const int u = trial % n, v = (trial + 1) % n;
    const auto Av = mat_mul(ops, partial_matrix(A, v), Ainv);
    const auto Au = mat_mul(ops, partial_matrix(A, u), Ainv);
    const auto lhs = partial_matrix(Av, u);
    const auto rhs = mat_sub(ops, mat_mul(ops, partial_matrix(partial_matrix(A, v), u), Ainv), mat_mul(ops, Av, Au));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Frobenius images gain the chain-rule factor") {
  // If D_v(F1) F2 = D_v(G1) G2 mod p^s then after z -> z^{p^m} the two sides
  // agree mod p^{s+m}.
  auto ctx = PadicCtx::create(3, 6);
  const int n = 3;
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned s = 1 + trial % 3, m = trial % 2 + 1;
    const int v = trial % n;
    auto rand = [&] { return oracle::random_poly(ctx, 0, n, 4, 0, 0, 0, 2, rng); };
    const ExtElem ps = ctx.pow(ctx.from_int(3), s);
    const auto F1 = rand(), F2 = rand();
    const auto G1 = F1 + rand().scaled(ps), G2 = F2 + rand().scaled(ps);
    const auto before = poly_mul(partial_z(F1, v), F2) - poly_mul(partial_z(G1, v), G2);
    REQUIRE(min_valuation(PolyMatrix(1, 1, before)) >= static_cast<int>(s));
    auto sigma = [&](const LaurentPoly& f) { return frobenius_sub(f, m); };
    const auto after = poly_mul(partial_z(sigma(F1), v), sigma(F2)) - poly_mul(partial_z(sigma(G1), v), sigma(G2));
    CHECK(min_valuation(PolyMatrix(1, 1, after)) >= static_cast<int>(s + m));
  }
}

TEST_CASE("report plumbing") {
  auto rep = run_congruence_check("det", 3, CheckMode::at({{}, {}, {}}), {{"aux", 1, 0}},
                                  [](const std::vector<ExtElem>*) { return CheckOutcome{{2, 1, 0}, {1}}; });
  CHECK_FALSE(rep.pass);
  CHECK(rep.observed_min_valuation == 2);
  CHECK(rep.points == 3);
  CHECK(rep.per_point == std::vector<int>{2, 2, 2});
  REQUIRE(rep.witness);
  CHECK(*rep.witness == "point 0, entry (2, 1) valuation 2");
  CHECK(rep.checks.at(0).observed == 1);
  CHECK(rep.mode == "pointwise");

  // A failing secondary check fails the report.
  auto sub = run_congruence_check("det", 1, CheckMode::make_symbolic(), {{"aux", 1, 0}},
                                  [](const std::vector<ExtElem>*) { return CheckOutcome{{1, 0, 0}, {0}}; });
  CHECK_FALSE(sub.pass);
  CHECK(sub.mode == "symbolic");

  CHECK(theorem_statement("1.6ii").find("p^s") != std::string::npos);
  CHECK_THROWS_AS(theorem_statement("nope"), Error);
}

TEST_CASE("error cases") {
  auto ctx = PadicCtx::create(3, 4);
  auto T = kz_tuple(ctx, 1);
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ConfigError;
  };
  CHECK(code([&] { verify_dwork_ratio(T, 0, CheckMode::make_symbolic()); }) == ErrorCode::InvalidArgument);
  CHECK(code([&] { verify_dwork_ratio(T, 5, CheckMode::make_symbolic()); }) == ErrorCode::PrecisionTooLow);

  // t-support [0, 9] is not {1}-admissible for p = 3.
  std::vector<int> e9{9, 0, 0, 0};
  auto wide = LaurentPoly::monomial(ctx, 1, 3, e9, ctx.one()) + LaurentPoly::constant(ctx, 1, 3, ctx.one());
  auto bad = finite_tuple({wide, wide, wide, wide}, 1);
  REQUIRE_FALSE(check_admissible(bad, 4).admissible);
  CHECK(code([&] { verify_dwork_ratio(bad, 1, CheckMode::make_symbolic()); }) == ErrorCode::NotAdmissible);

  // Pointwise sigma-derivatives need the factored form.
  auto ctx2 = PadicCtx::create(3, 4, 2);
  auto pts = lifts(domain_points(ctx2, 1, 2, 1));
  auto unfactored = LaurentPoly::from_factored(FactoredPoly::master(ctx2, 3, 1)) + LaurentPoly(ctx2, 1, 3);
  REQUIRE_FALSE(unfactored.factored());
  auto U = finite_tuple({unfactored, unfactored, unfactored, unfactored}, 1);
  CHECK(code([&] { verify_derivative_congruence(U, 1, 1, 0, CheckMode::at(pts)); }) == ErrorCode::NotFactored);

  // A(1, Phi_1) = -(z_1 + z_2 + z_3) vanishes mod 3 at (0, 1, 2).
  std::vector<ExtElem> zero_sum{ctx.from_int(0), ctx.from_int(1), ctx.from_int(2)};
  CHECK(code([&] { verify_dwork_ratio(T, 1, CheckMode::at({zero_sum})); }) == ErrorCode::DegenerateTuple);
}
