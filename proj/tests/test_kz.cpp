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
  for (const auto& c : r.checks) {
    INFO(c.name << " " << c.observed);
    CHECK(c.pass());
  }
}

std::uint64_t ipow(std::uint64_t p, unsigned s) {
  std::uint64_t e = 1;
  for (unsigned k = 0; k < s; ++k) e *= p;
  return e;
}

// I_s at a point from the product of linear factors by plain convolution.
ScalarMatrix solutions_by_convolution(const PadicCtx& ctx, int g, unsigned s, const std::vector<ExtElem>& a) {
  const std::uint64_t ps = ipow(ctx.p(), s), e = (ps - 1) / 2;
  ScalarMatrix I(a.size(), static_cast<std::size_t>(g), ctx.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<ExtElem> f{ctx.one()};
    for (std::size_t j = 0; j < a.size(); ++j) {
      const std::uint64_t mult = e - (i == j ? 1 : 0);
      for (std::uint64_t k = 0; k < mult; ++k) f = oracle::convolve(ctx, f, {ctx.neg(a[j]), ctx.one()});
    }
    for (int l = 1; l <= g; ++l) {
      const std::size_t idx = static_cast<std::size_t>(l) * ps - 1;
      I(i, static_cast<std::size_t>(l - 1)) = idx < f.size() ? f[idx] : ctx.zero();
    }
  }
  return I;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ConfigError;
}

}  // namespace

TEST_CASE("master polynomial") {
  auto ctx = PadicCtx::create(3, 4);
  auto phi1 = master_polynomial(ctx, 1, 1);
  CHECK(phi1.degree() == 3);
  for (int i = 0; i < 3; ++i) CHECK(phi1.multiplicity(i) == 1);
  auto phi2 = master_polynomial(ctx, 1, 2);
  CHECK(phi2.degree() == 12);
  // Phi_2 = Phi_1^{1 + p}.
  auto e1 = phi1.expand();
  CHECK(phi2.expand() == e1 * e1 * e1 * e1);
  auto ctx5 = PadicCtx::create(5, 3);
  for (unsigned s = 1; s <= 3; ++s) CHECK(master_polynomial(ctx5, 2, s).degree() == 5 * (ipow(5, s) - 1) / 2);
}

TEST_CASE("solution matrix at level 1, p = 3") {
  auto ctx = PadicCtx::create(3, 4);
  auto I = ps_solutions(ctx, 1, 1);
  REQUIRE(I.rows() == 3);
  REQUIRE(I.cols() == 1);
  for (std::size_t i = 0; i < 3; ++i) CHECK(I(i, 0) == LaurentPoly::constant(ctx, 0, 3, ctx.one()));
}

TEST_CASE("solutions agree with a convolution oracle") {
  std::mt19937_64 rng(8);
  for (auto [p, g, s] : std::vector<std::tuple<int, int, unsigned>>{{3, 1, 1}, {3, 1, 2}, {5, 2, 1}, {5, 2, 2}, {7, 2, 1}}) {
    auto ctx = PadicCtx::create(static_cast<std::uint64_t>(p), 3, 2);
    const auto sym = ps_solutions(ctx, g, s);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<ExtElem> a;
      for (int i = 0; i < 2 * g + 1; ++i) a.push_back(oracle::random_elem(ctx, rng));
      const auto want = solutions_by_convolution(ctx, g, s, a);
      CHECK(ps_solutions_at(ctx, g, s, a) == want);
      if (s == 1) CHECK(eval_matrix(ctx, sym, a) == want);
    }
  }
}

TEST_CASE("no coefficient beyond column g") {
  // deg_t Phi_s/(t - z_i) = (2g+1)(p^s-1)/2 - 1 < (g+1)p^s - 1.
  auto ctx = PadicCtx::create(5, 2);
  for (int g = 1; g <= 2; ++g)
    for (unsigned s = 1; s <= 2; ++s) {
      const auto phi = master_polynomial(ctx, g, s).divide_z(0);
      CHECK(phi.degree() < (g + 1) * ipow(5, s) - 1);
    }
}

TEST_CASE("gradient of the first Hasse-Witt row") {
  auto ctx = PadicCtx::create(3, 4);
  for (unsigned s = 1; s <= 2; ++s) {
    const auto A = hw_master(ctx, 1, s);
    const auto I = ps_solutions(ctx, 1, s);
    const ExtElem k = ctx.from_int((1 - static_cast<std::int64_t>(ipow(3, s))) / 2);
    for (int i = 0; i < 3; ++i) CHECK(partial_z(A(0, 0), i) == I(static_cast<std::size_t>(i), 0).scaled(k));
  }
  auto ctx5 = PadicCtx::create(5, 4, 2);
  const auto pts = lifts(domain_points(ctx5, 2, 5, 2));
  for (unsigned s = 1; s <= 3; ++s) {
    const ExtElem k = ctx5.from_int((1 - static_cast<std::int64_t>(ipow(5, s))) / 2);
    for (const auto& a : pts) {
      const auto I = ps_solutions_at(ctx5, 2, s, a);
      for (int i = 0; i < 5; ++i) {
        const auto dA = hw_master_derivative_at(ctx5, 2, s, a, i);
        for (std::size_t l = 0; l < 2; ++l) CHECK(dA(0, l) == ctx5.mul(k, I(static_cast<std::size_t>(i), l)));
      }
    }
  }
}

TEST_CASE("Gaudin Hamiltonians") {
  auto ctx = PadicCtx::create(3, 2);
  std::vector<ExtElem> bad{ctx.from_int(0), ctx.from_int(1), ctx.from_int(3)};
  CHECK(code_of([&] { gaudin(ctx, bad, 0); }) == ErrorCode::NonUnitDifference);

  std::vector<ExtElem> a{ctx.from_int(0), ctx.from_int(1), ctx.from_int(2)};
  // Hand assembly mod 9: 1/2 = 5, 1/(0-1) = 8, 1/(0-2) = 4.
  const int want[3][3] = {{3, 4, 2}, {4, 5, 0}, {2, 0, 7}};
  const auto H = gaudin(ctx, a, 0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(H(i, j) == ctx.from_int(want[i][j]));

  auto ctx5 = PadicCtx::create(5, 4, 2);
  for (const auto& pt : domain_points(ctx5, 2, 10, 9)) {
    ScalarMatrix total(5, 5, ctx5.zero());
    for (int i = 0; i < 5; ++i) {
      const auto Hi = gaudin(ctx5, pt.lift, i);
      for (std::size_t r = 0; r < 5; ++r) {
        ExtElem row = ctx5.zero();
        for (std::size_t c = 0; c < 5; ++c) {
          row = ctx5.add(row, Hi(r, c));
          CHECK(Hi(r, c) == Hi(c, r));
        }
        CHECK(row == ctx5.zero());
      }
      total = mat_add(ScalarOps{ctx5}, total, Hi);
    }
    CHECK(total == ScalarMatrix(5, 5, ctx5.zero()));
  }
}

TEST_CASE("KZ residual") {
  auto ctx = PadicCtx::create(3, 4);
  auto r1 = kz_residual(ctx, 1, 1, CheckMode::make_symbolic());
  require_pass(r1);
  // I_1 is constant and annihilated by every H_i: exact.
  CHECK(r1.observed_min_valuation == 4);
  auto r2 = kz_residual(ctx, 1, 2, CheckMode::make_symbolic());
  require_pass(r2);
  CHECK(r2.claimed_valuation == 2);

  auto ctx5 = PadicCtx::create(5, 5, 2);
  const auto mode = CheckMode::at(lifts(domain_points(ctx5, 2, 20, 4)));
  for (unsigned s = 1; s <= 3; ++s) {
    auto r = kz_residual(ctx5, 2, s, mode);
    require_pass(r);
    CHECK(r.points == 20);
  }
  std::vector<ExtElem> coincident(5, ctx5.one());
  CHECK(code_of([&] { kz_residual(ctx5, 2, 1, CheckMode::at({coincident})); }) == ErrorCode::NonUnitDifference);
}

TEST_CASE("identities behind the KZ property") {
  auto ctx = PadicCtx::create(3, 2);
  for (unsigned s = 1; s <= 2; ++s) {
    auto r = verify_phi_identities(ctx, 1, s);
    require_pass(r);
    CHECK(r.observed_min_valuation == 2);
  }
  require_pass(verify_phi_identities(PadicCtx::create(5, 3), 2, 1));

  // The first identity at random points, through dense synthetic division.
  auto ctx5 = PadicCtx::create(5, 3, 2);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned s = 1 + trial % 2;
    std::vector<ExtElem> a;
    for (int i = 0; i < 5; ++i) a.push_back(oracle::random_elem(ctx5, rng));
    const UPoly phi = master_polynomial(ctx5, 2, s).at(a).expand_dense();
    UPoly sum(ctx5);
    for (const auto& x : a) sum = sum + phi.div_linear(x);
    const ExtElem h = ctx5.from_int(static_cast<std::int64_t>(master_exponent(5, s)));
    const ExtElem t = oracle::random_elem(ctx5, rng);
    CHECK(sum.scaled(h).evaluate(t) == phi.derivative().evaluate(t));
  }
}

TEST_CASE("solution congruence") {
  auto ctx = PadicCtx::create(3, 4);
  require_pass(verify_solution_congruence(ctx, 1, 1, CheckMode::make_symbolic()));

  auto ctx5 = PadicCtx::create(5, 5, 2);
  const auto mode = CheckMode::at(lifts(domain_points(ctx5, 2, 20, 6)));
  for (unsigned s = 1; s <= 3; ++s) {
    auto r = verify_solution_congruence(ctx5, 2, s, mode);
    require_pass(r);
    CHECK(r.claimed_valuation == static_cast<int>(s));
  }

  // A(1, Phi_1) = -(z_1 + z_2 + z_3) vanishes mod 3 at (0, 1, 2).
  auto ctx3 = PadicCtx::create(3, 3, 2);
  std::vector<ExtElem> off{ctx3.from_int(0), ctx3.from_int(1), ctx3.from_int(2)};
  CHECK(code_of([&] { verify_solution_congruence(ctx3, 1, 1, CheckMode::at({off})); }) == ErrorCode::OutsideDomain);
}

TEST_CASE("rank-g minor") {
  for (auto [p, g] : std::vector<std::pair<int, int>>{{5, 2}, {7, 2}}) {
    auto r = verify_minor(PadicCtx::create(static_cast<std::uint64_t>(p), 2), g);
    require_pass(r);
  }
  // g = 1: the minor is Cf_{p-1}((t-z_1)^{h-1}(t-z_2)^h(t-z_3)^h), whose
  // lex-leading term z_1^{h-1} comes from the first factor alone.
  for (std::uint64_t p : {5, 7, 11}) {
    auto ctx = PadicCtx::create(p, 3);
    const int h = static_cast<int>(p - 1) / 2;
    const auto lt = leading_term_lex(ps_solutions(ctx, 1, 1)(0, 0));
    CHECK(lt.exponents == std::vector<int>{h - 1, 0, 0});
    CHECK(lt.coeff == ctx.from_int(h % 2 == 1 ? 1 : -1));
  }
}

TEST_CASE("configuration errors") {
  CHECK(code_of([] { validate_kz(PadicCtx::create(2, 3), 1); }) == ErrorCode::OddPrimeRequired);
  CHECK(code_of([] { validate_kz(PadicCtx::create(3, 3), 2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { kz_residual(PadicCtx::create(3, 1), 1, 2, CheckMode::make_symbolic()); }) ==
        ErrorCode::PrecisionTooLow);
  CHECK(master_exponent(3, 2) == 4);
}
