#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dworklab/ghosts.hpp"
#include "oracles.hpp"

using namespace dworklab;

namespace {

LaurentPoly cubic(const PadicCtx& ctx) { return LaurentPoly::from_factored(FactoredPoly::master(ctx, 3, 1)); }

GhostTuple constant_tuple(const LaurentPoly& f, int g) {
  GhostTuple T;
  T.lambdas = {f};
  T.periodic = true;
  T.delta = delta_range(g);
  return T;
}

// Random r = 1 tuple whose t-supports lie in [0, width]; admissibility is
// decided by the library and then cross-checked by brute force below.
GhostTuple random_tuple(const PadicCtx& ctx, int n, std::size_t len, int width, int g, std::mt19937_64& rng) {
  GhostTuple T;
  T.delta = delta_range(g);
  for (std::size_t i = 0; i < len; ++i) {
    const int terms = 1 + static_cast<int>(rng() % 4);
    LaurentPoly f(ctx, 1, n);
    while (f.is_zero()) f = oracle::random_poly(ctx, 1, n, terms, 0, width, 0, 1, rng);
    T.lambdas.push_back(f);
  }
  return T;
}

// Brute force over every integer point of Delta + N_i + ... + p^{j-i} N_j.
bool brute_admissible(const std::vector<Interval>& iv, const std::vector<long>& delta, long p) {
  const std::size_t l = iv.size() - 1;
  for (std::size_t i = 0; i < l; ++i) {
    long lo = 0, hi = 0, scale = 1;
    bool empty = false;
    for (std::size_t j = i; j < l; ++j) {
      empty = empty || iv[j].empty;
      lo += scale * iv[j].lo;
      hi += scale * iv[j].hi;
      scale *= p;
      if (empty) continue;
      for (long d : delta)
        for (long x = d + lo; x <= d + hi; ++x) {
          if (x % scale != 0) continue;
          if (std::find(delta.begin(), delta.end(), x / scale) == delta.end()) return false;
        }
    }
  }
  return true;
}

std::vector<Interval> intervals_of(const GhostTuple& T) {
  std::vector<Interval> iv;
  for (const auto& f : T.lambdas) {
    if (f.is_zero()) {
      iv.push_back({0, 0, true});
      continue;
    }
    auto b = newton_box(f);
    iv.push_back({b.lo[0], b.hi[0], false});
  }
  return iv;
}

}  // namespace

TEST_CASE("big products") {
  auto ctx = PadicCtx::create(3, 3);
  auto F = cubic(ctx);
  auto T = constant_tuple(F, 1);
  CHECK(big_product(T, 2, 2) == F);
  for (unsigned s = 1; s <= 2; ++s) {
    std::uint64_t e = 1;
    for (unsigned k = 0; k < s; ++k) e *= 3;
    CHECK(big_product(T, s - 1, 0) == LaurentPoly::from_factored(FactoredPoly::master(ctx, 3, (e - 1) / 2)));
  }
  auto c = LaurentPoly::constant(ctx, 1, 0, ctx.from_int(2));
  auto C = constant_tuple(c, 1);
  CHECK(big_product(C, 2, 0) == LaurentPoly::constant(ctx, 1, 0, ctx.pow(ctx.from_int(2), 1 + 3 + 9)));

  GhostTuple finite;
  finite.lambdas = {F, F};
  finite.delta = delta_range(1);
  CHECK_THROWS_AS(big_product(finite, 2, 0), Error);
  CHECK_THROWS_AS(big_product(finite, 0, 1), Error);
}

TEST_CASE("ghosts of small tuples") {
  auto ctx = PadicCtx::create(3, 3);
  auto F = cubic(ctx);
  GhostSeq G(constant_tuple(F, 1), 2);
  CHECK(G.V(0) == F);
  CHECK(G.V(1) == poly_mul(F, poly_pow(F, 3) - frobenius_sub(F, 1)));
  CHECK(G.valuation(1) >= 1);
  CHECK(G.valuation(2) >= 2);
  CHECK(G.V(1).min_valuation() == 1);

  auto one = LaurentPoly::constant(ctx, 1, 3, ctx.one());
  GhostSeq U(constant_tuple(one, 1), 3);
  CHECK(U.V(0) == one);
  for (std::size_t s = 1; s <= 3; ++s) CHECK(U.V(s).is_zero());

  CHECK_THROWS_AS(GhostSeq(constant_tuple(F, 1), 4), Error);
}

TEST_CASE("ghost divisibility, support bound and reconstruction on random tuples") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t p = trial % 2 == 0 ? 3 : 5;
    const std::size_t l = p == 3 ? 1 + trial % 4 : 1 + trial % 2;
    const int n = l >= 3 ? 0 : static_cast<int>(trial % 3);
    auto ctx = PadicCtx::create(p, static_cast<unsigned>(l + 1));
    auto T = random_tuple(ctx, n, l + 1, 2, 1 + trial % 2, rng);
    GhostSeq G(T, l);
    long lo = 0, hi = 0, scale = 1;
    for (std::size_t s = 0; s <= l; ++s) {
      CHECK(G.valuation(s) >= static_cast<int>(s));
      auto b = newton_box(T.lambdas[s]);
      lo += scale * b.lo[0];
      hi += scale * b.hi[0];
      scale *= static_cast<long>(p);
      if (!G.V(s).is_zero()) {
        auto vb = newton_box(G.V(s));
        CHECK(vb.lo[0] >= lo);
        CHECK(vb.hi[0] <= hi);
      }
      LaurentPoly sum = G.V(s);
      for (std::size_t j = 1; j <= s; ++j) sum = sum + poly_mul(G.V(j - 1), frobenius_sub(G.W(j, s), j));
      CHECK(sum == G.W(0, s));
    }
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("pointwise ghosts agree with symbolic ghosts") {
  std::mt19937_64 rng(5);
  auto ctx = PadicCtx::create(3, 3, 2);
  auto F = cubic(ctx);
  auto T = constant_tuple(F, 1);
  GhostSeq G(T, 2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ExtElem> a;
    for (int i = 0; i < 3; ++i) a.push_back(oracle::random_elem(ctx, rng));
    PointGhosts P(T, a);
    for (std::size_t s = 0; s <= 2; ++s) {
      CHECK(P.V(s) == eval_z_dense(G.V(s), a));
      for (std::size_t j = 0; j <= s; ++j) CHECK(P.W(j, s, 0) == eval_z_dense(G.W(j, s), a));
    }
    std::vector<ExtElem> a3;
    for (const auto& x : a) a3.push_back(ctx.frobenius(x, 1));
    CHECK(P.W(1, 2, 1) == eval_z_dense(G.W(1, 2), a3));
  }
}

TEST_CASE("admissibility of interval patterns") {
  for (std::uint64_t p : {3, 5, 7, 11}) {
    const long h = static_cast<long>(p - 1) / 2;
    Interval N{-h, 3 * h, false};
    auto v = check_admissible(std::span<const Interval>(&N, 1), true, {0, 1}, p, 1);
    CHECK(v.admissible);
    CHECK(v.all_lengths);
    for (long g = 1; 2 * g + 1 < static_cast<long>(p); ++g) {
      std::vector<long> d;
      for (long i = 1; i <= g; ++i) d.push_back(i);
      Interval M{0, g * static_cast<long>(p) + h - g, false};
      auto w = check_admissible(std::span<const Interval>(&M, 1), true, d, p, 1);
      CHECK(w.admissible);
      CHECK(w.all_lengths);
    }
  }

  Interval bad{0, 9, false};
  auto v = check_admissible(std::span<const Interval>(&bad, 1), true, {1}, 3, 1);
  CHECK_FALSE(v.admissible);
  CHECK(v.window_i == 0);
  CHECK(v.window_j == 0);
  REQUIRE(v.q.size() == 1);
  CHECK((v.q[0] == 2 || v.q[0] == 3));

  Interval empty{0, 0, true};
  CHECK(check_admissible(std::span<const Interval>(&empty, 1), true, {1}, 3, 1).admissible);
  CHECK_THROWS_AS(check_admissible(std::span<const Interval>(&bad, 1), true, {}, 3, 1), Error);
}

TEST_CASE("admissibility agrees with brute force and passes to subtuples") {
  std::mt19937_64 rng(99);
  int admissible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::uint64_t p = trial % 2 == 0 ? 3 : 5;
    const std::size_t len = 2 + rng() % 4;
    std::vector<Interval> iv;
    for (std::size_t i = 0; i < len; ++i) {
      const long lo = static_cast<long>(rng() % 4) - 1;
      iv.push_back({lo, lo + static_cast<long>(rng() % 8), rng() % 10 == 0});
    }
    std::vector<long> delta;
    const long g = 1 + static_cast<long>(rng() % 3);
    for (long i = 1; i <= g; ++i) delta.push_back(i - static_cast<long>(rng() % 2));
    std::sort(delta.begin(), delta.end());
    delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
    auto v = check_admissible(iv, false, delta, p, len);
    CHECK(v.admissible == brute_admissible(iv, delta, static_cast<long>(p)));
    if (!v.admissible) continue;
    ++admissible;
    for (std::size_t a = 0; a < len; ++a)
      for (std::size_t b = a + 2; b <= len; ++b) {
        std::vector<Interval> sub(iv.begin() + static_cast<long>(a), iv.begin() + static_cast<long>(b));
        CHECK(check_admissible(sub, false, delta, p, sub.size()).admissible);
      }
  }
  CHECK(admissible > 20);
}

TEST_CASE("constant-pattern verdicts cover every window length") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t p = trial % 2 == 0 ? 3 : 5;
    const long lo = static_cast<long>(rng() % 5) - 2;
    Interval N{lo, lo + static_cast<long>(rng() % 12), false};
    std::vector<long> delta{1};
    if (rng() % 2) delta.push_back(2);
    auto v = check_admissible(std::span<const Interval>(&N, 1), true, delta, p, 1);
    std::vector<Interval> rep(9, N);
    CHECK(v.admissible == brute_admissible(rep, delta, static_cast<long>(p)));
  }
}

TEST_CASE("tuple admissibility through Newton boxes") {
  auto ctx = PadicCtx::create(5, 2);
  auto F = LaurentPoly::from_factored(FactoredPoly::master(ctx, 5, 2));
  auto T = constant_tuple(F, 2);
  CHECK(check_admissible(T, 4).admissible);

  GhostTuple bad;
  bad.delta = {{1}};
  auto ctx3 = PadicCtx::create(3, 2);
  bad.lambdas = {LaurentPoly::from_terms(ctx3, 1, 0, {{{0}, ctx3.one()}, {{9}, ctx3.one()}})};
  bad.periodic = true;
  CHECK_FALSE(check_admissible(bad, 3).admissible);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    auto Tr = random_tuple(ctx3, 1, 4, 3, 1, rng);
    CHECK(check_admissible(Tr, 4).admissible == brute_admissible(intervals_of(Tr), {1}, 3));
  }

  GhostTuple two;
  two.delta = {{1, 1}};
  two.lambdas = {LaurentPoly::constant(ctx3, 2, 0, ctx3.one()), LaurentPoly::constant(ctx3, 2, 0, ctx3.one())};
  auto v = check_admissible(two, 2);
  CHECK(v.admissible);
  two.lambdas[0] = LaurentPoly::from_terms(ctx3, 2, 0, {{{0, 0}, ctx3.one()}, {{200, 200}, ctx3.one()}});
  CHECK_THROWS_AS(check_admissible(two, 2, 100), Error);
}
