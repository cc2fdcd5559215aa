#include "dworklab/domain.hpp"

#include <algorithm>
#include <random>

#include "dworklab/factored.hpp"
#include "dworklab/hasse_witt.hpp"
#include "dworklab/parallel.hpp"

namespace dworklab {

namespace {

std::uint64_t field_size(const PadicCtx& ctx) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < ctx.degree(); ++i) q *= ctx.p();
  return q;
}

// Total number of residue tuples, or nullopt past 2^63.
std::optional<std::uint64_t> tuple_count(std::uint64_t q, int n) {
  unsigned __int128 t = 1;
  for (int i = 0; i < n; ++i) {
    t *= q;
    if (t > (static_cast<unsigned __int128>(1) << 63)) return std::nullopt;
  }
  return static_cast<std::uint64_t>(t);
}

// Membership test mod p with the master polynomial prepared once.
class MembershipTest {
 public:
  MembershipTest(const PadicCtx& ctx, int g)
      : ctx1_(ctx.with_precision(1)), g_(g), phi_(FactoredPoly::master(ctx1_, 2 * g + 1, (ctx.p() - 1) / 2)) {}

  bool operator()(std::span<const ExtElem> residues) const {
    std::vector<ExtElem> a;
    for (const auto& r : residues) {
      ExtElem x(ctx1_.degree());
      for (unsigned i = 0; i < ctx1_.degree(); ++i) x[i] = r[i] % ctx1_.p();
      a.push_back(x);
    }
    auto A = hw_matrix_dense(1, phi_.at(a).expand_dense(), delta_range(g_));
    return ctx1_.is_unit(determinant(ScalarOps{ctx1_}, A));
  }

 private:
  PadicCtx ctx1_;
  int g_;
  FactoredPoly phi_;
};

std::vector<ExtElem> residues_of_index(const PadicCtx& ctx, int n, std::uint64_t index) {
  const std::uint64_t q = field_size(ctx);
  std::vector<ExtElem> r(static_cast<std::size_t>(n));
  for (int i = n; i-- > 0;) {
    r[static_cast<std::size_t>(i)] = residue_from_index(ctx, index % q);
    index /= q;
  }
  return r;
}

DomainPoint flagged_point(const PadicCtx& ctx, const MembershipTest& test, std::uint64_t index, int n) {
  DomainPoint pt;
  pt.index = index;
  pt.residues = residues_of_index(ctx, n, index);
  pt.in_D = test(pt.residues);
  pt.in_D_o = pt.in_D && residue_distinct(ctx, pt.residues);
  for (const auto& r : pt.residues) pt.lift.push_back(ctx.teichmueller(r));
  return pt;
}

}  // namespace

ExtElem residue_from_index(const PadicCtx& ctx, std::uint64_t k) {
  ExtElem r(ctx.degree());
  for (unsigned i = 0; i < ctx.degree(); ++i) {
    r[i] = k % ctx.p();
    k /= ctx.p();
  }
  return r;
}

std::uint64_t residue_index(const PadicCtx& ctx, const ExtElem& r) {
  std::uint64_t k = 0;
  for (unsigned i = ctx.degree(); i-- > 0;) k = k * ctx.p() + r[i] % ctx.p();
  return k;
}

std::uint64_t hw_det_degree(std::uint64_t p, int g) {
  return (p - 1) * static_cast<std::uint64_t>(g) * static_cast<std::uint64_t>(g) / 2;
}

bool in_domain(const PadicCtx& ctx, int g, std::span<const ExtElem> a) {
  if (static_cast<int>(a.size()) != 2 * g + 1) fail(ErrorCode::InvalidArgument, "point has the wrong number of coordinates");
  return MembershipTest(ctx, g)(a);
}

bool residue_distinct(const PadicCtx& ctx, std::span<const ExtElem> a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!ctx.is_unit(ctx.sub(a[i], a[j]))) return false;
  return true;
}

DomainPoint make_point(const PadicCtx& ctx, int g, std::vector<ExtElem> residues) {
  const int n = 2 * g + 1;
  if (static_cast<int>(residues.size()) != n) fail(ErrorCode::InvalidArgument, "point has the wrong number of coordinates");
  const std::uint64_t q = field_size(ctx);
  std::uint64_t index = 0;
  for (const auto& r : residues) index = index * q + residue_index(ctx, r);
  return flagged_point(ctx, MembershipTest(ctx, g), index, n);
}

DomainPoint point_from_index(const PadicCtx& ctx, int g, std::uint64_t index) {
  const int n = 2 * g + 1;
  auto total = tuple_count(field_size(ctx), n);
  if (total && index >= *total) fail(ErrorCode::IndexOutOfRange, "point index " + std::to_string(index));
  return flagged_point(ctx, MembershipTest(ctx, g), index, n);
}

ScanSummary scan_domain(const PadicCtx& ctx, int g, const ScanMode& mode) {
  const int n = 2 * g + 1;
  const std::uint64_t q = field_size(ctx);
  auto total = tuple_count(q, n);
  ScanSummary sum;
  sum.d = hw_det_degree(ctx.p(), g);
  sum.total = total.value_or(0);
  const MembershipTest test(ctx, g);

  std::vector<std::uint64_t> indices;
  if (mode.exhaustive) {
    if (!total || *total > kExhaustiveLimit)
      fail(ErrorCode::TooLarge, "exhaustive scan over more than " + std::to_string(kExhaustiveLimit) + " tuples");
    indices.resize(*total);
    for (std::uint64_t i = 0; i < *total; ++i) indices[i] = i;
    const long double qq = static_cast<long double>(q);
    long double qn = 1;
    for (int i = 0; i < n; ++i) qn *= qq;
    sum.lower_bound = (qn - 1) / (qq - 1) * (qq - 1 - static_cast<long double>(sum.d)) + 1;
  } else {
    if (!total) fail(ErrorCode::TooLarge, "tuple space exceeds 2^63");
    std::mt19937_64 rng(mode.seed);
    for (std::size_t k = 0; k < mode.samples; ++k) indices.push_back(uniform_below(*total, rng));
  }

  std::vector<unsigned char> flags(indices.size(), 0);
  parallel_for(indices.size(), [&](std::size_t k) {
    auto res = residues_of_index(ctx, n, indices[k]);
    if (!test(res)) return;
    flags[k] = residue_distinct(ctx, res) ? 2 : 1;
  });
  sum.examined = indices.size();
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (flags[k] == 0) continue;
    ++sum.in_D;
    if (flags[k] == 2) ++sum.in_D_o;
    if (sum.points.size() < kKeptPoints) sum.points.push_back(flagged_point(ctx, test, indices[k], n));
  }
  return sum;
}

std::vector<DomainPoint> domain_points(const PadicCtx& ctx, int g, std::size_t count, std::uint64_t seed) {
  const int n = 2 * g + 1;
  auto total = tuple_count(field_size(ctx), n);
  if (!total) fail(ErrorCode::TooLarge, "tuple space exceeds 2^63");
  const MembershipTest test(ctx, g);
  std::mt19937_64 rng(seed);
  std::vector<DomainPoint> out;
  std::vector<std::uint64_t> seen;
  const std::size_t max_draws = 2000 * count + 10000;
  for (std::size_t draw = 0; draw < max_draws && out.size() < count; ++draw) {
    const std::uint64_t idx = uniform_below(*total, rng);
    if (std::find(seen.begin(), seen.end(), idx) != seen.end()) continue;
    seen.push_back(idx);
    auto res = residues_of_index(ctx, n, idx);
    if (!residue_distinct(ctx, res) || !test(res)) continue;
    out.push_back(flagged_point(ctx, test, idx, n));
  }
  if (out.size() < count)
    fail(ErrorCode::OutsideDomain, "found only " + std::to_string(out.size()) + " residue-distinct domain points");
  return out;
}

}  // namespace dworklab
