#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dworklab/padic.hpp"

namespace dworklab {

/// A residue tuple in F_{p^m}^n with its Teichmueller lift.
struct DomainPoint {
  /// Mixed-radix index of the residue tuple, first coordinate most significant.
  std::uint64_t index = 0;
  std::vector<ExtElem> residues;
  std::vector<ExtElem> lift;
  /// det A(1, Phi_1) is a unit at the point.
  bool in_D = false;
  /// Additionally, all residues pairwise distinct.
  bool in_D_o = false;
};

/// F_{p^m} element with base-p digits of k as coefficients.
ExtElem residue_from_index(const PadicCtx& ctx, std::uint64_t k);
std::uint64_t residue_index(const PadicCtx& ctx, const ExtElem& r);

/// d = (p - 1) g^2 / 2, the z-degree of det A(1, Phi_1).
std::uint64_t hw_det_degree(std::uint64_t p, int g);

/// Membership is decided mod p, so any lift of the residues gives the same answer.
bool in_domain(const PadicCtx& ctx, int g, std::span<const ExtElem> a);
bool residue_distinct(const PadicCtx& ctx, std::span<const ExtElem> a);

DomainPoint make_point(const PadicCtx& ctx, int g, std::vector<ExtElem> residues);
DomainPoint point_from_index(const PadicCtx& ctx, int g, std::uint64_t index);

struct ScanMode {
  bool exhaustive = true;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

struct ScanSummary {
  std::uint64_t total = 0;
  std::uint64_t examined = 0;
  std::uint64_t in_D = 0;
  std::uint64_t in_D_o = 0;
  std::uint64_t d = 0;
  /// (p^{mn} - 1)/(p^m - 1) (p^m - 1 - d) + 1, exhaustive mode only.
  std::optional<long double> lower_bound;
  /// Points found in D, in index order, at most kKeptPoints of them.
  std::vector<DomainPoint> points;
};

inline constexpr std::size_t kKeptPoints = 100'000;

inline constexpr std::uint64_t kExhaustiveLimit = 10'000'000;

/// Exhaustive enumeration (TooLarge past kExhaustiveLimit tuples) or uniform
/// sampling with replacement.
ScanSummary scan_domain(const PadicCtx& ctx, int g, const ScanMode& mode);

/// `count` distinct points of the residue-distinct domain, drawn by rejection
/// from a seeded generator. OutsideDomain if they cannot be found.
std::vector<DomainPoint> domain_points(const PadicCtx& ctx, int g, std::size_t count, std::uint64_t seed);

/// Uniform draw from [0, bound) by rejection; identical on every platform,
/// unlike std::uniform_int_distribution.
template <class Rng>
std::uint64_t uniform_below(std::uint64_t bound, Rng& rng) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

}  // namespace dworklab
