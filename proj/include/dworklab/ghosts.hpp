#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dworklab/hasse_witt.hpp"
#include "dworklab/laurent.hpp"
#include "dworklab/upoly.hpp"

namespace dworklab {

/// (Lambda_0, Lambda_1, ...): a finite tuple, or an infinite one that repeats
/// `lambdas` cyclically.
struct GhostTuple {
  std::vector<LaurentPoly> lambdas;
  bool periodic = false;
  Delta delta;

  const LaurentPoly& lambda(std::size_t i) const;
  /// Number of entries; max() for periodic tuples.
  std::size_t length() const {
    return periodic ? std::numeric_limits<std::size_t>::max() : lambdas.size();
  }
};

/// Closed interval [lo, hi], or empty (the Newton polytope of 0).
struct Interval {
  long lo = 0, hi = 0;
  bool empty = false;
};

struct AdmissibilityVerdict {
  bool admissible = true;
  /// The verdict holds for windows of every length, not only those checked.
  bool all_lengths = false;
  std::size_t max_window_checked = 0;
  /// Offending window [window_i, window_j] and lattice point q (p^L q lies in
  /// Delta + N_i + ... but q is not in Delta).
  std::size_t window_i = 0, window_j = 0;
  std::vector<long> q;
  std::string note;
};

/// Delta-admissibility of intervals (r = 1). For a periodic pattern of one
/// interval the check runs until the q-sets stabilize and then covers all
/// window lengths; other periodic patterns are checked to `depth` lengths.
AdmissibilityVerdict check_admissible(std::span<const Interval> polytopes, bool periodic, const std::vector<long>& delta,
                                      std::uint64_t p, std::size_t depth);

/// Admissibility of a tuple through the t-Newton boxes of its entries. For
/// r > 1 the boxes over-approximate the polytopes: a pass is sound, a failure
/// is reported as inconclusive in the note.
AdmissibilityVerdict check_admissible(const GhostTuple& tuple, std::size_t depth,
                                      std::size_t enumeration_cap = 1'000'000);

/// W_s^{(j)} = Lambda_j Lambda_{j+1}^p ... Lambda_s^{p^{s-j}}.
LaurentPoly big_product(const GhostTuple& tuple, std::size_t s, std::size_t j);

/// Ghosts V_0..V_l, with the products W_s^{(j)} cached by (j, s).
class GhostSeq {
 public:
  GhostSeq(GhostTuple tuple, std::size_t l);

  const GhostTuple& tuple() const noexcept { return tuple_; }
  std::size_t l() const noexcept { return V_.size() - 1; }
  const LaurentPoly& V(std::size_t s) const;
  /// W_s^{(j)}.
  const LaurentPoly& W(std::size_t j, std::size_t s);
  /// Minimum coefficient valuation of V_s.
  int valuation(std::size_t s) const { return V_.at(s).min_valuation(); }

 private:
  GhostTuple tuple_;
  std::vector<LaurentPoly> V_;
  std::map<std::pair<std::size_t, std::size_t>, LaurentPoly> W_;
};

/// The same objects specialized at z = a^{p^k}, kept dense in t. Used by the
/// point-evaluated verifiers; nothing here is ever expanded in z.
class PointGhosts {
 public:
  PointGhosts(const GhostTuple& tuple, std::vector<ExtElem> a);

  const std::vector<ExtElem>& point(unsigned frob);
  const UPoly& lambda(std::size_t k, unsigned frob);
  /// W_s^{(j)}(t, a^{p^frob}).
  const UPoly& W(std::size_t j, std::size_t s, unsigned frob);
  /// V_s(t, a).
  const UPoly& V(std::size_t s);

 private:
  const GhostTuple& tuple_;
  std::map<unsigned, std::vector<ExtElem>> points_;
  std::map<std::pair<std::size_t, unsigned>, UPoly> lambda_;
  std::map<std::tuple<std::size_t, std::size_t, unsigned>, UPoly> W_;
  std::vector<UPoly> V_;
};

}  // namespace dworklab
