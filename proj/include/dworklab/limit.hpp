#pragma once

#include <span>
#include <vector>

#include "dworklab/congruence.hpp"
#include "dworklab/domain.hpp"
#include "dworklab/kz.hpp"

namespace dworklab {

struct LimitAReport {
  /// Valuation of R_{s+1} - R_s for s = 0..s_max-2, with
  /// R_s = A(s+1, Phi_{s+1})(a) A(s, Phi_s)(a^p)^{-1}.
  std::vector<int> decay;
  /// Valuation of det R_s for s = 0..s_max-1.
  std::vector<int> det_valuations;
  ScalarMatrix approx;
};

/// OutsideDomain unless det A(1, Phi_1)(a) is a unit; needs N >= s_max + 1.
LimitAReport limit_A(const PadicCtx& ctx, int g, std::span<const ExtElem> a, unsigned s_max);

struct LimitIReport {
  /// Valuations of the step differences for s = 1..s_max-1 of
  /// I_s A_s^{-1}, (d/dz_i I_s) A_s^{-1} and (D_i A_s) A_s^{-1}, A_s = A(s, Phi_s)(a).
  std::vector<int> decay_I;
  std::vector<std::vector<int>> decay_I_i;
  std::vector<std::vector<int>> decay_A_i;
  ScalarMatrix I;
  std::vector<ScalarMatrix> I_i;
  std::vector<ScalarMatrix> A_i;
  /// The same iterates one level down (equal to the above when s_max = 1).
  ScalarMatrix prev_I;
  std::vector<ScalarMatrix> prev_I_i;
  std::vector<ScalarMatrix> prev_A_i;
};

LimitIReport limit_I(const PadicCtx& ctx, int g, std::span<const ExtElem> a, unsigned s_max);

/// I^(i) = H_i I to valuation s_max - 1, for every i.
CongruenceReport verify_kz_mc(const PadicCtx& ctx, std::span<const ExtElem> a, const LimitIReport& lim, unsigned s_max);

/// dI/dz_i - H_i I + I A^(i) = 0 to valuation s_max - 1. dI/dz_i comes from the
/// quotient rule at level s_max while I and A^(i) are the level s_max - 1
/// iterates, so each ingredient is tested against the others. The coefficient
/// matrix recovered from a unit minor of I must equal -A^(i).
CongruenceReport verify_invariance(const PadicCtx& ctx, std::span<const ExtElem> a, const LimitIReport& lim,
                                   unsigned s_max);

/// Some g x g minor of I_1(a) A(1, Phi_1)(a)^{-1} is a unit; the minor in
/// rows 1, 3, ..., 2g-1 is reported separately.
CongruenceReport rank_check(const PadicCtx& ctx, int g, std::span<const ExtElem> a);

/// Rows of the first g x g minor of `m` that is a unit, if any.
std::optional<std::vector<std::size_t>> unit_minor_rows(const PadicCtx& ctx, const ScalarMatrix& m);

struct LimitReport {
  DomainPoint point;
  unsigned s_max = 0;
  LimitAReport A;
  LimitIReport I;
  CongruenceReport kz_mc, invariance, rank;
  /// Decay profiles meet their claimed valuations and |det| = 1 throughout.
  bool decay_ok = false;
  bool pass() const { return decay_ok && kz_mc.pass && invariance.pass && rank.pass; }
};

/// All certificates at one point of the residue-distinct domain.
LimitReport run_limit(const PadicCtx& ctx, int g, const DomainPoint& point, unsigned s_max);

}  // namespace dworklab
