#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dworklab/ghosts.hpp"
#include "dworklab/hasse_witt.hpp"

namespace dworklab {

/// A secondary valuation check carried inside a report.
struct SubCheck {
  std::string name;
  int claimed = 0;
  int observed = 0;
  bool pass() const { return observed >= claimed; }
};

struct CongruenceReport {
  std::string theorem_id;
  std::string statement;
  /// "symbolic" or "pointwise".
  std::string mode;
  int claimed_valuation = 0;
  /// Minimum valuation of LHS - RHS over all entries and points; capped at N.
  int observed_min_valuation = 0;
  bool pass = false;
  std::size_t points = 0;
  /// Per-point observed valuations in pointwise mode.
  std::vector<int> per_point;
  std::optional<std::string> witness;
  std::vector<SubCheck> checks;

  /// Sets pass from the main and secondary valuations.
  void finalize();
};

/// Symbolic checks work with z-polynomial matrices; pointwise checks evaluate
/// at the given points (lifts in the context's ring).
struct CheckMode {
  bool symbolic = true;
  std::vector<std::vector<ExtElem>> points;

  static CheckMode make_symbolic() { return {}; }
  static CheckMode at(std::vector<std::vector<ExtElem>> pts) { return {false, std::move(pts)}; }
};

/// Minimum entry valuation of a - b and the entry attaining it.
struct Deviation {
  int valuation = 0;
  std::size_t row = 0, col = 0;
};
Deviation deviation(const PadicCtx& ctx, const ScalarMatrix& a, const ScalarMatrix& b);
Deviation deviation(const PolyMatrix& a, const PolyMatrix& b);

struct CheckOutcome {
  Deviation dev;
  /// Observed valuations of the secondary checks, in order.
  std::vector<int> subs;
};

/// Runs `body` once (symbolic, with a null point) or at every point of the
/// mode in parallel, and merges the outcomes by minimum valuation.
CongruenceReport run_congruence_check(const std::string& id, int claimed, const CheckMode& mode,
                                      const std::vector<SubCheck>& subs,
                                      const std::function<CheckOutcome(const std::vector<ExtElem>*)>& body);

/// Theorem ids understood by the verifiers and their statements.
std::string theorem_statement(const std::string& id);

/// A(s+1, W_s) = sum_j A(j, V_{j-1}) sigma^j(A(s-j+1, W_s^(j))) + A(s+1, V_s),
/// exactly, plus A(s+1, V_s) = 0 mod p^s as a secondary check.
CongruenceReport verify_decomposition(const GhostTuple& tuple, std::size_t s, const CheckMode& mode);

/// A(s+1, W_s) = prod_k sigma^k(A(1, Lambda_k)) mod p.
CongruenceReport verify_frobenius_factorization(const GhostTuple& tuple, std::size_t s, const CheckMode& mode);

/// A(s+1, W_s) sigma(A(s, W_s^(1)))^{-1} = A(s, W_{s-1}) sigma(A(s-1, W_{s-1}^(1)))^{-1} mod p^s.
CongruenceReport verify_dwork_ratio(const GhostTuple& tuple, std::size_t s, const CheckMode& mode);

/// The determinant form of the ratio congruence.
CongruenceReport verify_det_congruence(const GhostTuple& tuple, std::size_t s, const CheckMode& mode);

/// D_v(sigma^m A(s+1, W_s)) sigma^m(A(s+1, W_s))^{-1} =
/// D_v(sigma^m A(s, W_{s-1})) sigma^m(A(s, W_{s-1}))^{-1} mod p^{s+m}.
/// Pointwise mode needs factored tuple entries.
CongruenceReport verify_derivative_congruence(const GhostTuple& tuple, std::size_t s, unsigned m, int v,
                                              const CheckMode& mode);

/// D_u D_v A(s+1, W_s) A(s+1, W_s)^{-1} = D_u D_v A(s, W_{s-1}) A(s, W_{s-1})^{-1} mod p^s.
CongruenceReport verify_second_derivative_congruence(const GhostTuple& tuple, std::size_t s, int u, int v,
                                                     const CheckMode& mode);

/// W_s^(j) in factored form; NotFactored unless every entry carries one.
FactoredPoly factored_big_product(const GhostTuple& tuple, std::size_t s, std::size_t j);

}  // namespace dworklab
