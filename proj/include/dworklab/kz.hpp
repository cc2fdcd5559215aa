#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dworklab/congruence.hpp"
#include "dworklab/factored.hpp"
#include "dworklab/ghosts.hpp"

namespace dworklab {

/// Rejects p = 2 (OddPrimeRequired) and p < 2g + 1 (InvalidArgument).
void validate_kz(const PadicCtx& ctx, int g);

/// (p^s - 1) / 2.
std::uint64_t master_exponent(std::uint64_t p, unsigned s);

/// Phi_s = ((t - z_1) ... (t - z_n))^{(p^s - 1)/2}, n = 2g + 1.
FactoredPoly master_polynomial(const PadicCtx& ctx, int g, unsigned s);

/// The constant tuple (Phi_1, Phi_1, ...) with Delta = {1, ..., g}.
GhostTuple kz_tuple(const PadicCtx& ctx, int g);

/// I_s: entry (i, l) is the coefficient of t^{l p^s - 1} in Phi_s / (t - z_i),
/// for l = 1..g.
PolyMatrix ps_solutions(const PadicCtx& ctx, int g, unsigned s);
ScalarMatrix ps_solutions_at(const PadicCtx& ctx, int g, unsigned s, std::span<const ExtElem> a);
/// d/dz_v I_s at a.
ScalarMatrix ps_solutions_derivative_at(const PadicCtx& ctx, int g, unsigned s, std::span<const ExtElem> a, int v);

/// A(s, Phi_s) symbolically and at a point.
PolyMatrix hw_master(const PadicCtx& ctx, int g, unsigned s);
ScalarMatrix hw_master_at(const PadicCtx& ctx, int g, unsigned s, std::span<const ExtElem> a);
/// (D_v A(s, Phi_s))(a).
ScalarMatrix hw_master_derivative_at(const PadicCtx& ctx, int g, unsigned s, std::span<const ExtElem> a, int v);

/// H_i(a) = 1/2 sum_{j != i} Omega_ij / (a_i - a_j). NonUnitDifference when
/// some a_i - a_j is not a unit.
ScalarMatrix gaudin(const PadicCtx& ctx, std::span<const ExtElem> a, int i);

/// I_s solves the KZ equations mod p^s; column sums vanish mod p^s.
CongruenceReport kz_residual(const PadicCtx& ctx, int g, unsigned s, const CheckMode& mode);

/// The two identities behind the KZ property of I_s, checked exactly.
CongruenceReport verify_phi_identities(const PadicCtx& ctx, int g, unsigned s);

/// I_{s+1} A(s+1)^{-1} = I_s A(s)^{-1} and the differentiated form mod p^s,
/// and I_s A(s)^{-1} = I_1 A(1)^{-1} mod p. OutsideDomain at points where a
/// Hasse-Witt determinant is not a unit.
CongruenceReport verify_solution_congruence(const PadicCtx& ctx, int g, unsigned s, const CheckMode& mode);

/// The g x g minor of I_1 in rows 1, 3, ..., 2g-1 has a unit leading coefficient,
/// the expected leading monomial and degree g^2(p-1)/2 - g(g+1)/2.
CongruenceReport verify_minor(const PadicCtx& ctx, int g);

}  // namespace dworklab
