#pragma once

#include <span>
#include <vector>

#include "dworklab/factored.hpp"
#include "dworklab/laurent.hpp"
#include "dworklab/matrix.hpp"
#include "dworklab/upoly.hpp"

namespace dworklab {

/// Finite index set in Z^r; rows and columns of Hasse-Witt matrices follow
/// its order.
using Delta = std::vector<std::vector<int>>;

/// {1, ..., g} in Z^1.
Delta delta_range(int g);

/// A(level, F) = (Cf_{p^level v - u} F)_{u, v in Delta}, u indexing rows.
PolyMatrix hw_matrix(unsigned level, const LaurentPoly& F, const Delta& delta);

/// The same matrix for a t-polynomial already specialized at a point.
ScalarMatrix hw_matrix_dense(unsigned level, const UPoly& Fa, const Delta& delta);

/// A(level, F)(a), computed by specializing F first (r = 1).
ScalarMatrix hw_matrix_at(unsigned level, const LaurentPoly& F, const Delta& delta, std::span<const ExtElem> a);

/// (D_v A(level, F))(a) for a factored F, via the chain rule on one factor.
ScalarMatrix hw_derivative_at(unsigned level, const FactoredPoly& F, const Delta& delta, std::span<const ExtElem> a,
                              int v);

/// (D_u D_v A(level, F))(a) for a factored F.
ScalarMatrix hw_second_derivative_at(unsigned level, const FactoredPoly& F, const Delta& delta,
                                     std::span<const ExtElem> a, int u, int v);

PolyMatrix hw_matrix_factored_derivative(unsigned level, const FactoredPoly& F, const Delta& delta, int v);

}  // namespace dworklab
