#include "dworklab/matrix.hpp"

#include <algorithm>

namespace dworklab {

int min_valuation(const PadicCtx& ctx, const ScalarMatrix& a) {
  int best = static_cast<int>(ctx.precision());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) best = std::min(best, ctx.valuation(a(i, j)));
  return best;
}

int min_valuation(const PolyMatrix& a) {
  int best = static_cast<int>(a(0, 0).ctx().precision());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) best = std::min(best, a(i, j).min_valuation());
  return best;
}

ScalarMatrix inverse(const PadicCtx& ctx, const ScalarMatrix& a) {
  ScalarOps ops{ctx};
  const ExtElem det = determinant(ops, a);
  if (!ctx.is_unit(det)) fail(ErrorCode::SingularModP, "determinant is not a unit");
  return mat_scale(ops, adjugate(ops, a), ctx.unit_inverse(det));
}

ScalarMatrix eval_matrix(const PadicCtx& ctx, const PolyMatrix& a, std::span<const ExtElem> point) {
  ScalarMatrix out(a.rows(), a.cols(), ctx.zero());
  const std::vector<ExtElem> none;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const LaurentPoly& f = a(i, j);
      out(i, j) = f.is_zero() ? ctx.zero() : evaluate(f, none, point);
    }
  return out;
}

PolyMatrix frobenius_matrix(const PolyMatrix& a, unsigned k) {
  PolyMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = frobenius_sub(a(i, j), k);
  return out;
}

PolyMatrix partial_matrix(const PolyMatrix& a, int v) {
  PolyMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = partial_z(a(i, j), v);
  return out;
}

}  // namespace dworklab
