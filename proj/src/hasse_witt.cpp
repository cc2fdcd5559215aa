#include "dworklab/hasse_witt.hpp"

namespace dworklab {

namespace {

// p^level * v - u, or nothing when it leaves the representable range.
std::optional<std::vector<int>> hw_index(const PadicCtx& ctx, unsigned level, const std::vector<int>& u,
                                         const std::vector<int>& v) {
  long scale = 1;
  for (unsigned i = 0; i < level; ++i) {
    scale *= static_cast<long>(ctx.p());
    if (scale > (1L << 40)) return std::nullopt;
  }
  std::vector<int> idx(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const long x = scale * v[k] - u[k];
    if (x < kMinExp || x > kMaxExp) return std::nullopt;
    idx[k] = static_cast<int>(x);
  }
  return idx;
}

void check_delta(const Delta& delta, int r) {
  if (delta.empty()) fail(ErrorCode::InvalidArgument, "index set is empty");
  for (const auto& d : delta)
    if (static_cast<int>(d.size()) != r) fail(ErrorCode::InvalidArgument, "index set element has wrong arity");
}

}  // namespace

Delta delta_range(int g) {
  Delta d;
  for (int i = 1; i <= g; ++i) d.push_back({i});
  return d;
}

PolyMatrix hw_matrix(unsigned level, const LaurentPoly& F, const Delta& delta) {
  check_delta(delta, F.r());
  const std::size_t g = delta.size();
  PolyMatrix A(g, g, LaurentPoly(F.ctx(), 0, F.n()));
  for (std::size_t u = 0; u < g; ++u)
    for (std::size_t v = 0; v < g; ++v) {
      auto idx = hw_index(F.ctx(), level, delta[u], delta[v]);
      if (idx) A(u, v) = coeff_t(F, *idx);
    }
  return A;
}

ScalarMatrix hw_matrix_dense(unsigned level, const UPoly& Fa, const Delta& delta) {
  check_delta(delta, 1);
  const std::size_t g = delta.size();
  ScalarMatrix A(g, g, Fa.ctx().zero());
  for (std::size_t u = 0; u < g; ++u)
    for (std::size_t v = 0; v < g; ++v) {
      auto idx = hw_index(Fa.ctx(), level, delta[u], delta[v]);
      if (idx) A(u, v) = Fa.coeff((*idx)[0]);
    }
  return A;
}

ScalarMatrix hw_matrix_at(unsigned level, const LaurentPoly& F, const Delta& delta, std::span<const ExtElem> a) {
  return hw_matrix_dense(level, eval_z_dense(F, a), delta);
}

ScalarMatrix hw_derivative_at(unsigned level, const FactoredPoly& F, const Delta& delta, std::span<const ExtElem> a,
                              int v) {
  if (v < 0 || v >= F.n()) fail(ErrorCode::IndexOutOfRange, "z-variable index");
  return hw_matrix_dense(level, F.derivative_z(v).at(a).expand_dense(), delta);
}

ScalarMatrix hw_second_derivative_at(unsigned level, const FactoredPoly& F, const Delta& delta,
                                     std::span<const ExtElem> a, int u, int v) {
  if (u < 0 || u >= F.n() || v < 0 || v >= F.n()) fail(ErrorCode::IndexOutOfRange, "z-variable index");
  return hw_matrix_dense(level, F.derivative_z(v).derivative_z(u).at(a).expand_dense(), delta);
}

PolyMatrix hw_matrix_factored_derivative(unsigned level, const FactoredPoly& F, const Delta& delta, int v) {
  return hw_matrix(level, F.derivative_z(v).expand(), delta);
}

}  // namespace dworklab
