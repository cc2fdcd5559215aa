#pragma once

#include <json.hpp>

#include "dworklab/congruence.hpp"
#include "dworklab/domain.hpp"
#include "dworklab/ghosts.hpp"
#include "dworklab/limit.hpp"

namespace dworklab {

using nlohmann::json;

/// Version tag embedded as "$schema" in every emitted document.
inline constexpr const char* kReportSchema = "dworklab/report/v1";

json to_json(const PadicCtx& ctx);
PadicCtx ctx_from_json(const json& j);

/// Array of decimal strings, constant basis coefficient first.
json to_json(const ExtElem& x);
/// Accepts an array of decimal strings or integers, or a single one.
ExtElem elem_from_json(const PadicCtx& ctx, const json& j);

/// {"r", "n", "terms": [{"t", "z", "c"}]} with terms sorted by exponent vector;
/// "c" is a decimal string when m = 1 and an array otherwise.
json to_json(const LaurentPoly& f);
/// Reads the term form, or the factored form
/// {"n", "scalar", "factors": [{"z": i, "e": k} | {"root": c, "e": k}]} (z 1-based).
LaurentPoly poly_from_json(const PadicCtx& ctx, const json& j);

json to_json(const ScalarMatrix& m);
json to_json(const PolyMatrix& m);

/// A point: array of n elements, or {"point": [...]}.
std::vector<ExtElem> point_from_json(const PadicCtx& ctx, const json& j);

/// {"lambdas": [poly, ...], "periodic": bool} or a bare array of polys.
GhostTuple tuple_from_json(const PadicCtx& ctx, const json& j, Delta delta);

json to_json(const CongruenceReport& r);
json to_json(const PadicCtx& ctx, const DomainPoint& p);
json to_json(const AdmissibilityVerdict& v);
json to_json(const PadicCtx& ctx, const LimitReport& r);

}  // namespace dworklab
