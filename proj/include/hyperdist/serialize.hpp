#pragma once

#include <string_view>

#include "json.hpp"

#include "hyperdist/continuity.hpp"
#include "hyperdist/expr.hpp"
#include "hyperdist/functional.hpp"
#include "hyperdist/hyperreal.hpp"
#include "hyperdist/legendre.hpp"
#include "hyperdist/pairing.hpp"
#include "hyperdist/quadrature.hpp"
#include "hyperdist/testfn.hpp"

namespace hyperdist {

using Json = nlohmann::json;

/// [{"exp": "p/q", "coef": x}, ...] in ascending exponent order.
Json to_json(const HyperReal& h);
/// Accepts the array form or a bare number.
HyperReal hyperreal_from_json(const Json& j, const TruncationPolicy& policy = {});

Json to_json(const TruncationPolicy& p);
TruncationPolicy policy_from_json(const Json& j, TruncationPolicy base = {});
Json to_json(const QuadratureConfig& q);
QuadratureConfig quad_from_json(const Json& j, QuadratureConfig base = {});

/// {"op": "bump", "center": c, "halfwidth": h} and the other node kinds.
Json to_json(const TestFn& g);
TestFn testfn_from_json(const Json& j);
/// "bump:c,h" or "plateau:inner,outer".
TestFn testfn_from_short(std::string_view text);

/// {"op": ..., "args": [...]} with constants as HyperReal arrays. Input also
/// accepts an infix string wherever an expression is expected.
Json to_json(const InternalExpr& f);
InternalExpr expr_from_json(const Json& j, const TruncationPolicy& policy = {});

Json to_json(const PairingResult& r);
Json to_json(const MembershipResult& m);
Json to_json(const Verdict& v);
Json to_json(const EquivalenceVerdict& v);
Json to_json(const ShadowResult& s);
Json to_json(const MatchResult& m);
Json to_json(const OraclePolynomial& p);
Json to_json(const SchwarzDiagnostic& d);
Json to_json(const SchwarzCheck& c);

}  // namespace hyperdist
