#pragma once

#include <json.hpp>
#include <string>

#include "chatelet/construct.hpp"
#include "chatelet/curve.hpp"

namespace chatelet {

using Json = nlohmann::json;

/// Malformed structured input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json to_json(const QPoly& f);
QPoly qpoly_from_json(const Json& j);
/// Integer coefficient list, lowest degree first.
QPoly parse_coefficient_list(const std::string& text);

Json field_to_json(const FieldPtr& K);
FieldPtr field_from_json(const Json& j);

Json to_json(const NfElement& x);
NfElement element_from_json(const Json& j, const FieldPtr& K);

Json to_json(const Place& w);
Place place_from_json(const Json& j, const FieldPtr& K);
/// inf | real:k | complex:k | p | p:g0,g1,... (lifted local factor).
Place parse_place(const std::string& text, const FieldPtr& K);

Json to_json(const NfPoly& P);
NfPoly nfpoly_from_json(const Json& j, const FieldPtr& K);

/// {field, a, P}
Json to_json(const ChateletSurface& S);
ChateletSurface surface_from_json(const Json& j);
/// {field, a, b, c}
Json to_json(const SplitChatelet& S);
SplitChatelet split_from_json(const Json& j);

Json to_json(const LocalPoint& pt);
LocalPoint point_from_json(const Json& j, const FieldPtr& K);
Json to_json(const LocalDecision& d);
LocalDecision decision_from_json(const Json& j, const FieldPtr& K);
Json to_json(const SolvabilityReport& r);
SolvabilityReport report_from_json(const Json& j, const FieldPtr& K);
Json to_json(const BmCertificate& c);
BmCertificate bm_from_json(const Json& j, const FieldPtr& K);
Json to_json(const ConstructionTrace& t);
ConstructionTrace trace_from_json(const Json& j, const FieldPtr& K);

/// {a, A_t, C_t, E_t, d}
Json to_json(const BundlePoly& V);
BundlePoly bundle_from_json(const Json& j);
Json to_json(const BranchLocus& b);
BranchLocus branch_from_json(const Json& j);
/// {phi, field, a, P}
Json to_json(const InterpolationNode& n);
InterpolationNode node_from_json(const Json& j);
/// {H, genus, provenance: {a, b, h}}
Json to_json(const HyperellipticCurve& C);
HyperellipticCurve curve_from_json(const Json& j);

}  // namespace chatelet
