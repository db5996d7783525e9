#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "posh/families.hpp"
#include "posh/gram.hpp"
#include "posh/hermpoly.hpp"
#include "posh/psh.hpp"
#include "posh/witness.hpp"

namespace posh {

using Json = nlohmann::ordered_json;

/// {"n": 2, "terms": [{"a": [2,0], "b": [2,0], "c": [1.0, 0.0]}, ...]}
Json to_json(const HermitianPoly& r);
/// Throws ParseError on malformed input or non-finite numbers; Hermitian
/// symmetry errors propagate as NonHermitianInput.
HermitianPoly polynomial_from_json(const Json& j);
HermitianPoly parse_polynomial(const std::string& text);

Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);
Json point_to_json(const Point& z);
Point point_from_json(const Json& j);

Json to_json(const GramReport& report);
/// {"k":3, "points":[[[re,im],[re,im]],...], "min_eig":-0.0123, "kind":"RootsOfUnity"}
Json to_json(const Witness& w);
Witness witness_from_json(const Json& j);

Json to_json(const MembershipVerdict& v);
Json to_json(const PshVerdict& v);

/// {"family":"dangelo","m":2,"thresholds":{"1":[lo,hi],...},"pinf":6.0,"index":3}
Json family_table_json(const std::string& family, std::optional<int> m, const StabilityTable& table);
Json to_json(const ThresholdResult& t);

}  // namespace posh
