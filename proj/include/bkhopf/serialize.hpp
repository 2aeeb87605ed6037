#pragma once

#include <string>
#include <string_view>

#include "bkhopf/cyclic.hpp"
#include "bkhopf/kcp2.hpp"
#include "bkhopf/laurent_params.hpp"
#include "json.hpp"

namespace bkhopf {

using Json = nlohmann::ordered_json;

// Text form: "c*u^k + ..." in ascending degree, coefficients in the ring's
// serialization, a coefficient of 1 omitted, and " + O(u^N)" for inexact
// series. The exact zero prints as "0".
std::string format_series(const Series& s);

// Inverse of format_series. Also accepts "-" between terms, "u^(-k)", "u^-k",
// whitespace anywhere, and repeated degrees (summed). Throws ParseError.
Series parse_series(std::string_view text, const RingPtr& ring);

Json coeff_to_json(const Ring& ring, const Coords& c);
Json series_to_json(const Series& s);
Series series_from_json(const Json& j, const RingPtr& ring);

Json ring_to_json(const Ring& ring);

Json to_json(const CyclicN1Form& m);
Json to_json(const KcpOrder& o);
Json to_json(const BreuilLabel& l);
Json to_json(const CyclicNForm& m);
Json to_json(const GeneralTuple& t, const TupleReport& report);

}  // namespace bkhopf
