#pragma once

#include <string>

#include <json.hpp>

#include "mfgf/interval_set.hpp"
#include "mfgf/precise.hpp"

namespace mfgf {

using Json = nlohmann::ordered_json;

/// [[lo, lo_open, hi, hi_open], ...] with "-inf" / "inf" for infinite ends.
Json to_json(const IntervalSet& set);
IntervalSet interval_set_from_json(const Json& j);

/// {"atoms": [[x, mass]...], "pieces": [[lo, hi, density]...], "support": [a, b]}
Json to_json(const MEDistribution& med);
MEDistribution med_from_json(const Json& j);

/// Parses comma-separated interval literals such as "[0,2]", "(3.9,5.1)",
/// "[2,inf)" or "{4}"; the result is their union. An empty string is the
/// empty set.
IntervalSet parse_event(const std::string& text);

}  // namespace mfgf
