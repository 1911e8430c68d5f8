#pragma once

#include <string>

#include "json.hpp"
#include "pmqhur/config.hpp"
#include "pmqhur/pmq.hpp"

namespace pmqhur {

using nlohmann::json;

// Fixture formats. Tables use "a|b" keys; an absent product key means the
// product is undefined.
PmqSpec pmq_from_json(const json& j);
GroupSpec group_from_json(const json& j);
PairSpec pair_from_json(const json& j);

json pmq_to_json(const PmqSpec& spec);

json load_json_file(const std::string& path);

Rat rat_from_string(const std::string& text);
std::string rat_to_string(const Rat& value);

Configuration config_from_json(const json& j, const TruncatedCompletion& tc,
                               const GroupSpec* group);
json config_to_json(const Configuration& c, const TruncatedCompletion& tc,
                    const GroupSpec* group);

RectCovering covering_from_json(const json& j);

// Array format: {"p":.., "q":.., "entries": [[col 0 words], ...]}; a cell
// location additionally carries "us"/"ut" coordinate lists.
ArrayPQ array_from_json(const json& j, const TruncatedCompletion& tc);
json array_to_json(const ArrayPQ& ua, const TruncatedCompletion& tc);

CellLocation cell_location_from_json(const json& j, const TruncatedCompletion& tc);
json cell_location_to_json(const CellLocation& loc, const TruncatedCompletion& tc);

} // namespace pmqhur
