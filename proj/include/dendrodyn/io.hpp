#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "dendrodyn/fixtures.hpp"

namespace dendrodyn {

using Json = nlohmann::ordered_json;

// Tree file: {"vertices": [...], "edges": [{"id", "ends": [v, w], "length": "p/q"}]}.
// A map file adds "vertex_images" and "edge_pieces".
Json tree_to_json(const MetricTree& tree);
Json map_to_json(const PLTreeMap& f);
Json point_to_json(const MetricTree& tree, const TreePoint& p);

// Throw ParseError naming the offending location.
MetricTree tree_from_json(const Json& j);
PLTreeMap map_from_json(const Json& j);
TreePoint point_from_json(const MetricTree& tree, const Json& j);

// Text with line and column in parse errors.
Json parse_json_text(std::string_view text);
PLTreeMap read_map(std::string_view text);
std::string write_map(const PLTreeMap& f);

// Parses "v" as a vertex name and "e@p/q" as an edge point.
TreePoint parse_point_spec(const MetricTree& tree, std::string_view spec);

Json to_json(const MetricTree& tree, const Subtree& s);
Json to_json(const MetricTree& tree, const RecurrenceWitness& w);
Json to_json(const MetricTree& tree, const RecurrenceVerdict& v);
Json to_json(const MetricTree& tree, const PropertyReport& r);
Json to_json(const MetricTree& tree, const NestedCycles& c);
Json to_json(const OdometerAddress& a);
Json to_json(const AddingMachineFlags& f);

}  // namespace dendrodyn
