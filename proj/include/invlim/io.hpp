#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "invlim/classify.hpp"

namespace invlim {

using Json = nlohmann::ordered_json;

// Parsed and fully validated input document: one graph, >= 1 named maps.
struct ParsedInput {
    FiniteGraph graph;
    std::map<std::string, PLGraphMap> maps;
};

// Parses the keyed text format:
//
//   format = 1
//
//   [graph]
//   vertices = v1 v2
//   edge 1-2 = 1
//
//   [map tent]
//   edge 1-2 breaks = 0 1/2 1
//   edge 1-2 lap 1 = v1 -> v2
//   edge 1-2 lap 2 = v2 -> v1
//
// Lap images are waypoint lists; each waypoint is a vertex `vK` or an
// edge point `i-j@a/b`, and consecutive waypoints must share an edge.
// Fractions are normalized on read. Throws Error("ParseError") on
// malformed text; graph/map validation errors propagate unchanged.
ParsedInput parse_input(const std::string& text);

ParsedInput parse_input_file(const std::string& path);

// Itinerary grammar: `pre=[p0,p1,...];cycle=[c0,...]` (the `pre=[...]`
// part may be omitted or empty) with points written `edge:i-j@a/b` or
// `vK`. Validated against f.
BackwardItinerary parse_itinerary(const PLGraphMap& f, const std::string& text);
GraphPoint parse_point(const FiniteGraph& g, const std::string& token);

// Renderings in the same grammar parse_point / parse_itinerary accept.
std::string point_str(const FiniteGraph& g, const GraphPoint& p);
std::string itinerary_str(const FiniteGraph& g, const BackwardItinerary& x);

// Deterministic JSON views, all carrying "format": 1. Fractions render
// in lowest terms as strings; edges as "i-j" labels; link/cell ids as
// [label, k] pairs with 1-based k.
std::string edge_label(const FiniteGraph& g, int edge);
int edge_by_label(const FiniteGraph& g, const std::string& label);

Json point_to_json(const FiniteGraph& g, const GraphPoint& p);
Json chain_to_json(const FiniteGraph& g, const GraphChain& chain);
GraphChain chain_from_json(const FiniteGraph& g, const Json& j);
Json pattern_to_json(const FiniteGraph& g, const Pattern& h);
Pattern pattern_from_json(const FiniteGraph& g, const Json& j);
Json partition_to_json(const FiniteGraph& g, const MarkovData& data);
Json assumptions_to_json(const AssumptionReport& rep);
Json orbits_to_json(const FiniteGraph& g, const OmegaSet& omega,
                    const std::vector<OrbitRecord>& records);
Json refinement_to_json(const FiniteGraph& g,
                        const std::vector<RefinementRound>& rounds);
Json classification_to_json(const Classification& c);
Json comparison_to_json(const FiniteGraph& g, const ComparisonVerdict& v);

}  // namespace invlim
