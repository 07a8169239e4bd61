#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invlim/io.hpp"

using namespace invlim;

namespace {

const ParsedInput& tents() {
    static ParsedInput doc = parse_input_file(DATA_DIR "/tents.toml");
    return doc;
}

std::string thrown_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

}  // namespace

TEST_CASE("input document parses to the expected maps") {
    const ParsedInput& doc = tents();
    CHECK(doc.graph.vertex_count == 2);
    CHECK(doc.maps.size() == 4);
    CHECK(doc.maps.count("tent"));
    CHECK(doc.maps.count("skew"));
    CHECK(doc.maps.count("g3"));
    CHECK(doc.maps.count("identity"));
    CHECK(doc.maps.at("tent").laps[0].size() == 2);
    CHECK(doc.maps.at("tent").laps[0][0].hi == Rat(1) / 2);
}

TEST_CASE("parse errors carry the ParseError code") {
    CHECK(thrown_code([] { parse_input("nonsense"); }) == "ParseError");
    CHECK(thrown_code([] { parse_input("format = 2\n"); }) == "ParseError");
    CHECK(thrown_code([] {
              parse_input(
                  "format = 1\n[graph]\nvertices = v1 v2\nedge 1-2 = 1\n");
          }) == "ParseError");  // a graph alone is not a full document
    // graph-level validation propagates its own code
    CHECK(thrown_code([] { parse_input_file(DATA_DIR "/broken.toml"); }) ==
          "DuplicateEdge");
}

TEST_CASE("waypoint grammar") {
    const FiniteGraph& g = tents().graph;
    CHECK(parse_point(g, "v1") == canonical(g, 0, 0));
    CHECK(parse_point(g, "v2") == canonical(g, 0, 1));
    CHECK(parse_point(g, "1-2@3/4") == GraphPoint{0, Rat(3) / 4});
    CHECK(parse_point(g, "edge:1-2@3/4") == GraphPoint{0, Rat(3) / 4});
    CHECK(parse_point(g, "2-1@1/2") == GraphPoint{0, Rat(1) / 2});
    CHECK(thrown_code([&] { parse_point(g, "1-3@1/2"); }) == "ParseError");
    CHECK(thrown_code([&] { parse_point(g, "1-2@5/4"); }) == "ParseError");
    CHECK(thrown_code([&] { parse_point(g, "v9"); }) == "ParseError");
}

TEST_CASE("itinerary grammar round trip") {
    const PLGraphMap& g3 = tents().maps.at("g3");
    BackwardItinerary x = parse_itinerary(
        g3, "cycle=[edge:1-2@0,edge:1-2@1,edge:1-2@2/5]");
    CHECK(x.preperiodic.empty());
    CHECK(x.cycle.size() == 3);
    std::string s = itinerary_str(tents().graph, x);
    BackwardItinerary y = parse_itinerary(g3, s);
    CHECK(y.preperiodic == x.preperiodic);
    CHECK(y.cycle == x.cycle);

    BackwardItinerary z =
        parse_itinerary(g3, "pre=[edge:1-2@2/5];cycle=[v1,v2,1-2@2/5]");
    CHECK(z.preperiodic.size() == 1);
    CHECK(thrown_code([&] { parse_itinerary(g3, "cycle=[]"); }) == "ParseError");
    CHECK(thrown_code([&] { parse_itinerary(g3, "pre=[v1]"); }) == "ParseError");
}

TEST_CASE("chain JSON round trip") {
    const PLGraphMap& tent = tents().maps.at("tent");
    MarkovData data = index_sets(tent, compute_markov_partition(tent));
    GraphChain chain = chain_from_partition(data.partition);
    auto [fine, h] = refine_uniform(tents().graph, chain, Rat(1) / 7);
    Json j = chain_to_json(tents().graph, fine);
    GraphChain back = chain_from_json(tents().graph, j);
    REQUIRE(back.links.size() == fine.links.size());
    for (std::size_t e = 0; e < fine.links.size(); ++e) {
        REQUIRE(back.links[e].size() == fine.links[e].size());
        for (std::size_t k = 0; k < fine.links[e].size(); ++k)
            CHECK(back.links[e][k].arcs == fine.links[e][k].arcs);
    }
    // byte-identical re-emission
    CHECK(chain_to_json(tents().graph, back).dump() == j.dump());
}

TEST_CASE("pattern JSON round trip") {
    const PLGraphMap& tent = tents().maps.at("tent");
    MarkovData data = index_sets(tent, compute_markov_partition(tent));
    GraphChain chain = chain_from_partition(data.partition);
    auto [fine, h] = refine_uniform(tents().graph, chain, {{3, 2}});
    Json j = pattern_to_json(tents().graph, h);
    Pattern back = pattern_from_json(tents().graph, j);
    CHECK(back == h);
    CHECK(pattern_to_json(tents().graph, back).dump() == j.dump());
}

TEST_CASE("emitted documents are deterministic and versioned") {
    const PLGraphMap& g3 = tents().maps.at("g3");
    MarkovData data = index_sets(g3, compute_markov_partition(g3));
    Json a = partition_to_json(tents().graph, data);
    Json b = partition_to_json(tents().graph, data);
    CHECK(a.dump() == b.dump());
    CHECK(a.at("format") == 1);
    CHECK(chain_to_json(tents().graph, chain_from_partition(data.partition))
              .at("format") == 1);
    CHECK(assumptions_to_json(check_standing_assumptions(g3)).at("format") == 1);
}

TEST_CASE("fraction strings normalize on read") {
    ParsedInput doc = parse_input(
        "format = 1\n"
        "[graph]\n"
        "vertices = v1 v2\n"
        "edge 1-2 = 2/2\n"
        "[map half]\n"
        "edge 1-2 breaks = 0/5 4/8 1\n"
        "edge 1-2 lap 1 = v1 -> v2\n"
        "edge 1-2 lap 2 = v2 -> v1\n");
    CHECK(doc.graph.edges[0].length == 1);
    CHECK(doc.maps.at("half").laps[0][0].hi == Rat(1) / 2);
}
