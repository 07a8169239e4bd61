#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invlim/io.hpp"

using namespace invlim;

namespace {

const ParsedInput& tents() {
    static ParsedInput doc = parse_input_file(DATA_DIR "/tents.toml");
    return doc;
}

GraphPoint pt(const Rat& t) { return canonical(tents().graph, 0, t); }

BackwardItinerary constant(const PLGraphMap& f, const Rat& t) {
    return make_itinerary(f, {}, {pt(t)});
}

}  // namespace

TEST_CASE("itinerary validation") {
    const PLGraphMap& tent = tents().maps.at("tent");
    CHECK_NOTHROW(constant(tent, 0));
    CHECK_NOTHROW(constant(tent, Rat(2) / 3));
    // 1/3 is not fixed under the tent map
    CHECK_THROWS_WITH_AS(constant(tent, Rat(1) / 3),
                         doctest::Contains("InvalidItinerary"), Error);
    const PLGraphMap& g3 = tents().maps.at("g3");
    // backward 3-cycle: f(1) = 0, f(2/5) = 1, f(0) = 2/5
    CHECK_NOTHROW(make_itinerary(g3, {}, {pt(0), pt(1), pt(Rat(2) / 5)}));
    CHECK_THROWS_WITH_AS(make_itinerary(g3, {}, {pt(0), pt(Rat(2) / 5), pt(1)}),
                         doctest::Contains("InvalidItinerary"), Error);
    // preperiodic seam: f(cycle[0]) must equal the last preperiodic point;
    // {2/5, 4/5} is the tent's 2-cycle
    CHECK_NOTHROW(
        make_itinerary(tent, {pt(Rat(4) / 5)}, {pt(Rat(2) / 5), pt(Rat(4) / 5)}));
    CHECK_THROWS_WITH_AS(
        make_itinerary(tent, {pt(Rat(1) / 2)}, {pt(Rat(2) / 5), pt(Rat(4) / 5)}),
        doctest::Contains("InvalidItinerary"), Error);
}

TEST_CASE("shift prepends the image and stays valid") {
    const PLGraphMap& tent = tents().maps.at("tent");
    BackwardItinerary zero = constant(tent, 0);
    CHECK(shift(tent, zero).coordinate(0) == pt(0));
    BackwardItinerary fixed = constant(tent, Rat(2) / 3);
    CHECK(shift(tent, fixed).coordinate(0) == pt(Rat(2) / 3));

    const PLGraphMap& g3 = tents().maps.at("g3");
    BackwardItinerary cyc = make_itinerary(g3, {}, {pt(0), pt(1), pt(Rat(2) / 5)});
    BackwardItinerary s = shift(g3, cyc);
    CHECK(s.preperiodic == std::vector<GraphPoint>{pt(Rat(2) / 5)});
    CHECK(s.cycle == cyc.cycle);
    // projection/shift compatibility
    CHECK(s.coordinate(0) == eval(g3, cyc.coordinate(0)));
    for (int n = 1; n <= 7; ++n) CHECK(s.coordinate(n) == cyc.coordinate(n - 1));
    CHECK_NOTHROW(make_itinerary(g3, s.preperiodic, s.cycle));
}

TEST_CASE("itinerary distance is exact") {
    const PLGraphMap& tent = tents().maps.at("tent");
    BackwardItinerary zero = constant(tent, 0);
    BackwardItinerary fixed = constant(tent, Rat(2) / 3);
    Rat precision = Rat(1) / (Int(1) << 20);

    RatInterval self = itinerary_distance(tent, zero, zero, precision);
    CHECK(self.contains(0));
    CHECK(self.width() <= precision);

    // normalized d(0, 2/3) = 1/3, so the series sums to 2/3
    RatInterval d = itinerary_distance(tent, zero, fixed, precision);
    CHECK(d.lo == Rat(2) / 3);
    CHECK(d.hi == Rat(2) / 3);

    // metric sanity bound: the series is at most 2 * Dbar = 1
    const PLGraphMap& g3 = tents().maps.at("g3");
    BackwardItinerary cyc = make_itinerary(g3, {}, {pt(0), pt(1), pt(Rat(2) / 5)});
    BackwardItinerary scyc = shift(g3, cyc);
    RatInterval e = itinerary_distance(g3, cyc, scyc, precision);
    CHECK(e.lo >= 0);
    CHECK(e.hi <= 2);
}

TEST_CASE("classification of tent itineraries") {
    const PLGraphMap& tent = tents().maps.at("tent");
    Classification zero = classify_point(tent, constant(tent, 0));
    CHECK(zero.verdict == Classification::Verdict::Exceptional);
    CHECK(!zero.condition_i);
    CHECK(!zero.condition_ii);
    CHECK(zero.degree_hypothesis);

    Classification fixed = classify_point(tent, constant(tent, Rat(2) / 3));
    CHECK(fixed.verdict == Classification::Verdict::Product);
    CHECK(fixed.condition_i);
    CHECK(fixed.condition_ii);
}

TEST_CASE("classification of the g3 turning cycle") {
    const PLGraphMap& g3 = tents().maps.at("g3");
    BackwardItinerary cyc = make_itinerary(g3, {}, {pt(0), pt(1), pt(Rat(2) / 5)});
    Classification c = classify_point(g3, cyc);
    CHECK(c.verdict == Classification::Verdict::Exceptional);
    CHECK(!c.condition_i);
    CHECK(!c.condition_ii);
}

TEST_CASE("classification is invariant under shift") {
    const PLGraphMap& tent = tents().maps.at("tent");
    const PLGraphMap& g3 = tents().maps.at("g3");
    struct Case {
        const PLGraphMap* f;
        BackwardItinerary x;
    };
    std::vector<Case> cases = {
        {&tent, constant(tent, 0)},
        {&tent, constant(tent, Rat(2) / 3)},
        {&g3, make_itinerary(g3, {}, {pt(0), pt(1), pt(Rat(2) / 5)})},
    };
    for (auto& [f, x] : cases) {
        Classification base = classify_point(*f, x);
        BackwardItinerary y = x;
        for (int i = 0; i < 5; ++i) {
            y = shift(*f, y);
            Classification c = classify_point(*f, y);
            CHECK(c.verdict == base.verdict);
            CHECK(c.condition_i == base.condition_i);
            CHECK(c.condition_ii == base.condition_ii);
        }
    }
}

TEST_CASE("exceptional diagnosis codes") {
    const PLGraphMap& tent = tents().maps.at("tent");
    const PLGraphMap& g3 = tents().maps.at("g3");
    CHECK(exceptional_diagnosis(tent, constant(tent, 0), 3) ==
          Diagnosis::EndpointCondition);
    BackwardItinerary cyc = make_itinerary(g3, {}, {pt(0), pt(1), pt(Rat(2) / 5)});
    CHECK(exceptional_diagnosis(g3, cyc, 3) == Diagnosis::IndecomposableLike);
    CHECK(exceptional_diagnosis(g3, cyc, 0) == Diagnosis::Undetermined);
    CHECK_THROWS_WITH_AS(
        exceptional_diagnosis(tent, constant(tent, Rat(2) / 3), 3),
        doctest::Contains("NotExceptional"), Error);
}

TEST_CASE("pattern equivalence oracle cases") {
    const PLGraphMap& tent = tents().maps.at("tent");
    const PLGraphMap& skew = tents().maps.at("skew");
    const PLGraphMap& g3 = tents().maps.at("g3");
    CHECK(pattern_equivalent(tent, skew).equivalent);
    CHECK(pattern_equivalent(tent, tent).equivalent);
    PatternEquivalence bad = pattern_equivalent(tent, g3);
    CHECK(!bad.equivalent);
    CHECK(!bad.reason.empty());
}

TEST_CASE("pattern equivalence is an equivalence relation") {
    // a third member of the family: peak at 1/4
    std::vector<std::vector<Lap>> laps(1);
    laps[0].push_back({0, Rat(1) / 4, EdgePath{{{0, true}}, 0, 1}});
    laps[0].push_back({Rat(1) / 4, 1, EdgePath{{{0, false}}, 0, 1}});
    PLGraphMap quarter = build_pl_map(tents().graph, laps);

    const PLGraphMap& tent = tents().maps.at("tent");
    const PLGraphMap& skew = tents().maps.at("skew");
    std::vector<const PLGraphMap*> family = {&tent, &skew, &quarter};
    for (auto* a : family) {
        CHECK(pattern_equivalent(*a, *a).equivalent);  // reflexive
        for (auto* b : family) {
            CHECK(pattern_equivalent(*a, *b).equivalent ==
                  pattern_equivalent(*b, *a).equivalent);  // symmetric
            for (auto* c : family)                          // transitive
                if (pattern_equivalent(*a, *b).equivalent &&
                    pattern_equivalent(*b, *c).equivalent)
                    CHECK(pattern_equivalent(*a, *c).equivalent);
        }
    }
}

TEST_CASE("compare_spaces verdicts") {
    const PLGraphMap& tent = tents().maps.at("tent");
    const PLGraphMap& skew = tents().maps.at("skew");
    const PLGraphMap& g3 = tents().maps.at("g3");
    const PLGraphMap& id = tents().maps.at("identity");

    ComparisonVerdict hom = compare_spaces(tent, skew, 3);
    CHECK(hom.outcome == ComparisonVerdict::Outcome::Homeomorphic);
    CHECK(hom.witness.size() == 3);

    ComparisonVerdict dist = compare_spaces(tent, g3, 3);
    CHECK(dist.outcome == ComparisonVerdict::Outcome::Distinguished);
    CHECK(dist.omega_f == std::size_t{1});
    CHECK(dist.omega_g == std::size_t{3});

    ComparisonVerdict self = compare_spaces(id, id, 2);
    CHECK(self.outcome == ComparisonVerdict::Outcome::Homeomorphic);

    // identity fails the multivalued assumption, so unequal omega counts
    // (0 vs 1) cannot be promoted to DISTINGUISHED
    ComparisonVerdict weak = compare_spaces(id, tent, 2);
    CHECK(weak.outcome == ComparisonVerdict::Outcome::Inconclusive);
    CHECK(!weak.notes.empty());

    ParsedInput tri = parse_input_file(DATA_DIR "/triod.toml");
    CHECK_THROWS_WITH_AS(compare_spaces(tent, tri.maps.at("identity"), 2),
                         doctest::Contains("DifferentGraphs"), Error);
}

TEST_CASE("branch-vertex cycles fail the degree hypothesis") {
    ParsedInput tri = parse_input_file(DATA_DIR "/triod.toml");
    const PLGraphMap& id = tri.maps.at("identity");
    BackwardItinerary center =
        make_itinerary(id, {}, {vertex_point(tri.graph, 3)});
    CHECK_THROWS_WITH_AS(classify_point(id, center),
                         doctest::Contains("HypothesisFailed"), Error);
}
