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

}  // namespace

TEST_CASE("orbit records of tent points") {
    const PLGraphMap& tent = tents().maps.at("tent");
    OrbitRecord fixed = orbit_record(tent, pt(Rat(2) / 3));
    CHECK(fixed.preperiod == 0);
    CHECK(fixed.period == 1);
    CHECK(fixed.points == std::vector<GraphPoint>{pt(Rat(2) / 3)});

    // 1/4 -> 1/2 -> 1 -> 0 -> 0
    OrbitRecord quarter = orbit_record(tent, pt(Rat(1) / 4));
    CHECK(quarter.preperiod == 3);
    CHECK(quarter.period == 1);
    CHECK(quarter.points == std::vector<GraphPoint>{pt(Rat(1) / 4),
                                                    pt(Rat(1) / 2), pt(1),
                                                    pt(0)});
    CHECK(quarter.cycle() == std::vector<GraphPoint>{pt(0)});
}

TEST_CASE("g3 turning point runs through a 3-cycle") {
    const PLGraphMap& g3 = tents().maps.at("g3");
    OrbitRecord rec = orbit_record(g3, pt(Rat(2) / 5));
    CHECK(rec.preperiod == 0);
    CHECK(rec.period == 3);
    CHECK(rec.points ==
          std::vector<GraphPoint>{pt(Rat(2) / 5), pt(1), pt(0)});
}

TEST_CASE("omega limit sets of the turning points") {
    OmegaSet tent = omega_of_turning_points(tents().maps.at("tent"));
    CHECK(!tent.partial);
    CHECK(tent.cardinality() == 1);
    CHECK(tent.points == std::set<GraphPoint>{pt(0)});

    OmegaSet g3 = omega_of_turning_points(tents().maps.at("g3"));
    CHECK(!g3.partial);
    CHECK(g3.cardinality() == 3);
    CHECK(g3.points == std::set<GraphPoint>{pt(0), pt(Rat(2) / 5), pt(1)});

    OmegaSet id = omega_of_turning_points(tents().maps.at("identity"));
    CHECK(id.cardinality() == 0);
}

TEST_CASE("endpoint orbit closures") {
    CHECK(endpoint_orbit_closure(tents().maps.at("tent")) ==
          std::set<GraphPoint>{pt(0), pt(1)});
    CHECK(endpoint_orbit_closure(tents().maps.at("g3")) ==
          std::set<GraphPoint>{pt(0), pt(Rat(2) / 5), pt(1)});
}

TEST_CASE("caps are honoured, not silently exceeded") {
    const PLGraphMap& tent = tents().maps.at("tent");
    // orbit of 1/4 needs 4 points before repeating; cap 2 is too small
    CHECK_THROWS_WITH_AS(orbit_record(tent, pt(Rat(1) / 4), 2),
                         doctest::Contains("CapExceeded"), Error);
    // capped omega flags itself partial instead of throwing
    std::vector<std::vector<Lap>> laps(1);
    laps[0].push_back({0, Rat(1) / 2, EdgePath{{{0, true}}, 0, Rat(3) / 4}});
    laps[0].push_back({Rat(1) / 2, 1, EdgePath{{{0, false}}, Rat(1) / 4, 1}});
    PLGraphMap slope32 = build_pl_map(tents().graph, laps);
    OmegaSet omega = omega_of_turning_points(slope32, 50);
    CHECK(omega.partial);
    CHECK(omega.undetermined_sources.size() == 1);
}

TEST_CASE("orbit points all reproduce under eval") {
    // only the full tent keeps every rational orbit finite; generic
    // rationals under the skew maps have unboundedly growing denominators
    const PLGraphMap& f = tents().maps.at("tent");
    for (int q = 1; q <= 10; ++q)
        for (int p = 0; p <= q; ++p) {
            OrbitRecord rec = orbit_record(f, pt(Rat(p, q)));
            for (std::size_t i = 0; i + 1 < rec.points.size(); ++i)
                CHECK(eval(f, rec.points[i]) == rec.points[i + 1]);
            // the step after the last point re-enters the cycle
            GraphPoint next = eval(f, rec.points.back());
            CHECK(next == rec.points[rec.preperiod]);
        }
}
