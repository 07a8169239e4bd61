#pragma once

#include <set>
#include <vector>

#include "invlim/plmap.hpp"

namespace invlim {

// Eventually periodic forward orbit: f^preperiod(start) enters a cycle of
// the given minimal period. `points` lists the preperiodic segment and the
// cycle once, preperiod + period entries total.
struct OrbitRecord {
    GraphPoint start;
    int preperiod = 0;
    int period = 1;
    std::vector<GraphPoint> points;

    std::vector<GraphPoint> cycle() const {
        return {points.begin() + preperiod, points.end()};
    }
};

struct OmegaSet {
    std::set<GraphPoint> points;
    // turning points whose cycles contributed, and those left undetermined
    std::vector<GraphPoint> sources;
    std::vector<GraphPoint> undetermined_sources;
    bool partial = false;

    std::size_t cardinality() const { return points.size(); }
};

// Exact cycle detection. Throws CapExceeded if no repetition shows up
// within cap iterates.
OrbitRecord orbit_record(const PLGraphMap& f, const GraphPoint& p, int cap = 100000);

// Union of the cycles of all turning points: omega(P_f) when every
// turning orbit is eventually periodic. Capped orbits mark the result
// partial instead of throwing.
OmegaSet omega_of_turning_points(const PLGraphMap& f, int cap = 100000);

// The finite set U_{p>=0} f^p(E_G). Throws CapExceeded.
std::set<GraphPoint> endpoint_orbit_closure(const PLGraphMap& f, int cap = 100000);

}  // namespace invlim
