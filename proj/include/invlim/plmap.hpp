#pragma once

#include <set>
#include <vector>

#include "invlim/graph.hpp"

namespace invlim {

// One traversal step of an edge path: edge index, and whether the edge is
// traversed from its lower-labelled endpoint to the higher one.
struct PathStep {
    int edge = 0;
    bool forward = true;
};

// A simple (injective) arc through the graph, the image of one lap.
// start_u / end_u are traversal coordinates within the first / last step:
// u = t when the step is forward, u = 1 - t otherwise. A one-step path
// covers [start_u, end_u]; multi-step paths cover [start_u, 1] of the
// first step, all of the middle steps, and [0, end_u] of the last.
struct EdgePath {
    std::vector<PathStep> steps;
    Rat start_u = 0;
    Rat end_u = 1;
};

Rat path_length(const FiniteGraph& g, const EdgePath& p);
GraphPoint path_start(const FiniteGraph& g, const EdgePath& p);
GraphPoint path_end(const FiniteGraph& g, const EdgePath& p);
// Canonical point at arclength `len` from the start, 0 <= len <= length.
GraphPoint path_point_at(const FiniteGraph& g, const EdgePath& p, const Rat& len);
// Arclengths along p at which the (canonical) point q is visited.
std::vector<Rat> path_locate(const FiniteGraph& g, const EdgePath& p,
                             const GraphPoint& q);
// The arcs covered by p, as a per-call list (one arc per step).
std::vector<Arc> path_arcs(const FiniteGraph& g, const EdgePath& p);
EdgePath reversed(const EdgePath& p);

// Direction germ of a path at one of its ends: the edge it runs along and
// the sign of motion in that edge's own coordinate, leaving the base point.
struct Germ {
    int edge = 0;
    bool increasing = true;  // motion away from the base raises t

    friend bool operator==(const Germ& a, const Germ& b) {
        return a.edge == b.edge && a.increasing == b.increasing;
    }
};
Germ germ_at_start(const EdgePath& p);
Germ germ_at_end(const EdgePath& p);  // pointing back into the path

struct Lap {
    Rat lo = 0, hi = 1;  // breakpoint interval within the domain edge
    EdgePath image;      // traversed linearly in normalized arclength
};

struct TurningPoint {
    GraphPoint location;     // canonical
    int edge = 0;            // domain edge of the two adjacent laps
    int left_lap = 0;        // index of the lap ending at the fold; -1 at a
    int right_lap = 0;       // degree-2 vertex, where the two sides are laps
                             // of the two incident edges (see side_* below)
    Germ common_direction{}; // shared outgoing image direction
};

// The three standing assumptions of the classification theory, as
// finitely checkable verdicts.
struct AssumptionReport {
    bool isolated_preimages = false;
    bool nonexpanding_preimages = false;
    enum class Multivalued { Verified, Failed, Undetermined } multivalued =
        Multivalued::Undetermined;
    int multivalued_power = 0;  // n with every column sum of M^n >= 2
    int cap = 0;

    bool all_hold() const {
        return isolated_preimages && nonexpanding_preimages &&
               multivalued == Multivalued::Verified;
    }
};

// Exact piecewise-linear self-map of a finite graph. Immutable after
// build_pl_map, which validates continuity, monotone nonconstant laps, and
// rejects folds at branch vertices.
struct PLGraphMap {
    FiniteGraph graph;
    std::vector<std::vector<Lap>> laps;  // per edge, ordered by lo
    std::vector<TurningPoint> turning;   // derived, P_f

    const Lap& lap_at(int edge, const Rat& t) const;  // any lap containing t
};

PLGraphMap build_pl_map(const FiniteGraph& g,
                        std::vector<std::vector<Lap>> laps);

GraphPoint eval(const PLGraphMap& f, const GraphPoint& p);

// Complete exact preimage set of q.
std::set<GraphPoint> preimages(const PLGraphMap& f, const GraphPoint& q);

const std::vector<TurningPoint>& turning_points(const PLGraphMap& f);

// cap bounds the Markov-closure rounds and matrix powers tried for the
// eventual-multivaluedness check.
AssumptionReport check_standing_assumptions(const PLGraphMap& f, int cap = 64);

// Smallest per-lap arclength stretch factor.
Rat min_stretch(const PLGraphMap& f);

}  // namespace invlim
