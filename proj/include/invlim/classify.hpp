#pragma once

#include <optional>
#include <string>
#include <vector>

#include "invlim/chain.hpp"
#include "invlim/orbits.hpp"

namespace invlim {

// A point of the inverse limit as an eventually periodic backward
// itinerary: x_0 ... x_{p-1} followed by the cycle y_0 ... y_{q-1} with
// x_{p+i} = y_{i mod q} and f(x_{i+1}) = x_i throughout.
struct BackwardItinerary {
    std::vector<GraphPoint> preperiodic;
    std::vector<GraphPoint> cycle;

    GraphPoint coordinate(std::size_t n) const {
        if (n < preperiodic.size()) return preperiodic[n];
        return cycle[(n - preperiodic.size()) % cycle.size()];
    }
};

// Validates the itinerary invariant against f; throws
// InvalidItinerary on violation. Points are canonicalized.
BackwardItinerary make_itinerary(const PLGraphMap& f,
                                 std::vector<GraphPoint> preperiodic,
                                 std::vector<GraphPoint> cycle);

// Shift homeomorphism: prepends f(x_0).
BackwardItinerary shift(const PLGraphMap& f, const BackwardItinerary& x);

// Exact enclosure of the inverse-limit distance. Eventual periodicity
// makes the weighted series a rational number, so the interval is
// degenerate; `precision` bounds the permitted width.
struct RatInterval {
    Rat lo, hi;
    Rat width() const { return hi - lo; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
};
RatInterval itinerary_distance(const PLGraphMap& f, const BackwardItinerary& x,
                               const BackwardItinerary& y, const Rat& precision);

struct Caps {
    int orbit = 100000;
};

struct Classification {
    enum class Verdict { Product, Exceptional } verdict;
    bool condition_i = false;   // some coordinate avoids U f^p(E_G)
    bool condition_ii = false;  // some coordinate avoids omega(P_f)
    bool degree_hypothesis = false;
};

// The local-structure classification. Throws HypothesisFailed when a
// cycle coordinate sits on a branch vertex, CapExceeded when the orbit
// machinery could not finish exactly.
Classification classify_point(const PLGraphMap& f, const BackwardItinerary& x,
                              const Caps& caps = {});

enum class Diagnosis {
    EndpointCondition,
    SinCurveLike,
    IndecomposableLike,
    Undetermined,
};

// Bounded-depth heuristic labels for an EXCEPTIONAL point; throws
// NotExceptional if the point classifies as PRODUCT.
Diagnosis exceptional_diagnosis(const PLGraphMap& f, const BackwardItinerary& x,
                                int depth, const Caps& caps = {});

struct PatternEquivalence {
    bool equivalent = false;
    std::string reason;  // when not equivalent
    // per edge, per cut index: the common image index, as a witness
    std::vector<std::vector<LinkId>> image_index_table;
};

// Checks the pattern criterion on the Markov partitions of f and g: same
// E', same per-edge partition sizes, and identical index-to-index image
// relations under the order-preserving correspondence.
PatternEquivalence pattern_equivalent(const PLGraphMap& f, const PLGraphMap& g);

struct ComparisonVerdict {
    enum class Outcome { Homeomorphic, Distinguished, Inconclusive } outcome;
    std::vector<RefinementRound> witness;  // Homeomorphic only
    std::optional<std::size_t> omega_f, omega_g;
    AssumptionReport assumptions_f, assumptions_g;
    std::vector<std::string> notes;
};

// Pattern equivalence -> HOMEOMORPHIC with a joint-refinement witness;
// exact unequal omega cardinalities on an interval-like graph with all
// standing assumptions verified -> DISTINGUISHED; anything else
// INCONCLUSIVE. Throws DifferentGraphs.
ComparisonVerdict compare_spaces(const PLGraphMap& f, const PLGraphMap& g,
                                 int depth, const Caps& caps = {});

}  // namespace invlim
