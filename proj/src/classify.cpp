#include "invlim/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace invlim {
namespace {

Rat pow2(int n) {
    Rat r = 1;
    for (int i = 0; i < n; ++i) r *= 2;
    return r;
}

// normalized metric: d_M scaled so that the whole graph has diameter 1/2
Rat norm_dist(const PLGraphMap& f, const GraphPoint& a, const GraphPoint& b) {
    return graph_metric(f.graph, a, b) / (2 * f.graph.diameter);
}

bool path_graph(const FiniteGraph& g) {
    if (g.edges.size() + 1 != static_cast<std::size_t>(g.vertex_count))
        return false;
    for (int d : g.vertex_degree)
        if (d > 2) return false;
    return g.endpoint_vertices.size() == 2;
}

}  // namespace

BackwardItinerary make_itinerary(const PLGraphMap& f,
                                 std::vector<GraphPoint> preperiodic,
                                 std::vector<GraphPoint> cycle) {
    if (cycle.empty())
        throw Error("InvalidItinerary", "itinerary needs a nonempty cycle");
    BackwardItinerary x;
    for (auto& p : preperiodic) x.preperiodic.push_back(canonical(f.graph, p));
    for (auto& p : cycle) x.cycle.push_back(canonical(f.graph, p));
    const std::size_t q = x.cycle.size();
    for (std::size_t i = 0; i < q; ++i)
        if (!(eval(f, x.cycle[(i + 1) % q]) == x.cycle[i]))
            throw Error("InvalidItinerary",
                        "cycle violates f(x_{i+1}) = x_i at position " +
                            std::to_string(i));
    for (std::size_t i = 0; i + 1 < x.preperiodic.size(); ++i)
        if (!(eval(f, x.preperiodic[i + 1]) == x.preperiodic[i]))
            throw Error("InvalidItinerary",
                        "preperiodic part violates f(x_{i+1}) = x_i");
    if (!x.preperiodic.empty() && !(eval(f, x.cycle[0]) == x.preperiodic.back()))
        throw Error("InvalidItinerary",
                    "seam between preperiodic part and cycle is broken");
    return x;
}

BackwardItinerary shift(const PLGraphMap& f, const BackwardItinerary& x) {
    BackwardItinerary out = x;
    out.preperiodic.insert(out.preperiodic.begin(),
                           eval(f, x.coordinate(0)));
    return out;
}

RatInterval itinerary_distance(const PLGraphMap& f, const BackwardItinerary& x,
                               const BackwardItinerary& y, const Rat& precision) {
    if (precision <= 0) throw Error("ParseError", "precision must be positive");
    const std::size_t P = std::max(x.preperiodic.size(), y.preperiodic.size());
    const std::size_t Q = std::lcm(x.cycle.size(), y.cycle.size());
    // the coordinate pair sequence is periodic from P on, so the series
    // sums to an exact rational
    Rat sum = 0;
    for (std::size_t i = 0; i < P; ++i)
        sum += norm_dist(f, x.coordinate(i), y.coordinate(i)) / pow2(static_cast<int>(i));
    Rat cyc = 0;
    for (std::size_t j = 0; j < Q; ++j)
        cyc += norm_dist(f, x.coordinate(P + j), y.coordinate(P + j)) /
               pow2(static_cast<int>(j));
    Rat qpow = pow2(static_cast<int>(Q));
    sum += cyc / pow2(static_cast<int>(P)) * qpow / (qpow - 1);
    return {sum, sum};
}

Classification classify_point(const PLGraphMap& f, const BackwardItinerary& x,
                              const Caps& caps) {
    OmegaSet omega = omega_of_turning_points(f, caps.orbit);
    if (omega.partial)
        throw Error("CapExceeded",
                    "omega(P_f) undetermined within the orbit cap");
    std::set<GraphPoint> endpoint_orbits = endpoint_orbit_closure(f, caps.orbit);

    Classification c;
    c.degree_hypothesis = true;
    for (const auto& p : x.cycle)
        if (degree(f.graph, p) >= 3) c.degree_hypothesis = false;
    if (!c.degree_hypothesis)
        throw Error("HypothesisFailed",
                    "a cycle coordinate lies on a branch vertex; the "
                    "classification theorem does not apply");

    auto some_coordinate_avoids = [&](const std::set<GraphPoint>& s) {
        for (const auto& p : x.preperiodic)
            if (!s.count(p)) return true;
        for (const auto& p : x.cycle)
            if (!s.count(p)) return true;
        return false;
    };
    c.condition_i = some_coordinate_avoids(endpoint_orbits);
    c.condition_ii = some_coordinate_avoids(omega.points);
    c.verdict = (c.condition_i && c.condition_ii)
                    ? Classification::Verdict::Product
                    : Classification::Verdict::Exceptional;
    return c;
}

Diagnosis exceptional_diagnosis(const PLGraphMap& f, const BackwardItinerary& x,
                                int depth, const Caps& caps) {
    Classification c = classify_point(f, x, caps);
    if (c.verdict == Classification::Verdict::Product)
        throw Error("NotExceptional", "the point classifies as PRODUCT");
    if (depth <= 0) return Diagnosis::Undetermined;

    OmegaSet omega = omega_of_turning_points(f, caps.orbit);
    std::set<GraphPoint> turning_locs;
    for (const auto& tp : turning_points(f)) turning_locs.insert(tp.location);

    // A turning point recurring inside the cycle itself is the two-pass /
    // single-fold mechanism; only when that is absent does a bare
    // condition-(i) failure read as the endcontinuum case.
    bool recurrent_turning = false;
    for (const auto& p : x.cycle)
        if (turning_locs.count(p) && omega.points.count(p))
            recurrent_turning = true;
    if (!recurrent_turning)
        return c.condition_i ? Diagnosis::Undetermined
                             : Diagnosis::EndpointCondition;

    MarkovData data;
    try {
        data = index_sets(f, compute_markov_partition(f));
    } catch (const Error&) {
        return Diagnosis::Undetermined;
    }
    // cells around the cycle coordinates that sit inside omega(P_f)
    std::vector<int> columns;
    for (const auto& p : x.cycle) {
        if (!omega.points.count(p)) continue;
        for (int cid = 0; cid < data.cell_count(); ++cid) {
            Arc cell = data.cell_arc(data.cell_of(cid));
            bool contains = false;
            if (auto v = vertex_of(f.graph, p)) {
                int u = f.graph.edges[cell.edge].u, w = f.graph.edges[cell.edge].v;
                contains = (cell.a == 0 && u == *v) || (cell.b == 1 && w == *v);
            } else {
                contains = cell.edge == p.edge && cell.a <= p.t && p.t <= cell.b;
            }
            if (contains) columns.push_back(cid);
        }
    }
    std::sort(columns.begin(), columns.end());
    columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
    if (columns.empty()) return Diagnosis::Undetermined;

    bool two_pass_at_depth = false;  // entry >= 2 persists to the last level
    bool single_fold_all_levels = true;
    for (int n = 1; n <= depth; ++n) {
        IntMatrix M = transition_matrix_power(data, n);
        bool two_pass_here = false;
        bool fold_here = false;
        for (int j : columns) {
            std::vector<int> rows;
            for (int i = 0; i < data.cell_count(); ++i) {
                if (M[i][j] >= 2) two_pass_here = true;
                if (M[i][j] >= 1) rows.push_back(i);
            }
            // a pair of cells adjacent across a turning point covering j once
            for (std::size_t a = 0; a < rows.size() && !fold_here; ++a)
                for (std::size_t b = a + 1; b < rows.size() && !fold_here; ++b) {
                    LinkId ca = data.cell_of(rows[a]), cb = data.cell_of(rows[b]);
                    if (ca.edge != cb.edge || std::abs(ca.k - cb.k) != 1) continue;
                    int kk = std::max(ca.k, cb.k) - 1;  // shared cut index
                    GraphPoint cut = canonical(
                        f.graph, ca.edge, data.partition.cuts[ca.edge][kk]);
                    if (turning_locs.count(cut)) fold_here = true;
                }
        }
        if (n == depth) two_pass_at_depth = two_pass_here;
        if (two_pass_here || !fold_here) single_fold_all_levels = false;
    }
    if (two_pass_at_depth) return Diagnosis::IndecomposableLike;
    if (single_fold_all_levels) return Diagnosis::SinCurveLike;
    return Diagnosis::Undetermined;
}

PatternEquivalence pattern_equivalent(const PLGraphMap& f, const PLGraphMap& g) {
    PatternEquivalence pe;
    if (!(f.graph == g.graph)) {
        pe.reason = "the maps act on different graphs";
        return pe;
    }
    MarkovPartition pf = compute_markov_partition(f);
    MarkovPartition pg = compute_markov_partition(g);
    for (std::size_t e = 0; e < pf.cuts.size(); ++e)
        if (pf.cuts[e].size() != pg.cuts[e].size()) {
            pe.reason = "per-edge partition sizes differ";
            return pe;
        }
    // canonical index of a partition point: least (edge, cut position)
    auto index_table = [&](const PLGraphMap& m, const MarkovPartition& part) {
        std::map<GraphPoint, LinkId> idx;
        for (std::size_t e = static_cast<std::size_t>(0); e < part.cuts.size(); ++e)
            for (std::size_t k = 0; k < part.cuts[e].size(); ++k) {
                GraphPoint p = canonical(m.graph, static_cast<int>(e),
                                         part.cuts[e][k]);
                LinkId id{static_cast<int>(e), static_cast<int>(k)};
                auto it = idx.find(p);
                if (it == idx.end() || id < it->second) idx[p] = id;
            }
        return idx;
    };
    auto idxF = index_table(f, pf);
    auto idxG = index_table(g, pg);
    pe.image_index_table.resize(pf.cuts.size());
    for (std::size_t e = 0; e < pf.cuts.size(); ++e) {
        for (std::size_t k = 0; k < pf.cuts[e].size(); ++k) {
            LinkId imgF = idxF.at(eval(f, canonical(f.graph, static_cast<int>(e),
                                                    pf.cuts[e][k])));
            LinkId imgG = idxG.at(eval(g, canonical(g.graph, static_cast<int>(e),
                                                    pg.cuts[e][k])));
            if (!(imgF == imgG)) {
                pe.reason = "image index of partition point (" +
                            std::to_string(e) + "," + std::to_string(k) +
                            ") differs";
                pe.image_index_table.clear();
                return pe;
            }
            pe.image_index_table[e].push_back(imgF);
        }
    }
    pe.equivalent = true;
    return pe;
}

ComparisonVerdict compare_spaces(const PLGraphMap& f, const PLGraphMap& g,
                                 int depth, const Caps& caps) {
    if (!(f.graph == g.graph))
        throw Error("DifferentGraphs", "the maps act on different graphs");
    ComparisonVerdict v;
    v.assumptions_f = check_standing_assumptions(f);
    v.assumptions_g = check_standing_assumptions(g);

    auto omega_count = [&](const PLGraphMap& m) -> std::optional<std::size_t> {
        try {
            OmegaSet o = omega_of_turning_points(m, caps.orbit);
            if (o.partial) return std::nullopt;
            return o.cardinality();
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    v.omega_f = omega_count(f);
    v.omega_g = omega_count(g);

    PatternEquivalence pe = pattern_equivalent(f, g);
    if (pe.equivalent) {
        if (v.omega_f && v.omega_g && *v.omega_f != *v.omega_g)
            throw Error("InternalContradiction",
                        "pattern equivalence with unequal exact omega "
                        "cardinalities");
        v.outcome = ComparisonVerdict::Outcome::Homeomorphic;
        v.witness = joint_refinement_sequence(f, g, depth);
        return v;
    }
    v.notes.push_back("pattern inequivalence alone proves nothing: " + pe.reason);
    if (!v.omega_f || !v.omega_g) {
        v.notes.push_back("omega cardinality undetermined within the cap");
        v.outcome = ComparisonVerdict::Outcome::Inconclusive;
        return v;
    }
    if (*v.omega_f == *v.omega_g) {
        v.notes.push_back("omega cardinalities agree; no distinguishing invariant");
        v.outcome = ComparisonVerdict::Outcome::Inconclusive;
        return v;
    }
    if (!path_graph(f.graph)) {
        v.notes.push_back(
            "omega cardinalities differ but the counting corollary is stated "
            "for maps of an arc; graph is not an arc");
        v.outcome = ComparisonVerdict::Outcome::Inconclusive;
        return v;
    }
    if (!v.assumptions_f.all_hold() || !v.assumptions_g.all_hold()) {
        v.notes.push_back("standing assumptions not fully verified");
        v.outcome = ComparisonVerdict::Outcome::Inconclusive;
        return v;
    }
    v.outcome = ComparisonVerdict::Outcome::Distinguished;
    return v;
}

}  // namespace invlim
