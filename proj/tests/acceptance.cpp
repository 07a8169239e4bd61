// Acceptance suite: one line per criterion, PASS or FAIL, nonzero exit
// when anything fails. All checks are exact; no tolerances anywhere.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <random>
#include <vector>

#include "invlim/io.hpp"

using namespace invlim;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool ok, double seconds) {
    std::cout << "criterion " << criterion << " (" << name << "): "
              << (ok ? "PASS" : "FAIL") << "  [" << seconds << " s]\n";
    if (!ok) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    }
};

struct NamedMap {
    std::string name;
    const FiniteGraph* graph;
    const PLGraphMap* map;
};

// criterion 1: fhat output is always a valid closed graph-chain refining
// the Markov chain, over randomized uniform refinements
bool criterion1(const std::vector<NamedMap>& maps) {
    std::mt19937 rng(20010923);
    std::uniform_int_distribution<int> count(1, 5);
    for (const NamedMap& m : maps) {
        MarkovData data = index_sets(*m.map, compute_markov_partition(*m.map));
        GraphChain markov = chain_from_partition(data.partition);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<std::vector<int>> counts(markov.links.size());
            for (std::size_t e = 0; e < markov.links.size(); ++e)
                for (std::size_t k = 0; k < markov.links[e].size(); ++k)
                    counts[e].push_back(count(rng));
            auto [chain, h] = refine_uniform(*m.graph, markov, counts);
            FhatResult r = fhat(*m.map, data, chain, h);
            ChainValidation v = validate_closed_graph_chain(*m.graph, r.chain);
            if (!v.ok || !v.violations.empty()) return false;
            for (std::size_t e = 0; e < r.chain.links.size(); ++e)
                for (std::size_t k = 0; k < r.chain.links[e].size(); ++k) {
                    LinkId id{static_cast<int>(e), static_cast<int>(k) + 1};
                    Arc inner = r.chain.link(id).hull();
                    Arc outer = data.cell_arc(
                        r.pattern_into_markov.child_to_parent.at(id));
                    if (inner.edge != outer.edge || outer.a > inner.a ||
                        inner.b > outer.b)
                        return false;
                }
        }
    }
    return true;
}

// criterion 2: joint refinement of tent and skew tent, three rounds,
// certified bounds halving each round
bool criterion2(const PLGraphMap& tent, const PLGraphMap& skew) {
    auto rounds = joint_refinement_sequence(tent, skew, 3);
    if (rounds.size() != 3) return false;
    Rat target = Rat(1) / 2;
    for (const RefinementRound& r : rounds) {
        if (r.bound_f > target || r.bound_g > target) return false;
        if (r.pattern.child_to_parent.empty()) return false;
        for (std::size_t e = 0; e < r.chain_f.links.size(); ++e)
            if (r.chain_f.links[e].size() != r.chain_g.links[e].size())
                return false;
        target /= 2;
    }
    return true;
}

bool criterion3(const PLGraphMap& tent, const PLGraphMap& skew,
                const PLGraphMap& g3) {
    if (omega_of_turning_points(tent).cardinality() != 1) return false;
    if (omega_of_turning_points(g3).cardinality() != 3) return false;
    if (compare_spaces(tent, g3, 2).outcome !=
        ComparisonVerdict::Outcome::Distinguished)
        return false;
    return compare_spaces(tent, skew, 2).outcome ==
           ComparisonVerdict::Outcome::Homeomorphic;
}

bool criterion4(const FiniteGraph& g, const PLGraphMap& tent) {
    BackwardItinerary zero = make_itinerary(tent, {}, {canonical(g, 0, 0)});
    BackwardItinerary fixed =
        make_itinerary(tent, {}, {canonical(g, 0, Rat(2) / 3)});
    Classification cz = classify_point(tent, zero);
    if (cz.verdict != Classification::Verdict::Exceptional || cz.condition_i ||
        cz.condition_ii)
        return false;
    Classification cf = classify_point(tent, fixed);
    if (cf.verdict != Classification::Verdict::Product || !cf.condition_i ||
        !cf.condition_ii)
        return false;
    for (BackwardItinerary* x : {&zero, &fixed}) {
        Classification base = classify_point(tent, *x);
        BackwardItinerary y = *x;
        for (int i = 0; i < 5; ++i) {
            y = shift(tent, y);
            Classification c = classify_point(tent, y);
            if (c.verdict != base.verdict || c.condition_i != base.condition_i ||
                c.condition_ii != base.condition_ii)
                return false;
        }
    }
    return true;
}

// criterion 5: preimages invert eval, and their count matches the
// transition-matrix column sum for points interior to a cell
bool criterion5(const std::vector<NamedMap>& maps) {
    std::mt19937 rng(413);
    for (const NamedMap& m : maps) {
        MarkovData data = index_sets(*m.map, compute_markov_partition(*m.map));
        std::uniform_int_distribution<int> edge_pick(
            0, static_cast<int>(m.graph->edges.size()) - 1);
        std::uniform_int_distribution<int> den_pick(1, 97);
        for (int trial = 0; trial < 1000; ++trial) {
            int e = edge_pick(rng);
            int den = den_pick(rng);
            std::uniform_int_distribution<int> num_pick(0, den);
            GraphPoint q = canonical(*m.graph, e, Rat(num_pick(rng), den));
            std::set<GraphPoint> pre = preimages(*m.map, q);
            for (const GraphPoint& x : pre)
                if (!(eval(*m.map, x) == q)) return false;
            // interior-of-cell points: the preimage count is the column sum
            bool interior = true;
            if (vertex_of(*m.graph, q)) interior = false;
            for (const Rat& c : data.partition.cuts[q.edge])
                if (c == q.t) interior = false;
            if (interior) {
                LinkId cell{q.edge, 1};
                while (data.partition.cuts[q.edge][cell.k] < q.t) ++cell.k;
                Int colsum = 0;
                int j = data.cell_id(cell);
                for (int i = 0; i < data.cell_count(); ++i)
                    colsum += data.transition[i][j];
                if (Int(pre.size()) != colsum) return false;
            }
        }
    }
    return true;
}

bool criterion6(const std::vector<NamedMap>& maps) {
    for (const NamedMap& m : maps) {
        MarkovPartition part = compute_markov_partition(*m.map);
        if (!(compute_markov_partition(*m.map) == part)) return false;
        MarkovData data = index_sets(*m.map, part);
        // duality, exhaustively
        for (int a = 0; a < data.cell_count(); ++a)
            for (int b = 0; b < data.cell_count(); ++b) {
                bool in_A = false, in_S = false;
                for (const LinkId& x : data.index_sets[a])
                    if (data.cell_id(x) == b) in_A = true;
                for (const LinkId& x : data.inverse_index_sets[b])
                    if (data.cell_id(x) == a) in_S = true;
                if (in_A != in_S) return false;
                if ((data.transition[a][b] == 1) != in_A) return false;
            }
        // powers against a naive oracle
        int d = data.cell_count();
        IntMatrix acc(d, std::vector<Int>(d, 0));
        for (int i = 0; i < d; ++i) acc[i][i] = 1;
        for (int n = 1; n <= 5; ++n) {
            IntMatrix next(d, std::vector<Int>(d, 0));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    for (int l = 0; l < d; ++l)
                        next[i][j] += acc[i][l] * data.transition[l][j];
            acc = std::move(next);
            if (!(transition_matrix_power(data, n) == acc)) return false;
        }
    }
    return true;
}

bool criterion7(const FiniteGraph& g, const PLGraphMap& tent) {
    Rat precision = Rat(1) / (Int(1) << 20);
    BackwardItinerary zero = make_itinerary(tent, {}, {canonical(g, 0, 0)});
    BackwardItinerary fixed =
        make_itinerary(tent, {}, {canonical(g, 0, Rat(2) / 3)});
    RatInterval self = itinerary_distance(tent, zero, zero, precision);
    if (!self.contains(0) || self.width() > precision) return false;
    RatInterval d = itinerary_distance(tent, zero, fixed, precision);
    if (d.lo != Rat(2) / 3 || d.hi != Rat(2) / 3) return false;

    // triangle inequality over random eventually periodic itineraries:
    // reverse the forward cycle of a random rational point
    std::mt19937 rng(1089);
    std::uniform_int_distribution<int> den_pick(1, 60);
    auto random_itinerary = [&] {
        int den = den_pick(rng);
        std::uniform_int_distribution<int> num_pick(0, den);
        OrbitRecord rec =
            orbit_record(tent, canonical(g, 0, Rat(num_pick(rng), den)));
        std::vector<GraphPoint> cycle = rec.cycle();
        std::reverse(cycle.begin() + 1, cycle.end());
        return make_itinerary(tent, {}, cycle);
    };
    for (int trial = 0; trial < 100; ++trial) {
        BackwardItinerary x = random_itinerary(), y = random_itinerary(),
                          z = random_itinerary();
        Rat xy = itinerary_distance(tent, x, y, precision).hi;
        Rat yz = itinerary_distance(tent, y, z, precision).hi;
        Rat xz = itinerary_distance(tent, x, z, precision).lo;
        if (xz > xy + yz) return false;
    }
    return true;
}

}  // namespace

int main() {
    ParsedInput tents = parse_input_file(DATA_DIR "/tents.toml");
    ParsedInput triod = parse_input_file(DATA_DIR "/triod.toml");
    const PLGraphMap& tent = tents.maps.at("tent");
    const PLGraphMap& skew = tents.maps.at("skew");
    const PLGraphMap& g3 = tents.maps.at("g3");
    std::vector<NamedMap> example_maps = {
        {"tent", &tents.graph, &tent},
        {"skew", &tents.graph, &skew},
        {"g3", &tents.graph, &g3},
        {"triod-identity", &triod.graph, &triod.maps.at("identity")},
    };

    auto run = [&](int n, const std::string& name, auto&& fn) {
        Timer t;
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            std::cout << "criterion " << n << " threw: " << e.what() << "\n";
        }
        report(n, name, ok, t.seconds());
    };

    run(1, "closed graph-chain refinement", [&] { return criterion1(example_maps); });
    run(2, "joint refinement certificates", [&] { return criterion2(tent, skew); });
    run(3, "distinguishing by omega cardinality", [&] { return criterion3(tent, skew, g3); });
    run(4, "local structure classification", [&] { return criterion4(tents.graph, tent); });
    run(5, "preimages against the transition matrix", [&] { return criterion5(example_maps); });
    run(6, "Markov duality and idempotence", [&] { return criterion6(example_maps); });
    run(7, "metric contract", [&] { return criterion7(tents.graph, tent); });

    return g_failures == 0 ? 0 : 1;
}
