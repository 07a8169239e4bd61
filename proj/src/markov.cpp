#include "invlim/markov.hpp"

#include <algorithm>
#include <set>

namespace invlim {
namespace {

// Sub-path covering arclength [a,b] of p, 0 <= a < b <= length(p).
EdgePath subpath(const FiniteGraph& g, const EdgePath& p, const Rat& a,
                 const Rat& b) {
    std::vector<std::pair<Rat, Rat>> spans;  // traversal coords per step
    Rat acc = 0;
    int first = -1, last = -1;
    Rat ua = 0, ub = 0;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        Rat sa = (i == 0) ? p.start_u : Rat(0);
        Rat sb = (i + 1 == p.steps.size()) ? p.end_u : Rat(1);
        const Rat L = g.edges[p.steps[i].edge].length;
        Rat here = (sb - sa) * L;
        if (first < 0 && a < acc + here) {
            first = static_cast<int>(i);
            ua = sa + (a - acc) / L;
        }
        if (last < 0 && (b <= acc + here || i + 1 == p.steps.size())) {
            last = static_cast<int>(i);
            ub = sa + (b - acc) / L;
        }
        acc += here;
        if (last >= 0) break;
    }
    if (first < 0 || last < first) throw Error("Internal", "bad subpath range");
    EdgePath out;
    out.steps.assign(p.steps.begin() + first, p.steps.begin() + last + 1);
    out.start_u = ua;
    out.end_u = ub;
    return out;
}

// Concatenation of two paths with end(a) == start(b); throws
// NotMarkovOnCells on a fold at the junction.
EdgePath concat(const EdgePath& a, const EdgePath& b) {
    if (germ_at_end(a) == germ_at_start(b))
        throw Error("NotMarkovOnCells", "map folds strictly inside a cell");
    EdgePath out = a;
    const PathStep& al = a.steps.back();
    const PathStep& bf = b.steps.front();
    if (al.edge == bf.edge && al.forward == bf.forward) {
        // straight continuation within one edge: merge the shared step
        out.steps.insert(out.steps.end(), b.steps.begin() + 1, b.steps.end());
    } else {
        out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
    }
    out.end_u = b.end_u;
    return out;
}

// Image path of the (sub)arc [lo,hi] of an edge under f.
EdgePath arc_image_path(const PLGraphMap& f, int edge, const Rat& lo,
                        const Rat& hi) {
    EdgePath acc;
    bool have = false;
    for (const auto& lap : f.laps[edge]) {
        Rat x = std::max(lap.lo, lo), y = std::min(lap.hi, hi);
        if (x >= y) continue;
        Rat total = path_length(f.graph, lap.image);
        Rat la = (x - lap.lo) / (lap.hi - lap.lo) * total;
        Rat lb = (y - lap.lo) / (lap.hi - lap.lo) * total;
        EdgePath piece = subpath(f.graph, lap.image, la, lb);
        acc = have ? concat(acc, piece) : piece;
        have = true;
    }
    if (!have) throw Error("Internal", "empty arc image");
    return acc;
}

}  // namespace

LinkId MarkovData::cell_of(int id) const {
    for (std::size_t e = 0; e < cells_per_edge.size(); ++e)
        if (id < cell_offset[e] + cells_per_edge[e])
            return {static_cast<int>(e), id - cell_offset[e] + 1};
    throw Error("Internal", "cell id out of range");
}

MarkovPartition compute_markov_partition(const PLGraphMap& f, int cap) {
    const FiniteGraph& g = f.graph;
    std::set<GraphPoint> pts;
    for (int v = 0; v < g.vertex_count; ++v) pts.insert(vertex_point(g, v));
    for (std::size_t e = 0; e < f.laps.size(); ++e)
        for (const auto& lap : f.laps[e])
            pts.insert(canonical(g, static_cast<int>(e), lap.lo));
    std::vector<GraphPoint> frontier(pts.begin(), pts.end());
    int rounds = 0;
    while (!frontier.empty()) {
        if (++rounds > cap)
            throw Error("NotEventuallyPeriodic",
                        "partition closure did not stabilize within " +
                            std::to_string(cap) + " rounds");
        std::vector<GraphPoint> next;
        for (const auto& p : frontier) {
            GraphPoint q = eval(f, p);
            if (pts.insert(q).second) next.push_back(q);
        }
        frontier = std::move(next);
    }
    MarkovPartition part;
    part.cuts.assign(g.edges.size(), {});
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        part.cuts[e] = {Rat(0), Rat(1)};
    for (const auto& p : pts) {
        if (vertex_of(g, p)) continue;  // vertices are the 0/1 cuts
        part.cuts[p.edge].push_back(p.t);
    }
    for (auto& cs : part.cuts) {
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    }
    return part;
}

MarkovData index_sets(const PLGraphMap& f, const MarkovPartition& part) {
    const FiniteGraph& g = f.graph;
    if (part.cuts.size() != g.edges.size())
        throw Error("NotMarkovOnCells", "partition has wrong edge count");
    MarkovData data;
    data.partition = part;
    data.cells_per_edge.resize(g.edges.size());
    data.cell_offset.resize(g.edges.size());
    int total = 0;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& cs = part.cuts[e];
        if (cs.size() < 2 || cs.front() != 0 || cs.back() != 1 ||
            !std::is_sorted(cs.begin(), cs.end()))
            throw Error("NotMarkovOnCells", "bad cut list on an edge");
        data.cell_offset[e] = total;
        data.cells_per_edge[e] = static_cast<int>(cs.size()) - 1;
        total += data.cells_per_edge[e];
    }

    // membership structures: every lap breakpoint image etc. is resolved
    // through cut lookup on the image path below
    auto cut_index = [&](int edge, const Rat& t) -> int {
        const auto& cs = part.cuts[edge];
        auto it = std::lower_bound(cs.begin(), cs.end(), t);
        if (it == cs.end() || *it != t) return -1;
        return static_cast<int>(it - cs.begin());
    };

    data.index_sets.resize(total);
    data.cell_image.resize(total);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& cs = part.cuts[e];
        for (int k = 1; k <= data.cells_per_edge[e]; ++k) {
            LinkId cell{static_cast<int>(e), k};
            EdgePath img = arc_image_path(f, static_cast<int>(e), cs[k - 1], cs[k]);
            data.cell_image[data.cell_id(cell)] = img;
            // enumerate the cells along the image path
            std::vector<LinkId>& A = data.index_sets[data.cell_id(cell)];
            for (std::size_t si = 0; si < img.steps.size(); ++si) {
                Rat sa = (si == 0) ? img.start_u : Rat(0);
                Rat sb = (si + 1 == img.steps.size()) ? img.end_u : Rat(1);
                int ie = img.steps[si].edge;
                Rat tlo = img.steps[si].forward ? sa : 1 - sb;
                Rat thi = img.steps[si].forward ? sb : 1 - sa;
                int a = cut_index(ie, tlo), b = cut_index(ie, thi);
                if (a < 0 || b < 0)
                    throw Error("NotMarkovOnCells",
                                "cell image is not a union of cells");
                if (img.steps[si].forward)
                    for (int j = a + 1; j <= b; ++j) A.push_back({ie, j});
                else
                    for (int j = b; j > a; --j) A.push_back({ie, j});
            }
            if (A.empty())
                throw Error("NotMarkovOnCells", "cell with empty image");
        }
    }

    data.inverse_index_sets.assign(total, {});
    for (int src = 0; src < total; ++src) {
        LinkId s = data.cell_of(src);
        for (const LinkId& tgt : data.index_sets[src])
            data.inverse_index_sets[data.cell_id(tgt)].push_back(s);
    }
    for (auto& S : data.inverse_index_sets) std::sort(S.begin(), S.end());

    data.transition.assign(total, std::vector<Int>(total, 0));
    for (int src = 0; src < total; ++src)
        for (const LinkId& tgt : data.index_sets[src])
            data.transition[src][data.cell_id(tgt)] = 1;
    return data;
}

IntMatrix transition_matrix_power(const MarkovData& data, int n) {
    if (n < 1) throw Error("ParseError", "matrix power needs n >= 1");
    const int m = data.cell_count();
    IntMatrix result = data.transition;
    for (int step = 1; step < n; ++step) {
        IntMatrix next(m, std::vector<Int>(m, 0));
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k) {
                if (result[i][k] == 0) continue;
                for (int j = 0; j < m; ++j)
                    next[i][j] += result[i][k] * data.transition[k][j];
            }
        result = std::move(next);
    }
    return result;
}

}  // namespace invlim
