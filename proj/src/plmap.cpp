#include "invlim/plmap.hpp"

#include <algorithm>
#include <map>

namespace invlim {
namespace {

// Traversal sub-interval [sa, sb] of step i, in traversal coordinates.
std::pair<Rat, Rat> step_span(const EdgePath& p, std::size_t i) {
    Rat sa = (i == 0) ? p.start_u : Rat(0);
    Rat sb = (i + 1 == p.steps.size()) ? p.end_u : Rat(1);
    return {sa, sb};
}

int step_start_vertex(const FiniteGraph& g, const PathStep& s) {
    return s.forward ? g.edges[s.edge].u : g.edges[s.edge].v;
}
int step_end_vertex(const FiniteGraph& g, const PathStep& s) {
    return s.forward ? g.edges[s.edge].v : g.edges[s.edge].u;
}

void validate_path(const FiniteGraph& g, const EdgePath& p) {
    if (p.steps.empty()) throw Error("InvalidMap", "empty lap image path");
    for (const auto& s : p.steps)
        if (s.edge < 0 || s.edge >= static_cast<int>(g.edges.size()))
            throw Error("InvalidMap", "lap image uses an unknown edge");
    if (p.start_u < 0 || p.start_u > 1 || p.end_u < 0 || p.end_u > 1)
        throw Error("InvalidMap", "path offset outside [0,1]");
    if (p.steps.size() == 1) {
        if (p.start_u == p.end_u)
            throw Error("ConstantLap", "lap image has zero length");
        if (p.start_u > p.end_u)
            throw Error("InvalidMap", "path offsets reversed");
    } else {
        if (p.start_u == 1 || p.end_u == 0)
            throw Error("InvalidMap", "degenerate first or last path step");
    }
    // simplicity: distinct edges, distinct covered vertices
    std::vector<int> edges_used;
    for (const auto& s : p.steps) edges_used.push_back(s.edge);
    std::sort(edges_used.begin(), edges_used.end());
    if (std::adjacent_find(edges_used.begin(), edges_used.end()) != edges_used.end())
        throw Error("InvalidMap", "lap image path repeats an edge");
    for (std::size_t i = 0; i + 1 < p.steps.size(); ++i)
        if (step_end_vertex(g, p.steps[i]) != step_start_vertex(g, p.steps[i + 1]))
            throw Error("InvalidMap", "lap image path is not connected");
    std::vector<int> covered;
    if (p.steps.size() == 1) {
        if (p.start_u == 0) covered.push_back(step_start_vertex(g, p.steps[0]));
        if (p.end_u == 1) covered.push_back(step_end_vertex(g, p.steps[0]));
    } else {
        if (p.start_u == 0) covered.push_back(step_start_vertex(g, p.steps[0]));
        for (std::size_t i = 0; i + 1 < p.steps.size(); ++i)
            covered.push_back(step_end_vertex(g, p.steps[i]));
        if (p.end_u == 1) covered.push_back(step_end_vertex(g, p.steps.back()));
    }
    std::sort(covered.begin(), covered.end());
    if (std::adjacent_find(covered.begin(), covered.end()) != covered.end())
        throw Error("InvalidMap", "lap image path revisits a vertex");
}

}  // namespace

Rat path_length(const FiniteGraph& g, const EdgePath& p) {
    Rat total = 0;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        auto [sa, sb] = step_span(p, i);
        total += (sb - sa) * g.edges[p.steps[i].edge].length;
    }
    return total;
}

GraphPoint path_start(const FiniteGraph& g, const EdgePath& p) {
    const auto& s = p.steps.front();
    Rat t = s.forward ? p.start_u : 1 - p.start_u;
    return canonical(g, s.edge, t);
}

GraphPoint path_end(const FiniteGraph& g, const EdgePath& p) {
    const auto& s = p.steps.back();
    Rat t = s.forward ? p.end_u : 1 - p.end_u;
    return canonical(g, s.edge, t);
}

GraphPoint path_point_at(const FiniteGraph& g, const EdgePath& p, const Rat& len) {
    Rat acc = 0;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        auto [sa, sb] = step_span(p, i);
        const Rat L = g.edges[p.steps[i].edge].length;
        Rat here = (sb - sa) * L;
        if (len <= acc + here || i + 1 == p.steps.size()) {
            Rat u = sa + (len - acc) / L;
            Rat t = p.steps[i].forward ? u : 1 - u;
            return canonical(g, p.steps[i].edge, t);
        }
        acc += here;
    }
    throw Error("Internal", "path_point_at past end");
}

std::vector<Rat> path_locate(const FiniteGraph& g, const EdgePath& p,
                             const GraphPoint& q) {
    // All representations of q as (edge, t)
    std::vector<GraphPoint> reps;
    if (auto v = vertex_of(g, q)) {
        for (int e : g.incident[*v])
            reps.push_back({e, g.edges[e].u == *v ? Rat(0) : Rat(1)});
    } else {
        reps.push_back(q);
    }
    std::vector<Rat> out;
    Rat acc = 0;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        auto [sa, sb] = step_span(p, i);
        const Rat L = g.edges[p.steps[i].edge].length;
        for (const auto& r : reps) {
            if (r.edge != p.steps[i].edge) continue;
            Rat u = p.steps[i].forward ? r.t : 1 - r.t;
            if (u < sa || u > sb) continue;
            out.push_back(acc + (u - sa) * L);
        }
        acc += (sb - sa) * L;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Arc> path_arcs(const FiniteGraph&, const EdgePath& p) {
    std::vector<Arc> out;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        auto [sa, sb] = step_span(p, i);
        if (p.steps[i].forward)
            out.push_back({p.steps[i].edge, sa, sb});
        else
            out.push_back({p.steps[i].edge, 1 - sb, 1 - sa});
    }
    return out;
}

EdgePath reversed(const EdgePath& p) {
    EdgePath r;
    r.steps.assign(p.steps.rbegin(), p.steps.rend());
    for (auto& s : r.steps) s.forward = !s.forward;
    r.start_u = 1 - p.end_u;
    r.end_u = 1 - p.start_u;
    return r;
}

Germ germ_at_start(const EdgePath& p) {
    return {p.steps.front().edge, p.steps.front().forward};
}

Germ germ_at_end(const EdgePath& p) {
    // direction of motion from the endpoint back into the path
    return {p.steps.back().edge, !p.steps.back().forward};
}

const Lap& PLGraphMap::lap_at(int edge, const Rat& t) const {
    for (const auto& l : laps[edge])
        if (l.lo <= t && t <= l.hi) return l;
    throw Error("Internal", "no lap contains the point");
}

PLGraphMap build_pl_map(const FiniteGraph& g, std::vector<std::vector<Lap>> laps) {
    if (laps.size() != g.edges.size())
        throw Error("InvalidMap", "one lap list required per edge");
    PLGraphMap f;
    f.graph = g;
    f.laps = std::move(laps);
    for (std::size_t e = 0; e < f.laps.size(); ++e) {
        auto& ls = f.laps[e];
        if (ls.empty()) throw Error("InvalidMap", "edge without laps");
        std::sort(ls.begin(), ls.end(),
                  [](const Lap& a, const Lap& b) { return a.lo < b.lo; });
        if (ls.front().lo != 0 || ls.back().hi != 1)
            throw Error("InvalidMap", "lap breakpoints must span [0,1]");
        for (std::size_t k = 0; k < ls.size(); ++k) {
            if (ls[k].lo >= ls[k].hi)
                throw Error("InvalidMap", "empty lap interval");
            if (k + 1 < ls.size() && ls[k].hi != ls[k + 1].lo)
                throw Error("InvalidMap", "lap breakpoints have gaps or overlaps");
            validate_path(g, ls[k].image);
        }
    }
    // continuity at interior breakpoints
    for (std::size_t e = 0; e < f.laps.size(); ++e)
        for (std::size_t k = 0; k + 1 < f.laps[e].size(); ++k)
            if (!(path_end(g, f.laps[e][k].image) ==
                  path_start(g, f.laps[e][k + 1].image)))
                throw Error("InvalidMap", "image discontinuous at a breakpoint");
    // continuity at vertices
    for (int v = 0; v < g.vertex_count; ++v) {
        std::vector<GraphPoint> imgs;
        for (int e : g.incident[v]) {
            if (g.edges[e].u == v)
                imgs.push_back(path_start(g, f.laps[e].front().image));
            if (g.edges[e].v == v)
                imgs.push_back(path_end(g, f.laps[e].back().image));
        }
        for (std::size_t i = 1; i < imgs.size(); ++i)
            if (!(imgs[i] == imgs[0]))
                throw Error("InvalidMap", "image discontinuous at vertex v" +
                                              std::to_string(v + 1));
    }
    // sides at each vertex: the image germ leaving f(v) as we move into the
    // incident edge from v
    auto side_germ = [&](int v, int e) -> Germ {
        if (g.edges[e].u == v) return germ_at_start(f.laps[e].front().image);
        return germ_at_end(f.laps[e].back().image);
    };
    for (int v : g.branch_vertices) {
        for (std::size_t i = 0; i < g.incident[v].size(); ++i)
            for (std::size_t j = i + 1; j < g.incident[v].size(); ++j)
                if (side_germ(v, g.incident[v][i]) == side_germ(v, g.incident[v][j]))
                    throw Error("FoldAtBranchPoint",
                                "two branches at v" + std::to_string(v + 1) +
                                    " fold onto the same image direction");
    }
    // turning points: interior breakpoints where adjacent laps fold
    for (std::size_t e = 0; e < f.laps.size(); ++e) {
        for (std::size_t k = 0; k + 1 < f.laps[e].size(); ++k) {
            Germ back = germ_at_end(f.laps[e][k].image);
            Germ fwd = germ_at_start(f.laps[e][k + 1].image);
            if (back == fwd) {
                TurningPoint tp;
                tp.location =
                    canonical(g, static_cast<int>(e), f.laps[e][k].hi);
                tp.edge = static_cast<int>(e);
                tp.left_lap = static_cast<int>(k);
                tp.right_lap = static_cast<int>(k + 1);
                tp.common_direction = back;
                f.turning.push_back(tp);
            }
        }
    }
    // ...and degree-2 vertices where the two sides fold
    for (int v = 0; v < g.vertex_count; ++v) {
        if (g.vertex_degree[v] != 2) continue;
        int e1 = g.incident[v][0], e2 = g.incident[v][1];
        Germ g1 = side_germ(v, e1), g2 = side_germ(v, e2);
        if (g1 == g2) {
            TurningPoint tp;
            tp.location = vertex_point(f.graph, v);
            tp.edge = -1;
            tp.left_lap = tp.right_lap = -1;
            tp.common_direction = g1;
            f.turning.push_back(tp);
        }
    }
    std::sort(f.turning.begin(), f.turning.end(),
              [](const TurningPoint& a, const TurningPoint& b) {
                  return a.location < b.location;
              });
    return f;
}

GraphPoint eval(const PLGraphMap& f, const GraphPoint& p) {
    const Lap& lap = f.lap_at(p.edge, p.t);
    Rat lam = (p.t - lap.lo) / (lap.hi - lap.lo);
    return path_point_at(f.graph, lap.image,
                         lam * path_length(f.graph, lap.image));
}

std::set<GraphPoint> preimages(const PLGraphMap& f, const GraphPoint& q) {
    std::set<GraphPoint> out;
    for (std::size_t e = 0; e < f.laps.size(); ++e) {
        for (const auto& lap : f.laps[e]) {
            Rat total = path_length(f.graph, lap.image);
            for (const Rat& len : path_locate(f.graph, lap.image, q)) {
                Rat t = lap.lo + (len / total) * (lap.hi - lap.lo);
                out.insert(canonical(f.graph, static_cast<int>(e), t));
            }
        }
    }
    return out;
}

const std::vector<TurningPoint>& turning_points(const PLGraphMap& f) {
    return f.turning;
}

Rat min_stretch(const PLGraphMap& f) {
    bool have = false;
    Rat best = 0;
    for (std::size_t e = 0; e < f.laps.size(); ++e) {
        for (const auto& lap : f.laps[e]) {
            Rat domain = (lap.hi - lap.lo) * f.graph.edges[e].length;
            Rat s = path_length(f.graph, lap.image) / domain;
            if (!have || s < best) {
                best = s;
                have = true;
            }
        }
    }
    return best;
}

}  // namespace invlim
