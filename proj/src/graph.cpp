#include "invlim/graph.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <set>

namespace invlim {
namespace {

struct LinFn {
    // f(s,t) = as*s + at*t + c
    Rat as, at, c;
    Rat eval(const Rat& s, const Rat& t) const { return as * s + at * t + c; }
};

struct Line {
    // as*s + at*t + c = 0
    Rat as, at, c;
};

// Max over a polygon of min_i f_i, for linear f_i. The max of a concave
// piecewise-linear function is attained at a vertex of the subdivision
// induced by the pairwise equality lines and the polygon boundary.
Rat max_of_min(const std::vector<LinFn>& fns, const std::vector<Line>& boundary,
               const std::vector<std::array<Rat, 3>>& halfplanes) {
    std::vector<Line> lines = boundary;
    for (std::size_t i = 0; i < fns.size(); ++i)
        for (std::size_t j = i + 1; j < fns.size(); ++j)
            lines.push_back({fns[i].as - fns[j].as, fns[i].at - fns[j].at,
                             fns[i].c - fns[j].c});

    auto inside = [&](const Rat& s, const Rat& t) {
        for (const auto& h : halfplanes)  // h[0]*s + h[1]*t + h[2] >= 0
            if (h[0] * s + h[1] * t + h[2] < 0) return false;
        return true;
    };

    bool have = false;
    Rat best = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            Rat det = lines[i].as * lines[j].at - lines[j].as * lines[i].at;
            if (det == 0) continue;
            Rat s = (-lines[i].c * lines[j].at + lines[j].c * lines[i].at) / det;
            Rat t = (-lines[i].as * lines[j].c + lines[j].as * lines[i].c) / det;
            if (!inside(s, t)) continue;
            Rat v = fns[0].eval(s, t);
            for (std::size_t k = 1; k < fns.size(); ++k)
                v = std::min(v, fns[k].eval(s, t));
            if (!have || v > best) {
                best = v;
                have = true;
            }
        }
    }
    return best;
}

// Largest distance between a point of edge e and a point of edge f (e != f),
// with s,t absolute arclength from the lower endpoints.
Rat max_dist_cross(const FiniteGraph& g, int e, int f) {
    const auto& E = g.edges[e];
    const auto& F = g.edges[f];
    const Rat& L1 = E.length;
    const Rat& L2 = F.length;
    const auto& D = g.vertex_dist;
    std::vector<LinFn> fns = {
        {1, 1, D[E.u][F.u]},
        {1, -1, D[E.u][F.v] + L2},
        {-1, 1, D[E.v][F.u] + L1},
        {-1, -1, D[E.v][F.v] + L1 + L2},
    };
    std::vector<Line> box = {{1, 0, 0}, {1, 0, -L1}, {0, 1, 0}, {0, 1, -L2}};
    std::vector<std::array<Rat, 3>> hp = {
        {1, 0, 0}, {-1, 0, L1}, {0, 1, 0}, {0, -1, L2}};
    return max_of_min(fns, box, hp);
}

// Largest distance between two points of the same edge (0 <= s <= t <= L).
Rat max_dist_same(const FiniteGraph& g, int e) {
    const auto& E = g.edges[e];
    const Rat& L = E.length;
    Rat D = g.vertex_dist[E.u][E.v];
    std::vector<LinFn> fns = {
        {-1, 1, 0},        // t - s
        {1, -1, D + L},    // s + D + (L - t)
        {-1, 1, D + L},    // (L - s) + D + t
    };
    std::vector<Line> box = {{1, 0, 0}, {1, 0, -L}, {0, 1, 0}, {0, 1, -L},
                             {1, -1, 0}};
    std::vector<std::array<Rat, 3>> hp = {
        {1, 0, 0}, {-1, 0, L}, {0, 1, 0}, {0, -1, L}, {-1, 1, 0}};
    return max_of_min(fns, box, hp);
}

}  // namespace

int FiniteGraph::edge_between(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].u == u && edges[i].v == v) return static_cast<int>(i);
    return -1;
}

FiniteGraph build_graph(const GraphSpec& spec) {
    FiniteGraph g;
    g.vertex_count = spec.vertex_count;
    if (g.vertex_count < 2 || spec.edges.empty())
        throw Error("Disconnected", "a graph needs at least one edge and two vertices");

    std::set<std::pair<int, int>> seen;
    for (const auto& es : spec.edges) {
        int u = es.u, v = es.v;
        if (u < 0 || v < 0 || u >= g.vertex_count || v >= g.vertex_count)
            throw Error("ParseError", "edge endpoint out of range");
        if (u == v) throw Error("SelfLoop", "edge v" + std::to_string(u + 1) +
                                                "-v" + std::to_string(v + 1));
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second)
            throw Error("DuplicateEdge", "edge v" + std::to_string(u + 1) + "-v" +
                                             std::to_string(v + 1) + " repeated");
        if (es.length <= 0)
            throw Error("NonpositiveLength", "edge v" + std::to_string(u + 1) +
                                                 "-v" + std::to_string(v + 1));
        g.edges.push_back({u, v, es.length});
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
        return std::pair{a.u, a.v} < std::pair{b.u, b.v};
    });

    g.vertex_degree.assign(g.vertex_count, 0);
    g.incident.assign(g.vertex_count, {});
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        g.vertex_degree[g.edges[i].u]++;
        g.vertex_degree[g.edges[i].v]++;
        g.incident[g.edges[i].u].push_back(static_cast<int>(i));
        g.incident[g.edges[i].v].push_back(static_cast<int>(i));
    }
    for (int v = 0; v < g.vertex_count; ++v) {
        if (g.vertex_degree[v] == 0)
            throw Error("Disconnected", "vertex v" + std::to_string(v + 1) +
                                            " is isolated");
        if (g.vertex_degree[v] >= 3) g.branch_vertices.push_back(v);
        if (g.vertex_degree[v] == 1) g.endpoint_vertices.push_back(v);
    }

    // connectivity
    std::vector<char> vis(g.vertex_count, 0);
    std::queue<int> bfs;
    bfs.push(0);
    vis[0] = 1;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int e : g.incident[v]) {
            int w = g.edges[e].u == v ? g.edges[e].v : g.edges[e].u;
            if (!vis[w]) {
                vis[w] = 1;
                bfs.push(w);
            }
        }
    }
    for (int v = 0; v < g.vertex_count; ++v)
        if (!vis[v]) throw Error("Disconnected", "graph is not connected");

    // all-pairs shortest paths (Floyd-Warshall over exact rationals)
    const int n = g.vertex_count;
    Rat big = 1;
    for (const auto& e : g.edges) big += e.length;
    g.vertex_dist.assign(n, std::vector<Rat>(n, big));
    for (int v = 0; v < n; ++v) g.vertex_dist[v][v] = 0;
    for (const auto& e : g.edges)
        g.vertex_dist[e.u][e.v] = g.vertex_dist[e.v][e.u] =
            std::min(g.vertex_dist[e.u][e.v], e.length);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rat via = g.vertex_dist[i][k] + g.vertex_dist[k][j];
                if (via < g.vertex_dist[i][j]) g.vertex_dist[i][j] = via;
            }

    g.diameter = 0;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        g.diameter = std::max(g.diameter, max_dist_same(g, static_cast<int>(e)));
        for (std::size_t f = e + 1; f < g.edges.size(); ++f)
            g.diameter = std::max(
                g.diameter, max_dist_cross(g, static_cast<int>(e), static_cast<int>(f)));
    }
    return g;
}

GraphPoint vertex_point(const FiniteGraph& g, int v) {
    int e = g.incident[v].front();  // lexicographically least incident edge
    return {e, g.edges[e].u == v ? Rat(0) : Rat(1)};
}

GraphPoint canonical(const FiniteGraph& g, int edge, const Rat& t) {
    if (t < 0 || t > 1) throw Error("ParseError", "point position outside [0,1]");
    if (t == 0) return vertex_point(g, g.edges[edge].u);
    if (t == 1) return vertex_point(g, g.edges[edge].v);
    return {edge, t};
}

GraphPoint canonical(const FiniteGraph& g, const GraphPoint& p) {
    return canonical(g, p.edge, p.t);
}

std::optional<int> vertex_of(const FiniteGraph& g, const GraphPoint& p) {
    if (p.t == 0) return g.edges[p.edge].u;
    if (p.t == 1) return g.edges[p.edge].v;
    return std::nullopt;
}

int degree(const FiniteGraph& g, const GraphPoint& p) {
    auto v = vertex_of(g, p);
    return v ? g.vertex_degree[*v] : 0;
}

Rat graph_metric(const FiniteGraph& g, const GraphPoint& p, const GraphPoint& q) {
    auto vp = vertex_of(g, p);
    auto vq = vertex_of(g, q);
    const auto& D = g.vertex_dist;
    if (vp && vq) return D[*vp][*vq];
    if (vp || vq) {
        int v = vp ? *vp : *vq;
        const GraphPoint& x = vp ? q : p;
        const auto& E = g.edges[x.edge];
        Rat s = x.t * E.length;
        return std::min(s + D[E.u][v], (E.length - s) + D[E.v][v]);
    }
    const auto& E = g.edges[p.edge];
    const auto& F = g.edges[q.edge];
    Rat s = p.t * E.length, t = q.t * F.length;
    if (p.edge == q.edge) {
        Rat direct = s < t ? t - s : s - t;
        Rat around = std::min(s + D[E.u][E.v] + (E.length - t),
                              t + D[E.u][E.v] + (E.length - s));
        return std::min(direct, around);
    }
    Rat best = s + t + D[E.u][F.u];
    best = std::min(best, s + (F.length - t) + D[E.u][F.v]);
    best = std::min(best, (E.length - s) + t + D[E.v][F.u]);
    best = std::min(best, (E.length - s) + (F.length - t) + D[E.v][F.v]);
    return best;
}

Rat arc_length(const FiniteGraph& g, const Arc& a) {
    return (a.b - a.a) * g.edges[a.edge].length;
}

}  // namespace invlim
