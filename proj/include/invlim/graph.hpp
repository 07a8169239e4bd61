#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "invlim/rational.hpp"

namespace invlim {

// Input description of a finite graph. Vertices are 0-based internally;
// the file format and JSON output use the 1-based labels v1..vn.
struct GraphSpec {
    int vertex_count = 0;
    struct EdgeSpec {
        int u = 0, v = 0;  // endpoints, any order
        Rat length = 1;
    };
    std::vector<EdgeSpec> edges;
};

// A point of the graph: position t in [0,1] along edge `edge`, measured
// in arclength fraction from the lower-labelled endpoint.
struct GraphPoint {
    int edge = 0;
    Rat t = 0;

    friend bool operator==(const GraphPoint& a, const GraphPoint& b) {
        return a.edge == b.edge && a.t == b.t;
    }
    friend bool operator<(const GraphPoint& a, const GraphPoint& b) {
        if (a.edge != b.edge) return a.edge < b.edge;
        return a.t < b.t;
    }
};

// Closed sub-arc [a,b] of a single edge, 0 <= a <= b <= 1.
struct Arc {
    int edge = 0;
    Rat a = 0, b = 0;

    friend bool operator==(const Arc& x, const Arc& y) {
        return x.edge == y.edge && x.a == y.a && x.b == y.b;
    }
    friend bool operator<(const Arc& x, const Arc& y) {
        if (x.edge != y.edge) return x.edge < y.edge;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }
};

// Finite metric graph. Immutable after build_graph; all members derived
// there. Edges are stored sorted lexicographically by (u,v) with u < v,
// so the edge index order realizes the ordering << on E'.
struct FiniteGraph {
    struct Edge {
        int u = 0, v = 0;  // u < v
        Rat length = 1;
    };

    int vertex_count = 0;
    std::vector<Edge> edges;

    std::vector<int> vertex_degree;            // per vertex
    std::vector<std::vector<int>> incident;    // per vertex, ascending edge indices
    std::vector<int> branch_vertices;          // V': degree >= 3
    std::vector<int> endpoint_vertices;        // E_G: degree == 1
    std::vector<std::vector<Rat>> vertex_dist; // all-pairs path distances
    Rat diameter = 0;                          // exact path-metric diameter

    int edge_between(int u, int v) const;  // -1 if absent

    friend bool operator==(const FiniteGraph& a, const FiniteGraph& b) {
        if (a.vertex_count != b.vertex_count || a.edges.size() != b.edges.size())
            return false;
        for (std::size_t i = 0; i < a.edges.size(); ++i)
            if (a.edges[i].u != b.edges[i].u || a.edges[i].v != b.edges[i].v ||
                a.edges[i].length != b.edges[i].length)
                return false;
        return true;
    }
};

// Validates and builds. Throws Error with code DuplicateEdge, SelfLoop,
// Disconnected, or NonpositiveLength.
FiniteGraph build_graph(const GraphSpec& spec);

// Canonical form: t=0 / t=1 collapse to the vertex's unique representative
// (lexicographically least incident edge, endpoint position matching).
GraphPoint canonical(const FiniteGraph& g, int edge, const Rat& t);
GraphPoint canonical(const FiniteGraph& g, const GraphPoint& p);

// Canonical representative of vertex v.
GraphPoint vertex_point(const FiniteGraph& g, int v);

// Vertex id if p sits at a vertex, nullopt for edge-interior points.
std::optional<int> vertex_of(const FiniteGraph& g, const GraphPoint& p);

// Degree in the literal combinatorial sense: incident-edge count at vertices,
// 0 at edge-interior points.
int degree(const FiniteGraph& g, const GraphPoint& p);

// Exact shortest-path (arclength) distance.
Rat graph_metric(const FiniteGraph& g, const GraphPoint& p, const GraphPoint& q);

Rat arc_length(const FiniteGraph& g, const Arc& a);

}  // namespace invlim
