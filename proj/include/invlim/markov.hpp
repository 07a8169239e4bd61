#pragma once

#include <vector>

#include "invlim/plmap.hpp"

namespace invlim {

// Identifier of a link/cell: edge index plus 1-based position along the
// edge, ordered lexicographically (edge order realizes << on E').
struct LinkId {
    int edge = 0;
    int k = 1;

    friend bool operator==(const LinkId& a, const LinkId& b) {
        return a.edge == b.edge && a.k == b.k;
    }
    friend bool operator<(const LinkId& a, const LinkId& b) {
        if (a.edge != b.edge) return a.edge < b.edge;
        return a.k < b.k;
    }
};

// Per-edge sorted cut points, always containing 0 and 1.
struct MarkovPartition {
    std::vector<std::vector<Rat>> cuts;

    friend bool operator==(const MarkovPartition& a, const MarkovPartition& b) {
        return a.cuts == b.cuts;
    }
};

using IntMatrix = std::vector<std::vector<Int>>;

// The full combinatorial record of a Markov chain T^f: index sets A,
// inverse index sets S, and the 0/1 transition matrix M with
// M[(p,r)][(i,k)] = 1 iff (p,r) is in S_{i,k}.
struct MarkovData {
    MarkovPartition partition;
    std::vector<int> cells_per_edge;
    std::vector<int> cell_offset;  // global id of (edge, 1)
    std::vector<std::vector<LinkId>> index_sets;          // A, in image order
    std::vector<std::vector<LinkId>> inverse_index_sets;  // S, ascending
    IntMatrix transition;                                 // 0/1
    std::vector<EdgePath> cell_image;  // exact image path of each cell

    int cell_count() const { return static_cast<int>(index_sets.size()); }
    int cell_id(const LinkId& c) const { return cell_offset[c.edge] + c.k - 1; }
    LinkId cell_of(int id) const;
    Arc cell_arc(const LinkId& c) const {
        return {c.edge, partition.cuts[c.edge][c.k - 1], partition.cuts[c.edge][c.k]};
    }
};

// Smallest forward-invariant cut set containing vertices, turning points
// and lap breakpoints; throws NotEventuallyPeriodic if the image closure
// does not stabilize within cap rounds.
MarkovPartition compute_markov_partition(const PLGraphMap& f, int cap = 10000);

// Computes A, S, M for a given f-invariant partition. Throws
// NotMarkovOnCells when a cell image is not a union of cells or the map
// folds strictly inside a cell.
MarkovData index_sets(const PLGraphMap& f, const MarkovPartition& part);

// M^n over the integers, n >= 1.
IntMatrix transition_matrix_power(const MarkovData& data, int n);

}  // namespace invlim
