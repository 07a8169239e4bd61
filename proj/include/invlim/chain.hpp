#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "invlim/markov.hpp"

namespace invlim {

// One link of a graph-chain: a finite union of closed arcs on a single
// edge. Constructions here always produce single-arc links; the union
// representation survives so the validator can describe bad inputs.
struct ChainLink {
    std::vector<Arc> arcs;

    // smallest closed arc containing the link
    Arc hull() const;
};

// Closed graph-chain: one ordered edge-chain per edge of the graph.
struct GraphChain {
    std::vector<std::vector<ChainLink>> links;

    int link_count() const;
    const ChainLink& link(const LinkId& id) const {
        return links[id.edge][id.k - 1];
    }
};

// Pattern function h: each link of a refining chain to the link of the
// coarser chain containing it.
struct Pattern {
    std::map<LinkId, LinkId> child_to_parent;

    friend bool operator==(const Pattern& a, const Pattern& b) {
        return a.child_to_parent == b.child_to_parent;
    }
};

// Max link diameter, measured as arclength of the link hull. Arclength is
// exact on interval-like pieces and an upper bound in general, which is
// the safe direction for every certificate computed from it.
Rat chain_mesh(const FiniteGraph& g, const GraphChain& chain);

// Cells of a Markov partition as a closed graph-chain.
GraphChain chain_from_partition(const MarkovPartition& part);

// Splits every link into the given number of equal-arclength closed
// sublinks (counts indexed like the links). Returns the refined chain and
// the child-to-parent pattern.
std::pair<GraphChain, Pattern> refine_uniform(
    const FiniteGraph& g, const GraphChain& chain,
    const std::vector<std::vector<int>>& counts);

// Mesh-driven variant: per-link count floor(diam/delta)+1.
std::pair<GraphChain, Pattern> refine_uniform(const FiniteGraph& g,
                                              const GraphChain& chain,
                                              const Rat& delta);

struct ChainValidation {
    bool ok = true;
    std::vector<std::string> violations;
};

// Checks the closed-graph-chain conditions: links closed and connected,
// consecutive links meeting exactly in a boundary point, non-adjacent
// links with disjoint closures, edges fully covered, vertices only in
// first/last links.
ChainValidation validate_closed_graph_chain(const FiniteGraph& g,
                                            const GraphChain& chain);

// Result of the Markov graph-chain function applied to a refinement of
// T^f. Provenance entries are aligned with the output links.
struct FhatResult {
    GraphChain chain;
    struct Provenance {
        LinkId source;  // link (i,k) of the input chain
        LinkId cell;    // cell (p,r) of T^f holding the output link
    };
    std::vector<std::vector<Provenance>> provenance;
    Pattern pattern_into_markov;  // output link -> cell of T^f
};

// The four-case preimage-and-trim construction. `h` is the pattern of
// `chain` in the Markov chain of `data`. Throws
// NotRefinementOfMarkovChain or PatternMismatch on bad inputs.
FhatResult fhat(const PLGraphMap& f, const MarkovData& data,
                const GraphChain& chain, const Pattern& h);

// Certified upper bound on the mesh of the pullback of `chain` through
// coordinate n of the inverse limit, in the normalized metric
// (weights 2^-i, d normalized by 2 diam(G)). Requires the nonexpanding
// standing assumption (AssumptionMissing otherwise).
Rat invlim_mesh_bound(const PLGraphMap& f, const GraphChain& chain, int n);

struct RefinementRound {
    GraphChain chain_f, chain_g;
    Pattern pattern;  // h_k: links of this round's chain into the previous
    Rat bound_f, bound_g;
    Rat delta;
};

// Runs the joint refinement scheme for `depth` rounds: shared per-piece
// subdivision counts, identical pattern functions on both sides, and
// certified inverse-limit mesh bounds <= 2^-k at round k. The returned
// pattern list is the homeomorphism witness. Throws NotPatternEquivalent
// or PatternDivergence.
std::vector<RefinementRound> joint_refinement_sequence(const PLGraphMap& f,
                                                       const PLGraphMap& g,
                                                       int depth);

}  // namespace invlim
