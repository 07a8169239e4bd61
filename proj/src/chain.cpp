#include "invlim/chain.hpp"

#include <algorithm>
#include <map>

#include "invlim/classify.hpp"

namespace invlim {
namespace {

// Closed-minus-open interval subtraction on one edge. Boundary points of
// the closed arcs survive, which is the trimming rule the construction needs.
std::vector<Arc> subtract_open(const std::vector<Arc>& closed,
                               const std::vector<Arc>& open) {
    std::vector<Arc> cur = closed;
    for (const Arc& o : open) {
        if (o.a >= o.b) continue;  // empty interior
        std::vector<Arc> next;
        for (const Arc& c : cur) {
            if (c.edge != o.edge || o.b <= c.a || o.a >= c.b) {
                next.push_back(c);
                continue;
            }
            if (o.a >= c.a) next.push_back({c.edge, c.a, o.a});
            if (o.b <= c.b) next.push_back({c.edge, o.b, c.b});
        }
        cur = std::move(next);
    }
    return cur;
}

// disjoint sorted arc set per edge, used by the mesh-bound machinery
using Region = std::vector<Arc>;

Region normalize_region(Region r) {
    std::sort(r.begin(), r.end());
    Region out;
    for (const Arc& a : r) {
        if (!out.empty() && out.back().edge == a.edge && a.a <= out.back().b) {
            if (a.b > out.back().b) out.back().b = a.b;
        } else {
            out.push_back(a);
        }
    }
    return out;
}

Region image_region(const PLGraphMap& f, const Region& r) {
    Region out;
    for (const Arc& arc : r) {
        if (arc.a == arc.b) continue;  // point images do not add diameter
        for (const auto& lap : f.laps[arc.edge]) {
            Rat x = std::max(lap.lo, arc.a), y = std::min(lap.hi, arc.b);
            if (x >= y) continue;
            Rat total = path_length(f.graph, lap.image);
            Rat la = (x - lap.lo) / (lap.hi - lap.lo) * total;
            Rat lb = (y - lap.lo) / (lap.hi - lap.lo) * total;
            // walk the lap image between arclengths la and lb
            Rat acc = 0;
            for (std::size_t i = 0; i < lap.image.steps.size(); ++i) {
                Rat sa = (i == 0) ? lap.image.start_u : Rat(0);
                Rat sb = (i + 1 == lap.image.steps.size()) ? lap.image.end_u
                                                           : Rat(1);
                const Rat L = f.graph.edges[lap.image.steps[i].edge].length;
                Rat here = (sb - sa) * L;
                Rat lo = std::max(la, acc), hi = std::min(lb, acc + here);
                if (lo < hi) {
                    Rat ua = sa + (lo - acc) / L, ub = sa + (hi - acc) / L;
                    if (lap.image.steps[i].forward)
                        out.push_back({lap.image.steps[i].edge, ua, ub});
                    else
                        out.push_back({lap.image.steps[i].edge, 1 - ub, 1 - ua});
                }
                acc += here;
            }
        }
    }
    return normalize_region(out);
}

Rat region_diameter_bound(const FiniteGraph& g, const Region& r) {
    Rat total = 0;
    for (const Arc& a : r) total += arc_length(g, a);
    return std::min(total, g.diameter);
}

Rat pow2(int n) {  // 2^n for n >= 0
    Rat r = 1;
    for (int i = 0; i < n; ++i) r *= 2;
    return r;
}

}  // namespace

Arc ChainLink::hull() const {
    if (arcs.empty()) throw Error("Internal", "empty chain link");
    Arc h = arcs.front();
    for (const Arc& a : arcs) {
        if (a.edge != h.edge) throw Error("Internal", "link spans edges");
        h.a = std::min(h.a, a.a);
        h.b = std::max(h.b, a.b);
    }
    return h;
}

int GraphChain::link_count() const {
    int n = 0;
    for (const auto& e : links) n += static_cast<int>(e.size());
    return n;
}

Rat chain_mesh(const FiniteGraph& g, const GraphChain& chain) {
    Rat mesh = 0;
    for (const auto& edge_links : chain.links)
        for (const auto& link : edge_links)
            mesh = std::max(mesh, arc_length(g, link.hull()));
    return mesh;
}

GraphChain chain_from_partition(const MarkovPartition& part) {
    GraphChain c;
    c.links.resize(part.cuts.size());
    for (std::size_t e = 0; e < part.cuts.size(); ++e)
        for (std::size_t k = 0; k + 1 < part.cuts[e].size(); ++k)
            c.links[e].push_back(
                {{Arc{static_cast<int>(e), part.cuts[e][k], part.cuts[e][k + 1]}}});
    return c;
}

std::pair<GraphChain, Pattern> refine_uniform(
    const FiniteGraph&, const GraphChain& chain,
    const std::vector<std::vector<int>>& counts) {
    if (counts.size() != chain.links.size())
        throw Error("InvalidChain", "counts shape mismatch");
    GraphChain out;
    Pattern pat;
    out.links.resize(chain.links.size());
    for (std::size_t e = 0; e < chain.links.size(); ++e) {
        if (counts[e].size() != chain.links[e].size())
            throw Error("InvalidChain", "counts shape mismatch");
        int child_k = 0;
        for (std::size_t k = 0; k < chain.links[e].size(); ++k) {
            const ChainLink& parent = chain.links[e][k];
            if (parent.arcs.size() != 1)
                throw Error("InvalidChain", "cannot refine a disconnected link");
            int q = counts[e][k];
            if (q < 1) throw Error("InvalidChain", "subdivision count must be >= 1");
            const Arc& arc = parent.arcs.front();
            for (int j = 0; j < q; ++j) {
                Rat a = arc.a + (arc.b - arc.a) * j / q;
                Rat b = arc.a + (arc.b - arc.a) * (j + 1) / q;
                out.links[e].push_back({{Arc{arc.edge, a, b}}});
                ++child_k;
                pat.child_to_parent[{static_cast<int>(e), child_k}] = {
                    static_cast<int>(e), static_cast<int>(k) + 1};
            }
        }
    }
    return {std::move(out), std::move(pat)};
}

std::pair<GraphChain, Pattern> refine_uniform(const FiniteGraph& g,
                                              const GraphChain& chain,
                                              const Rat& delta) {
    if (delta <= 0) throw Error("InvalidChain", "mesh target must be positive");
    std::vector<std::vector<int>> counts(chain.links.size());
    for (std::size_t e = 0; e < chain.links.size(); ++e)
        for (const auto& link : chain.links[e]) {
            Rat diam = arc_length(g, link.hull());
            counts[e].push_back(static_cast<int>(floor_div(diam / delta)) + 1);
        }
    return refine_uniform(g, chain, counts);
}

ChainValidation validate_closed_graph_chain(const FiniteGraph& g,
                                            const GraphChain& chain) {
    ChainValidation v;
    auto fail = [&](const std::string& msg) {
        v.ok = false;
        v.violations.push_back(msg);
    };
    if (chain.links.size() != g.edges.size()) {
        fail("chain does not have one edge-chain per edge");
        return v;
    }
    for (std::size_t e = 0; e < chain.links.size(); ++e) {
        const auto& ls = chain.links[e];
        std::string en = "edge " + std::to_string(g.edges[e].u + 1) + "-" +
                         std::to_string(g.edges[e].v + 1);
        if (ls.empty()) {
            fail(en + ": empty edge-chain");
            continue;
        }
        std::vector<Arc> hulls;
        for (std::size_t k = 0; k < ls.size(); ++k) {
            std::string ln = en + " link " + std::to_string(k + 1);
            if (ls[k].arcs.empty()) {
                fail(ln + ": empty link");
                hulls.push_back({static_cast<int>(e), 0, 0});
                continue;
            }
            Arc h = ls[k].arcs.front();
            bool bad = false;
            for (const Arc& a : ls[k].arcs) {
                if (a.edge != static_cast<int>(e)) {
                    fail(ln + ": arc on a foreign edge");
                    bad = true;
                }
                if (a.a > a.b) {
                    fail(ln + ": reversed arc");
                    bad = true;
                }
                h.a = std::min(h.a, a.a);
                h.b = std::max(h.b, a.b);
            }
            if (!bad && ls[k].arcs.size() > 1) {
                auto sorted = ls[k].arcs;
                std::sort(sorted.begin(), sorted.end());
                for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
                    if (sorted[i].b < sorted[i + 1].a)
                        fail(ln + ": disconnected link");
            }
            if (h.a == h.b) fail(ln + ": degenerate link");
            hulls.push_back(h);
            if (h.a == 0 && k != 0)
                fail(ln + ": contains vertex v" + std::to_string(g.edges[e].u + 1) +
                     " but is not the first link");
            if (h.b == 1 && k + 1 != ls.size())
                fail(ln + ": contains vertex v" + std::to_string(g.edges[e].v + 1) +
                     " but is not the last link");
        }
        if (hulls.front().a != 0 || hulls.back().b != 1)
            fail(en + ": edge-chain does not cover the edge");
        for (std::size_t k = 0; k + 1 < hulls.size(); ++k) {
            if (hulls[k].b < hulls[k + 1].a)
                fail(en + ": gap between links " + std::to_string(k + 1) + " and " +
                     std::to_string(k + 2));
            if (hulls[k].b > hulls[k + 1].a)
                fail(en + ": links " + std::to_string(k + 1) + " and " +
                     std::to_string(k + 2) + " overlap beyond their boundary");
        }
        for (std::size_t k = 0; k < hulls.size(); ++k)
            for (std::size_t j = k + 2; j < hulls.size(); ++j)
                if (hulls[j].a <= hulls[k].b)
                    fail(en + ": non-adjacent links " + std::to_string(k + 1) +
                         " and " + std::to_string(j + 1) + " intersect");
    }
    return v;
}

FhatResult fhat(const PLGraphMap& f, const MarkovData& data,
                const GraphChain& chain, const Pattern& h) {
    const FiniteGraph& g = f.graph;
    if (chain.links.size() != g.edges.size())
        throw Error("NotRefinementOfMarkovChain", "chain has wrong edge count");
    // check the pattern: every link a single arc inside its assigned cell
    for (std::size_t e = 0; e < chain.links.size(); ++e) {
        for (std::size_t k = 0; k < chain.links[e].size(); ++k) {
            LinkId id{static_cast<int>(e), static_cast<int>(k) + 1};
            auto it = h.child_to_parent.find(id);
            if (it == h.child_to_parent.end())
                throw Error("PatternMismatch", "link without a pattern entry");
            if (chain.links[e][k].arcs.size() != 1)
                throw Error("NotRefinementOfMarkovChain",
                            "chain link is not a single arc");
            Arc link = chain.links[e][k].arcs.front();
            Arc cell = data.cell_arc(it->second);
            if (link.edge != cell.edge || link.a < cell.a || link.b > cell.b)
                throw Error("PatternMismatch",
                            "link is not contained in its pattern cell");
        }
    }
    {
        ChainValidation cv = validate_closed_graph_chain(g, chain);
        if (!cv.ok)
            throw Error("NotRefinementOfMarkovChain",
                        "input chain is not a closed graph-chain: " +
                            cv.violations.front());
    }

    // raw piece: preimage of a chain link inside one cell, located through
    // the cell's exact image path
    auto raw_piece = [&](const LinkId& child, const LinkId& cell) -> Arc {
        Arc link = chain.link(child).arcs.front();
        const EdgePath& img = data.cell_image[data.cell_id(cell)];
        Rat total = path_length(g, img);
        auto locate_one = [&](const Rat& t) -> Rat {
            GraphPoint p = canonical(g, link.edge, t);
            auto ls = path_locate(g, img, p);
            if (ls.empty())
                throw Error("Internal", "cell image misses a link endpoint");
            return ls.front();
        };
        Rat la = locate_one(link.a), lb = locate_one(link.b);
        if (la > lb) std::swap(la, lb);
        Arc cellArc = data.cell_arc(cell);
        Rat t1 = cellArc.a + (la / total) * (cellArc.b - cellArc.a);
        Rat t2 = cellArc.a + (lb / total) * (cellArc.b - cellArc.a);
        return {cellArc.edge, t1, t2};
    };

    // pieces[(child, cell)] -> arcs after trimming
    std::map<std::pair<LinkId, LinkId>, std::vector<Arc>> pieces;
    auto interiors_of = [&](const LinkId& child, const LinkId& cell)
        -> std::vector<Arc> {
        auto it = pieces.find({child, cell});
        if (it == pieces.end()) return {};
        return it->second;
    };

    const int ne = static_cast<int>(g.edges.size());
    auto n_links = [&](int e) { return static_cast<int>(chain.links[e].size()); };

    // case 1: first links, in << order on E'
    for (int e = 0; e < ne; ++e) {
        LinkId child{e, 1};
        for (const LinkId& cell : data.inverse_index_sets[data.cell_id(
                 h.child_to_parent.at(child))]) {
            std::vector<Arc> piece = {raw_piece(child, cell)};
            for (int q = 0; q < e; ++q)
                piece = subtract_open(piece, interiors_of({q, 1}, cell));
            pieces[{child, cell}] = piece;
        }
    }
    // cases 2 and 3: last links, in << order; the <<-least edge simply has
    // an empty second union
    for (int e = 0; e < ne; ++e) {
        if (n_links(e) == 1) continue;  // already handled as a first link
        LinkId child{e, n_links(e)};
        int far = g.edges[e].v;
        for (const LinkId& cell : data.inverse_index_sets[data.cell_id(
                 h.child_to_parent.at(child))]) {
            std::vector<Arc> piece = {raw_piece(child, cell)};
            for (int e2 = 0; e2 < ne; ++e2)
                if (g.edges[e2].u == far)
                    piece = subtract_open(piece, interiors_of({e2, 1}, cell));
            for (int q = 0; q < e; ++q)
                if (n_links(q) >= 1)
                    piece = subtract_open(piece, interiors_of({q, n_links(q)}, cell));
            pieces[{child, cell}] = piece;
        }
    }
    // case 4: interior links
    for (int e = 0; e < ne; ++e) {
        for (int m = 2; m < n_links(e); ++m) {
            LinkId child{e, m};
            for (const LinkId& cell : data.inverse_index_sets[data.cell_id(
                     h.child_to_parent.at(child))]) {
                std::vector<Arc> piece = {raw_piece(child, cell)};
                piece = subtract_open(piece, interiors_of({e, m - 1}, cell));
                piece = subtract_open(piece, interiors_of({e, 1}, cell));
                piece = subtract_open(piece, interiors_of({e, n_links(e)}, cell));
                pieces[{child, cell}] = piece;
            }
        }
    }

    // assemble: sort pieces per edge by position
    struct Entry {
        Arc hull;
        ChainLink link;
        FhatResult::Provenance prov;
    };
    std::vector<std::vector<Entry>> per_edge(ne);
    for (const auto& [key, arcs] : pieces) {
        if (arcs.empty()) continue;
        Arc hull = arcs.front();
        for (const Arc& a : arcs) {
            hull.a = std::min(hull.a, a.a);
            hull.b = std::max(hull.b, a.b);
        }
        per_edge[hull.edge].push_back({hull, ChainLink{arcs},
                                       {key.first, key.second}});
    }
    FhatResult result;
    result.chain.links.resize(ne);
    result.provenance.resize(ne);
    for (int e = 0; e < ne; ++e) {
        std::sort(per_edge[e].begin(), per_edge[e].end(),
                  [](const Entry& a, const Entry& b) {
                      if (a.hull.a != b.hull.a) return a.hull.a < b.hull.a;
                      if (a.hull.b != b.hull.b) return a.hull.b < b.hull.b;
                      if (!(a.prov.cell == b.prov.cell))
                          return a.prov.cell < b.prov.cell;
                      return a.prov.source < b.prov.source;
                  });
        int k = 0;
        for (auto& entry : per_edge[e]) {
            result.chain.links[e].push_back(std::move(entry.link));
            result.provenance[e].push_back(entry.prov);
            ++k;
            result.pattern_into_markov.child_to_parent[{e, k}] = entry.prov.cell;
        }
    }
    return result;
}

Rat invlim_mesh_bound(const PLGraphMap& f, const GraphChain& chain, int n) {
    if (min_stretch(f) < 1)
        throw Error("AssumptionMissing",
                    "nonexpanding-preimages assumption does not hold");
    const FiniteGraph& g = f.graph;
    const Rat norm = 2 * g.diameter;
    Rat best = 0;
    for (const auto& edge_links : chain.links) {
        for (const auto& link : edge_links) {
            Region r = normalize_region(link.arcs);
            Rat sum = 0;
            for (int j = 0; j <= n; ++j) {
                // term for f^j(A), weighted 2^-(n-j)
                sum += region_diameter_bound(g, r) / norm / pow2(n - j);
                if (j < n) r = image_region(f, r);
            }
            sum += (g.diameter / norm) / pow2(n);  // tail of the series
            best = std::max(best, sum);
        }
    }
    return best;
}

std::vector<RefinementRound> joint_refinement_sequence(const PLGraphMap& f,
                                                       const PLGraphMap& g,
                                                       int depth) {
    if (depth < 1) throw Error("ParseError", "depth must be >= 1");
    PatternEquivalence pe = pattern_equivalent(f, g);
    if (!pe.equivalent)
        throw Error("NotPatternEquivalent", pe.reason);

    MarkovData dataF = index_sets(f, compute_markov_partition(f));
    MarkovData dataG = index_sets(g, compute_markov_partition(g));
    // pattern equivalence aligns the cells index-for-index; the ordered
    // index sets must also agree or the piece orderings diverge
    for (int c = 0; c < dataF.cell_count(); ++c)
        if (dataF.index_sets[c] != dataG.index_sets[c])
            throw Error("PatternDivergence",
                        "ordered index sets differ between the two maps");

    GraphChain chainF = chain_from_partition(dataF.partition);
    GraphChain chainG = chain_from_partition(dataG.partition);
    Pattern intoTfF, intoTfG;  // pattern of the current chain in T^f / S^g
    for (std::size_t e = 0; e < chainF.links.size(); ++e)
        for (std::size_t k = 0; k < chainF.links[e].size(); ++k) {
            LinkId id{static_cast<int>(e), static_cast<int>(k) + 1};
            intoTfF.child_to_parent[id] = id;
            intoTfG.child_to_parent[id] = id;
        }

    std::vector<RefinementRound> rounds;
    std::optional<Rat> prevF, prevG;
    for (int k = 1; k <= depth; ++k) {
        GraphChain piecesF, piecesG;
        // per-edge, per-piece parent link in the previous chain and cell in T^f
        std::vector<std::vector<LinkId>> parentF, parentG, cellF, cellG;
        if (k == 1) {
            piecesF = chainF;
            piecesG = chainG;
            parentF.resize(piecesF.links.size());
            cellF.resize(piecesF.links.size());
            for (std::size_t e = 0; e < piecesF.links.size(); ++e)
                for (std::size_t j = 0; j < piecesF.links[e].size(); ++j) {
                    LinkId id{static_cast<int>(e), static_cast<int>(j) + 1};
                    parentF[e].push_back(id);
                    cellF[e].push_back(id);
                }
            parentG = parentF;
            cellG = cellF;
        } else {
            FhatResult frF = fhat(f, dataF, chainF, intoTfF);
            FhatResult frG = fhat(g, dataG, chainG, intoTfG);
            piecesF = std::move(frF.chain);
            piecesG = std::move(frG.chain);
            parentF.resize(piecesF.links.size());
            cellF.resize(piecesF.links.size());
            parentG.resize(piecesG.links.size());
            cellG.resize(piecesG.links.size());
            for (std::size_t e = 0; e < piecesF.links.size(); ++e)
                for (const auto& p : frF.provenance[e]) {
                    parentF[e].push_back(p.source);
                    cellF[e].push_back(p.cell);
                }
            for (std::size_t e = 0; e < piecesG.links.size(); ++e)
                for (const auto& p : frG.provenance[e]) {
                    parentG[e].push_back(p.source);
                    cellG[e].push_back(p.cell);
                }
            if (parentF != parentG || cellF != cellG)
                throw Error("PatternDivergence",
                            "refinement combinatorics diverged at round " +
                                std::to_string(k));
        }

        const Rat target = 1 / pow2(k);
        Rat delta = std::min(
            {chain_mesh(f.graph, piecesF), chain_mesh(g.graph, piecesG), target});
        RefinementRound round;
        bool done = false;
        for (int attempt = 0; attempt < 256 && !done; ++attempt) {
            std::vector<std::vector<int>> counts(piecesF.links.size());
            for (std::size_t e = 0; e < piecesF.links.size(); ++e)
                for (std::size_t j = 0; j < piecesF.links[e].size(); ++j) {
                    Rat df = arc_length(f.graph, piecesF.links[e][j].hull());
                    Rat dg = arc_length(g.graph, piecesG.links[e][j].hull());
                    counts[e].push_back(
                        static_cast<int>(floor_div(std::max(df, dg) / delta)) + 1);
                }
            auto [cF, patF] = refine_uniform(f.graph, piecesF, counts);
            auto [cG, patG] = refine_uniform(g.graph, piecesG, counts);
            Rat bF = invlim_mesh_bound(f, cF, k);
            Rat bG = invlim_mesh_bound(g, cG, k);
            bool ok = bF <= target && bG <= target;
            if (ok && prevF) ok = bF < *prevF && bG < *prevG;
            if (ok) {
                // h_k: child -> refined-from piece -> its parent in the
                // previous chain
                Pattern hk;
                for (const auto& [child, piece] : patF.child_to_parent)
                    hk.child_to_parent[child] =
                        parentF[piece.edge][piece.k - 1];
                {
                    Pattern hkG;
                    for (const auto& [child, piece] : patG.child_to_parent)
                        hkG.child_to_parent[child] =
                            parentG[piece.edge][piece.k - 1];
                    if (!(hk == hkG))
                        throw Error("PatternDivergence",
                                    "pattern functions differ at round " +
                                        std::to_string(k));
                }
                Pattern nextIntoTfF, nextIntoTfG;
                for (const auto& [child, piece] : patF.child_to_parent)
                    nextIntoTfF.child_to_parent[child] =
                        cellF[piece.edge][piece.k - 1];
                for (const auto& [child, piece] : patG.child_to_parent)
                    nextIntoTfG.child_to_parent[child] =
                        cellG[piece.edge][piece.k - 1];
                round.chain_f = std::move(cF);
                round.chain_g = std::move(cG);
                round.pattern = std::move(hk);
                round.bound_f = bF;
                round.bound_g = bG;
                round.delta = delta;
                chainF = round.chain_f;
                chainG = round.chain_g;
                intoTfF = std::move(nextIntoTfF);
                intoTfG = std::move(nextIntoTfG);
                prevF = bF;
                prevG = bG;
                done = true;
            } else {
                delta /= 2;
            }
        }
        if (!done)
            throw Error("Internal",
                        "mesh target unreachable at round " + std::to_string(k));
        rounds.push_back(std::move(round));
    }
    return rounds;
}

}  // namespace invlim
