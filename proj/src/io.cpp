#include "invlim/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace invlim {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_on(const std::string& s, const std::string& sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t hit = s.find(sep, pos);
        if (hit == std::string::npos) {
            out.push_back(trim(s.substr(pos)));
            return out;
        }
        out.push_back(trim(s.substr(pos, hit - pos)));
        pos = hit + sep.size();
    }
}

int parse_vertex_label(const std::string& tok) {
    if (tok.size() < 2 || tok[0] != 'v')
        throw Error("ParseError", "expected vertex label vK, got '" + tok + "'");
    try {
        std::size_t used = 0;
        int v = std::stoi(tok.substr(1), &used);
        if (used + 1 != tok.size() || v < 1)
            throw Error("ParseError", "bad vertex label '" + tok + "'");
        return v - 1;
    } catch (const std::logic_error&) {
        throw Error("ParseError", "bad vertex label '" + tok + "'");
    }
}

// "i-j" -> 0-based endpoint pair with i<j
std::pair<int, int> parse_edge_label(const std::string& tok) {
    std::size_t dash = tok.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == tok.size())
        throw Error("ParseError", "expected edge label i-j, got '" + tok + "'");
    try {
        int i = std::stoi(tok.substr(0, dash));
        int j = std::stoi(tok.substr(dash + 1));
        if (i < 1 || j < 1 || i == j)
            throw Error("ParseError", "bad edge label '" + tok + "'");
        return {std::min(i, j) - 1, std::max(i, j) - 1};
    } catch (const std::logic_error&) {
        throw Error("ParseError", "bad edge label '" + tok + "'");
    }
}

// A lap-image waypoint: vertex, or point on an edge.
struct Waypoint {
    std::optional<int> vertex;
    int edge = -1;
    Rat t = 0;
};

Waypoint parse_waypoint(const FiniteGraph& g, const std::string& tok) {
    Waypoint w;
    if (!tok.empty() && tok[0] == 'v') {
        int v = parse_vertex_label(tok);
        if (v >= g.vertex_count)
            throw Error("ParseError", "vertex out of range: '" + tok + "'");
        w.vertex = v;
        return w;
    }
    std::size_t at = tok.find('@');
    if (at == std::string::npos)
        throw Error("ParseError", "expected vK or i-j@a/b, got '" + tok + "'");
    auto [u, v] = parse_edge_label(tok.substr(0, at));
    int e = g.edge_between(u, v);
    if (e < 0)
        throw Error("ParseError", "no such edge: '" + tok.substr(0, at) + "'");
    Rat t = parse_rat(tok.substr(at + 1));
    if (t < 0 || t > 1)
        throw Error("ParseError", "edge coordinate outside [0,1]: '" + tok + "'");
    if (t == 0) {
        w.vertex = g.edges[e].u;
    } else if (t == 1) {
        w.vertex = g.edges[e].v;
    } else {
        w.edge = e;
        w.t = t;
    }
    return w;
}

// Position of waypoint w on edge e, if it lies there.
std::optional<Rat> position_on(const FiniteGraph& g, const Waypoint& w, int e) {
    if (w.vertex) {
        if (g.edges[e].u == *w.vertex) return Rat(0);
        if (g.edges[e].v == *w.vertex) return Rat(1);
        return std::nullopt;
    }
    if (w.edge == e) return w.t;
    return std::nullopt;
}

EdgePath path_from_waypoints(const FiniteGraph& g,
                             const std::vector<Waypoint>& wps,
                             const std::string& where) {
    if (wps.size() < 2)
        throw Error("ParseError", where + ": a lap image needs >= 2 waypoints");
    for (std::size_t i = 1; i + 1 < wps.size(); ++i)
        if (!wps[i].vertex)
            throw Error("ParseError",
                        where + ": intermediate waypoints must be vertices");
    EdgePath p;
    for (std::size_t i = 0; i + 1 < wps.size(); ++i) {
        const Waypoint &a = wps[i], &b = wps[i + 1];
        int e = -1;
        if (a.vertex && b.vertex) {
            e = g.edge_between(*a.vertex, *b.vertex);
        } else if (!a.vertex) {
            e = position_on(g, b, a.edge) ? a.edge : -1;
        } else {
            e = position_on(g, a, b.edge) ? b.edge : -1;
        }
        if (e < 0)
            throw Error("ParseError",
                        where + ": consecutive waypoints share no edge");
        Rat pa = *position_on(g, a, e), pb = *position_on(g, b, e);
        if (pa == pb)
            throw Error("ParseError", where + ": zero-length path segment");
        p.steps.push_back({e, pa < pb});
        bool fwd = pa < pb;
        if (i == 0) p.start_u = fwd ? pa : 1 - pa;
        if (i + 2 == wps.size()) p.end_u = fwd ? pb : 1 - pb;
    }
    return p;
}

struct RawMap {
    // per edge: breakpoints, and lap index -> waypoint text
    std::map<int, std::vector<Rat>> breaks;
    std::map<int, std::map<int, std::string>> laps;
};

}  // namespace

ParsedInput parse_input(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    bool saw_format = false;
    GraphSpec gspec;
    bool saw_vertices = false;
    std::vector<std::tuple<int, int, Rat>> raw_edges;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> map_lines;
    std::vector<std::string> map_order;

    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string at = "line " + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw Error("ParseError", at + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "graph") {
                auto parts = split_ws(section);
                if (parts.size() != 2 || parts[0] != "map")
                    throw Error("ParseError", at + ": unknown section [" +
                                                  section + "]");
                if (map_lines.count(parts[1]))
                    throw Error("ParseError",
                                at + ": duplicate map section " + parts[1]);
                map_lines[parts[1]] = {};
                map_order.push_back(parts[1]);
                section = "map " + parts[1];
            }
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw Error("ParseError", at + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (section.empty()) {
            if (key == "format") {
                if (val != "1")
                    throw Error("ParseError", at + ": unsupported format " + val);
                saw_format = true;
            } else {
                throw Error("ParseError", at + ": unknown top-level key " + key);
            }
        } else if (section == "graph") {
            if (key == "vertices") {
                auto toks = split_ws(val);
                if (toks.empty())
                    throw Error("ParseError", at + ": empty vertex list");
                for (std::size_t i = 0; i < toks.size(); ++i)
                    if (parse_vertex_label(toks[i]) != static_cast<int>(i))
                        throw Error("ParseError",
                                    at + ": vertices must be listed v1..vn");
                gspec.vertex_count = static_cast<int>(toks.size());
                saw_vertices = true;
            } else {
                auto toks = split_ws(key);
                if (toks.size() != 2 || toks[0] != "edge")
                    throw Error("ParseError", at + ": unknown graph key " + key);
                auto [u, v] = parse_edge_label(toks[1]);
                raw_edges.emplace_back(u, v, parse_rat(val));
            }
        } else {
            map_lines[section.substr(4)].emplace_back(key, val);
        }
    }
    if (!saw_format) throw Error("ParseError", "missing `format = 1`");
    if (!saw_vertices) throw Error("ParseError", "missing [graph] vertices");
    for (auto& [u, v, len] : raw_edges) {
        if (u >= gspec.vertex_count || v >= gspec.vertex_count)
            throw Error("ParseError", "edge endpoint out of range");
        gspec.edges.push_back({u, v, len});
    }

    ParsedInput doc;
    doc.graph = build_graph(gspec);
    if (map_order.empty())
        throw Error("ParseError", "input defines no [map NAME] section");

    for (const std::string& name : map_order) {
        RawMap raw;
        for (auto& [key, val] : map_lines[name]) {
            auto toks = split_ws(key);
            if (toks.size() < 3 || toks[0] != "edge")
                throw Error("ParseError", "map " + name + ": bad key " + key);
            auto [u, v] = parse_edge_label(toks[1]);
            int e = doc.graph.edge_between(u, v);
            if (e < 0)
                throw Error("ParseError",
                            "map " + name + ": no such edge " + toks[1]);
            if (toks.size() == 3 && toks[2] == "breaks") {
                std::vector<Rat> cuts;
                for (auto& r : split_ws(val)) cuts.push_back(parse_rat(r));
                raw.breaks[e] = cuts;
            } else if (toks.size() == 4 && toks[2] == "lap") {
                int k = std::stoi(toks[3]);
                raw.laps[e][k] = val;
            } else {
                throw Error("ParseError", "map " + name + ": bad key " + key);
            }
        }
        std::vector<std::vector<Lap>> laps(doc.graph.edges.size());
        for (std::size_t e = 0; e < doc.graph.edges.size(); ++e) {
            std::string where = "map " + name + ", edge " +
                                edge_label(doc.graph, static_cast<int>(e));
            auto bit = raw.breaks.find(static_cast<int>(e));
            if (bit == raw.breaks.end())
                throw Error("ParseError", where + ": missing breaks");
            const auto& cuts = bit->second;
            if (cuts.size() < 2 || cuts.front() != 0 || cuts.back() != 1 ||
                !std::is_sorted(cuts.begin(), cuts.end()) ||
                std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end())
                throw Error("ParseError",
                            where + ": breaks must increase from 0 to 1");
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
                auto lit = raw.laps[static_cast<int>(e)].find(static_cast<int>(k) + 1);
                if (lit == raw.laps[static_cast<int>(e)].end())
                    throw Error("ParseError", where + ": missing lap " +
                                                  std::to_string(k + 1));
                std::vector<Waypoint> wps;
                for (auto& tok : split_on(lit->second, "->"))
                    wps.push_back(parse_waypoint(doc.graph, tok));
                laps[e].push_back({cuts[k], cuts[k + 1],
                                   path_from_waypoints(doc.graph, wps, where)});
            }
            if (raw.laps[static_cast<int>(e)].size() + 1 != cuts.size())
                throw Error("ParseError", where + ": extra lap entries");
        }
        doc.maps.emplace(name, build_pl_map(doc.graph, std::move(laps)));
    }
    return doc;
}

ParsedInput parse_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("ParseError", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_input(buf.str());
}

GraphPoint parse_point(const FiniteGraph& g, const std::string& token) {
    std::string tok = trim(token);
    const std::string prefix = "edge:";
    if (tok.rfind(prefix, 0) == 0) tok = tok.substr(prefix.size());
    Waypoint w = parse_waypoint(g, tok);
    if (w.vertex) return vertex_point(g, *w.vertex);
    return canonical(g, w.edge, w.t);
}

BackwardItinerary parse_itinerary(const PLGraphMap& f, const std::string& text) {
    std::vector<GraphPoint> pre, cycle;
    bool saw_cycle = false;
    for (const std::string& part : split_on(text, ";")) {
        if (part.empty()) continue;
        std::size_t eq = part.find('=');
        if (eq == std::string::npos)
            throw Error("ParseError", "itinerary: expected pre=[...] or "
                                      "cycle=[...], got '" + part + "'");
        std::string key = trim(part.substr(0, eq));
        std::string val = trim(part.substr(eq + 1));
        if (val.size() < 2 || val.front() != '[' || val.back() != ']')
            throw Error("ParseError", "itinerary: expected [...] after " + key);
        val = trim(val.substr(1, val.size() - 2));
        std::vector<GraphPoint> pts;
        if (!val.empty())
            for (auto& tok : split_on(val, ","))
                pts.push_back(parse_point(f.graph, tok));
        if (key == "pre") {
            pre = std::move(pts);
        } else if (key == "cycle") {
            cycle = std::move(pts);
            saw_cycle = true;
        } else {
            throw Error("ParseError", "itinerary: unknown key " + key);
        }
    }
    if (!saw_cycle || cycle.empty())
        throw Error("ParseError", "itinerary: a nonempty cycle=[...] is required");
    return make_itinerary(f, std::move(pre), std::move(cycle));
}

std::string point_str(const FiniteGraph& g, const GraphPoint& p) {
    return "edge:" + edge_label(g, p.edge) + "@" + rat_str(p.t);
}

std::string itinerary_str(const FiniteGraph& g, const BackwardItinerary& x) {
    auto list = [&](const std::vector<GraphPoint>& pts) {
        std::string out;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) out += ",";
            out += point_str(g, pts[i]);
        }
        return out;
    };
    return "pre=[" + list(x.preperiodic) + "];cycle=[" + list(x.cycle) + "]";
}

std::string edge_label(const FiniteGraph& g, int edge) {
    return std::to_string(g.edges[edge].u + 1) + "-" +
           std::to_string(g.edges[edge].v + 1);
}

int edge_by_label(const FiniteGraph& g, const std::string& label) {
    auto [u, v] = parse_edge_label(label);
    int e = g.edge_between(u, v);
    if (e < 0) throw Error("ParseError", "no such edge: " + label);
    return e;
}

namespace {

Json link_id_json(const FiniteGraph& g, const LinkId& id) {
    return Json::array({edge_label(g, id.edge), id.k});
}

LinkId link_id_from_json(const FiniteGraph& g, const Json& j) {
    return {edge_by_label(g, j.at(0).get<std::string>()), j.at(1).get<int>()};
}

}  // namespace

Json point_to_json(const FiniteGraph& g, const GraphPoint& p) {
    return Json{{"edge", edge_label(g, p.edge)}, {"t", rat_str(p.t)}};
}

Json chain_to_json(const FiniteGraph& g, const GraphChain& chain) {
    Json links = Json::object();
    for (std::size_t e = 0; e < chain.links.size(); ++e) {
        Json arr = Json::array();
        for (const ChainLink& link : chain.links[e]) {
            Json arcs = Json::array();
            for (const Arc& a : link.arcs)
                arcs.push_back(Json::array({rat_str(a.a), rat_str(a.b)}));
            arr.push_back(Json{{"arcs", arcs}});
        }
        links[edge_label(g, static_cast<int>(e))] = arr;
    }
    return Json{{"format", 1}, {"links", links}};
}

GraphChain chain_from_json(const FiniteGraph& g, const Json& j) {
    GraphChain chain;
    chain.links.resize(g.edges.size());
    const Json& links = j.at("links");
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        for (const Json& lj : links.at(edge_label(g, static_cast<int>(e)))) {
            ChainLink link;
            for (const Json& aj : lj.at("arcs"))
                link.arcs.push_back({static_cast<int>(e),
                                     parse_rat(aj.at(0).get<std::string>()),
                                     parse_rat(aj.at(1).get<std::string>())});
            chain.links[e].push_back(std::move(link));
        }
    }
    return chain;
}

Json pattern_to_json(const FiniteGraph& g, const Pattern& h) {
    Json pairs = Json::array();
    for (const auto& [child, parent] : h.child_to_parent)
        pairs.push_back(Json::array(
            {link_id_json(g, child), link_id_json(g, parent)}));
    return Json{{"format", 1}, {"pairs", pairs}};
}

Pattern pattern_from_json(const FiniteGraph& g, const Json& j) {
    Pattern h;
    for (const Json& pj : j.at("pairs"))
        h.child_to_parent[link_id_from_json(g, pj.at(0))] =
            link_id_from_json(g, pj.at(1));
    return h;
}

Json partition_to_json(const FiniteGraph& g, const MarkovData& data) {
    Json cuts = Json::object();
    for (std::size_t e = 0; e < data.partition.cuts.size(); ++e) {
        Json arr = Json::array();
        for (const Rat& c : data.partition.cuts[e]) arr.push_back(rat_str(c));
        cuts[edge_label(g, static_cast<int>(e))] = arr;
    }
    Json cells = Json::array();
    for (int id = 0; id < data.cell_count(); ++id) {
        LinkId c = data.cell_of(id);
        Json A = Json::array(), S = Json::array();
        for (const LinkId& x : data.index_sets[id]) A.push_back(link_id_json(g, x));
        for (const LinkId& x : data.inverse_index_sets[id])
            S.push_back(link_id_json(g, x));
        cells.push_back(Json{{"cell", link_id_json(g, c)}, {"A", A}, {"S", S}});
    }
    Json M = Json::array();
    for (const auto& row : data.transition) {
        Json r = Json::array();
        for (const Int& x : row) r.push_back(static_cast<long long>(x));
        M.push_back(r);
    }
    return Json{{"format", 1}, {"cuts", cuts}, {"cells", cells},
                {"transition", M}};
}

Json assumptions_to_json(const AssumptionReport& rep) {
    const char* mv = "undetermined";
    if (rep.multivalued == AssumptionReport::Multivalued::Verified) mv = "verified";
    if (rep.multivalued == AssumptionReport::Multivalued::Failed) mv = "failed";
    return Json{{"format", 1},
                {"isolated_preimages", rep.isolated_preimages},
                {"nonexpanding_preimages", rep.nonexpanding_preimages},
                {"eventually_multivalued", mv},
                {"multivalued_power", rep.multivalued_power},
                {"cap", rep.cap},
                {"all_hold", rep.all_hold()}};
}

Json orbits_to_json(const FiniteGraph& g, const OmegaSet& omega,
                    const std::vector<OrbitRecord>& records) {
    Json pts = Json::array();
    for (const GraphPoint& p : omega.points) pts.push_back(point_to_json(g, p));
    Json recs = Json::array();
    for (const OrbitRecord& r : records) {
        Json orbit = Json::array();
        for (const GraphPoint& p : r.points) orbit.push_back(point_to_json(g, p));
        recs.push_back(Json{{"start", point_to_json(g, r.start)},
                            {"preperiod", r.preperiod},
                            {"period", r.period},
                            {"points", orbit}});
    }
    return Json{{"format", 1},
                {"omega", Json{{"points", pts},
                               {"cardinality", omega.cardinality()},
                               {"partial", omega.partial}}},
                {"orbits", recs}};
}

Json refinement_to_json(const FiniteGraph& g,
                        const std::vector<RefinementRound>& rounds) {
    Json arr = Json::array();
    int k = 0;
    for (const RefinementRound& r : rounds) {
        ++k;
        arr.push_back(Json{{"round", k},
                           {"delta", rat_str(r.delta)},
                           {"bound_f", rat_str(r.bound_f)},
                           {"bound_g", rat_str(r.bound_g)},
                           {"pattern", pattern_to_json(g, r.pattern)},
                           {"chain_f", chain_to_json(g, r.chain_f)},
                           {"chain_g", chain_to_json(g, r.chain_g)}});
    }
    return Json{{"format", 1}, {"rounds", arr}};
}

Json classification_to_json(const Classification& c) {
    return Json{{"format", 1},
                {"verdict", c.verdict == Classification::Verdict::Product
                                ? "PRODUCT"
                                : "EXCEPTIONAL"},
                {"condition_i", c.condition_i},
                {"condition_ii", c.condition_ii},
                {"degree_hypothesis", c.degree_hypothesis}};
}

Json comparison_to_json(const FiniteGraph& g, const ComparisonVerdict& v) {
    const char* outcome = "INCONCLUSIVE";
    if (v.outcome == ComparisonVerdict::Outcome::Homeomorphic)
        outcome = "HOMEOMORPHIC";
    if (v.outcome == ComparisonVerdict::Outcome::Distinguished)
        outcome = "DISTINGUISHED";
    Json omega = Json::object();
    omega["f"] = v.omega_f ? Json(*v.omega_f) : Json(nullptr);
    omega["g"] = v.omega_g ? Json(*v.omega_g) : Json(nullptr);
    Json witness = Json::array();
    for (const RefinementRound& r : v.witness)
        witness.push_back(pattern_to_json(g, r.pattern));
    Json notes = Json::array();
    for (const std::string& n : v.notes) notes.push_back(n);
    return Json{{"format", 1},
                {"outcome", outcome},
                {"omega", omega},
                {"hypotheses", Json{{"f", assumptions_to_json(v.assumptions_f)},
                                    {"g", assumptions_to_json(v.assumptions_g)}}},
                {"witness", witness},
                {"notes", notes}};
}

}  // namespace invlim
