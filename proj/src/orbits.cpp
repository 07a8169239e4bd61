#include "invlim/orbits.hpp"

#include <map>

namespace invlim {

OrbitRecord orbit_record(const PLGraphMap& f, const GraphPoint& p, int cap) {
    OrbitRecord rec;
    rec.start = canonical(f.graph, p);
    std::map<GraphPoint, int> seen;
    GraphPoint x = rec.start;
    std::vector<GraphPoint> trail;
    for (int i = 0; i <= cap; ++i) {
        auto [it, fresh] = seen.insert({x, i});
        if (!fresh) {
            rec.preperiod = it->second;
            rec.period = i - it->second;
            rec.points.assign(trail.begin(), trail.begin() + i);
            return rec;
        }
        trail.push_back(x);
        x = eval(f, x);
    }
    throw Error("CapExceeded", "no repetition within " + std::to_string(cap) +
                                   " iterates");
}

OmegaSet omega_of_turning_points(const PLGraphMap& f, int cap) {
    OmegaSet omega;
    for (const auto& tp : turning_points(f)) {
        try {
            OrbitRecord rec = orbit_record(f, tp.location, cap);
            for (const auto& q : rec.cycle()) omega.points.insert(q);
            omega.sources.push_back(tp.location);
        } catch (const Error& e) {
            if (e.code() != "CapExceeded") throw;
            omega.partial = true;
            omega.undetermined_sources.push_back(tp.location);
        }
    }
    return omega;
}

std::set<GraphPoint> endpoint_orbit_closure(const PLGraphMap& f, int cap) {
    std::set<GraphPoint> out;
    for (int v : f.graph.endpoint_vertices) {
        OrbitRecord rec = orbit_record(f, vertex_point(f.graph, v), cap);
        out.insert(rec.points.begin(), rec.points.end());
    }
    return out;
}

}  // namespace invlim
