// invlim: exact analysis of piecewise-linear self-maps of finite graphs
// and of the inverse limit spaces they generate.
//
// Exit codes: 0 success / affirmative verdict, 1 negative verdict,
// 2 input error, 3 cap exceeded or undetermined.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "invlim/io.hpp"

namespace {

using namespace invlim;

constexpr int kOk = 0, kNegative = 1, kInputError = 2, kUndetermined = 3;

int exit_code_for(const Error& e) {
    const std::string& c = e.code();
    if (c == "CapExceeded" || c == "NotEventuallyPeriodic" ||
        c == "AssumptionMissing" || c == "NotMarkovOnCells")
        return kUndetermined;
    return kInputError;
}

const PLGraphMap& map_named(const ParsedInput& doc, const std::string& name) {
    auto it = doc.maps.find(name);
    if (it == doc.maps.end())
        throw Error("ParseError", "no map named '" + name + "' in input");
    return it->second;
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error("ParseError", "cannot write " + out_path);
        out << j.dump(2) << "\n";
    }
}

int cmd_validate(const std::string& file) {
    ParsedInput doc = parse_input_file(file);
    std::cout << "graph: " << doc.graph.vertex_count << " vertices, "
              << doc.graph.edges.size() << " edges, diameter "
              << rat_str(doc.graph.diameter) << "\n";
    for (const auto& [name, f] : doc.maps) {
        std::size_t laps = 0;
        for (const auto& per_edge : f.laps) laps += per_edge.size();
        std::cout << "map " << name << ": " << laps << " laps, "
                  << turning_points(f).size() << " turning points\n";
    }
    return kOk;
}

int cmd_partition(const std::string& file, const std::string& map_name,
                  const std::string& out) {
    ParsedInput doc = parse_input_file(file);
    const PLGraphMap& f = map_named(doc, map_name);
    MarkovData data = index_sets(f, compute_markov_partition(f));
    emit(partition_to_json(doc.graph, data), out);
    return kOk;
}

int cmd_orbits(const std::string& file, const std::string& map_name, int cap,
               const std::string& out) {
    ParsedInput doc = parse_input_file(file);
    const PLGraphMap& f = map_named(doc, map_name);
    OmegaSet omega = omega_of_turning_points(f, cap);
    std::vector<OrbitRecord> records;
    for (const auto& tp : turning_points(f)) {
        try {
            records.push_back(orbit_record(f, tp.location, cap));
        } catch (const Error& e) {
            if (e.code() != "CapExceeded") throw;
        }
    }
    emit(orbits_to_json(doc.graph, omega, records), out);
    return omega.partial ? kUndetermined : kOk;
}

int cmd_assumptions(const std::string& file, const std::string& map_name,
                    int cap, const std::string& out) {
    ParsedInput doc = parse_input_file(file);
    AssumptionReport rep = check_standing_assumptions(map_named(doc, map_name), cap);
    emit(assumptions_to_json(rep), out);
    if (rep.all_hold()) return kOk;
    if (!rep.isolated_preimages || !rep.nonexpanding_preimages ||
        rep.multivalued == AssumptionReport::Multivalued::Failed)
        return kNegative;
    return kUndetermined;
}

int cmd_refine(const std::string& file, const std::string& map_name, int depth,
               const std::string& out) {
    ParsedInput doc = parse_input_file(file);
    const PLGraphMap& f = map_named(doc, map_name);
    auto rounds = joint_refinement_sequence(f, f, depth);
    emit(refinement_to_json(doc.graph, rounds), out);
    return kOk;
}

int cmd_compare(const std::string& file, const std::string& maps, int depth,
                const std::string& out) {
    std::size_t comma = maps.find(',');
    if (comma == std::string::npos)
        throw Error("ParseError", "--maps expects two names A,B");
    ParsedInput doc = parse_input_file(file);
    const PLGraphMap& f = map_named(doc, maps.substr(0, comma));
    const PLGraphMap& g = map_named(doc, maps.substr(comma + 1));
    ComparisonVerdict v = compare_spaces(f, g, depth);
    emit(comparison_to_json(doc.graph, v), out);
    switch (v.outcome) {
        case ComparisonVerdict::Outcome::Homeomorphic: return kOk;
        case ComparisonVerdict::Outcome::Distinguished: return kNegative;
        default: return kUndetermined;
    }
}

int cmd_classify(const std::string& file, const std::string& map_name,
                 const std::string& itinerary, const std::string& out) {
    ParsedInput doc = parse_input_file(file);
    const PLGraphMap& f = map_named(doc, map_name);
    BackwardItinerary x = parse_itinerary(f, itinerary);
    Classification c = classify_point(f, x);
    emit(classification_to_json(c), out);
    return c.verdict == Classification::Verdict::Product ? kOk : kNegative;
}

int cmd_point(const std::string& file, const std::string& map_name,
              const std::string& itinerary, bool do_shift, int project,
              const std::string& other, const std::string& precision) {
    ParsedInput doc = parse_input_file(file);
    const PLGraphMap& f = map_named(doc, map_name);
    BackwardItinerary x = parse_itinerary(f, itinerary);
    if (do_shift) {
        std::cout << itinerary_str(doc.graph, shift(f, x)) << "\n";
        return kOk;
    }
    if (project >= 0) {
        std::cout << point_str(doc.graph, x.coordinate(project)) << "\n";
        return kOk;
    }
    if (!other.empty()) {
        BackwardItinerary y = parse_itinerary(f, other);
        RatInterval d = itinerary_distance(f, x, y, parse_rat(precision));
        emit(Json{{"format", 1}, {"lo", rat_str(d.lo)}, {"hi", rat_str(d.hi)}},
             "");
        return kOk;
    }
    throw Error("ParseError",
                "point requires one of --shift, --project N, --distance SPEC2");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact Markov analysis of piecewise-linear graph self-maps and "
        "their inverse limit spaces"};
    app.require_subcommand(1);

    std::string file, map_name, maps, itinerary, other, out;
    std::string precision = "1/1048576";
    int cap = 100000, depth = 3, project = -1;
    bool do_shift = false;

    auto* validate = app.add_subcommand("validate", "Parse and validate an input file");
    validate->add_option("file", file)->required();

    auto* partition = app.add_subcommand("partition", "Markov partition, index sets and transition matrix");
    partition->add_option("file", file)->required();
    partition->add_option("--map", map_name)->required();
    partition->add_option("--json", out);

    auto* orbits = app.add_subcommand("orbits", "Turning point orbits and the omega-limit set");
    orbits->add_option("file", file)->required();
    orbits->add_option("--map", map_name)->required();
    orbits->add_option("--cap", cap);
    orbits->add_option("--json", out);

    auto* assumptions = app.add_subcommand("assumptions", "Check the standing assumptions");
    assumptions->add_option("file", file)->required();
    assumptions->add_option("--map", map_name)->required();
    assumptions->add_option("--cap", cap);
    assumptions->add_option("--json", out);

    auto* refine = app.add_subcommand("refine", "Refinement rounds with certified mesh bounds");
    refine->add_option("file", file)->required();
    refine->add_option("--map", map_name)->required();
    refine->add_option("--depth", depth)->required();
    refine->add_option("--json", out);

    auto* compare = app.add_subcommand("compare", "Compare the inverse limit spaces of two maps");
    compare->add_option("file", file)->required();
    compare->add_option("--maps", maps)->required();
    compare->add_option("--depth", depth);
    compare->add_option("--json", out);

    auto* classify = app.add_subcommand("classify", "Classify a point of the inverse limit");
    classify->add_option("file", file)->required();
    classify->add_option("--map", map_name)->required();
    classify->add_option("--itinerary", itinerary)->required();
    classify->add_option("--json", out);

    auto* point = app.add_subcommand("point", "Shift, project, or measure itinerary points");
    point->add_option("file", file)->required();
    point->add_option("--map", map_name)->required();
    point->add_option("--itinerary", itinerary)->required();
    point->add_flag("--shift", do_shift);
    point->add_option("--project", project);
    point->add_option("--distance", other);
    point->add_option("--precision", precision);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kInputError;
    }

    try {
        if (*validate) return cmd_validate(file);
        if (*partition) return cmd_partition(file, map_name, out);
        if (*orbits) return cmd_orbits(file, map_name, cap, out);
        if (*assumptions) return cmd_assumptions(file, map_name, cap, out);
        if (*refine) return cmd_refine(file, map_name, depth, out);
        if (*compare) return cmd_compare(file, maps, depth, out);
        if (*classify) return cmd_classify(file, map_name, itinerary, out);
        if (*point)
            return cmd_point(file, map_name, itinerary, do_shift, project,
                             other, precision);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
