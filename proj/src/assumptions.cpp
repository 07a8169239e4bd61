#include "invlim/markov.hpp"
#include "invlim/plmap.hpp"

namespace invlim {

AssumptionReport check_standing_assumptions(const PLGraphMap& f, int cap) {
    AssumptionReport rep;
    rep.cap = cap;
    rep.isolated_preimages = true;  // constant laps are rejected at build time
    for (const auto& edge_laps : f.laps)
        for (const auto& lap : edge_laps)
            if (path_length(f.graph, lap.image) == 0) rep.isolated_preimages = false;
    rep.nonexpanding_preimages = min_stretch(f) >= 1;

    try {
        MarkovData data = index_sets(f, compute_markov_partition(f, cap));
        const int m = data.cell_count();
        IntMatrix power = data.transition;
        for (int n = 1; n <= cap; ++n) {
            if (n > 1) {
                IntMatrix next(m, std::vector<Int>(m, 0));
                for (int i = 0; i < m; ++i)
                    for (int k = 0; k < m; ++k) {
                        if (power[i][k] == 0) continue;
                        for (int j = 0; j < m; ++j)
                            next[i][j] += power[i][k] * data.transition[k][j];
                    }
                power = std::move(next);
            }
            bool all = true;
            for (int j = 0; j < m && all; ++j) {
                Int sum = 0;
                for (int i = 0; i < m; ++i) sum += power[i][j];
                if (sum < 2) all = false;
            }
            if (all) {
                rep.multivalued = AssumptionReport::Multivalued::Verified;
                rep.multivalued_power = n;
                return rep;
            }
        }
        // a permutation matrix keeps every column sum at 1 forever
        bool permutation = true;
        for (int j = 0; j < m && permutation; ++j) {
            Int sum = 0;
            for (int i = 0; i < m; ++i) sum += data.transition[i][j];
            if (sum != 1) permutation = false;
        }
        rep.multivalued = permutation ? AssumptionReport::Multivalued::Failed
                                      : AssumptionReport::Multivalued::Undetermined;
    } catch (const Error&) {
        rep.multivalued = AssumptionReport::Multivalued::Undetermined;
    }
    return rep;
}

}  // namespace invlim
