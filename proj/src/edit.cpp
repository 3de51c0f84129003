#include "ldg/edit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ldg {

long edit_distance_labeled(const Graph& g, const Graph& h) {
    if (g.n() != h.n()) throw std::invalid_argument("edit distance: vertex count mismatch");
    const auto& a = g.edges();
    const auto& b = h.edges();
    size_t i = 0, j = 0;
    long diff = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++i, ++j;
        } else if (a[i] < b[j]) {
            ++diff, ++i;
        } else {
            ++diff, ++j;
        }
    }
    return diff + static_cast<long>(a.size() - i) + static_cast<long>(b.size() - j);
}

long edit_distance_iso(const Graph& g, const Graph& h) {
    if (g.n() != h.n()) throw std::invalid_argument("edit distance: vertex count mismatch");
    if (g.n() > kExactIsoLimit)
        throw std::invalid_argument("edit_distance_iso: exact search infeasible beyond " +
                                    std::to_string(kExactIsoLimit) + " vertices");
    int n = g.n();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    long best = edit_distance_labeled(g, h);
    while (std::next_permutation(perm.begin(), perm.end())) {
        long d = edit_distance_labeled(g.relabeled(perm), h);
        best = std::min(best, d);
        if (best == 0) break;
    }
    return best;
}

EquivalenceReport is_equivalent_sequence(const GraphFamily& a, const GraphFamily& b,
                                         const std::vector<int>& indices, double slope_tol) {
    EquivalenceReport report;
    report.slope_tol = slope_tol;
    for (int index : indices) {
        Graph ga = realize(a, index);
        Graph gb = realize(b, index);
        if (ga.n() != gb.n())
            throw std::invalid_argument("is_equivalent_sequence: vertex count mismatch at index " +
                                        std::to_string(index));
        long d = edit_distance_labeled(ga, gb);
        report.entries.push_back({index, ga.n(), d, static_cast<double>(d) / ga.n()});
    }
    report.ratios_nonincreasing = true;
    for (size_t i = 1; i < report.entries.size(); ++i)
        if (report.entries[i].ratio > report.entries[i - 1].ratio + 1e-12)
            report.ratios_nonincreasing = false;
    report.final_ratio_below_tol =
        !report.entries.empty() && report.entries.back().ratio <= slope_tol;
    return report;
}

}  // namespace ldg
