#pragma once

#include <vector>

#include "ldg/families.hpp"
#include "ldg/graph.hpp"
#include "ldg/rational.hpp"

namespace ldg {

inline constexpr int kExactIsoLimit = 8;

/// |E(g) symmetric-difference E(h)| on a shared labeled vertex set.
long edit_distance_labeled(const Graph& g, const Graph& h);

/// min over all vertex permutations of the labeled edit distance.
/// Exact permutation search; requires n <= kExactIsoLimit.
long edit_distance_iso(const Graph& g, const Graph& h);

struct EquivalenceReport {
    struct Entry {
        int index;
        int vertices;
        long edit_distance;
        double ratio;  // edit_distance / vertices
    };
    std::vector<Entry> entries;
    bool ratios_nonincreasing = false;
    bool final_ratio_below_tol = false;
    double slope_tol = 0;
    // Finite-sample diagnostic for the o(|V|) equivalence relation,
    // not a limit claim.
    bool consistent_with_equivalence() const {
        return ratios_nonincreasing && final_ratio_below_tol;
    }
};

EquivalenceReport is_equivalent_sequence(const GraphFamily& a, const GraphFamily& b,
                                         const std::vector<int>& indices, double slope_tol);

}  // namespace ldg
