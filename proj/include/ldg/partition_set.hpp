#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ldg/distribution.hpp"
#include "ldg/graph.hpp"
#include "ldg/quotient.hpp"

namespace ldg {

/// The set of k-quotients achievable on a graph, either complete
/// (every distinct quotient over all k^|V| colorings) or a sampled subset.
struct QuotientSet {
    int k = 1;
    int n = 0;
    int degree_bound = 0;
    bool exact = true;
    unsigned long sample_budget = 0;  // sampled method metadata
    uint64_t seed = 0;
    std::vector<Quotient> points;
};

struct PartitionSetMethod {
    bool exact = true;
    unsigned long budget = kDefaultEnumerationBudget;
    unsigned long samples = 0;  // sampled mode
    uint64_t seed = 0;

    static PartitionSetMethod exact_method(unsigned long budget = kDefaultEnumerationBudget) {
        return {true, budget, 0, 0};
    }
    static PartitionSetMethod sampled(unsigned long samples, uint64_t seed) {
        return {false, kDefaultEnumerationBudget, samples, seed};
    }
};

QuotientSet partition_set(const Graph& g, int k,
                          const PartitionSetMethod& method = PartitionSetMethod::exact_method());

/// Hausdorff-style distance between two finite quotient sets under l_inf:
/// max over points of one set of the min distance to the other, symmetrized.
/// Exact rational value.
Rat set_distance(const QuotientSet& a, const QuotientSet& b);

/// Distance from a single point to a set (used by the expander scenario).
Rat point_set_distance(const Quotient& q, const QuotientSet& s);

/// Explicit cycle-coloring construction for disjoint unions of n equal even
/// cycles: returns a coloring whose quotient is within l_inf distance k/n of
/// any target satisfying sum_j X_ij = 2 x_i (with sum x = 1, X symmetric
/// nonnegative). Throws if the graph is not such a union or the target is
/// off the constraint set.
Coloring achievable_coloring_even_cycles(const Quotient& target, const Graph& g);

}  // namespace ldg
