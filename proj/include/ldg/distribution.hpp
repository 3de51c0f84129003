#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ldg/graph.hpp"
#include "ldg/quotient.hpp"
#include "ldg/rational.hpp"

namespace ldg {

/// Exact distribution of k-quotients over all k^|V| colorings of a graph:
/// one entry per distinct quotient (stored as integer counts over |V|),
/// with the exact number of colorings achieving it.
///
/// Built either by direct enumeration or, for disjoint unions, by
/// convolving per-component distributions; identical components are
/// combined by repeated doubling.
class QuotientDistribution {
public:
    int n = 0;
    int k = 1;
    int degree_bound = 0;

    size_t size() const { return counts_.size(); }
    int entry_size() const { return k + CountQuotient::tri_size(k); }
    const int32_t* coord(size_t idx) const { return coords_.data() + idx * entry_size(); }
    const Int& count(size_t idx) const { return counts_[idx]; }

    CountQuotient state(size_t idx) const;
    Quotient quotient_at(size_t idx) const;

    Int total() const;

    /// Exact number of colorings whose quotient lies in the closed
    /// l_inf ball of radius delta around center.
    Int ball_count(const Quotient& center, const Rat& delta) const;

    /// Indices of entries inside the closed ball.
    std::vector<size_t> ball_entries(const Quotient& center, const Rat& delta) const;

    static QuotientDistribution build(const Graph& g, int k,
                                      unsigned long budget = kDefaultEnumerationBudget);

    static QuotientDistribution merge(const QuotientDistribution& a,
                                      const QuotientDistribution& b, unsigned long budget);

    /// Sorted-by-key construction from raw (key, count) pairs.
    static QuotientDistribution from_entries(int n, int k, int degree_bound,
                                             std::vector<std::pair<std::vector<int32_t>, Int>> entries);

private:
    // flat coords, states sorted lexicographically by key
    std::vector<int32_t> coords_;
    std::vector<Int> counts_;
};

/// Per-coordinate inclusive integer windows for "count/n lies in the closed
/// ball"; shared by the distribution scan and the samplers.
struct BallWindow {
    int n = 0;
    std::vector<int64_t> lo, hi;  // one per flattened coordinate

    static BallWindow closed_ball(int n, const Quotient& center, const Rat& delta);
    bool contains(const int32_t* coord, int entry_size) const;
    bool contains(const CountQuotient& cq) const;
};

/// Visit all k^|V| colorings of g with incrementally maintained quotient
/// counts. The callback receives the current coloring and counts.
/// Throws BudgetError if k^|V| exceeds the budget.
void for_each_coloring(const Graph& g, int k, unsigned long budget,
                       const std::function<void(const std::vector<int>&, const CountQuotient&)>& fn);

}  // namespace ldg
