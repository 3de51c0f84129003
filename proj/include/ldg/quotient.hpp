#pragma once

#include <cstdint>
#include <vector>

#include "ldg/graph.hpp"
#include "ldg/rational.hpp"

namespace ldg {

/// A k-coloring of vertices. Colors are 0-based internally; text and JSON
/// interfaces use 1-based colors.
struct Coloring {
    int k = 1;
    std::vector<int> values;  // one per vertex, each in [0, k)

    void validate(int n) const;
};

/// Quotient of a graph by a coloring: part-size fractions x and the
/// normalized ordered-adjacency matrix X (symmetric, entries count ordered
/// pairs divided by |V|). All entries exact rationals with denominator |V|.
struct Quotient {
    int k = 1;
    int degree_bound = 0;
    std::vector<Rat> x;               // size k
    std::vector<std::vector<Rat>> X;  // k x k, symmetric

    Rat x_sum() const;
    Rat X_sum() const;
    bool operator==(const Quotient& other) const;
};

/// Same data as integer counts over a fixed vertex total; the
/// representation used by enumeration loops and dedup keys.
struct CountQuotient {
    int n = 0;  // vertex total (denominator)
    int k = 1;
    std::vector<int32_t> x_count;   // size k, sums to n
    std::vector<int32_t> xx_count;  // upper triangle i<=j; diagonal holds
                                    // ordered counts (2x internal edges)

    static int tri_size(int k) { return k * (k + 1) / 2; }
    static int tri_index(int k, int i, int j);  // i <= j
    int32_t ordered_count(int i, int j) const;  // symmetric accessor

    Quotient to_quotient(int degree_bound) const;
    std::vector<int32_t> key() const;  // x_count then xx_count
};

Quotient quotient(const Graph& g, const Coloring& sigma);
CountQuotient count_quotient(const Graph& g, const Coloring& sigma);

/// Max over all x and X entries of the absolute difference (the metric on D_k).
Rat linf_distance(const Quotient& a, const Quotient& b);

/// Relabel colors: color c becomes perm[c].
Quotient permute_colors(const Quotient& q, const std::vector<int>& perm);

/// Merge 2k colors pairwise ({0,1}->0, {2,3}->1, ...); the T_k projection
/// expressed on quotients.
Quotient merge_color_pairs(const Quotient& q);
CountQuotient merge_color_pairs(const CountQuotient& q);

}  // namespace ldg
