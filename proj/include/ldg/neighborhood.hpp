#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldg/graph.hpp"
#include "ldg/quotient.hpp"
#include "ldg/rational.hpp"

namespace ldg {

inline constexpr int kCanonicalizationLimit = 16;

/// Rooted, optionally colored graph extracted as an r-ball. The canonical
/// key is identical iff two balls are root- and color-preserving isomorphic.
struct RootedColoredGraph {
    Graph graph;
    int root = 0;
    int radius = 0;
    std::optional<std::vector<int>> colors;  // 0-based, m colors
    int m = 0;                               // color count when colored

    std::string canonical_key() const;
};

RootedColoredGraph ball(const Graph& g, int u, int r);
RootedColoredGraph colored_ball(const Graph& g, const Coloring& sigma, int u, int r);

/// Frequencies of rooted (colored) r-ball isomorphism types over all root
/// choices; fractions with denominator |V| summing to 1.
struct FrequencyVector {
    int m = 0;  // 0 for uncolored
    int r = 0;
    std::map<std::string, Rat> entries;
    // decode table: canonical key -> (vertex count, edge list, colors)
    struct Decoded {
        int n = 0;
        std::vector<Graph::Edge> edges;
        std::vector<int> colors;  // empty when uncolored
    };
    std::map<std::string, Decoded> decode;

    Rat total() const;
    bool operator==(const FrequencyVector& o) const {
        return m == o.m && r == o.r && entries == o.entries;
    }
    bool operator<(const FrequencyVector& o) const { return entries < o.entries; }
};

FrequencyVector bs_frequencies(const Graph& g, int r);
FrequencyVector colored_frequencies(const Graph& g, const Coloring& sigma, int r);

/// l_inf distance over the union of observed keys (absent keys count 0).
Rat frequency_distance(const FrequencyVector& a, const FrequencyVector& b);

struct FrequencySetMethod {
    bool exact = true;
    unsigned long budget = kDefaultEnumerationBudget;
    unsigned long samples = 0;
    uint64_t seed = 0;
};

/// The set pi(G,m,r) of colored-neighborhood frequency vectors over all
/// m-colorings (exact enumeration or a sampled subset).
std::vector<FrequencyVector> colored_frequency_set(const Graph& g, int m, int r,
                                                   const FrequencySetMethod& method);

/// Hausdorff-style distance between two sets of frequency vectors.
Rat frequency_set_distance(const std::vector<FrequencyVector>& a,
                           const std::vector<FrequencyVector>& b);

/// Canonical form of an unrooted graph (sorted per-component canonical keys,
/// each minimized over root choices). Equal iff isomorphic. Exact search;
/// components must stay within the canonicalization limit.
std::string graph_canonical_form(const Graph& g);

/// Collapse colors from a colored frequency vector (for the
/// marginalization identity against bs_frequencies).
FrequencyVector forget_colors(const FrequencyVector& v);

}  // namespace ldg
