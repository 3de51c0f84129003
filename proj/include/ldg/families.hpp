#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "ldg/graph.hpp"

namespace ldg {

/// Parametric graph sequences. A size parameter left at 0 is taken from the
/// realization index, so the same description works both for fixed graphs
/// (Cycle(4)) and growing sequences (Cycle(0) realized at index n gives C_n).
struct GraphFamily {
    enum class Kind {
        DisjointCopies,
        Cycle,
        Lattice,
        RandomRegular,
        RandomBipartiteRegular,
        ErdosRenyi,
        Alternating,
    };

    Kind kind = Kind::Cycle;
    std::shared_ptr<Graph> base;  // DisjointCopies
    int copies = 0;               // DisjointCopies; 0: index counts total vertices
    int length = 0;               // Cycle
    int dim = 1;                  // Lattice dimension d; vertex set {-n..n}^d
    int radius = 0;               // Lattice n
    int nodes = 0;                // random families
    int degree = 0;               // regular families
    double expected_degree = 0;   // ErdosRenyi c, edge prob c/n
    uint64_t seed = 0;
    std::shared_ptr<GraphFamily> even, odd;  // Alternating: dispatch on index parity

    static GraphFamily disjoint_copies(Graph base, int copies = 0);
    static GraphFamily cycle(int length = 0);
    static GraphFamily lattice(int dim, int radius = 0);
    static GraphFamily random_regular(int nodes, int degree, uint64_t seed);
    static GraphFamily random_bipartite_regular(int nodes, int degree, uint64_t seed);
    static GraphFamily erdos_renyi(int nodes, double expected_degree, uint64_t seed);
    static GraphFamily alternating(GraphFamily even, GraphFamily odd);

    std::string describe() const;
};

/// Deterministic realization: same (family, index) always yields the same graph.
Graph realize(const GraphFamily& family, int index);

}  // namespace ldg
