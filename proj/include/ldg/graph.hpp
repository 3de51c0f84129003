#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ldg {

/// Simple undirected graph with a declared degree bound D.
/// Vertices are 0..n-1; edges are stored as sorted unique pairs (u < v).
/// Immutable after construction.
class Graph {
public:
    using Edge = std::pair<int, int>;

    Graph() = default;

    // degree_bound < 0 means "use the observed maximum degree".
    Graph(int n, std::vector<Edge> edges, int degree_bound = -1);

    int n() const { return n_; }
    int degree_bound() const { return degree_bound_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int u) const { return adj_.at(u); }
    int degree(int u) const { return static_cast<int>(adj_.at(u).size()); }
    int max_degree() const;
    bool has_edge(int u, int v) const;

    Graph with_degree_bound(int bound) const { return Graph(n_, edges_, bound); }
    Graph disjoint_union(const Graph& other) const;
    Graph without_edges(const std::vector<Edge>& removed) const;
    Graph relabeled(const std::vector<int>& perm) const;  // vertex u -> perm[u]

    // Vertex sets of connected components, each sorted.
    std::vector<std::vector<int>> components() const;

    bool operator==(const Graph& g) const {
        return n_ == g.n_ && degree_bound_ == g.degree_bound_ && edges_ == g.edges_;
    }

    static Graph empty(int n) { return Graph(n, {}); }
    static Graph single_edge() { return Graph(2, {{0, 1}}); }
    static Graph cycle(int len);
    static Graph path(int len);  // len vertices
    static Graph complete(int n);

private:
    int n_ = 0;
    int degree_bound_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

}  // namespace ldg
