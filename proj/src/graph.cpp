#include "ldg/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace ldg {

Graph::Graph(int n, std::vector<Edge> edges, int degree_bound) : n_(n) {
    if (n < 0) throw std::invalid_argument("graph: negative vertex count");
    for (auto& [u, v] : edges) {
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n) throw std::invalid_argument("graph: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("graph: self-loop");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("graph: parallel edge");
    edges_ = std::move(edges);

    adj_.assign(n, {});
    for (const auto& [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());

    int dmax = max_degree();
    degree_bound_ = degree_bound < 0 ? dmax : degree_bound;
    if (dmax > degree_bound_)
        throw std::invalid_argument("graph: degree exceeds declared bound");
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

bool Graph::has_edge(int u, int v) const {
    const auto& a = adj_.at(u);
    return std::binary_search(a.begin(), a.end(), v);
}

Graph Graph::disjoint_union(const Graph& other) const {
    std::vector<Edge> e = edges_;
    for (const auto& [u, v] : other.edges_) e.emplace_back(u + n_, v + n_);
    return Graph(n_ + other.n_, std::move(e), std::max(degree_bound_, other.degree_bound_));
}

Graph Graph::without_edges(const std::vector<Edge>& removed) const {
    std::vector<Edge> drop = removed;
    for (auto& [u, v] : drop)
        if (u > v) std::swap(u, v);
    std::sort(drop.begin(), drop.end());
    std::vector<Edge> kept;
    for (const auto& e : edges_)
        if (!std::binary_search(drop.begin(), drop.end(), e)) kept.push_back(e);
    return Graph(n_, std::move(kept), degree_bound_);
}

Graph Graph::relabeled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_)
        throw std::invalid_argument("relabeled: permutation size mismatch");
    std::vector<Edge> e;
    e.reserve(edges_.size());
    for (const auto& [u, v] : edges_) e.emplace_back(perm[u], perm[v]);
    return Graph(n_, std::move(e), degree_bound_);
}

std::vector<std::vector<int>> Graph::components() const {
    std::vector<int> comp(n_, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n_; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.push_back({});
        std::vector<int> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            out[id].push_back(u);
            for (int v : adj_[u])
                if (comp[v] < 0) {
                    comp[v] = id;
                    stack.push_back(v);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

Graph Graph::cycle(int len) {
    if (len < 3) throw std::invalid_argument("cycle: length < 3");
    std::vector<Edge> e;
    for (int i = 0; i < len; ++i) e.emplace_back(i, (i + 1) % len);
    return Graph(len, std::move(e), 2);
}

Graph Graph::path(int len) {
    if (len < 1) throw std::invalid_argument("path: length < 1");
    std::vector<Edge> e;
    for (int i = 0; i + 1 < len; ++i) e.emplace_back(i, i + 1);
    return Graph(len, std::move(e), len == 1 ? 0 : 2);
}

Graph Graph::complete(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, std::move(e), n - 1);
}

}  // namespace ldg
