#include "ldg/families.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ldg/rng.hpp"

namespace ldg {

GraphFamily GraphFamily::disjoint_copies(Graph base, int copies) {
    GraphFamily f;
    f.kind = Kind::DisjointCopies;
    f.base = std::make_shared<Graph>(std::move(base));
    f.copies = copies;
    return f;
}

GraphFamily GraphFamily::cycle(int length) {
    GraphFamily f;
    f.kind = Kind::Cycle;
    f.length = length;
    return f;
}

GraphFamily GraphFamily::lattice(int dim, int radius) {
    GraphFamily f;
    f.kind = Kind::Lattice;
    f.dim = dim;
    f.radius = radius;
    return f;
}

GraphFamily GraphFamily::random_regular(int nodes, int degree, uint64_t seed) {
    GraphFamily f;
    f.kind = Kind::RandomRegular;
    f.nodes = nodes;
    f.degree = degree;
    f.seed = seed;
    return f;
}

GraphFamily GraphFamily::random_bipartite_regular(int nodes, int degree, uint64_t seed) {
    GraphFamily f;
    f.kind = Kind::RandomBipartiteRegular;
    f.nodes = nodes;
    f.degree = degree;
    f.seed = seed;
    return f;
}

GraphFamily GraphFamily::erdos_renyi(int nodes, double expected_degree, uint64_t seed) {
    GraphFamily f;
    f.kind = Kind::ErdosRenyi;
    f.nodes = nodes;
    f.expected_degree = expected_degree;
    f.seed = seed;
    return f;
}

GraphFamily GraphFamily::alternating(GraphFamily even, GraphFamily odd) {
    GraphFamily f;
    f.kind = Kind::Alternating;
    f.even = std::make_shared<GraphFamily>(std::move(even));
    f.odd = std::make_shared<GraphFamily>(std::move(odd));
    return f;
}

std::string GraphFamily::describe() const {
    switch (kind) {
        case Kind::DisjointCopies:
            return "disjoint-copies(base_n=" + std::to_string(base->n()) +
                   ",copies=" + std::to_string(copies) + ")";
        case Kind::Cycle: return "cycle(" + std::to_string(length) + ")";
        case Kind::Lattice:
            return "lattice(d=" + std::to_string(dim) + ",n=" + std::to_string(radius) + ")";
        case Kind::RandomRegular:
            return "random-regular(n=" + std::to_string(nodes) + ",deg=" + std::to_string(degree) + ")";
        case Kind::RandomBipartiteRegular:
            return "random-bipartite-regular(n=" + std::to_string(nodes) + ",deg=" +
                   std::to_string(degree) + ")";
        case Kind::ErdosRenyi:
            return "erdos-renyi(n=" + std::to_string(nodes) + ",c=" +
                   std::to_string(expected_degree) + ")";
        case Kind::Alternating:
            return "alternating(" + even->describe() + "," + odd->describe() + ")";
    }
    return "?";
}

namespace {

Graph make_lattice(int d, int n) {
    if (d <= 0 || n <= 0) throw std::invalid_argument("lattice: d and n must be positive");
    int side = 2 * n + 1;
    long total = 1;
    for (int i = 0; i < d; ++i) {
        total *= side;
        if (total > 2'000'000) throw std::invalid_argument("lattice: too many vertices");
    }
    auto index_of = [&](const std::vector<int>& coord) {
        long idx = 0;
        for (int i = 0; i < d; ++i) idx = idx * side + (coord[i] + n);
        return static_cast<int>(idx);
    };
    std::vector<Graph::Edge> edges;
    std::vector<int> coord(d, -n);
    while (true) {
        int u = index_of(coord);
        for (int i = 0; i < d; ++i) {
            if (coord[i] < n) {
                coord[i] += 1;
                edges.emplace_back(u, index_of(coord));
                coord[i] -= 1;
            }
        }
        int pos = d - 1;
        while (pos >= 0 && coord[pos] == n) coord[pos--] = -n;
        if (pos < 0) break;
        coord[pos] += 1;
    }
    return Graph(static_cast<int>(total), std::move(edges), 2 * d);
}

// Configuration model with full rejection of loops and multi-edges.
// Each retry folds the attempt counter into the seed.
Graph make_random_regular(int n, int deg, uint64_t seed, uint64_t stream) {
    if (n <= 0 || deg < 0) throw std::invalid_argument("random-regular: bad parameters");
    if ((static_cast<long>(n) * deg) % 2 != 0)
        throw std::invalid_argument("random-regular: n*degree must be even");
    if (deg >= n) throw std::invalid_argument("random-regular: degree >= n");
    for (uint64_t attempt = 0;; ++attempt) {
        if (attempt > 100000) throw std::runtime_error("random-regular: rejection stalled");
        Rng rng = make_rng(seed, mix_seed(stream, attempt));
        std::vector<int> stubs;
        stubs.reserve(static_cast<size_t>(n) * deg);
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < deg; ++i) stubs.push_back(v);
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::set<std::pair<int, int>> seen;
        bool ok = true;
        for (size_t i = 0; ok && i < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u > v) std::swap(u, v);
            if (u == v || !seen.emplace(u, v).second) ok = false;
        }
        if (!ok) continue;
        return Graph(n, {seen.begin(), seen.end()}, deg);
    }
}

Graph make_random_bipartite_regular(int n, int deg, uint64_t seed, uint64_t stream) {
    if (n <= 0 || n % 2 != 0)
        throw std::invalid_argument("random-bipartite-regular: n must be positive even");
    int half = n / 2;
    if (deg > half) throw std::invalid_argument("random-bipartite-regular: degree > n/2");
    for (uint64_t attempt = 0;; ++attempt) {
        if (attempt > 100000) throw std::runtime_error("random-bipartite-regular: rejection stalled");
        Rng rng = make_rng(seed, mix_seed(stream ^ 0x9e37UL, attempt));
        std::vector<int> right;
        for (int v = 0; v < half; ++v)
            for (int i = 0; i < deg; ++i) right.push_back(half + v);
        std::shuffle(right.begin(), right.end(), rng);
        std::set<std::pair<int, int>> seen;
        bool ok = true;
        size_t pos = 0;
        for (int u = 0; ok && u < half; ++u)
            for (int i = 0; ok && i < deg; ++i)
                if (!seen.emplace(u, right[pos++]).second) ok = false;
        if (!ok) continue;
        return Graph(n, {seen.begin(), seen.end()}, deg);
    }
}

Graph make_erdos_renyi(int n, double c, uint64_t seed, uint64_t stream) {
    if (n <= 0 || c < 0) throw std::invalid_argument("erdos-renyi: bad parameters");
    double p = std::min(1.0, c / n);
    Rng rng = make_rng(seed, stream ^ 0x5bd1UL);
    std::vector<Graph::Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (uniform01(rng) < p) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));  // bound = observed max degree
}

}  // namespace

Graph realize(const GraphFamily& family, int index) {
    if (index <= 0) throw std::invalid_argument("realize: index must be positive");
    switch (family.kind) {
        case GraphFamily::Kind::DisjointCopies: {
            int copies = family.copies;
            if (copies == 0) {
                int bn = family.base->n();
                if (index % bn != 0)
                    throw std::invalid_argument("realize: index not divisible by base size");
                copies = index / bn;
            }
            Graph g = Graph::empty(0);
            for (int i = 0; i < copies; ++i) g = g.disjoint_union(*family.base);
            return g;
        }
        case GraphFamily::Kind::Cycle:
            return Graph::cycle(family.length > 0 ? family.length : index);
        case GraphFamily::Kind::Lattice:
            return make_lattice(family.dim, family.radius > 0 ? family.radius : index);
        case GraphFamily::Kind::RandomRegular:
            return make_random_regular(family.nodes > 0 ? family.nodes : index, family.degree,
                                       family.seed, static_cast<uint64_t>(index));
        case GraphFamily::Kind::RandomBipartiteRegular:
            return make_random_bipartite_regular(family.nodes > 0 ? family.nodes : index,
                                                 family.degree, family.seed,
                                                 static_cast<uint64_t>(index));
        case GraphFamily::Kind::ErdosRenyi:
            return make_erdos_renyi(family.nodes > 0 ? family.nodes : index,
                                    family.expected_degree, family.seed,
                                    static_cast<uint64_t>(index));
        case GraphFamily::Kind::Alternating:
            return realize(index % 2 == 0 ? *family.even : *family.odd, index);
    }
    throw std::logic_error("realize: unknown family kind");
}

}  // namespace ldg
