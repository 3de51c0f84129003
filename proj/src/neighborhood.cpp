#include "ldg/neighborhood.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

#include "ldg/rng.hpp"

namespace ldg {

namespace {

// Minimal byte code over all root-preserving vertex orderings. Chunk for a
// vertex at position p: (color byte, adjacency bits to positions < p).
// Branches only on candidates attaining the minimal next chunk.
struct CanonicalSearch {
    const Graph& g;
    const std::vector<int>* colors;
    int n;
    std::vector<uint16_t> adj_bits;  // row masks over original labels
    std::vector<int> placed;         // order[p] = original vertex
    std::vector<int> position;       // inverse; -1 if unplaced
    std::string best;
    bool have_best = false;
    long nodes = 0;

    CanonicalSearch(const Graph& graph, const std::vector<int>* cols)
        : g(graph), colors(cols), n(graph.n()), adj_bits(graph.n(), 0), position(graph.n(), -1) {
        for (const auto& [u, v] : g.edges()) {
            adj_bits[u] |= static_cast<uint16_t>(1u << v);
            adj_bits[v] |= static_cast<uint16_t>(1u << u);
        }
    }

    std::pair<uint8_t, uint16_t> chunk_of(int v) const {
        uint8_t color = colors ? static_cast<uint8_t>((*colors)[v] + 1) : 0;
        uint16_t mask = 0;
        for (size_t p = 0; p < placed.size(); ++p)
            if (adj_bits[v] & (1u << placed[p])) mask |= static_cast<uint16_t>(1u << p);
        return {color, mask};
    }

    void append_chunk(std::string& code, std::pair<uint8_t, uint16_t> c) const {
        code.push_back(static_cast<char>(c.first));
        code.push_back(static_cast<char>(c.second & 0xff));
        code.push_back(static_cast<char>(c.second >> 8));
    }

    void dfs(std::string& code) {
        if (++nodes > 2'000'000)
            throw std::runtime_error("canonical_key: ordering search exploded");
        if (static_cast<int>(placed.size()) == n) {
            if (!have_best || code < best) {
                best = code;
                have_best = true;
            }
            return;
        }
        if (have_best && code.compare(0, code.size(), best, 0, code.size()) > 0) return;
        std::pair<uint8_t, uint16_t> min_chunk{255, 0xffff};
        std::vector<int> ties;
        for (int v = 0; v < n; ++v) {
            if (position[v] >= 0) continue;
            auto c = chunk_of(v);
            if (c < min_chunk) {
                min_chunk = c;
                ties.assign(1, v);
            } else if (c == min_chunk) {
                ties.push_back(v);
            }
        }
        size_t len = code.size();
        append_chunk(code, min_chunk);
        for (int v : ties) {
            position[v] = static_cast<int>(placed.size());
            placed.push_back(v);
            dfs(code);
            placed.pop_back();
            position[v] = -1;
        }
        code.resize(len);
    }

    std::string run(int root) {
        std::string code;
        code.push_back(static_cast<char>(n));
        code.push_back(colors ? 1 : 0);
        position.assign(n, -1);
        placed.clear();
        placed.push_back(root);
        position[root] = 0;
        append_chunk(code, chunk_of(root));  // root chunk: color only, empty mask
        dfs(code);
        return best;
    }
};

}  // namespace

std::string RootedColoredGraph::canonical_key() const {
    if (graph.n() > kCanonicalizationLimit)
        throw std::invalid_argument("canonical_key: ball exceeds canonicalization limit");
    CanonicalSearch search(graph, colors ? &*colors : nullptr);
    return search.run(root);
}

namespace {

RootedColoredGraph extract_ball(const Graph& g, const std::vector<int>* colors, int m, int u,
                                int r) {
    if (u < 0 || u >= g.n()) throw std::invalid_argument("ball: vertex out of range");
    if (r < 0) throw std::invalid_argument("ball: negative radius");
    std::vector<int> dist(g.n(), -1);
    std::vector<int> verts{u};
    dist[u] = 0;
    std::queue<int> q;
    q.push(u);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (dist[v] == r) continue;
        for (int w : g.neighbors(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                verts.push_back(w);
                q.push(w);
            }
    }
    std::sort(verts.begin() + 1, verts.end(), [&](int a, int b) {
        return std::pair(dist[a], a) < std::pair(dist[b], b);
    });
    std::vector<int> pos(g.n(), -1);
    for (size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
    std::vector<Graph::Edge> edges;
    for (const auto& [a, b] : g.edges())
        if (pos[a] >= 0 && pos[b] >= 0) edges.emplace_back(pos[a], pos[b]);
    RootedColoredGraph out;
    out.graph = Graph(static_cast<int>(verts.size()), std::move(edges), g.degree_bound());
    out.root = 0;
    out.radius = r;
    if (colors) {
        std::vector<int> c(verts.size());
        for (size_t i = 0; i < verts.size(); ++i) c[i] = (*colors)[verts[i]];
        out.colors = std::move(c);
        out.m = m;
    }
    return out;
}

}  // namespace

RootedColoredGraph ball(const Graph& g, int u, int r) {
    return extract_ball(g, nullptr, 0, u, r);
}

RootedColoredGraph colored_ball(const Graph& g, const Coloring& sigma, int u, int r) {
    sigma.validate(g.n());
    return extract_ball(g, &sigma.values, sigma.k, u, r);
}

Rat FrequencyVector::total() const {
    Rat t = 0;
    for (const auto& [key, v] : entries) t += v;
    return t;
}

namespace {

FrequencyVector frequencies_impl(const Graph& g, const std::vector<int>* colors, int m, int r) {
    FrequencyVector vec;
    vec.m = m;
    vec.r = r;
    Rat share = rat(1, g.n());
    for (int u = 0; u < g.n(); ++u) {
        RootedColoredGraph b = extract_ball(g, colors, m, u, r);
        std::string key = b.canonical_key();
        vec.entries[key] += share;
        if (!vec.decode.count(key)) {
            FrequencyVector::Decoded d;
            d.n = b.graph.n();
            d.edges = b.graph.edges();
            if (b.colors) d.colors = *b.colors;
            vec.decode[key] = std::move(d);
        }
    }
    return vec;
}

}  // namespace

FrequencyVector bs_frequencies(const Graph& g, int r) {
    if (g.n() == 0) throw std::invalid_argument("bs_frequencies: empty graph");
    return frequencies_impl(g, nullptr, 0, r);
}

FrequencyVector colored_frequencies(const Graph& g, const Coloring& sigma, int r) {
    sigma.validate(g.n());
    return frequencies_impl(g, &sigma.values, sigma.k, r);
}

Rat frequency_distance(const FrequencyVector& a, const FrequencyVector& b) {
    Rat worst = 0;
    auto scan = [&](const FrequencyVector& x, const FrequencyVector& y) {
        for (const auto& [key, v] : x.entries) {
            auto it = y.entries.find(key);
            Rat d = abs(v - (it == y.entries.end() ? Rat(0) : it->second));
            if (d > worst) worst = d;
        }
    };
    scan(a, b);
    scan(b, a);
    return worst;
}

std::vector<FrequencyVector> colored_frequency_set(const Graph& g, int m, int r,
                                                   const FrequencySetMethod& method) {
    if (m < 1) throw std::invalid_argument("colored_frequency_set: m < 1");
    std::set<FrequencyVector> seen;
    Coloring sigma;
    sigma.k = m;
    sigma.values.assign(g.n(), 0);
    if (method.exact) {
        double logv = g.n() * std::log(static_cast<double>(m));
        if (logv > std::log(static_cast<double>(method.budget)))
            throw BudgetError("colored_frequency_set: enumeration exceeds budget");
        while (true) {
            seen.insert(colored_frequencies(g, sigma, r));
            int u = 0;
            while (u < g.n() && sigma.values[u] == m - 1) sigma.values[u++] = 0;
            if (u == g.n()) break;
            sigma.values[u] += 1;
        }
    } else {
        Rng rng = make_rng(method.seed);
        for (unsigned long s = 0; s < method.samples; ++s) {
            for (auto& c : sigma.values) c = uniform_int(rng, 0, m - 1);
            seen.insert(colored_frequencies(g, sigma, r));
        }
    }
    return {seen.begin(), seen.end()};
}

Rat frequency_set_distance(const std::vector<FrequencyVector>& a,
                           const std::vector<FrequencyVector>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("frequency_set_distance: empty set");
    auto directed = [](const std::vector<FrequencyVector>& from,
                       const std::vector<FrequencyVector>& to) {
        Rat worst = 0;
        for (const auto& f : from) {
            Rat best = -1;
            for (const auto& t : to) {
                Rat d = frequency_distance(f, t);
                if (best < 0 || d < best) best = d;
                if (best == 0) break;
            }
            if (best > worst) worst = best;
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

std::string graph_canonical_form(const Graph& g) {
    std::vector<std::string> keys;
    for (const auto& verts : g.components()) {
        std::vector<int> pos(g.n(), -1);
        for (size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
        std::vector<Graph::Edge> edges;
        for (const auto& [a, b] : g.edges())
            if (pos[a] >= 0 && pos[b] >= 0) edges.emplace_back(pos[a], pos[b]);
        Graph comp(static_cast<int>(verts.size()), std::move(edges), g.degree_bound());
        RootedColoredGraph rooted;
        rooted.graph = comp;
        rooted.radius = comp.n();
        std::string best;
        for (int root = 0; root < comp.n(); ++root) {
            rooted.root = root;
            std::string key = rooted.canonical_key();
            if (best.empty() || key < best) best = key;
        }
        keys.push_back(best);
    }
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (const auto& k : keys) {
        out += k;
        out.push_back('|');
    }
    return out;
}

FrequencyVector forget_colors(const FrequencyVector& v) {
    FrequencyVector out;
    out.m = 0;
    out.r = v.r;
    for (const auto& [key, mass] : v.entries) {
        const auto& d = v.decode.at(key);
        RootedColoredGraph plain;
        plain.graph = Graph(d.n, d.edges);
        plain.root = 0;
        plain.radius = v.r;
        std::string pkey = plain.canonical_key();
        out.entries[pkey] += mass;
        if (!out.decode.count(pkey)) {
            FrequencyVector::Decoded pd;
            pd.n = d.n;
            pd.edges = d.edges;
            out.decode[pkey] = std::move(pd);
        }
    }
    return out;
}

}  // namespace ldg
