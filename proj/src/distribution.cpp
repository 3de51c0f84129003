#include "ldg/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace ldg {

namespace {

bool pow_within(int k, int n, unsigned long budget) {
    // k^n <= budget without overflow
    double logv = n * std::log(static_cast<double>(k));
    return logv <= std::log(static_cast<double>(budget)) + 1e-9;
}

std::string pack_key(const std::vector<int32_t>& key) {
    return std::string(reinterpret_cast<const char*>(key.data()), key.size() * sizeof(int32_t));
}

std::vector<int32_t> unpack_key(const std::string& s) {
    std::vector<int32_t> key(s.size() / sizeof(int32_t));
    std::memcpy(key.data(), s.data(), s.size());
    return key;
}

Graph induced_component(const Graph& g, const std::vector<int>& verts) {
    std::vector<int> pos(g.n(), -1);
    for (size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
    std::vector<Graph::Edge> edges;
    for (const auto& [u, v] : g.edges())
        if (pos[u] >= 0 && pos[v] >= 0) edges.emplace_back(pos[u], pos[v]);
    return Graph(static_cast<int>(verts.size()), std::move(edges), g.degree_bound());
}

}  // namespace

CountQuotient QuotientDistribution::state(size_t idx) const {
    CountQuotient cq;
    cq.n = n;
    cq.k = k;
    const int32_t* c = coord(idx);
    cq.x_count.assign(c, c + k);
    cq.xx_count.assign(c + k, c + entry_size());
    return cq;
}

Quotient QuotientDistribution::quotient_at(size_t idx) const {
    return state(idx).to_quotient(degree_bound);
}

Int QuotientDistribution::total() const {
    Int t = 0;
    for (const auto& c : counts_) t += c;
    return t;
}

BallWindow BallWindow::closed_ball(int n, const Quotient& center, const Rat& delta) {
    if (delta < 0) throw std::invalid_argument("ball: negative radius");
    BallWindow w;
    w.n = n;
    auto push = [&](const Rat& c) {
        Rat lo = (c - delta) * n;
        Rat hi = (c + delta) * n;
        // ceil(lo), floor(hi) as integers
        Int lo_i, hi_i;
        mpz_cdiv_q(lo_i.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
        mpz_fdiv_q(hi_i.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
        w.lo.push_back(lo_i.fits_slong_p() ? lo_i.get_si() : (lo_i < 0 ? INT64_MIN / 2 : INT64_MAX / 2));
        w.hi.push_back(hi_i.fits_slong_p() ? hi_i.get_si() : (hi_i < 0 ? INT64_MIN / 2 : INT64_MAX / 2));
    };
    for (const auto& c : center.x) push(c);
    // upper triangle to match CountQuotient layout; X symmetric
    for (int i = 0; i < center.k; ++i)
        for (int j = i; j < center.k; ++j) push(center.X[i][j]);
    return w;
}

bool BallWindow::contains(const int32_t* coord, int entry_size) const {
    for (int i = 0; i < entry_size; ++i)
        if (coord[i] < lo[i] || coord[i] > hi[i]) return false;
    return true;
}

bool BallWindow::contains(const CountQuotient& cq) const {
    std::vector<int32_t> key = cq.key();
    return contains(key.data(), static_cast<int>(key.size()));
}

Int QuotientDistribution::ball_count(const Quotient& center, const Rat& delta) const {
    if (center.k != k) throw std::invalid_argument("ball_count: k mismatch");
    BallWindow w = BallWindow::closed_ball(n, center, delta);
    Int total = 0;
    int es = entry_size();
    for (size_t i = 0; i < size(); ++i)
        if (w.contains(coord(i), es)) total += counts_[i];
    return total;
}

std::vector<size_t> QuotientDistribution::ball_entries(const Quotient& center,
                                                       const Rat& delta) const {
    BallWindow w = BallWindow::closed_ball(n, center, delta);
    std::vector<size_t> out;
    int es = entry_size();
    for (size_t i = 0; i < size(); ++i)
        if (w.contains(coord(i), es)) out.push_back(i);
    return out;
}

QuotientDistribution QuotientDistribution::from_entries(
    int n, int k, int degree_bound, std::vector<std::pair<std::vector<int32_t>, Int>> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    QuotientDistribution d;
    d.n = n;
    d.k = k;
    d.degree_bound = degree_bound;
    d.coords_.reserve(entries.size() * (k + CountQuotient::tri_size(k)));
    d.counts_.reserve(entries.size());
    for (auto& [key, cnt] : entries) {
        d.coords_.insert(d.coords_.end(), key.begin(), key.end());
        d.counts_.push_back(std::move(cnt));
    }
    return d;
}

void for_each_coloring(const Graph& g, int k, unsigned long budget,
                       const std::function<void(const std::vector<int>&, const CountQuotient&)>& fn) {
    if (k < 1) throw std::invalid_argument("for_each_coloring: k < 1");
    int n = g.n();
    if (!pow_within(k, n, budget))
        throw BudgetError("coloring enumeration exceeds budget: k=" + std::to_string(k) +
                          " n=" + std::to_string(n));
    std::vector<int> sigma(n, 0);
    CountQuotient cq;
    cq.n = n;
    cq.k = k;
    cq.x_count.assign(k, 0);
    cq.xx_count.assign(CountQuotient::tri_size(k), 0);
    cq.x_count[0] = n;
    cq.xx_count[0] = 2 * g.edge_count();  // everything starts monochromatic
    auto bump_edge = [&](int a, int b, int32_t delta) {
        if (a > b) std::swap(a, b);
        cq.xx_count[CountQuotient::tri_index(k, a, b)] += (a == b) ? 2 * delta : delta;
    };
    while (true) {
        fn(sigma, cq);
        // odometer step with incremental count maintenance
        int u = 0;
        while (u < n && sigma[u] == k - 1) {
            int old = sigma[u];
            sigma[u] = 0;
            cq.x_count[old] -= 1;
            cq.x_count[0] += 1;
            for (int v : g.neighbors(u)) {
                bump_edge(old, sigma[v], -1);
                bump_edge(0, sigma[v], +1);
            }
            ++u;
        }
        if (u == n) break;
        int old = sigma[u];
        sigma[u] += 1;
        cq.x_count[old] -= 1;
        cq.x_count[sigma[u]] += 1;
        for (int v : g.neighbors(u)) {
            bump_edge(old, sigma[v], -1);
            bump_edge(sigma[u], sigma[v], +1);
        }
    }
}

QuotientDistribution QuotientDistribution::merge(const QuotientDistribution& a,
                                                 const QuotientDistribution& b,
                                                 unsigned long budget) {
    if (a.k != b.k) throw std::invalid_argument("merge: k mismatch");
    if (a.size() * b.size() > budget)
        throw BudgetError("distribution merge exceeds budget");
    int es = a.entry_size();
    std::unordered_map<std::string, Int> acc;
    acc.reserve(a.size() * 2);
    std::vector<int32_t> key(es);
    for (size_t i = 0; i < a.size(); ++i) {
        const int32_t* ca = a.coord(i);
        for (size_t j = 0; j < b.size(); ++j) {
            const int32_t* cb = b.coord(j);
            for (int t = 0; t < es; ++t) key[t] = ca[t] + cb[t];
            acc[pack_key(key)] += a.count(i) * b.count(j);
        }
    }
    std::vector<std::pair<std::vector<int32_t>, Int>> entries;
    entries.reserve(acc.size());
    for (auto& [s, cnt] : acc) entries.emplace_back(unpack_key(s), std::move(cnt));
    return from_entries(a.n + b.n, a.k, std::max(a.degree_bound, b.degree_bound),
                        std::move(entries));
}

QuotientDistribution QuotientDistribution::build(const Graph& g, int k, unsigned long budget) {
    auto comps = g.components();
    if (comps.size() <= 1 || pow_within(k, g.n(), std::min<unsigned long>(budget, 1u << 22))) {
        // direct enumeration
        std::unordered_map<std::string, unsigned long long> acc;
        for_each_coloring(g, k, budget, [&](const std::vector<int>&, const CountQuotient& cq) {
            acc[pack_key(cq.key())] += 1;
        });
        std::vector<std::pair<std::vector<int32_t>, Int>> entries;
        entries.reserve(acc.size());
        for (auto& [s, cnt] : acc)
            entries.emplace_back(unpack_key(s), Int(static_cast<unsigned long>(cnt)));
        return from_entries(g.n(), k, g.degree_bound(), std::move(entries));
    }

    // Disjoint union: convolve per-component distributions. Identical
    // components (same induced structure after relabeling) are grouped and
    // combined by repeated doubling.
    std::map<std::pair<int, std::vector<Graph::Edge>>, int> groups;
    for (const auto& verts : comps) {
        Graph c = induced_component(g, verts);
        groups[{c.n(), c.edges()}] += 1;
    }
    QuotientDistribution result;
    bool first = true;
    for (const auto& [desc, times] : groups) {
        Graph c(desc.first, desc.second, g.degree_bound());
        QuotientDistribution base = build(c, k, budget);
        // binary exponentiation over the merge operation
        QuotientDistribution acc;
        bool acc_set = false;
        QuotientDistribution pw = base;
        int m = times;
        while (m > 0) {
            if (m & 1) {
                acc = acc_set ? merge(acc, pw, budget) : pw;
                acc_set = true;
            }
            m >>= 1;
            if (m > 0) pw = merge(pw, pw, budget);
        }
        result = first ? acc : merge(result, acc, budget);
        first = false;
    }
    return result;
}

}  // namespace ldg
