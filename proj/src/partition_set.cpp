#include "ldg/partition_set.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "ldg/rng.hpp"

namespace ldg {

QuotientSet partition_set(const Graph& g, int k, const PartitionSetMethod& method) {
    if (k < 1) throw std::invalid_argument("partition_set: k < 1");
    if (g.n() == 0) throw std::invalid_argument("partition_set: empty graph");
    QuotientSet out;
    out.k = k;
    out.n = g.n();
    out.degree_bound = g.degree_bound();
    if (method.exact) {
        QuotientDistribution d = QuotientDistribution::build(g, k, method.budget);
        out.points.reserve(d.size());
        for (size_t i = 0; i < d.size(); ++i) out.points.push_back(d.quotient_at(i));
        return out;
    }
    out.exact = false;
    out.sample_budget = method.samples;
    out.seed = method.seed;
    Rng rng = make_rng(method.seed);
    std::set<std::vector<int32_t>> seen;
    Coloring sigma;
    sigma.k = k;
    sigma.values.resize(g.n());
    for (unsigned long s = 0; s < method.samples; ++s) {
        for (auto& c : sigma.values) c = uniform_int(rng, 0, k - 1);
        CountQuotient cq = count_quotient(g, sigma);
        if (seen.insert(cq.key()).second)
            out.points.push_back(cq.to_quotient(g.degree_bound()));
    }
    return out;
}

namespace {

Rat directed_set_distance(const std::vector<Quotient>& from, const std::vector<Quotient>& to) {
    Rat worst = 0;
    for (const auto& a : from) {
        bool have = false;
        Rat best = 0;
        for (const auto& b : to) {
            Rat d = linf_distance(a, b);
            if (!have || d < best) {
                best = d;
                have = true;
            }
            if (best == 0) break;
        }
        if (best > worst) worst = best;
    }
    return worst;
}

}  // namespace

Rat set_distance(const QuotientSet& a, const QuotientSet& b) {
    if (a.k != b.k) throw std::invalid_argument("set_distance: k mismatch");
    if (a.points.empty() || b.points.empty())
        throw std::invalid_argument("set_distance: empty set");
    return std::max(directed_set_distance(a.points, b.points),
                    directed_set_distance(b.points, a.points));
}

Rat point_set_distance(const Quotient& q, const QuotientSet& s) {
    if (s.points.empty()) throw std::invalid_argument("point_set_distance: empty set");
    Rat best = linf_distance(q, s.points.front());
    for (size_t i = 1; i < s.points.size(); ++i) {
        Rat d = linf_distance(q, s.points[i]);
        if (d < best) best = d;
    }
    return best;
}

Coloring achievable_coloring_even_cycles(const Quotient& target, const Graph& g) {
    // Graph must be a disjoint union of cycles of one even length.
    auto comps = g.components();
    if (comps.empty()) throw std::invalid_argument("achievable coloring: empty graph");
    size_t len = comps.front().size();
    if (len < 4 || len % 2 != 0)
        throw std::invalid_argument("achievable coloring: cycles must have even length >= 4");
    for (const auto& c : comps) {
        if (c.size() != len)
            throw std::invalid_argument("achievable coloring: unequal cycle lengths");
        for (int v : c)
            if (g.degree(v) != 2)
                throw std::invalid_argument("achievable coloring: graph is not a cycle union");
    }
    int n_cyc = static_cast<int>(comps.size());
    int k = target.k;

    // Constraint set: sum x = 1, X symmetric nonnegative, row sums = 2x.
    if (target.x_sum() != 1)
        throw std::invalid_argument("achievable coloring: node weights must sum to 1");
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (target.X[i][j] < 0)
                throw std::invalid_argument("achievable coloring: negative edge weight");
            if (target.X[i][j] != target.X[j][i])
                throw std::invalid_argument("achievable coloring: asymmetric target");
        }
    for (int i = 0; i < k; ++i) {
        Rat row = 0;
        for (int j = 0; j < k; ++j) row += target.X[i][j];
        if (row != 2 * target.x[i])
            throw std::invalid_argument("achievable coloring: target violates row-sum constraint");
    }

    // Integer cycle budget per ordered color pair by largest-remainder
    // rounding of (n/2) X_ij; total is exactly n by the row-sum identity.
    struct Cell {
        int i, j;
        long floor_val;
        Rat frac;
    };
    std::vector<Cell> cells;
    long assigned = 0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Rat tgt = target.X[i][j] * n_cyc / 2;
            Int fl;
            mpz_fdiv_q(fl.get_mpz_t(), tgt.get_num().get_mpz_t(), tgt.get_den().get_mpz_t());
            long f = fl.get_si();
            cells.push_back({i, j, f, tgt - Rat(f)});
            assigned += f;
        }
    long leftover = n_cyc - assigned;
    if (leftover < 0 || leftover > static_cast<long>(cells.size()))
        throw std::invalid_argument("achievable coloring: target off the constraint set");
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.frac != b.frac) return a.frac > b.frac;
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
    for (long t = 0; t < leftover; ++t) cells[t].floor_val += 1;

    Coloring sigma;
    sigma.k = k;
    sigma.values.assign(g.n(), 0);
    size_t next_cycle = 0;
    auto paint = [&](int ci, int cj) {
        const auto& verts = comps[next_cycle++];
        // walk the cycle so that alternation follows adjacency
        std::vector<int> order;
        order.push_back(verts[0]);
        int prev = -1, cur = verts[0];
        while (order.size() < verts.size()) {
            for (int nb : g.neighbors(cur))
                if (nb != prev) {
                    prev = cur;
                    cur = nb;
                    break;
                }
            order.push_back(cur);
        }
        for (size_t t = 0; t < order.size(); ++t)
            sigma.values[order[t]] = (t % 2 == 0) ? ci : cj;
    };
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
    for (const auto& c : cells)
        for (long t = 0; t < c.floor_val; ++t) paint(c.i, c.j);
    if (next_cycle != comps.size())
        throw std::logic_error("achievable coloring: cycle budget mismatch");
    return sigma;
}

}  // namespace ldg
