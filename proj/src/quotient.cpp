#include "ldg/quotient.hpp"

#include <stdexcept>

namespace ldg {

void Coloring::validate(int n) const {
    if (static_cast<int>(values.size()) != n)
        throw std::invalid_argument("coloring: length mismatch");
    if (k < 1) throw std::invalid_argument("coloring: k < 1");
    for (int c : values)
        if (c < 0 || c >= k) throw std::invalid_argument("coloring: color out of range");
}

Rat Quotient::x_sum() const {
    Rat s = 0;
    for (const auto& v : x) s += v;
    return s;
}

Rat Quotient::X_sum() const {
    Rat s = 0;
    for (const auto& row : X)
        for (const auto& v : row) s += v;
    return s;
}

bool Quotient::operator==(const Quotient& other) const {
    return k == other.k && x == other.x && X == other.X;
}

int CountQuotient::tri_index(int k, int i, int j) {
    // row-major upper triangle, i <= j
    return i * k - i * (i - 1) / 2 + (j - i);
}

int32_t CountQuotient::ordered_count(int i, int j) const {
    return i <= j ? xx_count[tri_index(k, i, j)] : xx_count[tri_index(k, j, i)];
}

Quotient CountQuotient::to_quotient(int degree_bound) const {
    Quotient q;
    q.k = k;
    q.degree_bound = degree_bound;
    q.x.resize(k);
    q.X.assign(k, std::vector<Rat>(k));
    for (int i = 0; i < k; ++i) q.x[i] = rat(x_count[i], n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) q.X[i][j] = rat(ordered_count(i, j), n);
    return q;
}

std::vector<int32_t> CountQuotient::key() const {
    std::vector<int32_t> out = x_count;
    out.insert(out.end(), xx_count.begin(), xx_count.end());
    return out;
}

CountQuotient count_quotient(const Graph& g, const Coloring& sigma) {
    sigma.validate(g.n());
    CountQuotient cq;
    cq.n = g.n();
    cq.k = sigma.k;
    cq.x_count.assign(sigma.k, 0);
    cq.xx_count.assign(CountQuotient::tri_size(sigma.k), 0);
    for (int v : sigma.values) cq.x_count[v] += 1;
    for (const auto& [u, v] : g.edges()) {
        int a = sigma.values[u], b = sigma.values[v];
        if (a > b) std::swap(a, b);
        // diagonal entries hold ordered counts, so an internal edge adds 2
        cq.xx_count[CountQuotient::tri_index(sigma.k, a, b)] += (a == b) ? 2 : 1;
    }
    return cq;
}

Quotient quotient(const Graph& g, const Coloring& sigma) {
    if (g.n() == 0) throw std::invalid_argument("quotient: empty graph");
    return count_quotient(g, sigma).to_quotient(g.degree_bound());
}

Rat linf_distance(const Quotient& a, const Quotient& b) {
    if (a.k != b.k) throw std::invalid_argument("linf_distance: k mismatch");
    Rat best = 0;
    for (int i = 0; i < a.k; ++i) {
        Rat d = abs(a.x[i] - b.x[i]);
        if (d > best) best = d;
    }
    for (int i = 0; i < a.k; ++i)
        for (int j = 0; j < a.k; ++j) {
            Rat d = abs(a.X[i][j] - b.X[i][j]);
            if (d > best) best = d;
        }
    return best;
}

Quotient permute_colors(const Quotient& q, const std::vector<int>& perm) {
    Quotient out;
    out.k = q.k;
    out.degree_bound = q.degree_bound;
    out.x.resize(q.k);
    out.X.assign(q.k, std::vector<Rat>(q.k));
    for (int i = 0; i < q.k; ++i) out.x[perm[i]] = q.x[i];
    for (int i = 0; i < q.k; ++i)
        for (int j = 0; j < q.k; ++j) out.X[perm[i]][perm[j]] = q.X[i][j];
    return out;
}

Quotient merge_color_pairs(const Quotient& q) {
    if (q.k % 2 != 0) throw std::invalid_argument("merge_color_pairs: odd k");
    int k = q.k / 2;
    Quotient out;
    out.k = k;
    out.degree_bound = q.degree_bound;
    out.x.assign(k, Rat(0));
    out.X.assign(k, std::vector<Rat>(k, Rat(0)));
    for (int i = 0; i < q.k; ++i) out.x[i / 2] += q.x[i];
    for (int i = 0; i < q.k; ++i)
        for (int j = 0; j < q.k; ++j) out.X[i / 2][j / 2] += q.X[i][j];
    return out;
}

CountQuotient merge_color_pairs(const CountQuotient& q) {
    if (q.k % 2 != 0) throw std::invalid_argument("merge_color_pairs: odd k");
    CountQuotient out;
    out.n = q.n;
    out.k = q.k / 2;
    out.x_count.assign(out.k, 0);
    out.xx_count.assign(CountQuotient::tri_size(out.k), 0);
    for (int i = 0; i < q.k; ++i) out.x_count[i / 2] += q.x_count[i];
    for (int i = 0; i < q.k; ++i)
        for (int j = i; j < q.k; ++j) {
            int32_t c = q.xx_count[CountQuotient::tri_index(q.k, i, j)];
            int a = i / 2, b = j / 2;
            if (a == b) {
                // off-diagonal fine entries fold into the coarse diagonal as
                // ordered pairs, so they count twice
                out.xx_count[CountQuotient::tri_index(out.k, a, a)] += (i == j) ? c : 2 * c;
            } else {
                out.xx_count[CountQuotient::tri_index(out.k, a, b)] += c;
            }
        }
    return out;
}

}  // namespace ldg
