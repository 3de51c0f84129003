#include "ldg/hom.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "ldg/families.hpp"

namespace ldg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool pow_within(int k, int n, unsigned long budget) {
    return n * std::log(static_cast<double>(k)) <=
           std::log(static_cast<double>(budget)) + 1e-9;
}

// streaming log-sum-exp with compensated accumulation
struct LogSum {
    double max_log = kNegInf;
    double sum = 0;  // sum of exp(l - max_log)
    double comp = 0;

    void add(double l) {
        if (l == kNegInf) return;
        if (l > max_log) {
            double scale = std::exp(max_log - l);
            sum *= scale;
            comp *= scale;
            max_log = l;
        }
        double y = std::exp(l - max_log) - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    bool empty() const { return max_log == kNegInf || sum == 0; }
    double value() const { return max_log + std::log(sum); }
};

struct ColoringWeight {
    // incremental log-weight of the current coloring, with explicit
    // tracking of zero factors so hard-core targets stay exact
    const Graph& g;
    const TargetGraph& h;
    std::vector<int> sigma;
    double log_sum = 0;
    int zero_count = 0;

    ColoringWeight(const Graph& graph, const TargetGraph& target)
        : g(graph), h(target), sigma(graph.n(), 0) {
        for (int u = 0; u < g.n(); ++u) add_vertex_factor(0);
        for (size_t e = 0; e < g.edges().size(); ++e) add_factor(h.A[0][0]);
    }

    void add_factor(double w) {
        if (w == 0) ++zero_count;
        else log_sum += std::log(w);
    }
    void remove_factor(double w) {
        if (w == 0) --zero_count;
        else log_sum -= std::log(w);
    }
    void add_vertex_factor(int c) { add_factor(h.alpha[c]); }

    void recolor(int u, int c) {
        int old = sigma[u];
        if (old == c) return;
        remove_factor(h.alpha[old]);
        add_factor(h.alpha[c]);
        for (int v : g.neighbors(u)) {
            remove_factor(h.A[old][sigma[v]]);
            add_factor(h.A[c][sigma[v]]);
        }
        sigma[u] = c;
    }

    // recompute log_sum from scratch; bounds the drift of the incremental
    // updates when called every k^2 enumeration steps
    void resync() {
        log_sum = 0;
        for (int u = 0; u < g.n(); ++u) {
            double a = h.alpha[sigma[u]];
            if (a != 0) log_sum += std::log(a);
        }
        for (const auto& [u, v] : g.edges()) {
            double w = h.A[sigma[u]][sigma[v]];
            if (w != 0) log_sum += std::log(w);
        }
    }

    double log_weight() const { return zero_count > 0 ? kNegInf : log_sum; }
};

// direct product evaluation; exact for small integer weights
double linear_weight(const Graph& g, const TargetGraph& h, const std::vector<int>& sigma) {
    double w = 1;
    for (int u = 0; u < g.n(); ++u) w *= h.alpha[sigma[u]];
    for (const auto& [u, v] : g.edges()) w *= h.A[sigma[u]][sigma[v]];
    return w;
}

LogPartition brute_hom(const Graph& g, const TargetGraph& h, unsigned long budget) {
    int k = h.k();
    int n = g.n();
    if (!pow_within(k, n, budget)) throw BudgetError("hom brute force exceeds budget");
    bool track_linear = pow_within(k, n, 1UL << 17);
    ColoringWeight cw(g, h);
    LogSum ls;
    double linear = 0;
    double kahan_c = 0;
    while (true) {
        ls.add(cw.log_weight());
        if (track_linear) {
            double y = linear_weight(g, h, cw.sigma) - kahan_c;
            double t = linear + y;
            kahan_c = (t - linear) - y;
            linear = t;
        }
        int u = 0;
        while (u < n && cw.sigma[u] == k - 1) cw.recolor(u++, 0);
        if (u == n) break;
        cw.recolor(u, cw.sigma[u] + 1);
        if (u >= 2) cw.resync();
    }
    LogPartition lp;
    lp.vertex_count = n;
    if (ls.empty()) {
        lp.zero = true;
        lp.log_value = kNegInf;
        if (track_linear) lp.linear = 0.0;
        return lp;
    }
    lp.log_value = ls.value();
    if (track_linear) lp.linear = linear;
    return lp;
}

enum class Topology { Single, Path, Cycle, Other };

Topology classify(const Graph& g) {
    int n = g.n();
    if (n == 1) return Topology::Single;
    if (g.components().size() != 1) return Topology::Other;
    int deg1 = 0, deg2 = 0;
    for (int u = 0; u < n; ++u) {
        int d = g.degree(u);
        if (d == 1) ++deg1;
        else if (d == 2) ++deg2;
        else return Topology::Other;
    }
    if (deg1 == 0 && deg2 == n) return Topology::Cycle;
    if (deg1 == 2 && deg2 == n - 2) return Topology::Path;
    return Topology::Other;
}

// Matrix power with per-step renormalization; returns log of the requested
// contraction (trace for cycles, weighted bilinear form for paths).
LogPartition transfer_hom(const Graph& g, const TargetGraph& h) {
    Topology topo = classify(g);
    int k = h.k();
    int n = g.n();
    LogPartition lp;
    lp.vertex_count = n;

    Eigen::MatrixXd A(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) A(i, j) = h.A[i][j];
    Eigen::VectorXd alpha(k);
    for (int i = 0; i < k; ++i) alpha(i) = h.alpha[i];
    Eigen::MatrixXd m = alpha.asDiagonal() * A;  // (DA)_{ij} = alpha_i A_ij

    double log_scale = 0;
    auto renorm = [&](Eigen::MatrixXd& x) {
        double s = x.cwiseAbs().maxCoeff();
        if (s > 0) {
            x /= s;
            log_scale += std::log(s);
        }
    };

    if (topo == Topology::Single) {
        double s = alpha.sum();
        lp.log_value = std::log(s);
        lp.linear = s;
        return lp;
    }
    if (topo == Topology::Cycle) {
        Eigen::MatrixXd p = Eigen::MatrixXd::Identity(k, k);
        for (int t = 0; t < n; ++t) {
            p = p * m;
            renorm(p);
        }
        double tr = p.trace();
        if (tr <= 0) {
            lp.zero = true;
            lp.log_value = kNegInf;
            return lp;
        }
        lp.log_value = std::log(tr) + log_scale;
        return lp;
    }
    if (topo == Topology::Path) {
        // hom(P_n) = 1^T (D_alpha A)^{n-1} alpha
        Eigen::MatrixXd v = alpha;
        for (int t = 0; t < n - 1; ++t) {
            v = m * v;
            renorm(v);
        }
        double s = v.sum();
        if (s <= 0) {
            lp.zero = true;
            lp.log_value = kNegInf;
            return lp;
        }
        lp.log_value = std::log(s) + log_scale;
        return lp;
    }
    throw std::invalid_argument("hom transfer: graph is not a disjoint union of paths/cycles");
}

Graph induced(const Graph& g, const std::vector<int>& verts) {
    std::vector<int> pos(g.n(), -1);
    for (size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
    std::vector<Graph::Edge> edges;
    for (const auto& [u, v] : g.edges())
        if (pos[u] >= 0 && pos[v] >= 0) edges.emplace_back(pos[u], pos[v]);
    return Graph(static_cast<int>(verts.size()), std::move(edges), g.degree_bound());
}

LogPartition components_hom(const Graph& g, const TargetGraph& h, unsigned long budget) {
    LogPartition lp;
    lp.vertex_count = g.n();
    double total = 0;
    bool zero = false;
    for (const auto& verts : g.components()) {
        Graph c = induced(g, verts);
        Topology topo = classify(c);
        LogPartition part = (topo == Topology::Other) ? brute_hom(c, h, budget) : transfer_hom(c, h);
        if (part.zero) zero = true;
        else total += part.log_value;
    }
    if (zero) {
        lp.zero = true;
        lp.log_value = kNegInf;
        return lp;
    }
    lp.log_value = total;
    return lp;
}

}  // namespace

bool TargetGraph::soft_core() const {
    for (const auto& row : A)
        for (double v : row)
            if (v <= 0) return false;
    return true;
}

double TargetGraph::weight_max() const {
    double m = 1;
    for (double v : alpha) m = std::max(m, v);
    for (const auto& row : A)
        for (double v : row) m = std::max(m, v);
    return m;
}

double TargetGraph::weight_min() const {
    double m = 1;
    for (double v : alpha) m = std::min(m, v);
    for (const auto& row : A)
        for (double v : row) m = std::min(m, v);
    return m;
}

void TargetGraph::validate() const {
    if (alpha.empty()) throw std::invalid_argument("target graph: no nodes");
    if (A.size() != alpha.size()) throw std::invalid_argument("target graph: A size mismatch");
    for (double a : alpha)
        if (!(a > 0)) throw std::invalid_argument("target graph: node weights must be positive");
    for (size_t i = 0; i < A.size(); ++i) {
        if (A[i].size() != alpha.size())
            throw std::invalid_argument("target graph: A row size mismatch");
        for (size_t j = 0; j < A[i].size(); ++j) {
            if (A[i][j] < 0) throw std::invalid_argument("target graph: negative edge weight");
            if (A[i][j] != A[j][i]) throw std::invalid_argument("target graph: A not symmetric");
        }
    }
}

TargetGraph TargetGraph::hard_core_pair() {
    return {{1, 1}, {{0, 1}, {1, 0}}, {}};
}

TargetGraph TargetGraph::ising(double beta) {
    double w = std::exp(beta);
    return {{1, 1}, {{1, w}, {w, 1}}, {}};
}

double LogPartition::free_energy() const {
    if (zero) return std::numeric_limits<double>::infinity();
    return -per_vertex();
}

LogPartition hom_count(const Graph& g, const TargetGraph& h, HomAlgorithm alg,
                       unsigned long budget) {
    h.validate();
    if (g.n() == 0) throw std::invalid_argument("hom_count: empty graph");
    switch (alg) {
        case HomAlgorithm::Brute: return brute_hom(g, h, budget);
        case HomAlgorithm::Transfer: {
            LogPartition lp;
            lp.vertex_count = g.n();
            double total = 0;
            bool zero = false;
            for (const auto& verts : g.components()) {
                LogPartition part = transfer_hom(induced(g, verts), h);
                if (part.zero) zero = true;
                else total += part.log_value;
            }
            lp.zero = zero;
            lp.log_value = zero ? kNegInf : total;
            return lp;
        }
        case HomAlgorithm::Components: return components_hom(g, h, budget);
    }
    throw std::logic_error("hom_count: unknown algorithm");
}

double free_energy(const Graph& g, const TargetGraph& h, unsigned long budget) {
    return hom_count(g, h, HomAlgorithm::Components, budget).free_energy();
}

TargetGraph soften(const TargetGraph& h, double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("soften: lambda must be positive");
    TargetGraph out = h;
    for (auto& row : out.A)
        for (double& v : row) v = std::max(v, lambda);
    return out;
}

LambdaLimitReport lambda_limit(const std::vector<Graph>& graphs, const std::vector<int>& indices,
                               const TargetGraph& h, int j_min, int j_max, unsigned long budget) {
    if (graphs.size() != indices.size())
        throw std::invalid_argument("lambda_limit: index list mismatch");
    LambdaLimitReport rep;
    for (size_t gi = 0; gi < graphs.size(); ++gi) {
        double prev = -std::numeric_limits<double>::infinity();
        for (int j = j_min; j <= j_max; ++j) {
            double lambda = std::ldexp(1.0, -j);
            double f = free_energy(graphs[gi], soften(h, lambda), budget);
            rep.rows.push_back({indices[gi], graphs[gi].n(), lambda, f});
            // hom nondecreasing in lambda, so f nondecreasing as lambda drops
            if (f < prev - 1e-12) rep.monotone_in_lambda = false;
            prev = f;
            rep.finite_estimate = f;
        }
    }
    return rep;
}

LambdaLimitReport lambda_limit(const GraphFamily& family, const std::vector<int>& indices,
                               const TargetGraph& h, int j_min, int j_max, unsigned long budget) {
    std::vector<Graph> graphs;
    graphs.reserve(indices.size());
    for (int index : indices) graphs.push_back(realize(family, index));
    return lambda_limit(graphs, indices, h, j_min, j_max, budget);
}

DeletionWitness deletion_witness(const Graph& g, const TargetGraph& h, double epsilon,
                                 std::optional<double> lambda_override, unsigned long budget) {
    h.validate();
    if (!(epsilon > 0) || epsilon >= 1)
        throw std::invalid_argument("deletion_witness: epsilon must be in (0,1)");
    if (g.edge_count() > 62)
        throw BudgetError("deletion_witness: edge-set enumeration needs <= 62 edges");
    int k = h.k();
    int n = g.n();
    if (!pow_within(k, n, budget)) throw BudgetError("deletion_witness exceeds budget");

    double min_positive = std::numeric_limits<double>::infinity();
    for (const auto& row : h.A)
        for (double v : row)
            if (v > 0) min_positive = std::min(min_positive, v);
    double lambda = lambda_override.value_or(
        std::min({0.01, epsilon / 2, std::isfinite(min_positive) ? min_positive / 2 : 0.01}));

    TargetGraph h_lambda = soften(h, lambda);
    double f_hat = free_energy(g, h_lambda, budget);

    // bucket colorings by E_0(sigma), the set of edges mapped to zero weights
    const auto& edges = g.edges();
    int ecount = static_cast<int>(edges.size());
    std::map<long, LogSum> weight_by_r;
    std::map<uint64_t, LogSum> weight_by_set;
    std::vector<int> sigma(n, 0);
    // plain odometer; weights recomputed per coloring under H_lambda
    while (true) {
        double logw = 0;
        uint64_t mask = 0;
        for (int u = 0; u < n; ++u) logw += std::log(h_lambda.alpha[sigma[u]]);
        for (int e = 0; e < ecount; ++e) {
            const auto& [u, v] = edges[e];
            logw += std::log(h_lambda.A[sigma[u]][sigma[v]]);
            if (h.A[sigma[u]][sigma[v]] == 0) mask |= (uint64_t{1} << e);
        }
        long r = __builtin_popcountll(mask);
        weight_by_r[r].add(logw);
        weight_by_set[mask].add(logw);
        int u = 0;
        while (u < n && sigma[u] == k - 1) sigma[u++] = 0;
        if (u == n) break;
        sigma[u] += 1;
    }

    // dominant bucket size (proof's r_0), smallest r on ties
    long r0 = 0;
    double best_r_weight = kNegInf;
    for (const auto& [r, ls] : weight_by_r) {
        double w = ls.empty() ? kNegInf : ls.value();
        if (w > best_r_weight + 1e-15) {
            best_r_weight = w;
            r0 = r;
        }
    }
    // best edge set of size r0
    uint64_t best_mask = 0;
    double best_set_weight = kNegInf;
    for (const auto& [mask, ls] : weight_by_set) {
        if (__builtin_popcountll(mask) != r0) continue;
        double w = ls.empty() ? kNegInf : ls.value();
        if (w > best_set_weight + 1e-15) {
            best_set_weight = w;
            best_mask = mask;
        }
    }

    DeletionWitness wit;
    wit.epsilon = epsilon;
    wit.lambda = lambda;
    wit.f_hat = f_hat;
    wit.r0 = r0;
    for (int e = 0; e < ecount; ++e)
        if (best_mask & (uint64_t{1} << e)) wit.removed_edges.push_back(edges[e]);

    LogPartition after = hom_count(g.without_edges(wit.removed_edges), h,
                                   HomAlgorithm::Components, budget);
    wit.hom_after_zero = after.zero;
    wit.log_hom_after = after.log_value;
    wit.size_ok = r0 <= static_cast<long>(epsilon * n);
    wit.bound_ok = !after.zero && after.log_value >= -(f_hat + epsilon) * n;
    wit.feasible = wit.size_ok && wit.bound_ok;
    return wit;
}

long maxcut_exact(const Graph& g) {
    int n = g.n();
    if (n > kMaxCutExactLimit) throw BudgetError("maxcut_exact: too many vertices");
    if (n <= 1) return 0;
    // gray-code walk over subsets containing vertex 0 fixed out
    std::vector<int> side(n, 0);
    long cut = 0, best = 0;
    uint64_t total = uint64_t{1} << (n - 1);
    for (uint64_t it = 1; it < total; ++it) {
        int flip = __builtin_ctzll(it) + 1;  // vertex to toggle (never vertex 0)
        side[flip] ^= 1;
        for (int v : g.neighbors(flip)) cut += (side[v] != side[flip]) ? 1 : -1;
        best = std::max(best, cut);
    }
    return best;
}

MaxCutReport maxcut_from_beta(const Graph& g, const std::vector<double>& betas,
                              unsigned long budget) {
    MaxCutReport rep;
    int n = g.n();
    for (double beta : betas) {
        if (!(beta > 0)) throw std::invalid_argument("maxcut_from_beta: beta must be positive");
        LogPartition lp = hom_count(g, TargetGraph::ising(beta), HomAlgorithm::Components, budget);
        double upper = lp.log_value / beta;
        double lower = upper - n * std::log(2.0) / beta;
        rep.rows.push_back({beta, lower, upper});
    }
    if (n <= kMaxCutExactLimit) {
        rep.exact = maxcut_exact(g);
        for (const auto& row : rep.rows) {
            double mc = static_cast<double>(*rep.exact);
            if (mc < row.lower - 1e-9 || mc > row.upper + 1e-9) rep.exact_within_bounds = false;
        }
    }
    return rep;
}

Rat hom_density_from(const Graph& pattern, const Graph& g) {
    if (pattern.n() == 0 || g.n() == 0) throw std::invalid_argument("hom_density: empty graph");
    if (pattern.components().size() != 1)
        throw std::invalid_argument("hom_density: pattern must be connected");
    // BFS order so every new pattern vertex has an already-placed neighbor
    int pn = pattern.n();
    std::vector<int> order{0};
    std::vector<bool> seen(pn, false);
    seen[0] = true;
    for (size_t head = 0; head < order.size(); ++head)
        for (int v : pattern.neighbors(order[head]))
            if (!seen[v]) {
                seen[v] = true;
                order.push_back(v);
            }
    Int total = 0;
    std::vector<int> image(pn, -1);
    auto rec = [&](auto&& self, size_t depth) -> void {
        if (depth == order.size()) {
            total += 1;
            return;
        }
        int pv = order[depth];
        // candidates: neighbors of the image of one placed pattern-neighbor
        int anchor = -1;
        for (int pu : pattern.neighbors(pv))
            if (image[pu] >= 0) {
                anchor = image[pu];
                break;
            }
        auto try_vertex = [&](int gv) {
            for (int pu : pattern.neighbors(pv))
                if (image[pu] >= 0 && !g.has_edge(image[pu], gv)) return;
            image[pv] = gv;
            self(self, depth + 1);
            image[pv] = -1;
        };
        if (anchor < 0) {
            for (int gv = 0; gv < g.n(); ++gv) try_vertex(gv);
        } else {
            for (int gv : g.neighbors(anchor)) try_vertex(gv);
        }
    };
    rec(rec, 0);
    Rat out(total);
    out /= g.n();
    return out;
}

}  // namespace ldg
