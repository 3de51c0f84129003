#include "ldg/prokhorov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace ldg {

namespace {

// Dinic max-flow on a small bipartite graph with integer capacities.
class MaxFlow {
public:
    explicit MaxFlow(int nodes) : head_(nodes, -1), level_(nodes), it_(nodes) {}

    void add_edge(int from, int to, long long cap) {
        edges_.push_back({to, head_[from], cap});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], 0});
        head_[to] = static_cast<int>(edges_.size()) - 1;
    }

    long long run(int s, int t) {
        long long flow = 0;
        while (bfs(s, t)) {
            it_ = head_;
            while (long long f = dfs(s, t, std::numeric_limits<long long>::max())) flow += f;
        }
        return flow;
    }

private:
    struct Edge {
        int to, next;
        long long cap;
    };
    std::vector<Edge> edges_;
    std::vector<int> head_, level_, it_;

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        q.push(s);
        level_[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e = head_[u]; e >= 0; e = edges_[e].next)
                if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[u] + 1;
                    q.push(edges_[e].to);
                }
        }
        return level_[t] >= 0;
    }

    long long dfs(int u, int t, long long limit) {
        if (u == t || limit == 0) return limit;
        for (int& e = it_[u]; e >= 0; e = edges_[e].next) {
            int v = edges_[e].to;
            if (edges_[e].cap > 0 && level_[v] == level_[u] + 1) {
                long long f = dfs(v, t, std::min(limit, edges_[e].cap));
                if (f > 0) {
                    edges_[e].cap -= f;
                    edges_[e ^ 1].cap += f;
                    return f;
                }
            }
        }
        return 0;
    }
};

Int rat_total_scaled(const std::vector<detail::MassPiece>& ps, const Int& scale) {
    Int t = 0;
    for (const auto& p : ps) {
        Rat v = p.mass * Rat(scale);
        if (v.get_den() != 1) throw std::logic_error("prokhorov: scale does not clear mass");
        t += v.get_num();
    }
    return t;
}

Int common_scale(const std::vector<detail::MassPiece>& a, const std::vector<detail::MassPiece>& b) {
    Int scale = 1;
    for (const auto* side : {&a, &b})
        for (const auto& p : *side)
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p.mass.get_den().get_mpz_t());
    return scale;
}

}  // namespace

namespace detail {

double piece_max_dist(const MassPiece& a, const MassPiece& b) {
    double worst = 0;
    for (int d = 0; d < a.dims; ++d) {
        double m = std::max(std::fabs(a.lo[d] - b.hi[d]), std::fabs(a.hi[d] - b.lo[d]));
        worst = std::max(worst, m);
    }
    return worst;
}

double certified_tau(const std::vector<MassPiece>& a, const std::vector<MassPiece>& b,
                     const std::vector<Rat>& candidates) {
    if (a.empty() && b.empty()) return 0.0;
    Int scale = common_scale(a, b);
    if (!scale.fits_slong_p() || scale.get_si() > (1L << 40))
        return std::numeric_limits<double>::infinity();
    Int tot_a = rat_total_scaled(a, scale);
    Int tot_b = rat_total_scaled(b, scale);
    Int max_tot = std::max(tot_a, tot_b);

    int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    std::vector<std::vector<double>> dist(na, std::vector<double>(nb));
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) dist[i][j] = piece_max_dist(a[i], b[j]);

    bool have = false;
    Rat best;
    for (const Rat& cand : candidates) {
        double tau = to_double(cand);
        MaxFlow mf(na + nb + 2);
        int src = na + nb, snk = na + nb + 1;
        for (int i = 0; i < na; ++i) {
            Rat v = a[i].mass * Rat(scale);
            mf.add_edge(src, i, v.get_num().get_si());
        }
        for (int j = 0; j < nb; ++j) {
            Rat v = b[j].mass * Rat(scale);
            mf.add_edge(na + j, snk, v.get_num().get_si());
        }
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j)
                if (dist[i][j] <= tau) mf.add_edge(i, na + j, std::numeric_limits<long long>::max() / 4);
        long long flow = mf.run(src, snk);
        // matched >= max_tot - tau' certifies tau'; the edge set built at
        // tau stays valid for any tau' >= tau, so this bucket certifies
        // max(tau, (max_tot - flow)/scale).
        Rat unmatched = Rat(max_tot - Int(static_cast<long>(flow))) / Rat(scale);
        Rat cert = std::max(cand, unmatched);
        if (!have || cert < best) {
            best = cert;
            have = true;
        }
    }
    return have ? to_double(best) : std::numeric_limits<double>::infinity();
}

}  // namespace detail

namespace {

std::vector<detail::MassPiece> step_pieces(const StepMeasurePair& s, bool two_dim, int subdiv) {
    std::vector<detail::MassPiece> out;
    int k = s.k;
    double w = 1.0 / (k * subdiv);
    if (!two_dim) {
        for (int i = 0; i < k; ++i) {
            if (s.rho_cells[i] == 0) continue;
            Rat piece_mass = s.rho_cells[i] / subdiv;
            for (int t = 0; t < subdiv; ++t) {
                detail::MassPiece p;
                p.dims = 1;
                p.lo[0] = static_cast<double>(i) / k + t * w;
                p.hi[0] = p.lo[0] + w;
                p.lo[1] = p.hi[1] = 0;
                p.mass = piece_mass;
                out.push_back(p);
            }
        }
    } else {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                if (s.mu_cells[i][j] == 0) continue;
                Rat piece_mass = s.mu_cells[i][j] / (subdiv * subdiv);
                for (int ti = 0; ti < subdiv; ++ti)
                    for (int tj = 0; tj < subdiv; ++tj) {
                        detail::MassPiece p;
                        p.dims = 2;
                        p.lo[0] = static_cast<double>(i) / k + ti * w;
                        p.hi[0] = p.lo[0] + w;
                        p.lo[1] = static_cast<double>(j) / k + tj * w;
                        p.hi[1] = p.lo[1] + w;
                        p.mass = piece_mass;
                        out.push_back(p);
                    }
            }
    }
    return out;
}

std::vector<Rat> grid_candidates(int m) {
    std::vector<Rat> out;
    for (int t = 0; t <= m; ++t) out.push_back(rat(t, m));
    return out;
}

}  // namespace

ProkhorovBounds prokhorov_bounds(const StepMeasurePair& a, const StepMeasurePair& b) {
    if (a.k != b.k) throw std::invalid_argument("prokhorov_bounds: resolution mismatch");
    int k = a.k;
    int dbound = std::max(1, std::max(a.degree_bound, b.degree_bound));
    double dv = to_double(d_var(a, b));
    ProkhorovBounds out;
    out.lower = dv / (4.0 * k * dbound + 1.0);
    out.upper = dv;
    if (k <= kTauSearchLimit) {
        const int sub1 = 4, sub2 = 2;
        double t1 = detail::certified_tau(step_pieces(a, false, sub1), step_pieces(b, false, sub1),
                                          grid_candidates(k * sub1));
        double t2 = detail::certified_tau(step_pieces(a, true, sub2), step_pieces(b, true, sub2),
                                          grid_candidates(k * sub2));
        out.upper = std::min(out.upper, std::max(t1, t2));
        out.refined = true;
    }
    // d <= d_var can exceed the trivial diameter bound only through the
    // total-mass gap, which the transport bound already accounts for.
    return out;
}

double prokhorov_upper_atoms_vs_step(const MeasurePair& m, const StepMeasurePair& s) {
    std::vector<detail::MassPiece> a1, a2;
    Rat mass = m.atom_mass();
    for (double v : m.rho_atoms) {
        detail::MassPiece p;
        p.dims = 1;
        p.lo[0] = p.hi[0] = v;
        p.lo[1] = p.hi[1] = 0;
        p.mass = mass;
        a1.push_back(p);
    }
    for (const auto& [x, y] : m.mu_atoms) {
        detail::MassPiece p;
        p.dims = 2;
        p.lo[0] = p.hi[0] = x;
        p.lo[1] = p.hi[1] = y;
        p.mass = mass;
        a2.push_back(p);
    }
    auto cands = grid_candidates(s.k);
    double t1 = detail::certified_tau(a1, step_pieces(s, false, 1), cands);
    double t2 = detail::certified_tau(a2, step_pieces(s, true, 1), cands);
    return std::max(t1, t2);
}

}  // namespace ldg
