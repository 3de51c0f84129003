#include "ldg/sanov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldg {

BaseColoringTypes base_coloring_types(const Graph& base, int k, unsigned long type_limit) {
    BaseColoringTypes out;
    out.base = base;
    out.k = k;
    for_each_coloring(base, k, type_limit,
                      [&](const std::vector<int>&, const CountQuotient& cq) {
                          out.types.push_back(cq);
                      });
    return out;
}

RateEstimate sanov_rate_exact(const BaseColoringTypes& types, int copies, const Quotient& center,
                              const Rat& delta) {
    if (copies <= 0) throw std::invalid_argument("sanov_rate_exact: copies must be positive");
    int m = static_cast<int>(types.types.size());
    if (m > 4096) throw BudgetError("sanov_rate_exact: base graph has too many coloring types");
    int base_n = types.base.n();
    int total_n = copies * base_n;
    BallWindow w = BallWindow::closed_ball(total_n, center, delta);
    int es = types.k + CountQuotient::tri_size(types.k);

    std::vector<std::vector<int32_t>> contrib(m);
    for (int t = 0; t < m; ++t) contrib[t] = types.types[t].key();

    Int total_count = 0;
    std::vector<long> z(m, 0);
    std::vector<int32_t> acc(es, 0);
    // depth-first over compositions of `copies` into m type slots; the last
    // slot absorbs the remainder
    auto rec = [&](auto&& self, int t, int remaining) -> void {
        if (t == m - 1) {
            z[t] = remaining;
            bool in_ball = true;
            for (int e = 0; e < es && in_ball; ++e) {
                int32_t v = acc[e] + static_cast<int32_t>(remaining) * contrib[t][e];
                if (v < w.lo[e] || v > w.hi[e]) in_ball = false;
            }
            if (in_ball) total_count += multinomial(z);
            z[t] = 0;
            return;
        }
        for (long take = 0; take <= remaining; ++take) {
            z[t] = take;
            self(self, t + 1, remaining - static_cast<int>(take));
            for (int e = 0; e < es; ++e) acc[e] += contrib[t][e];
        }
        for (int e = 0; e < es; ++e) acc[e] -= (remaining + 1) * contrib[t][e];
        z[t] = 0;
    };
    rec(rec, 0, copies);

    RateEstimate est;
    est.method = RateEstimate::Method::SanovExact;
    est.count = total_count;
    if (total_count == 0) {
        est.infinite = true;
        return est;
    }
    est.log_count = log_int(total_count);
    est.value = std::log(static_cast<double>(types.k)) - est.log_count / total_n;
    return est;
}

namespace {

// Linear ball constraints on z: a_r . z <= b_r for r = 1..R
struct LinearConstraints {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
};

LinearConstraints ball_constraints(const BaseColoringTypes& types, const Quotient& center,
                                   const Rat& delta) {
    int m = static_cast<int>(types.types.size());
    int base_n = types.base.n();
    int es = types.k + CountQuotient::tri_size(types.k);
    std::vector<double> lo(es), hi(es);
    {
        size_t pos = 0;
        auto push = [&](const Rat& c) {
            lo[pos] = to_double(c - delta);
            hi[pos] = to_double(c + delta);
            ++pos;
        };
        for (const auto& c : center.x) push(c);
        for (int i = 0; i < center.k; ++i)
            for (int j = i; j < center.k; ++j) push(center.X[i][j]);
    }
    LinearConstraints lc;
    for (int e = 0; e < es; ++e) {
        std::vector<double> row(m), neg(m);
        for (int t = 0; t < m; ++t) {
            double coef = static_cast<double>(types.types[t].key()[e]) / base_n;
            row[t] = coef;
            neg[t] = -coef;
        }
        lc.a.push_back(row);
        lc.b.push_back(hi[e]);
        lc.a.push_back(neg);
        lc.b.push_back(-lo[e]);
    }
    return lc;
}

double dot(const std::vector<double>& a, const std::vector<double>& z) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * z[i];
    return s;
}

}  // namespace

RateEstimate sanov_rate_asymptotic(const BaseColoringTypes& types, const Quotient& center,
                                   const Rat& delta) {
    int m = static_cast<int>(types.types.size());
    LinearConstraints lc = ball_constraints(types, center, delta);

    RateEstimate est;
    est.method = RateEstimate::Method::SanovAsymptotic;

    // Dual of max H(z) s.t. Az <= b over the simplex:
    //   g(lambda) = log sum_t exp(-(A^T lambda)_t) + b . lambda,  lambda >= 0
    // minimized by projected gradient with backtracking. Constraints are
    // affine, so strong duality holds whenever the primal is feasible; dual
    // values then never drop below the primal optimum H* >= 0, and a
    // negative dual value certifies infeasibility.
    size_t R = lc.a.size();
    std::vector<double> lambda(R, 0.0);
    auto eval = [&](const std::vector<double>& lam, std::vector<double>& z) {
        std::vector<double> expo(m, 0.0);
        for (size_t r = 0; r < R; ++r)
            if (lam[r] != 0)
                for (int t = 0; t < m; ++t) expo[t] -= lam[r] * lc.a[r][t];
        double mx = *std::max_element(expo.begin(), expo.end());
        double s = 0;
        for (int t = 0; t < m; ++t) s += std::exp(expo[t] - mx);
        double lse = mx + std::log(s);
        z.resize(m);
        for (int t = 0; t < m; ++t) z[t] = std::exp(expo[t] - mx) / s;
        double val = lse;
        for (size_t r = 0; r < R; ++r) val += lam[r] * lc.b[r];
        return val;
    };

    std::vector<double> z;
    double g_cur = eval(lambda, z);
    double step = 1.0;
    for (int it = 0; it < 50000 && g_cur > -1e-6; ++it) {
        // gradient: b_r - a_r . z
        std::vector<double> grad(R);
        double gnorm = 0;
        for (size_t r = 0; r < R; ++r) {
            grad[r] = lc.b[r] - dot(lc.a[r], z);
            if (lambda[r] <= 0 && grad[r] > 0) grad[r] = 0;  // projected
            gnorm += grad[r] * grad[r];
        }
        if (gnorm < 1e-24) break;
        bool improved = false;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<double> cand(R);
            for (size_t r = 0; r < R; ++r) cand[r] = std::max(0.0, lambda[r] - step * grad[r]);
            std::vector<double> zc;
            double g_new = eval(cand, zc);
            if (g_new < g_cur - 1e-15) {
                lambda = std::move(cand);
                z = std::move(zc);
                g_cur = g_new;
                improved = true;
                step *= 1.3;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }

    if (g_cur < -1e-6) {
        // dual unbounded below: no z satisfies the ball constraints
        est.infinite = true;
        return est;
    }
    double h_star = std::max(0.0, g_cur);  // dual optimum equals max entropy
    est.value = std::log(static_cast<double>(types.k)) - h_star / types.base.n();
    return est;
}

double multinomial_point_rate(int k, const std::vector<long>& counts) {
    long n = 0;
    for (long c : counts) n += c;
    double h = 0;
    for (long c : counts) {
        if (c > 0) {
            double p = static_cast<double>(c) / n;
            h -= p * std::log(p);
        }
    }
    return std::log(static_cast<double>(k)) - h;
}

}  // namespace ldg
