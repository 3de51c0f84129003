#include "ldg/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "ldg/rng.hpp"

namespace ldg {

namespace {

double rate_from_count(const Int& count, int k, int n) {
    return std::log(static_cast<double>(k)) - log_int(count) / n;
}

}  // namespace

RateEstimate rate_exact(const Graph& g, const RateQuery& q, unsigned long budget) {
    if (q.delta < 0) throw std::invalid_argument("rate_exact: negative delta");
    QuotientDistribution d = QuotientDistribution::build(g, q.k, budget);
    RateEstimate est;
    est.method = RateEstimate::Method::Exact;
    est.count = d.ball_count(q.center, q.delta);
    if (est.count == 0) {
        est.infinite = true;
        return est;
    }
    est.log_count = log_int(est.count);
    est.value = rate_from_count(est.count, q.k, g.n());
    return est;
}

std::vector<int32_t> bucket_cell_of(const CountQuotient& cq, const Rat& delta) {
    // value c/n lands in cell (m*delta, (m+1)*delta]; c == 0 lands in cell 0.
    // index = ceil((c/n)/delta) - 1 computed in exact integer arithmetic.
    std::vector<int32_t> cell;
    cell.reserve(cq.x_count.size() + cq.xx_count.size());
    Int scaled_num = delta.get_num() * cq.n;
    const Int& den = delta.get_den();
    auto idx = [&](int32_t c) -> int32_t {
        if (c == 0) return 0;
        Int t = Int(c) * den;
        Int q_;
        mpz_cdiv_q(q_.get_mpz_t(), t.get_mpz_t(), scaled_num.get_mpz_t());
        return static_cast<int32_t>(q_.get_si()) - 1;
    };
    for (int32_t c : cq.x_count) cell.push_back(idx(c));
    for (int32_t c : cq.xx_count) cell.push_back(idx(c));
    return cell;
}

Int BucketHistogram::total() const {
    Int t = 0;
    for (const auto& [cell, cnt] : cells) t += cnt;
    return t;
}

Quotient BucketHistogram::cell_lower_corner(const std::vector<int32_t>& cell) const {
    Quotient q;
    q.k = k;
    q.degree_bound = degree_bound;
    q.x.resize(k);
    q.X.assign(k, std::vector<Rat>(k));
    size_t pos = 0;
    for (int i = 0; i < k; ++i) q.x[i] = Rat(cell[pos++]) * delta;
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            Rat v = Rat(cell[pos++]) * delta;
            q.X[i][j] = v;
            q.X[j][i] = v;
        }
    return q;
}

Quotient BucketHistogram::cell_representative(const std::vector<int32_t>& cell) const {
    Quotient q = cell_lower_corner(cell);
    Rat residual = 1 - q.x_sum();
    if (residual > 0) {
        Rat shift = residual / k;
        for (auto& v : q.x) v += shift;
    }
    return q;
}

std::vector<size_t> BucketHistogram::cells_touching_ball(const Quotient& center,
                                                         const Rat& radius) const {
    // closure of cell m is [m d, (m+1) d]; intersects [c - r, c + r] iff
    // m d <= c + r and (m+1) d >= c - r per coordinate.
    std::vector<Rat> lo, hi;
    auto push = [&](const Rat& c) {
        lo.push_back(c - radius);
        hi.push_back(c + radius);
    };
    for (const auto& c : center.x) push(c);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) push(center.X[i][j]);
    std::vector<size_t> out;
    for (size_t e = 0; e < cells.size(); ++e) {
        const auto& cell = cells[e].first;
        bool ok = true;
        for (size_t t = 0; ok && t < cell.size(); ++t) {
            Rat cell_lo = Rat(cell[t]) * delta;
            Rat cell_hi = Rat(cell[t] + 1) * delta;
            if (cell_lo > hi[t] || cell_hi < lo[t]) ok = false;
        }
        if (ok) out.push_back(e);
    }
    return out;
}

BucketHistogram fold_to_buckets(const QuotientDistribution& d, const Rat& delta) {
    if (delta <= 0) throw std::invalid_argument("bucket_histogram: pitch must be positive");
    BucketHistogram h;
    h.n = d.n;
    h.k = d.k;
    h.degree_bound = d.degree_bound;
    h.delta = delta;
    // per-coordinate lookup: every coordinate is a count over the same n
    int32_t max_c = 0;
    int es = d.entry_size();
    for (size_t i = 0; i < d.size(); ++i)
        for (int t = 0; t < es; ++t) max_c = std::max(max_c, d.coord(i)[t]);
    std::vector<int32_t> lut(max_c + 1, 0);
    {
        CountQuotient probe;
        probe.n = d.n;
        probe.k = 1;
        probe.xx_count = {};
        for (int32_t c = 0; c <= max_c; ++c) {
            probe.x_count = {c};
            lut[c] = bucket_cell_of(probe, delta)[0];
        }
    }
    std::map<std::vector<int32_t>, Int> acc;
    std::vector<int32_t> cell(es);
    for (size_t i = 0; i < d.size(); ++i) {
        const int32_t* c = d.coord(i);
        for (int t = 0; t < es; ++t) cell[t] = lut[c[t]];
        acc[cell] += d.count(i);
    }
    h.cells.assign(acc.begin(), acc.end());
    return h;
}

BucketHistogram bucket_histogram(const Graph& g, int k, const Rat& delta, unsigned long budget) {
    return fold_to_buckets(QuotientDistribution::build(g, k, budget), delta);
}

RateEstimate rate_iid(const Graph& g, const RateQuery& q, const IidOptions& opt) {
    RateEstimate est;
    est.method = RateEstimate::Method::Iid;
    est.samples = opt.samples;
    est.seed = opt.seed;
    BallWindow w = BallWindow::closed_ball(g.n(), q.center, q.delta);
    Rng rng = make_rng(opt.seed);
    Coloring sigma;
    sigma.k = q.k;
    sigma.values.resize(g.n());
    uint64_t hits = 0;
    for (uint64_t s = 0; s < opt.samples; ++s) {
        for (auto& c : sigma.values) c = uniform_int(rng, 0, q.k - 1);
        if (w.contains(count_quotient(g, sigma))) ++hits;
    }
    int n = g.n();
    double nn = static_cast<double>(opt.samples);
    double z = opt.z, z2 = z * z;
    double p_hat = static_cast<double>(hits) / nn;
    double denom = 1.0 + z2 / nn;
    double center = (p_hat + z2 / (2 * nn)) / denom;
    double half = z / denom * std::sqrt(p_hat * (1 - p_hat) / nn + z2 / (4 * nn * nn));
    double p_lo = std::max(0.0, center - half);
    double p_hi = std::min(1.0, center + half);
    // rate = -(1/n) log p is decreasing in p, so the interval flips
    est.ci_low = p_hi > 0 ? -std::log(p_hi) / n : std::numeric_limits<double>::infinity();
    est.ci_high = p_lo > 0 ? -std::log(p_lo) / n : std::numeric_limits<double>::infinity();
    if (hits == 0) {
        est.censored = true;
        est.value = est.ci_low;  // lower confidence bound on the rate
        return est;
    }
    est.value = -std::log(p_hat) / n;
    return est;
}

FlatHistogramResult flat_histogram(const Graph& g, int k, const FlatHistogramOptions& opt) {
    FlatHistogramResult res;
    res.pitch = opt.pitch;
    res.n = g.n();
    res.k = k;
    res.seed = opt.seed;
    Rng rng = make_rng(opt.seed);

    Coloring sigma;
    sigma.k = k;
    sigma.values.assign(g.n(), 0);
    CountQuotient cq = count_quotient(g, sigma);

    std::map<std::vector<int32_t>, double> log_dos;
    std::map<std::vector<int32_t>, uint64_t> hist;
    std::vector<int32_t> cur = bucket_cell_of(cq, opt.pitch);
    log_dos[cur] = 0.0;
    double log_f = 1.0;
    int stage = 0;
    uint64_t sweeps = 0;
    int n = g.n();

    auto apply_move = [&](int u, int newc) {
        int old = sigma.values[u];
        cq.x_count[old] -= 1;
        cq.x_count[newc] += 1;
        for (int v : g.neighbors(u)) {
            int cv = sigma.values[v];
            int a = std::min(old, cv), b = std::max(old, cv);
            cq.xx_count[CountQuotient::tri_index(k, a, b)] -= (a == b) ? 2 : 1;
            a = std::min(newc, cv);
            b = std::max(newc, cv);
            cq.xx_count[CountQuotient::tri_index(k, a, b)] += (a == b) ? 2 : 1;
        }
        sigma.values[u] = newc;
    };

    while (stage < opt.stages && sweeps < opt.max_sweeps) {
        for (uint64_t s = 0; s < opt.sweeps_per_check && sweeps < opt.max_sweeps; ++s, ++sweeps) {
            for (int step = 0; step < n; ++step) {
                int u = uniform_int(rng, 0, n - 1);
                int newc = uniform_int(rng, 0, k - 1);
                int old = sigma.values[u];
                if (newc != old) {
                    apply_move(u, newc);
                    std::vector<int32_t> cand = bucket_cell_of(cq, opt.pitch);
                    double g_old = log_dos[cur];
                    auto it = log_dos.find(cand);
                    double g_new = it == log_dos.end() ? 0.0 : it->second;
                    if (g_new <= g_old || uniform01(rng) < std::exp(g_old - g_new)) {
                        cur = std::move(cand);
                    } else {
                        apply_move(u, old);
                    }
                }
                log_dos[cur] += log_f;
                hist[cur] += 1;
            }
        }
        uint64_t mn = UINT64_MAX, total = 0;
        for (const auto& [cell, h] : hist) {
            mn = std::min(mn, h);
            total += h;
        }
        double mean = static_cast<double>(total) / hist.size();
        if (static_cast<double>(mn) >= opt.flatness * mean) {
            ++stage;
            log_f /= 2;
            for (auto& [cell, h] : hist) h = 0;
        }
    }
    res.stages_completed = stage;
    res.flat = stage >= opt.stages;
    res.total_sweeps = sweeps;

    double mx = -std::numeric_limits<double>::infinity();
    for (const auto& [cell, v] : log_dos) mx = std::max(mx, v);
    double lse = 0;
    for (const auto& [cell, v] : log_dos) lse += std::exp(v - mx);
    lse = mx + std::log(lse);
    res.log_prob.reserve(log_dos.size());
    for (const auto& [cell, v] : log_dos) res.log_prob.emplace_back(cell, v - lse);
    return res;
}

RateEstimate rate_flat_histogram(const FlatHistogramResult& fh, const RateQuery& q) {
    RateEstimate est;
    est.method = RateEstimate::Method::FlatHistogram;
    est.seed = fh.seed;
    est.flat = fh.flat;
    est.stages_completed = fh.stages_completed;
    // aggregate cells whose closure intersects the closed ball
    std::vector<Rat> lo, hi;
    auto push = [&](const Rat& c) {
        lo.push_back(c - q.delta);
        hi.push_back(c + q.delta);
    };
    for (const auto& c : q.center.x) push(c);
    for (int i = 0; i < q.k; ++i)
        for (int j = i; j < q.k; ++j) push(q.center.X[i][j]);
    double acc = -std::numeric_limits<double>::infinity();
    for (const auto& [cell, lp] : fh.log_prob) {
        bool ok = true;
        for (size_t t = 0; ok && t < cell.size(); ++t) {
            Rat cell_lo = Rat(cell[t]) * fh.pitch;
            Rat cell_hi = Rat(cell[t] + 1) * fh.pitch;
            if (cell_lo > hi[t] || cell_hi < lo[t]) ok = false;
        }
        if (!ok) continue;
        double m = std::max(acc, lp);
        acc = m + std::log(std::exp(acc - m) + std::exp(lp - m));
    }
    if (std::isinf(acc) && acc < 0) {
        est.infinite = true;
        return est;
    }
    est.value = -acc / fh.n;
    return est;
}

RefinementReport refinement_diagnostic(const Graph& g, const std::vector<Quotient>& centers_2k,
                                       const Rat& delta, unsigned long budget) {
    RefinementReport rep;
    rep.delta = delta;
    if (centers_2k.empty()) throw std::invalid_argument("refinement_diagnostic: no centers");
    int k2 = centers_2k.front().k;
    if (k2 % 2 != 0) throw std::invalid_argument("refinement_diagnostic: resolution must be even");
    int k = k2 / 2;
    rep.k = k;
    QuotientDistribution fine = QuotientDistribution::build(g, k2, budget);
    QuotientDistribution coarse = QuotientDistribution::build(g, k, budget);
    Int two_pow_n = int_pow(2, g.n());
    rep.all_hold = true;
    for (const auto& c : centers_2k) {
        RefinementReport::Entry e;
        e.center = c;
        e.merged_center = merge_color_pairs(c);
        e.count_fine = fine.ball_count(c, delta);
        e.count_coarse = coarse.ball_count(e.merged_center, 4 * delta);
        e.fine_infinite = e.count_fine == 0;
        e.coarse_infinite = e.count_coarse == 0;
        if (!e.fine_infinite) e.rate_fine = rate_from_count(e.count_fine, k2, g.n());
        if (!e.coarse_infinite) e.rate_coarse = rate_from_count(e.count_coarse, k, g.n());
        // rate_k <= rate_2k  <=>  count_k * 2^n >= count_2k (exact integers)
        e.holds = e.count_coarse * two_pow_n >= e.count_fine;
        rep.all_hold = rep.all_hold && e.holds;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

BallInfimaReport refinement_ball_infima(const Graph& g, const RealColoring& center, int levels,
                                        unsigned long budget) {
    BallInfimaReport rep;
    MeasurePair m = build_measures(g, center);
    for (int l = 1; l <= levels; ++l) {
        int k = 1 << l;
        BallInfimaReport::Level lev;
        lev.k = k;
        lev.radius = rat(2, k);
        try {
            Quotient c = step_to_quotient(project_tk(m, k));
            QuotientDistribution dist = QuotientDistribution::build(g, k, budget);
            BallWindow w = BallWindow::closed_ball(g.n(), c, lev.radius);
            int es = dist.entry_size();
            bool found = false;
            double best = 0;
            for (size_t i = 0; i < dist.size(); ++i) {
                if (!w.contains(dist.coord(i), es)) continue;
                double r = std::log(static_cast<double>(k)) - log_int(dist.count(i)) / g.n();
                if (!found || r < best) best = r;
                found = true;
            }
            lev.empty = !found;
            lev.infimum = best;
        } catch (const BudgetError&) {
            break;  // deeper levels are out of enumeration reach
        }
        rep.levels.push_back(lev);
    }
    return rep;
}

PerturbationReport perturbation_stability(const Graph& g, const Graph& g_tilde, int k,
                                          const std::vector<Quotient>& centers, const Rat& delta,
                                          unsigned long budget) {
    if (g.n() != g_tilde.n())
        throw std::invalid_argument("perturbation_stability: vertex count mismatch");
    PerturbationReport rep;
    rep.edit_distance = 0;
    {
        const auto& a = g.edges();
        const auto& b = g_tilde.edges();
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] == b[j]) {
                ++i, ++j;
            } else if (a[i] < b[j]) {
                ++rep.edit_distance, ++i;
            } else {
                ++rep.edit_distance, ++j;
            }
        }
        rep.edit_distance += static_cast<long>(a.size() - i) + static_cast<long>(b.size() - j);
    }
    rep.shift_bound = rat(2 * rep.edit_distance, g.n());
    rep.shift_within_half_delta = rep.shift_bound <= delta / 2;
    QuotientDistribution dg = QuotientDistribution::build(g, k, budget);
    QuotientDistribution dt = QuotientDistribution::build(g_tilde, k, budget);
    rep.all_hold = true;
    for (const auto& c : centers) {
        PerturbationReport::Entry e;
        e.center = c;
        e.count_g_outer = dg.ball_count(c, delta);
        e.count_tilde_inner = dt.ball_count(c, delta / 2);
        e.count_tilde_outer = dt.ball_count(c, delta);
        e.count_g_inner = dg.ball_count(c, delta / 2);
        e.forward_holds = e.count_tilde_inner <= e.count_g_outer;
        e.backward_holds = e.count_g_inner <= e.count_tilde_outer;
        rep.all_hold = rep.all_hold && e.forward_holds && e.backward_holds;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

}  // namespace ldg
