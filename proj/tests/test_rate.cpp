#include <doctest.h>

#include <cmath>

#include "ldg/families.hpp"
#include "ldg/rate.hpp"
#include "ldg/rng.hpp"
#include "ldg/sanov.hpp"

using namespace ldg;

namespace {

Quotient isolated_center(int n, int k, const std::vector<long>& counts) {
    Quotient q;
    q.k = k;
    q.degree_bound = 0;
    q.x.resize(k);
    for (int i = 0; i < k; ++i) q.x[i] = rat(counts[i], n);
    q.X.assign(k, std::vector<Rat>(k, Rat(0)));
    return q;
}

Quotient proper_k2_center(int copies) {
    // quotient of the alternating coloring of `copies` disjoint K2s
    Graph g = realize(GraphFamily::disjoint_copies(Graph::single_edge(), copies), 1);
    Coloring sigma;
    sigma.k = 2;
    sigma.values.resize(g.n());
    for (int u = 0; u < g.n(); ++u) sigma.values[u] = u % 2;
    return quotient(g, sigma);
}

}  // namespace

TEST_CASE("exact rate on isolated vertices") {
    Graph g = Graph::empty(10);

    SUBCASE("monochromatic center") {
        RateQuery q{2, isolated_center(10, 2, {10, 0}), rat(1, 100)};
        RateEstimate est = rate_exact(g, q);
        CHECK(est.count == 1);
        CHECK(est.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    }
    SUBCASE("balanced center counts the central binomial") {
        RateQuery q{2, isolated_center(10, 2, {5, 5}), rat(1, 100)};
        RateEstimate est = rate_exact(g, q);
        CHECK(est.count == 252);
        CHECK(est.value == doctest::Approx(std::log(2.0) - std::log(252.0) / 10).epsilon(1e-12));
    }
    SUBCASE("unachievable center is infinite") {
        Quotient c = isolated_center(10, 2, {5, 5});
        c.X[0][1] = c.X[1][0] = rat(3);  // above any achievable edge density
        RateQuery q{2, c, rat(1, 100)};
        CHECK(rate_exact(g, q).infinite);
    }
    SUBCASE("whole-space ball has rate zero") {
        RateQuery q{2, isolated_center(10, 2, {5, 5}), rat(10)};
        RateEstimate est = rate_exact(g, q);
        CHECK(est.value == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("rate is monotone in delta") {
    Graph g = Graph::cycle(6);
    Coloring sigma;
    sigma.k = 2;
    sigma.values = {0, 1, 0, 1, 0, 1};
    Quotient center = quotient(g, sigma);
    double prev = std::numeric_limits<double>::infinity();
    for (int denom : {64, 16, 8, 4, 2, 1}) {
        RateQuery q{2, center, rat(1, denom)};
        RateEstimate est = rate_exact(g, q);
        REQUIRE(!est.infinite);
        CHECK(est.value <= prev + 1e-12);
        prev = est.value;
    }
}

TEST_CASE("bucket histogram of K2") {
    BucketHistogram h = bucket_histogram(Graph::single_edge(), 2, rat(1, 4));
    CHECK(h.cells.size() == 3);
    CHECK(h.total() == 4);
    std::vector<long> counts;
    for (const auto& [cell, c] : h.cells) counts.push_back(c.get_si());
    std::sort(counts.begin(), counts.end());
    CHECK(counts == std::vector<long>{1, 1, 2});
}

TEST_CASE("bucket histogram of a single vertex") {
    BucketHistogram h = bucket_histogram(Graph::empty(1), 3, rat(1, 4));
    CHECK(h.cells.size() == 3);
    for (const auto& [cell, c] : h.cells) CHECK(c == 1);
}

TEST_CASE("bucket counts on isolated vertices are multinomials") {
    int n = 9, k = 3;
    BucketHistogram h = bucket_histogram(Graph::empty(n), k, rat(1, n));
    CHECK(h.total() == int_pow(k, n));
    // cells are in bijection with compositions; pick one and check its count
    for (const auto& [cell, count] : h.cells) {
        // reconstruct composition from the cell (pitch 1/n makes this exact)
        std::vector<long> comp(k);
        long sum = 0;
        for (int i = 0; i < k; ++i) {
            comp[i] = cell[i] == 0 ? 0 : cell[i] + 1;
            sum += comp[i];
        }
        if (sum != n) continue;  // cells with a zero coordinate alias compositions
        CHECK(count == multinomial(comp));
    }
}

TEST_CASE("ties go to the lower bucket") {
    // value exactly 1/2 with pitch 1/2 must land in cell 0
    CountQuotient cq;
    cq.n = 2;
    cq.k = 2;
    cq.x_count = {1, 1};
    cq.xx_count = {0, 0, 0};
    auto cell = bucket_cell_of(cq, rat(1, 2));
    CHECK(cell[0] == 0);
    CHECK(cell[1] == 0);
}

TEST_CASE("iid sampling brackets the exact rate") {
    Graph g = Graph::empty(10);
    RateQuery q{2, isolated_center(10, 2, {5, 5}), rat(1, 100)};
    double exact = rate_exact(g, q).value;
    IidOptions opt;
    opt.samples = 40000;
    opt.seed = 4242;
    RateEstimate est = rate_iid(g, q, opt);
    REQUIRE(!est.censored);
    CHECK(est.ci_low <= exact);
    CHECK(est.ci_high >= exact);
    CHECK(est.value == doctest::Approx(exact).epsilon(0.05));
}

TEST_CASE("iid censoring on unreachable balls") {
    Graph g = Graph::empty(10);
    Quotient c = isolated_center(10, 2, {5, 5});
    c.X[0][1] = c.X[1][0] = rat(3);
    RateQuery q{2, c, rat(1, 100)};
    IidOptions opt;
    opt.samples = 200;
    opt.seed = 7;
    RateEstimate est = rate_iid(g, q, opt);
    CHECK(est.censored);
    CHECK(est.value > 0);
}

TEST_CASE("flat histogram recovers binomial bucket weights") {
    int n = 40;
    Graph g = Graph::empty(n);
    FlatHistogramOptions opt;
    opt.pitch = rat(1, n);
    opt.stages = 18;
    opt.seed = 99;
    opt.max_sweeps = 400000;
    FlatHistogramResult fh = flat_histogram(g, 2, opt);
    CHECK(fh.stages_completed >= 12);

    // rare bucket around x1 = 0.9
    RateQuery q{2, isolated_center(n, 2, {36, 4}), rat(1, 2 * n)};
    RateEstimate est = rate_flat_histogram(fh, q);
    REQUIRE(!est.infinite);
    // exact aggregated value over the same cells
    QuotientDistribution d = QuotientDistribution::build(g, 2);
    BucketHistogram bh = fold_to_buckets(d, opt.pitch);
    Int agg = 0;
    for (size_t idx : bh.cells_touching_ball(q.center, q.delta)) agg += bh.cells[idx].second;
    REQUIRE(agg > 0);
    double exact = std::log(2.0) - log_int(agg) / n;
    CHECK(std::fabs(est.value - exact) <= 0.05 * std::fabs(exact));
}

TEST_CASE("sanov exact equals direct enumeration on K2 unions") {
    Graph k2 = Graph::single_edge();
    BaseColoringTypes types = base_coloring_types(k2, 2);
    CHECK(types.types.size() == 4);
    int copies = 8;
    Graph g = realize(GraphFamily::disjoint_copies(k2, copies), 1);
    Quotient center = proper_k2_center(copies);
    for (int denom : {32, 8, 3}) {
        Rat delta = rat(1, denom);
        RateEstimate via_types = sanov_rate_exact(types, copies, center, delta);
        RateEstimate direct = rate_exact(g, RateQuery{2, center, delta});
        CHECK(via_types.count == direct.count);
    }
}

TEST_CASE("sanov asymptotic rate of the proper-coloring center") {
    // tight ball around the proper-coloring quotient: max entropy log 2
    // over the two alternating types, rate = log 2 - (log 2)/2
    BaseColoringTypes types = base_coloring_types(Graph::single_edge(), 2);
    Quotient center = proper_k2_center(4);
    RateEstimate est = sanov_rate_asymptotic(types, center, rat(1, 1000000000));
    REQUIRE(!est.infinite);
    CHECK(est.value == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-4));
}

TEST_CASE("sanov asymptotic on single-vertex base matches the multinomial formula") {
    BaseColoringTypes types = base_coloring_types(Graph::empty(1), 3);
    std::vector<long> counts = {5, 3, 2};
    Quotient center = isolated_center(10, 3, counts);
    RateEstimate est = sanov_rate_asymptotic(types, center, rat(1, 1000000000));
    REQUIRE(!est.infinite);
    CHECK(est.value == doctest::Approx(multinomial_point_rate(3, counts)).epsilon(1e-4));
}

TEST_CASE("sanov asymptotic detects unachievable centers") {
    BaseColoringTypes types = base_coloring_types(Graph::single_edge(), 2);
    Quotient center = proper_k2_center(4);
    center.X[0][1] = center.X[1][0] = rat(5);
    CHECK(sanov_rate_asymptotic(types, center, rat(1, 100)).infinite);
}

TEST_CASE("sanov exact approaches the asymptotic rate") {
    BaseColoringTypes types = base_coloring_types(Graph::single_edge(), 2);
    Quotient center = proper_k2_center(4);
    Rat delta = rat(1, 16);
    RateEstimate asym = sanov_rate_asymptotic(types, center, delta);
    double prev_gap = 1e9;
    for (int copies : {8, 24, 64}) {
        RateEstimate fin = sanov_rate_exact(types, copies, center, delta);
        REQUIRE(!fin.infinite);
        double gap = std::fabs(fin.value - asym.value);
        CHECK(gap <= prev_gap + 1e-9);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.05);
}

TEST_CASE("refinement inequality on disjoint K2s") {
    Graph g = realize(GraphFamily::disjoint_copies(Graph::single_edge(), 8), 1);
    QuotientDistribution fine = QuotientDistribution::build(g, 4);
    // occupied resolution-4 quotients as centers (deduplicated cells)
    std::vector<Quotient> centers;
    for (size_t i = 0; i < fine.size() && centers.size() < 200; i += 37)
        centers.push_back(fine.quotient_at(i));
    RefinementReport rep = refinement_diagnostic(g, centers, rat(1, 16));
    CHECK(rep.all_hold);
}

TEST_CASE("refinement on unachievable centers is trivially consistent") {
    Graph g = realize(GraphFamily::disjoint_copies(Graph::single_edge(), 4), 1);
    Quotient c;
    c.k = 4;
    c.degree_bound = 1;
    c.x = {rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
    c.X.assign(4, std::vector<Rat>(4, rat(7)));
    RefinementReport rep = refinement_diagnostic(g, {c}, rat(1, 64));
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.entries[0].fine_infinite);
    CHECK(rep.entries[0].holds);
}

TEST_CASE("perturbation stability C8 vs P8") {
    Graph c8 = Graph::cycle(8);
    Graph p8 = c8.without_edges({{0, 7}});
    QuotientDistribution d = QuotientDistribution::build(c8, 2);
    std::vector<Quotient> centers;
    for (size_t i = 0; i < d.size(); i += 11) centers.push_back(d.quotient_at(i));
    PerturbationReport rep = perturbation_stability(c8, p8, 2, centers, rat(1, 2));
    CHECK(rep.edit_distance == 1);
    CHECK(rep.shift_bound == rat(1, 4));
    CHECK(rep.shift_within_half_delta);
    CHECK(rep.all_hold);
}

TEST_CASE("perturbation stability of a graph against itself") {
    Graph g = Graph::cycle(6);
    QuotientDistribution d = QuotientDistribution::build(g, 2);
    std::vector<Quotient> centers{d.quotient_at(0)};
    PerturbationReport rep = perturbation_stability(g, g, 2, centers, rat(1, 8));
    CHECK(rep.edit_distance == 0);
    CHECK(rep.all_hold);
}

TEST_CASE("ball infima trace over dyadic levels") {
    Graph g = realize(GraphFamily::disjoint_copies(Graph::single_edge(), 3), 1);
    RealColoring sigma = random_real_coloring(g.n(), 321);
    BallInfimaReport rep = refinement_ball_infima(g, sigma, 3);
    REQUIRE(rep.levels.size() >= 2);
    for (const auto& lev : rep.levels) {
        CHECK(!lev.empty);  // the center's own discretization is achieved
        CHECK(lev.infimum <= std::log(static_cast<double>(lev.k)) + 1e-12);
        CHECK(lev.infimum >= 0.0 - 1e-12);
    }
}

TEST_CASE("iid estimates tighten around the exact rate as budgets grow") {
    Graph g = Graph::empty(10);
    RateQuery q{2, isolated_center(10, 2, {6, 4}), rat(1, 40)};
    double exact = rate_exact(g, q).value;
    double prev_width = 1e9;
    for (uint64_t samples : {2000u, 20000u, 200000u}) {
        IidOptions opt;
        opt.samples = samples;
        opt.seed = 1000 + samples;
        opt.z = 3.0;  // 3-sigma interval
        RateEstimate est = rate_iid(g, q, opt);
        REQUIRE(!est.censored);
        CHECK(est.ci_low <= exact);
        CHECK(est.ci_high >= exact);
        double width = est.ci_high - est.ci_low;
        CHECK(width <= prev_width + 1e-12);
        prev_width = width;
    }
}
