#include <doctest.h>

#include <cmath>

#include "ldg/families.hpp"
#include "ldg/measures.hpp"
#include "ldg/prokhorov.hpp"
#include "ldg/rng.hpp"

using namespace ldg;

namespace {

// oracle: max over all cell-union subsets of the mass difference
Rat d_var_subset_oracle(const StepMeasurePair& a, const StepMeasurePair& b) {
    int k = a.k;
    Rat best = 0;
    for (uint32_t mask = 0; mask < (1u << k); ++mask) {
        Rat d = 0;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) d += a.rho_cells[i] - b.rho_cells[i];
        if (abs(d) > best) best = abs(d);
    }
    int cells = k * k;
    for (uint64_t mask = 0; mask < (uint64_t{1} << cells); ++mask) {
        Rat d = 0;
        for (int c = 0; c < cells; ++c)
            if (mask & (uint64_t{1} << c)) d += a.mu_cells[c / k][c % k] - b.mu_cells[c / k][c % k];
        if (abs(d) > best) best = abs(d);
    }
    return best;
}

StepMeasurePair random_step_pair(Rng& rng, int k, int denom, int degree_bound) {
    StepMeasurePair s;
    s.k = k;
    s.degree_bound = degree_bound;
    s.rho_cells.assign(k, Rat(0));
    s.mu_cells.assign(k, std::vector<Rat>(k, Rat(0)));
    // rho: denom unit masses dropped into cells
    for (int t = 0; t < denom; ++t) s.rho_cells[uniform_int(rng, 0, k - 1)] += rat(1, denom);
    // mu: symmetric mass up to degree bound
    int pairs = uniform_int(rng, 0, denom * degree_bound / 2);
    for (int t = 0; t < pairs; ++t) {
        int i = uniform_int(rng, 0, k - 1), j = uniform_int(rng, 0, k - 1);
        if (i == j) {
            s.mu_cells[i][i] += rat(2, denom);
        } else {
            s.mu_cells[i][j] += rat(1, denom);
            s.mu_cells[j][i] += rat(1, denom);
        }
    }
    return s;
}

}  // namespace

TEST_CASE("grid avoidance of generated real colorings") {
    RealColoring sigma = random_real_coloring(64, 9);
    for (double v : sigma.values) {
        CHECK(v > 0);
        CHECK(v < 1);
        for (int k = 1; k <= 64; ++k) CHECK(v * k != std::floor(v * k));
    }
}

TEST_CASE("measure pair of the four node example") {
    Graph g(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    RealColoring sigma;
    sigma.values = {0.4, 0.8, 0.15, 0.5};
    MeasurePair m = build_measures(g, sigma);
    CHECK(m.rho_atoms.size() == 4);
    CHECK(m.mu_atoms.size() == 8);
    CHECK(m.atom_mass() == rat(1, 4));
    // both orientations of every edge
    bool fwd = false, bwd = false;
    for (const auto& [a, b] : m.mu_atoms) {
        if (a == 0.4 && b == 0.8) fwd = true;
        if (a == 0.8 && b == 0.4) bwd = true;
    }
    CHECK(fwd);
    CHECK(bwd);

    // the 0.5 atom sits on the k=2 grid: projection refuses it
    CHECK_THROWS_AS(project_tk(m, 2), std::invalid_argument);

    // nudged off the grid line, the cells count as (3/4, 1/4)
    RealColoring nudged;
    nudged.values = {0.4, 0.8, 0.15, 0.45};
    StepMeasurePair s = project_tk(build_measures(g, nudged), 2);
    CHECK(s.rho_cells[0] == rat(3, 4));
    CHECK(s.rho_cells[1] == rat(1, 4));
    CHECK(s.rho_total() == 1);
    CHECK(s.mu_total() == m.mu_total());
}

TEST_CASE("edgeless graph has empty mu") {
    MeasurePair m = build_measures(Graph::empty(3), RealColoring{{0.11, 0.23, 0.77}, 0});
    CHECK(m.mu_atoms.empty());
}

TEST_CASE("projection rejects grid atoms") {
    MeasurePair m = build_measures(Graph::empty(2), RealColoring{{0.5, 0.3}, 0});
    CHECK_THROWS_AS(project_tk(m, 2), std::invalid_argument);
    CHECK_NOTHROW(project_tk(m, 3));
}

TEST_CASE("discretization examples") {
    RealColoring sigma;
    sigma.values = {0.4, 0.8, 1e-12};
    Coloring c2 = discretize_coloring(sigma, 2);
    CHECK(c2.values[0] == 0);  // color 1
    Coloring c5 = discretize_coloring(sigma, 5);
    CHECK(c5.values[1] == 3);  // color 4
    RealColoring zero;
    zero.values = {0.0};
    CHECK(discretize_coloring(zero, 4).values[0] == 0);  // clamps to color 1
}

TEST_CASE("commuting square is exact") {
    Rng rng = make_rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        int n = uniform_int(rng, 2, 9);
        Graph g = realize(GraphFamily::erdos_renyi(n, 2.0, trial), 1);
        RealColoring sigma = random_real_coloring(n, 1000 + trial);
        int k = uniform_int(rng, 1, 5);
        StepMeasurePair via_measures = project_tk(build_measures(g, sigma), k);
        StepMeasurePair via_quotient = quotient_to_step(quotient(g, discretize_coloring(sigma, k)));
        CHECK(via_measures == via_quotient);
    }
}

TEST_CASE("quotient/step round trip") {
    Rng rng = make_rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        int n = uniform_int(rng, 2, 8);
        Graph g = realize(GraphFamily::erdos_renyi(n, 1.5, trial), 1);
        Coloring sigma;
        sigma.k = uniform_int(rng, 1, 4);
        sigma.values.resize(n);
        for (auto& v : sigma.values) v = uniform_int(rng, 0, sigma.k - 1);
        Quotient q = quotient(g, sigma);
        CHECK(step_to_quotient(quotient_to_step(q)) == q);
    }
}

TEST_CASE("refinement consistency of step projection") {
    Rng rng = make_rng(55);
    StepMeasurePair fine = random_step_pair(rng, 6, 12, 3);
    StepMeasurePair coarse = coarsen_step(fine);
    CHECK(coarse.rho_total() == fine.rho_total());
    CHECK(coarse.mu_total() == fine.mu_total());
}

TEST_CASE("d_var basics") {
    Rng rng = make_rng(66);
    StepMeasurePair a = random_step_pair(rng, 4, 8, 2);
    CHECK(d_var(a, a) == 0);

    // disjoint unit masses: densities (2,0) vs (0,2) at k=2
    StepMeasurePair u, v;
    u.k = v.k = 2;
    u.degree_bound = v.degree_bound = 1;
    u.rho_cells = {rat(1), rat(0)};
    v.rho_cells = {rat(0), rat(1)};
    u.mu_cells.assign(2, std::vector<Rat>(2, Rat(0)));
    v.mu_cells.assign(2, std::vector<Rat>(2, Rat(0)));
    CHECK(d_var(u, v) == 1);
}

TEST_CASE("d_var equals the subset oracle") {
    Rng rng = make_rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        int k = uniform_int(rng, 1, 3);
        StepMeasurePair a = random_step_pair(rng, k, 6, 2);
        StepMeasurePair b = random_step_pair(rng, k, 6, 2);
        CHECK(d_var(a, b) == d_var_subset_oracle(a, b));
    }
    for (int trial = 0; trial < 5; ++trial) {
        StepMeasurePair a = random_step_pair(rng, 3, 9, 2);
        StepMeasurePair b = random_step_pair(rng, 3, 9, 2);
        CHECK(d_var(a, b) == d_var_subset_oracle(a, b));
    }
}

TEST_CASE("d_var is a metric") {
    Rng rng = make_rng(88);
    for (int trial = 0; trial < 30; ++trial) {
        int k = uniform_int(rng, 2, 5);
        StepMeasurePair a = random_step_pair(rng, k, 8, 2);
        StepMeasurePair b = random_step_pair(rng, k, 8, 2);
        StepMeasurePair c = random_step_pair(rng, k, 8, 2);
        CHECK(d_var(a, b) == d_var(b, a));
        CHECK(d_var(a, b) <= d_var(a, c) + d_var(c, b));
        if (!(a == b)) CHECK(d_var(a, b) > 0);
    }
}

TEST_CASE("coarsening contracts d_var") {
    Rng rng = make_rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        int k = uniform_int(rng, 1, 4);
        StepMeasurePair a = random_step_pair(rng, 2 * k, 10, 2);
        StepMeasurePair b = random_step_pair(rng, 2 * k, 10, 2);
        CHECK(d_var(coarsen_step(a), coarsen_step(b)) <= d_var(a, b));
    }
}

TEST_CASE("projection stays within 1/k in Prokhorov distance") {
    Rng rng = make_rng(111);
    for (int trial = 0; trial < 60; ++trial) {
        int n = uniform_int(rng, 2, 8);
        Graph g = realize(GraphFamily::erdos_renyi(n, 2.0, 300 + trial), 1);
        RealColoring sigma = random_real_coloring(n, 500 + trial);
        int k = uniform_int(rng, 1, 6);
        MeasurePair m = build_measures(g, sigma);
        StepMeasurePair s = project_tk(m, k);
        double upper = prokhorov_upper_atoms_vs_step(m, s);
        CHECK(upper <= 1.0 / k + 1e-12);
    }
}

TEST_CASE("prokhorov interval on identical pairs is zero") {
    Rng rng = make_rng(123);
    StepMeasurePair a = random_step_pair(rng, 3, 9, 2);
    ProkhorovBounds b = prokhorov_bounds(a, a);
    CHECK(b.lower == 0);
    CHECK(b.upper == 0);
}

TEST_CASE("prokhorov interval brackets the known half-shift value") {
    // uniform mass on (0,1/2) vs uniform mass on (1/2,1): true distance 1/3
    StepMeasurePair a, b;
    a.k = b.k = 2;
    a.degree_bound = b.degree_bound = 1;
    a.rho_cells = {rat(1), rat(0)};
    b.rho_cells = {rat(0), rat(1)};
    a.mu_cells.assign(2, std::vector<Rat>(2, Rat(0)));
    b.mu_cells.assign(2, std::vector<Rat>(2, Rat(0)));
    ProkhorovBounds pb = prokhorov_bounds(a, b);
    CHECK(pb.refined);
    CHECK(pb.lower <= 1.0 / 3 + 1e-12);
    CHECK(pb.upper >= 1.0 / 3 - 1e-12);
    // the refined transport bound should be close to the truth
    CHECK(pb.upper <= 0.5);
}

TEST_CASE("prokhorov interval contains a grid-shift distance") {
    // unit point-like masses distance 1/2 apart at k=8
    StepMeasurePair a, b;
    a.k = b.k = 8;
    a.degree_bound = b.degree_bound = 1;
    a.rho_cells.assign(8, Rat(0));
    b.rho_cells.assign(8, Rat(0));
    a.rho_cells[1] = 1;
    b.rho_cells[5] = 1;
    a.mu_cells.assign(8, std::vector<Rat>(8, Rat(0)));
    b.mu_cells.assign(8, std::vector<Rat>(8, Rat(0)));
    ProkhorovBounds pb = prokhorov_bounds(a, b);
    // true distance is min(t,1) with t the support shift (1/2 +- one cell)
    CHECK(pb.lower <= 0.5);
    CHECK(pb.upper >= 0.5 - 1.0 / 8 - 1e-12);
    CHECK(pb.upper <= 0.5 + 2.0 / 8 + 1e-12);
}

TEST_CASE("sandwich bounds are consistent") {
    Rng rng = make_rng(150);
    for (int trial = 0; trial < 30; ++trial) {
        int k = uniform_int(rng, 2, 6);
        StepMeasurePair a = random_step_pair(rng, k, 10, 2);
        StepMeasurePair b = random_step_pair(rng, k, 10, 2);
        ProkhorovBounds pb = prokhorov_bounds(a, b);
        CHECK(pb.lower <= pb.upper + 1e-12);
        CHECK(pb.upper <= to_double(d_var(a, b)) + 1e-12);
    }
}
