#include "ldg/measures.hpp"

#include <cmath>
#include <stdexcept>

#include "ldg/rng.hpp"

namespace ldg {

namespace {

bool on_any_grid(double v, int guard) {
    if (v <= 0.0 || v >= 1.0) return true;
    for (int k = 1; k <= guard; ++k) {
        double c = v * k;
        if (c == std::floor(c)) return true;
    }
    return false;
}

// cell index of v in the open grid (i/k, (i+1)/k); -1 if on a grid line
int cell_of(double v, int k) {
    double c = v * k;
    if (c == std::floor(c)) return -1;
    int i = static_cast<int>(std::floor(c));
    return (i < 0 || i >= k) ? -1 : i;
}

}  // namespace

RealColoring random_real_coloring(int n, uint64_t seed, int grid_guard) {
    RealColoring sigma;
    sigma.seed = seed;
    sigma.values.resize(n);
    Rng rng = make_rng(seed);
    for (int u = 0; u < n; ++u) {
        double v = uniform01(rng);
        while (on_any_grid(v, grid_guard)) v = uniform01(rng);
        sigma.values[u] = v;
    }
    return sigma;
}

MeasurePair build_measures(const Graph& g, const RealColoring& sigma) {
    if (static_cast<int>(sigma.values.size()) != g.n())
        throw std::invalid_argument("build_measures: coloring length mismatch");
    MeasurePair m;
    m.vertex_count = g.n();
    m.degree_bound = g.degree_bound();
    m.rho_atoms = sigma.values;
    m.mu_atoms.reserve(2 * g.edges().size());
    for (const auto& [u, v] : g.edges()) {
        m.mu_atoms.emplace_back(sigma.values[u], sigma.values[v]);
        m.mu_atoms.emplace_back(sigma.values[v], sigma.values[u]);
    }
    return m;
}

Rat StepMeasurePair::rho_total() const {
    Rat s = 0;
    for (const auto& v : rho_cells) s += v;
    return s;
}

Rat StepMeasurePair::mu_total() const {
    Rat s = 0;
    for (const auto& row : mu_cells)
        for (const auto& v : row) s += v;
    return s;
}

StepMeasurePair project_tk(const MeasurePair& m, int k) {
    if (k < 1) throw std::invalid_argument("project_tk: k < 1");
    StepMeasurePair s;
    s.k = k;
    s.degree_bound = m.degree_bound;
    s.rho_cells.assign(k, Rat(0));
    s.mu_cells.assign(k, std::vector<Rat>(k, Rat(0)));
    Rat mass = m.atom_mass();
    for (double v : m.rho_atoms) {
        int i = cell_of(v, k);
        if (i < 0) throw std::invalid_argument("project_tk: atom on a grid line");
        s.rho_cells[i] += mass;
    }
    for (const auto& [a, b] : m.mu_atoms) {
        int i = cell_of(a, k), j = cell_of(b, k);
        if (i < 0 || j < 0) throw std::invalid_argument("project_tk: atom on a grid line");
        s.mu_cells[i][j] += mass;
    }
    return s;
}

StepMeasurePair coarsen_step(const StepMeasurePair& s) {
    if (s.k % 2 != 0) throw std::invalid_argument("coarsen_step: odd resolution");
    int k = s.k / 2;
    StepMeasurePair out;
    out.k = k;
    out.degree_bound = s.degree_bound;
    out.rho_cells.assign(k, Rat(0));
    out.mu_cells.assign(k, std::vector<Rat>(k, Rat(0)));
    for (int i = 0; i < s.k; ++i) out.rho_cells[i / 2] += s.rho_cells[i];
    for (int i = 0; i < s.k; ++i)
        for (int j = 0; j < s.k; ++j) out.mu_cells[i / 2][j / 2] += s.mu_cells[i][j];
    return out;
}

Coloring discretize_coloring(const RealColoring& sigma, int k) {
    Coloring c;
    c.k = k;
    c.values.reserve(sigma.values.size());
    for (double v : sigma.values) {
        int col = (v <= 0.0) ? 1 : static_cast<int>(std::ceil(v * k));
        if (col < 1) col = 1;
        if (col > k) col = k;
        c.values.push_back(col - 1);
    }
    return c;
}

StepMeasurePair quotient_to_step(const Quotient& q) {
    StepMeasurePair s;
    s.k = q.k;
    s.degree_bound = q.degree_bound;
    s.rho_cells = q.x;
    s.mu_cells = q.X;
    return s;
}

Quotient step_to_quotient(const StepMeasurePair& s) {
    Quotient q;
    q.k = s.k;
    q.degree_bound = s.degree_bound;
    q.x = s.rho_cells;
    q.X = s.mu_cells;
    return q;
}

Rat d_var(const StepMeasurePair& a, const StepMeasurePair& b) {
    if (a.k != b.k) throw std::invalid_argument("d_var: resolution mismatch");
    // The extremal set is a union of cells, so the supremum over sets equals
    // the larger of the summed positive and summed negative cell differences.
    Rat pos1 = 0, neg1 = 0;
    for (int i = 0; i < a.k; ++i) {
        Rat d = a.rho_cells[i] - b.rho_cells[i];
        if (d > 0) pos1 += d;
        else neg1 -= d;
    }
    Rat pos2 = 0, neg2 = 0;
    for (int i = 0; i < a.k; ++i)
        for (int j = 0; j < a.k; ++j) {
            Rat d = a.mu_cells[i][j] - b.mu_cells[i][j];
            if (d > 0) pos2 += d;
            else neg2 -= d;
        }
    Rat c1 = std::max(pos1, neg1);
    Rat c2 = std::max(pos2, neg2);
    return std::max(c1, c2);
}

}  // namespace ldg
