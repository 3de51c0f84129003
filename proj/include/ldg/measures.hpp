#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ldg/graph.hpp"
#include "ldg/quotient.hpp"
#include "ldg/rational.hpp"

namespace ldg {

/// Real-valued coloring sigma: V -> [0,1]. Generated values avoid grid
/// points i/k for every k up to the guard (redrawn otherwise).
struct RealColoring {
    std::vector<double> values;
    uint64_t seed = 0;
};

RealColoring random_real_coloring(int n, uint64_t seed, int grid_guard = 64);

/// Atomic measure pair (rho, mu): one atom of mass 1/|V| per vertex on
/// [0,1], two atoms of mass 1/|V| per edge on [0,1]^2 (both orientations).
struct MeasurePair {
    int vertex_count = 0;
    int degree_bound = 0;
    std::vector<double> rho_atoms;                   // positions
    std::vector<std::pair<double, double>> mu_atoms;  // ordered pairs

    Rat atom_mass() const { return rat(1, vertex_count); }
    Rat mu_total() const { return rat(static_cast<long>(mu_atoms.size()), vertex_count); }
};

MeasurePair build_measures(const Graph& g, const RealColoring& sigma);

/// Piecewise-constant measure pair on the k-grid: exact cell masses, zero
/// mass on grid lines. The image of the projection T_k.
struct StepMeasurePair {
    int k = 1;
    int degree_bound = 0;
    std::vector<Rat> rho_cells;                // k masses
    std::vector<std::vector<Rat>> mu_cells;    // k x k masses

    Rat rho_total() const;
    Rat mu_total() const;
    bool operator==(const StepMeasurePair& o) const {
        return k == o.k && rho_cells == o.rho_cells && mu_cells == o.mu_cells;
    }
};

/// T_k: cell masses of the atomic pair. Throws if an atom coordinate lies
/// exactly on a grid line i/k (caller should redraw).
StepMeasurePair project_tk(const MeasurePair& m, int k);

/// T_k restricted to step measures at resolution 2k (cell aggregation).
StepMeasurePair coarsen_step(const StepMeasurePair& s);

/// t_k: real coloring -> k-coloring, sigma_k(u) = ceil(k sigma(u)), value 0
/// mapped to color 1.
Coloring discretize_coloring(const RealColoring& sigma, int k);

/// F_k and its inverse: cell mass i of the step pair equals x_i, cell mass
/// (i,j) equals X_ij. Mutually inverse exact maps.
StepMeasurePair quotient_to_step(const Quotient& q);
Quotient step_to_quotient(const StepMeasurePair& s);

/// Total-variation-style distance: max over the two components of the
/// largest cell-set mass discrepancy. Exact.
Rat d_var(const StepMeasurePair& a, const StepMeasurePair& b);

}  // namespace ldg
