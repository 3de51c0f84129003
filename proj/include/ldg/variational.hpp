#pragma once

#include <vector>

#include "ldg/graph.hpp"
#include "ldg/hom.hpp"
#include "ldg/quotient.hpp"
#include "ldg/rate.hpp"

namespace ldg {

/// Energy functional on quotients:
///   E(x,X) = -sum_i x_i log alpha_i - (1/2) sum_ij X_ij log A_ij
/// with 0*log 0 = 0 and X_ij > 0 against A_ij = 0 giving +infinity.
double energy(const Quotient& q, const TargetGraph& h);

/// Lipschitz constant of the energy on the delta-grid:
/// K = (k + k^2/2) * max(|log alpha_i|, |log A_ij|). Soft-core only.
double energy_lipschitz(const TargetGraph& h);

struct GibbsReport {
    double lower = 0, upper = 0;   // bounds on (1/|V|) log Z
    double direct = 0;             // exact (1/|V|) log Z
    bool contains = false;         // lower <= direct <= upper
    double slack_bound = 0;        // 2 K delta + log(#cells)/|V|
    bool slack_ok = false;         // upper - lower <= slack_bound
    double K = 0;
    Rat delta;
    size_t occupied_cells = 0;
};

/// Bucket decomposition of the partition function: reconstructs certified
/// bounds on (1/|V|) log Z from the Gamma_delta histogram and checks the
/// exact value against them.
GibbsReport gibbs_bucket_decomposition(const Graph& g, const TargetGraph& h, const Rat& delta,
                                       unsigned long budget = kDefaultEnumerationBudget);

struct EnergyEntropyPoint {
    Quotient cell_corner;          // minimizer cell representative
    std::vector<int32_t> cell;
    double energy_value = 0;
    double entropy_value = 0;      // log k - empirical rate = log(count)/|V|
    double free_value = 0;         // energy - entropy
    double direct = 0;             // -(1/|V|) log Z
    double gap = 0;                // free_value - direct
    double slack_bound = 0;        // K delta + log(#cells)/|V| on the gap
    bool within_slack = false;
};

/// Minimizes energy - entropy over occupied Gamma_delta cells, using the
/// empirical rate as the entropy ingredient; ties broken lexicographically
/// on the cell index vector.
EnergyEntropyPoint variational_free_energy(const Graph& g, const TargetGraph& h, const Rat& delta,
                                           unsigned long budget = kDefaultEnumerationBudget);

}  // namespace ldg
