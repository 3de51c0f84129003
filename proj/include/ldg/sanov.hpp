#pragma once

#include <vector>

#include "ldg/graph.hpp"
#include "ldg/quotient.hpp"
#include "ldg/rate.hpp"

namespace ldg {

/// Coloring types of a base graph: one entry per coloring of the base,
/// carrying its quotient contribution as integer counts over |V(base)|.
struct BaseColoringTypes {
    Graph base;
    int k = 1;
    std::vector<CountQuotient> types;  // size k^|V(base)|
};

BaseColoringTypes base_coloring_types(const Graph& base, int k, unsigned long type_limit = 65536);

/// Exact rate for n disjoint copies of a small base graph: enumerates type
/// vectors z over the base colorings, sums multinomial coefficients for
/// those whose induced quotient lands in the closed ball, and converts the
/// exact count to the empirical rate.
RateEstimate sanov_rate_exact(const BaseColoringTypes& types, int copies, const Quotient& center,
                              const Rat& delta);

/// Asymptotic rate via entropy maximization over the type simplex subject
/// to the linear ball constraints: rate = log k - max H(z) / |V(base)|.
/// Infeasible constraints give an infinite rate.
RateEstimate sanov_rate_asymptotic(const BaseColoringTypes& types, const Quotient& center,
                                   const Rat& delta);

/// Closed-form multinomial rate for isolated vertices: log k + sum p_i log p_i
/// evaluated at the exact composition p (the Sanov rate at a point).
double multinomial_point_rate(int k, const std::vector<long>& counts);

}  // namespace ldg
