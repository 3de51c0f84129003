#pragma once

#include <cstdint>
#include <vector>

#include "ldg/distribution.hpp"
#include "ldg/graph.hpp"
#include "ldg/measures.hpp"
#include "ldg/quotient.hpp"
#include "ldg/rational.hpp"

namespace ldg {

/// Query for the empirical rate around a quotient: closed l_inf ball of
/// radius delta on the flattened (x, X) representation.
struct RateQuery {
    int k = 1;
    Quotient center;
    Rat delta;
};

struct RateEstimate {
    enum class Method { Exact, Iid, FlatHistogram, SanovExact, SanovAsymptotic };
    Method method = Method::Exact;
    bool infinite = false;
    double value = 0;  // log k - (1/|V|) log(count); meaningful when !infinite

    // exact methods
    Int count;
    double log_count = 0;

    // sampled methods
    uint64_t samples = 0;
    uint64_t seed = 0;
    double ci_low = 0, ci_high = 0;  // on the rate scale
    bool censored = false;           // zero iid hits: value is a lower confidence bound
    bool flat = false;               // flat-histogram converged
    int stages_completed = 0;
};

RateEstimate rate_exact(const Graph& g, const RateQuery& q,
                        unsigned long budget = kDefaultEnumerationBudget);

/// Gamma_delta histogram: every coloring assigned to one grid cell of pitch
/// delta (cells (m*delta, (m+1)*delta], value 0 in cell 0). Counts exact.
struct BucketHistogram {
    int n = 0;
    int k = 1;
    int degree_bound = 0;
    Rat delta;
    // sorted by cell index vector (x coords then upper-tri X coords)
    std::vector<std::pair<std::vector<int32_t>, Int>> cells;

    Int total() const;
    /// Lower corner of a cell, as a quotient.
    Quotient cell_lower_corner(const std::vector<int32_t>& cell) const;
    /// Energy-evaluation representative: the lower corner with the x block
    /// shifted uniformly onto the unit-mass slice (still inside the cell,
    /// since every occupied cell contains quotients with sum x = 1).
    Quotient cell_representative(const std::vector<int32_t>& cell) const;
    /// Cells whose closure intersects the closed ball.
    std::vector<size_t> cells_touching_ball(const Quotient& center, const Rat& radius) const;
};

BucketHistogram bucket_histogram(const Graph& g, int k, const Rat& delta,
                                 unsigned long budget = kDefaultEnumerationBudget);
BucketHistogram fold_to_buckets(const QuotientDistribution& d, const Rat& delta);

std::vector<int32_t> bucket_cell_of(const CountQuotient& cq, const Rat& delta);

struct IidOptions {
    uint64_t samples = 100000;
    uint64_t seed = 0;
    double z = 1.959963984540054;  // 95% Wilson interval
};

RateEstimate rate_iid(const Graph& g, const RateQuery& q, const IidOptions& opt);

struct FlatHistogramOptions {
    Rat pitch = Rat(1, 16);         // Gamma_delta grid pitch
    int stages = 20;                // log-f halvings
    double flatness = 0.8;          // min(hist) >= flatness * mean(hist)
    uint64_t sweeps_per_check = 50; // sweeps between flatness checks
    uint64_t max_sweeps = 2000000;  // hard cap across all stages
    uint64_t seed = 0;
};

/// Wang-Landau style density-of-states estimate over the Gamma_delta cells.
struct FlatHistogramResult {
    Rat pitch;
    int n = 0, k = 1;
    bool flat = false;
    int stages_completed = 0;
    uint64_t seed = 0;
    uint64_t total_sweeps = 0;
    // normalized log-probabilities per discovered cell, sorted by cell
    std::vector<std::pair<std::vector<int32_t>, double>> log_prob;
};

FlatHistogramResult flat_histogram(const Graph& g, int k, const FlatHistogramOptions& opt);

/// Rate from a flat-histogram run: aggregates cells whose closure
/// intersects the closed ball.
RateEstimate rate_flat_histogram(const FlatHistogramResult& fh, const RateQuery& q);

/// Finite-n transcription of the refinement inequality between resolutions
/// k and 2k: merging color pairs maps the radius-delta ball at 2k into the
/// radius-4*delta ball at k while each k-coloring lifts to 2^n refinements,
/// so count_k(B(Tc, 4 delta)) * 2^n >= count_2k(B(c, delta)) exactly, i.e.
/// rate_k(Tc, 4 delta) <= rate_2k(c, delta).
struct RefinementReport {
    struct Entry {
        Quotient center;        // resolution 2k
        Quotient merged_center; // resolution k
        Int count_fine, count_coarse;
        double rate_fine = 0, rate_coarse = 0;  // +inf encoded by infinite flags
        bool fine_infinite = false, coarse_infinite = false;
        bool holds = false;  // exact integer inequality
    };
    int k = 1;
    Rat delta;
    std::vector<Entry> entries;
    bool all_hold = false;
};

RefinementReport refinement_diagnostic(const Graph& g, const std::vector<Quotient>& centers_2k,
                                       const Rat& delta,
                                       unsigned long budget = kDefaultEnumerationBudget);

/// Dyadic ball-infima diagnostic: for levels l = 1..levels, the smallest
/// pointwise rate log(2^l) - log(count)/n over achieved quotients within
/// distance 2/2^l of the discretized center. A finite-n trace of the
/// monotone limit construction; reported, never asserted as a limit.
struct BallInfimaReport {
    struct Level {
        int k;
        Rat radius;
        bool empty = false;
        double infimum = 0;
    };
    std::vector<Level> levels;
};

BallInfimaReport refinement_ball_infima(const Graph& g, const RealColoring& center, int levels,
                                        unsigned long budget = kDefaultEnumerationBudget);

/// Two-sided stability of ball counts under edge edits: any coloring's
/// quotient moves by at most 2*edit/|V| in l_inf, so
/// count_tilde(B(c, delta)) >= count_g(B(c, delta - 2e/n)) and conversely.
struct PerturbationReport {
    struct Entry {
        Quotient center;
        Int count_g_outer, count_tilde_inner;    // B(c,delta) on g vs B(c,delta/2) on g~
        Int count_tilde_outer, count_g_inner;
        bool forward_holds = false;   // count_tilde(delta/2) <= count_g(delta)
        bool backward_holds = false;  // count_g(delta/2) <= count_tilde(delta)
    };
    long edit_distance = 0;
    Rat shift_bound;  // 2e/n
    bool shift_within_half_delta = false;
    std::vector<Entry> entries;
    bool all_hold = false;
};

PerturbationReport perturbation_stability(const Graph& g, const Graph& g_tilde, int k,
                                          const std::vector<Quotient>& centers, const Rat& delta,
                                          unsigned long budget = kDefaultEnumerationBudget);

}  // namespace ldg
