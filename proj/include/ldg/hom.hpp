#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldg/graph.hpp"
#include "ldg/rational.hpp"

namespace ldg {

/// Weighted target graph H: positive node weights alpha, symmetric
/// nonnegative edge weights A. Soft-core iff all A entries are positive.
struct TargetGraph {
    std::vector<double> alpha;
    std::vector<std::vector<double>> A;
    std::vector<std::string> labels;  // optional node names, metadata only

    int k() const { return static_cast<int>(alpha.size()); }
    bool soft_core() const;
    double weight_max() const;  // max(1, alpha_i, A_ij)
    double weight_min() const;  // min(1, alpha_i, A_ij)
    void validate() const;

    static TargetGraph hard_core_pair();  // alpha=(1,1), A=[[0,1],[1,0]]
    static TargetGraph ising(double beta);  // A_12=e^beta, A_11=A_22=1
};

/// log hom(G,H). hom == 0 is a value (zero flag), not an error.
struct LogPartition {
    double log_value = 0;
    bool zero = false;
    int vertex_count = 0;
    bool exact = true;
    std::optional<double> linear;  // exp-space value when within range

    double per_vertex() const { return log_value / vertex_count; }
    /// free energy -(1/|V|) log hom; +infinity when hom == 0
    double free_energy() const;
};

enum class HomAlgorithm { Brute, Transfer, Components };

LogPartition hom_count(const Graph& g, const TargetGraph& h,
                       HomAlgorithm alg = HomAlgorithm::Components,
                       unsigned long budget = kDefaultEnumerationBudget);

double free_energy(const Graph& g, const TargetGraph& h,
                   unsigned long budget = kDefaultEnumerationBudget);

/// H_lambda: entrywise max(lambda, A_ij); soft-core by construction.
TargetGraph soften(const TargetGraph& h, double lambda);

struct LambdaLimitReport {
    struct Row {
        int index;
        int vertices;
        double lambda;
        double f;  // free energy of H_lambda; +inf possible
    };
    std::vector<Row> rows;
    bool monotone_in_lambda = true;  // f nonincreasing as lambda grows
    double finite_estimate = 0;      // f at smallest lambda, largest index
};

/// Table of f(G_index, H_lambda) over a lambda = 2^-j schedule; reports the
/// monotone trend and the finite estimate of the lambda -> 0 limit. No
/// double-limit claim.
LambdaLimitReport lambda_limit(const std::vector<Graph>& graphs, const std::vector<int>& indices,
                               const TargetGraph& h, int j_min, int j_max,
                               unsigned long budget = kDefaultEnumerationBudget);

struct GraphFamily;  // families.hpp
LambdaLimitReport lambda_limit(const GraphFamily& family, const std::vector<int>& indices,
                               const TargetGraph& h, int j_min, int j_max,
                               unsigned long budget = kDefaultEnumerationBudget);

struct DeletionWitness {
    std::vector<Graph::Edge> removed_edges;
    double log_hom_after = 0;
    bool hom_after_zero = false;
    double epsilon = 0;
    double f_hat = 0;    // finite-lambda free-energy estimate
    double lambda = 0;   // softening used for the bucket selection
    long r0 = 0;         // selected bucket |E_0|
    bool feasible = false;  // both witness requirements met
    bool size_ok = false;   // |E_0| <= eps |V|
    bool bound_ok = false;  // hom(G - E_0, H) >= exp(-(f_hat+eps)|V|)
};

/// Finite-n edge-deletion witness: buckets colorings by the number of edges
/// mapped onto zero-weight pairs, picks the dominant bucket size r0, then
/// the best edge set of that size, and checks the witness requirements
/// directly. Reports infeasibility explicitly instead of relaxing.
DeletionWitness deletion_witness(const Graph& g, const TargetGraph& h, double epsilon,
                                 std::optional<double> lambda_override = std::nullopt,
                                 unsigned long budget = kDefaultEnumerationBudget);

struct MaxCutReport {
    struct Row {
        double beta;
        double lower, upper;  // bounds on MaxCut from log hom
    };
    std::vector<Row> rows;
    std::optional<long> exact;  // cut enumeration when n <= exact limit
    bool exact_within_bounds = true;
};

inline constexpr int kMaxCutExactLimit = 20;

MaxCutReport maxcut_from_beta(const Graph& g, const std::vector<double>& betas,
                              unsigned long budget = kDefaultEnumerationBudget);

long maxcut_exact(const Graph& g);

/// hom(F, G) / |V(G)| for a small connected pattern F: exact rational,
/// counted by rooted backtracking.
Rat hom_density_from(const Graph& pattern, const Graph& g);

}  // namespace ldg
