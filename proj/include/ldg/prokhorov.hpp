#pragma once

#include <vector>

#include "ldg/measures.hpp"
#include "ldg/rational.hpp"

namespace ldg {

/// Certified interval around the Prokhorov distance of a measure pair:
/// lower <= d <= upper always holds. The lower bound comes from the
/// d_var sandwich (factor 4kD+1); the upper bound is the smaller of d_var
/// and a transport-feasibility bound searched over a refinement grid.
struct ProkhorovBounds {
    double lower = 0;
    double upper = 0;
    bool refined = false;  // transport search ran (k within limit)
};

inline constexpr int kTauSearchLimit = 12;  // max k for the refined search

ProkhorovBounds prokhorov_bounds(const StepMeasurePair& a, const StepMeasurePair& b);

/// Certified upper bound on d((rho,mu), T_k(rho,mu))-style comparisons:
/// atomic pair vs a step pair on the k-grid. Used to verify the 1/k
/// projection bound. Returns the smallest certified tau found.
double prokhorov_upper_atoms_vs_step(const MeasurePair& m, const StepMeasurePair& s);

namespace detail {

/// A box-shaped piece of mass (points are boxes with lo == hi). Matching
/// mass between pieces certifies displacement up to their max distance.
struct MassPiece {
    double lo[2], hi[2];
    int dims;
    Rat mass;
};

double piece_max_dist(const MassPiece& a, const MassPiece& b);

/// Smallest tau from the candidate list such that all but tau of the larger
/// total can be matched across pieces within max-distance tau. Values
/// outside the candidates are interpolated from the flow value.
double certified_tau(const std::vector<MassPiece>& a, const std::vector<MassPiece>& b,
                     const std::vector<Rat>& candidates);

}  // namespace detail

}  // namespace ldg
