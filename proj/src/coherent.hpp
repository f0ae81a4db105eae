#pragma once

#include <array>
#include <string>
#include <vector>

#include "energy.hpp"

namespace cpat {

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;
};

// Check the coherence conditions for an angle system of the problem's
// geometry:
//   (per edge)  euclidean:  φ>0 and φ_e+φ_-e = π−θ_e;
//               hyperbolic: φ>0 and φ_e+φ_-e < π−θ_e;
//               spherical:  0<φ<π, π−θ < φ_e+φ_-e < π+θ, |φ_e−φ_-e| < π−θ;
//   (per face)  Σ 2φ = Φ_f.
ValidationReport validate_angles(const PatternProblem& p, const AngleSystem& a,
                                 double tolerance = 1e-9);

struct FeasibilityReport {
    bool feasible = false;
    AngleSystem flow_angles;         // a coherent angle system when feasible
    std::vector<int> witness_faces;  // violating face subset when infeasible
    double epsilon = 0.0;
    bool near_boundary = false;
};

// Decide whether a coherent angle system exists, via a feasible-flow problem
// on faces and interior edges (euclidean and hyperbolic geometries).
FeasibilityReport feasibility(const PatternProblem& p);

// Exhaustive check over all nonempty face subsets (for cross-validation,
// |F| <= ~20): Σ_{F'} Φ_f < Σ_{E'} 2(π−θ_e) strictly for proper subsets, with
// equality (euclidean) or strict inequality (hyperbolic) for F' = F.
bool feasible_brute_force(const PatternProblem& p);

// Verify that a face subset violates the subset inequality.
bool witness_violates(const PatternProblem& p, const std::vector<int>& faces);

// Crossing angles filling an isolated triangular hole: given the angles
// θ12, θ23, θ31 of the rim, the angles θ01, θ02, θ03 toward the new center
// vertex so that all three rim vertex sums are 2π.
std::array<double, 3> hole_fill_angles(double t12, double t23, double t31);

}  // namespace cpat
