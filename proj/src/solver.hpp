#pragma once

#include <functional>
#include <string>
#include <vector>

#include "energy.hpp"

namespace cpat {

struct SolveOptions {
    double tolerance = 1e-10;   // stop when ||gradient||_inf <= tolerance
    int max_iterations = 10000;
    double divergence_norm = 50.0;  // heuristic: ||rho||_inf beyond this fails
};

struct SolveResult {
    std::vector<double> rho;
    double gradient_inf_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    bool diverged = false;
    bool infeasible_detected = false;
    double t_star = 0.0;  // spherical inner shift already applied to rho
    std::string message;
};

// Minimize the circle pattern functional of the problem's geometry starting
// from rho0 (resized/zero-filled if empty).  Euclidean problems are solved in
// the gauge Σρ = 0; spherical problems minimize the reduced functional and
// return rho with the inner shift added back.
SolveResult solve(const PatternProblem& p, std::vector<double> rho0 = {},
                  const SolveOptions& opt = {});

// Generic nonlinear conjugate gradient (Polak–Ribière with restarts, strong
// Wolfe line search, c1 = 1e-4, c2 = 0.1).  The objective fills `grad` and
// returns the value.
struct CgReport {
    double value = 0.0;
    double gradient_inf_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    bool diverged = false;
};

CgReport minimize_cg(
    const std::function<double(const std::vector<double>&, std::vector<double>&)>& f,
    std::vector<double>& x, const SolveOptions& opt, int restart_every);

}  // namespace cpat
