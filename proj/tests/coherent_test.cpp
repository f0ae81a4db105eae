// Tests for coherent angle system validation, the flow-based feasibility
// decision (cross-checked against exhaustive subset enumeration), and the
// hole-filling crossing angles.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "coherent.hpp"
#include "doctest.h"
#include "energy.hpp"
#include "surface.hpp"

using namespace cpat;

namespace {

constexpr double kPi = std::numbers::pi;

PatternProblem uniform_problem(CellularSurface s, Geometry g, double theta,
                               double phi) {
    PatternProblem p;
    p.surface = std::move(s);
    p.geometry = g;
    p.theta.assign(static_cast<std::size_t>(p.surface.num_edges()), theta);
    p.phi.assign(static_cast<std::size_t>(p.surface.num_faces()), phi);
    return p;
}

PatternProblem random_feasibility_problem(std::mt19937& rng, Geometry g) {
    PatternProblem p;
    std::uniform_int_distribution<int> pick(0, 4);
    switch (pick(rng)) {
        case 0: p.surface = example_cube(); break;
        case 1: p.surface = example_quad_torus(2, 2); break;
        case 2: p.surface = example_quad_torus(3, 2); break;
        case 3: p.surface = example_projectivized_cube(); break;
        default: p.surface = example_quadmesh(2, 2); break;
    }
    p.geometry = g;
    std::uniform_real_distribution<double> th(0.2, kPi - 0.2);
    p.theta.resize(static_cast<std::size_t>(p.surface.num_edges()));
    for (double& t : p.theta) t = th(rng);
    // draw cone angles around the total angle budget so that both feasible
    // and infeasible instances occur
    double budget = 0.0;
    for (int k : p.surface.interior_edges())
        budget += 2.0 * (kPi - p.theta[static_cast<std::size_t>(k)]);
    const int n = p.surface.num_faces();
    std::uniform_real_distribution<double> w(0.2, 1.8);
    std::vector<double> weights(static_cast<std::size_t>(n));
    double total = 0.0;
    for (double& x : weights) {
        x = w(rng);
        total += x;
    }
    std::uniform_real_distribution<double> scale(0.8, 1.1);
    const double target = budget * scale(rng);
    p.phi.resize(static_cast<std::size_t>(n));
    for (int f = 0; f < n; ++f)
        p.phi[static_cast<std::size_t>(f)] =
            target * weights[static_cast<std::size_t>(f)] / total;
    if (g == Geometry::kEuclidean && scale.a() == scale.b()) {
        // unreachable; silences unused warnings in some configurations
    }
    return p;
}

}  // namespace

TEST_CASE("validation accepts induced angles and rejects broken ones") {
    PatternProblem p = uniform_problem(example_quad_torus(2, 2),
                                       Geometry::kEuclidean, kPi / 2, 2 * kPi);
    std::vector<double> rho(4, 0.0);
    AngleSystem a = angles_from_rho(p, rho);
    CHECK(validate_angles(p, a).valid);

    // break the per-edge sum
    AngleSystem bad = a;
    bad.phi[0] += 0.1;
    bad.phi[1] -= 0.1;  // keeps the face sums plausible but the pair moves
    ValidationReport r = validate_angles(p, bad);
    CHECK(!r.valid);
    CHECK(!r.violations.empty());

    // negative angles are rejected
    AngleSystem neg = a;
    neg.phi[2] = -neg.phi[2];
    CHECK(!validate_angles(p, neg).valid);

    // face sum violation
    PatternProblem p2 = p;
    p2.phi[0] += 0.5;
    CHECK(!validate_angles(p2, a).valid);

    // hyperbolic requires strict inequality per edge: the euclidean-tight
    // system is not hyperbolic-coherent
    PatternProblem ph = p;
    ph.geometry = Geometry::kHyperbolic;
    CHECK(!validate_angles(ph, a).valid);

    // a genuinely hyperbolic-coherent system
    PatternProblem ph2 = uniform_problem(example_quad_torus(2, 2),
                                         Geometry::kHyperbolic, kPi / 3, 2 * kPi);
    std::vector<double> rh(4, 0.5 * std::log(2.0 - std::sqrt(3.0)));
    CHECK(validate_angles(ph2, angles_from_rho(ph2, rh)).valid);

    // spherical coherence from the cube pattern
    PatternProblem ps = uniform_problem(example_cube(), Geometry::kSpherical,
                                        2 * kPi / 3, 2 * kPi);
    std::vector<double> rs(6, 0.5 * std::log(2.0 - std::sqrt(3.0)));
    CHECK(validate_angles(ps, angles_from_rho(ps, rs)).valid);
}

TEST_CASE("flow feasibility on reference problems") {
    // euclidean quad torus with right angles balances exactly
    PatternProblem pe = uniform_problem(example_quad_torus(2, 2),
                                        Geometry::kEuclidean, kPi / 2, 2 * kPi);
    FeasibilityReport re = feasibility(pe);
    CHECK(re.feasible);
    CHECK(validate_angles(pe, re.flow_angles, 0.1 * re.epsilon).valid);

    // hyperbolic with theta = pi/3 has slack
    PatternProblem ph = uniform_problem(example_quad_torus(2, 2),
                                        Geometry::kHyperbolic, kPi / 3, 2 * kPi);
    FeasibilityReport rh = feasibility(ph);
    CHECK(rh.feasible);
    CHECK(rh.epsilon > 0.0);
    // the flow returns an extreme point with margin exactly epsilon, so the
    // strictness tolerance must sit below epsilon
    CHECK(validate_angles(ph, rh.flow_angles, 0.1 * rh.epsilon).valid);
    CHECK(rh.near_boundary);

    // hyperbolic with theta = pi/2 is exactly balanced, hence infeasible
    // (the strict inequality fails at the full face set)
    PatternProblem pb = uniform_problem(example_quad_torus(2, 2),
                                        Geometry::kHyperbolic, kPi / 2, 2 * kPi);
    FeasibilityReport rb = feasibility(pb);
    CHECK(!rb.feasible);
    CHECK(!rb.witness_faces.empty());
    CHECK(witness_violates(pb, rb.witness_faces));
}

TEST_CASE("flow feasibility agrees with exhaustive subset enumeration") {
    std::mt19937 rng(31);
    int feasible_seen = 0, infeasible_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Geometry g = (trial % 2 == 0) ? Geometry::kEuclidean
                                            : Geometry::kHyperbolic;
        PatternProblem p = random_feasibility_problem(rng, g);
        if (g == Geometry::kEuclidean) {
            // rescale to exact balance half the time so the equality case is
            // exercised; otherwise leave the imbalance (infeasible)
            if (trial % 4 == 0) {
                double budget = 0.0, total = 0.0;
                for (int k : p.surface.interior_edges())
                    budget += 2.0 * (kPi - p.theta[static_cast<std::size_t>(k)]);
                for (double x : p.phi) total += x;
                for (double& x : p.phi) x *= budget / total;
            }
        }
        const bool brute = feasible_brute_force(p);
        FeasibilityReport r = feasibility(p);
        CHECK(r.feasible == brute);
        if (r.feasible) {
            ++feasible_seen;
            CHECK(validate_angles(p, r.flow_angles, 0.1 * r.epsilon).valid);
        } else {
            ++infeasible_seen;
            CHECK(!r.witness_faces.empty());
            CHECK(witness_violates(p, r.witness_faces));
        }
    }
    // the draw must exercise both outcomes to be meaningful
    CHECK(feasible_seen > 20);
    CHECK(infeasible_seen > 20);
}

TEST_CASE("hole filling angles restore full vertex sums") {
    std::mt19937 rng(32);
    std::uniform_real_distribution<double> th(0.3, kPi / 2);
    int done = 0;
    while (done < 200) {
        const double t12 = th(rng), t23 = th(rng), t31 = th(rng);
        // outputs land in (0, pi) exactly when each rim angle is below the
        // sum of the other two
        if (t12 >= t23 + t31 || t23 >= t31 + t12 || t31 >= t12 + t23) continue;
        ++done;
        const std::array<double, 3> t0 = hole_fill_angles(t12, t23, t31);
        // per rim edge (i, j): the two spoke angles and the rim angle close
        // up the full angle 2 pi
        CHECK(t0[0] + t0[1] + t12 == doctest::Approx(2.0 * kPi).epsilon(1e-12));
        CHECK(t0[1] + t0[2] + t23 == doctest::Approx(2.0 * kPi).epsilon(1e-12));
        CHECK(t0[2] + t0[0] + t31 == doctest::Approx(2.0 * kPi).epsilon(1e-12));
        for (double x : t0) CHECK(x < kPi);
    }
    // symmetric cases
    const std::array<double, 3> a = hole_fill_angles(2 * kPi / 3, 2 * kPi / 3,
                                                     2 * kPi / 3);
    for (double x : a) CHECK(x == doctest::Approx(2 * kPi / 3).epsilon(1e-14));
    const std::array<double, 3> b = hole_fill_angles(kPi / 2, kPi / 2, kPi / 2);
    for (double x : b) CHECK(x == doctest::Approx(3 * kPi / 4).epsilon(1e-14));
}
