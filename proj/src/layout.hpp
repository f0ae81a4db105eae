#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "energy.hpp"

namespace cpat {

using Complex = std::complex<double>;

// A point of the complex projective line as a homogeneous pair, kept
// normalized to unit maximum modulus.
struct ProjectivePoint {
    Complex z1{0.0, 0.0}, z2{1.0, 0.0};

    static ProjectivePoint from_complex(Complex z) { return normalized({z, 1.0}); }
    static ProjectivePoint infinity() { return {Complex{1.0}, Complex{0.0}}; }
    static ProjectivePoint normalized(ProjectivePoint p);

    bool is_infinite(double tol = 1e-14) const { return std::abs(z2) <= tol; }
    Complex value() const { return z1 / z2; }
};

// chordal distance on the Riemann sphere, |z-w| / sqrt((1+|z|²)(1+|w|²))
double chordal_distance(const ProjectivePoint& a, const ProjectivePoint& b);

struct MoebiusMap {
    Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

    ProjectivePoint apply(const ProjectivePoint& p) const;
    MoebiusMap then(const MoebiusMap& second) const;  // second ∘ this
    MoebiusMap inverse() const;                       // adjugate
    MoebiusMap normalized() const;                    // unit max modulus

    static MoebiusMap identity() { return {}; }
    // rotation about the model origin and advance along the positive axis
    static MoebiusMap rotation(Geometry g, double alpha);
    static MoebiusMap advance(Geometry g, double distance);
};

MoebiusMap compose(const MoebiusMap& outer, const MoebiusMap& inner);

// A circle as a Hermitian 2x2 form  [h11, h12; conj(h12), h22]  with negative
// determinant; points satisfy  h11 |z|² + 2 Re(conj(h12) z) + h22 = 0.
struct HermitianCircle {
    double h11 = 1.0;
    Complex h12{0.0};
    double h22 = -1.0;

    double det() const { return h11 * h22 - std::norm(h12); }
    // image under a Moebius transformation of the points
    HermitianCircle transformed(const MoebiusMap& m) const;
};

// The circle of given center and radius in the model plane of the geometry
// (unit disk for hyperbolic, stereographic plane for spherical).
HermitianCircle circle_from_center_radius(Geometry g, const ProjectivePoint& center,
                                          double radius);

// Exterior intersection angle of two circles, in [0, π]; throws if disjoint.
double intersection_angle(const HermitianCircle& c1, const HermitianCircle& c2);

// geodesic distance between model points
double model_distance(Geometry g, const ProjectivePoint& a, const ProjectivePoint& b);

struct LayoutResult {
    Geometry geometry = Geometry::kEuclidean;
    std::vector<std::optional<ProjectivePoint>> centers;   // per face
    std::vector<std::optional<ProjectivePoint>> vertices;  // per vertex
    std::vector<std::optional<HermitianCircle>> circles;   // per face
    double holonomy_residual = 0.0;
    std::vector<MoebiusMap> holonomies;  // nontrivial path mismatches
    // measured circle intersection angle per unoriented edge, evaluated with
    // both circles developed into one chart; NaN on hole edges
    std::vector<double> edge_angles;
};

// Develop the circle pattern of a solved problem into the model plane,
// breadth-first from the lowest-index oriented edge; contractible closure
// mismatches accumulate in holonomy_residual, nontrivial ones are recorded.
LayoutResult layout_pattern(const PatternProblem& p, const std::vector<double>& rho);

// stereographic projection from the north pole, z = (x1 + i x2)/(1 − x3)
ProjectivePoint stereographic_to_plane(const std::array<double, 3>& x);
std::array<double, 3> stereographic_to_sphere(const ProjectivePoint& z);

// spherical distance between unit vectors
double sphere_distance(const std::array<double, 3>& a, const std::array<double, 3>& b);

// A Moebius transformation T with Σ T(v_j) = 0 for n >= 3 distinct sphere
// points, unique up to post-rotation.
MoebiusMap normalize_moebius(const std::vector<std::array<double, 3>>& points,
                             double tolerance = 1e-11);

std::array<double, 3> apply_to_sphere(const MoebiusMap& m,
                                      const std::array<double, 3>& v);

}  // namespace cpat
