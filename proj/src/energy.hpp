#pragma once

#include <array>
#include <string>
#include <vector>

#include "surface.hpp"

namespace cpat {

enum class Geometry { kEuclidean, kHyperbolic, kSpherical };

std::string geometry_name(Geometry g);
Geometry geometry_from_name(const std::string& name);

// A circle pattern problem: a surface with a crossing angle θ_e per interior
// edge and a target cone angle Φ_f per face.
struct PatternProblem {
    CellularSurface surface;
    Geometry geometry = Geometry::kEuclidean;
    std::vector<double> theta;  // per unoriented edge (ignored on hole edges)
    std::vector<double> phi;    // per unoriented face

    void validate() const;  // throws std::invalid_argument on bad data
};

// Circle radius r from the logarithmic radius coordinate ρ:
//   euclidean r = e^ρ, hyperbolic r = 2 artanh e^ρ (ρ<0),
//   spherical r = 2 arctan e^ρ.
double radius_from_rho(Geometry g, double rho);
double rho_from_radius(Geometry g, double r);

// Half of the kite angle at the left circle center: the angle under which the
// kite of an edge with crossing angle θ appears from the center with log
// radius ρ_left when the opposite center has log radius ρ_right.
double kite_half_angle(Geometry g, double theta, double rho_left, double rho_right);

// Log radius differences / values from given half angles (local inverses).
double rho_difference_from_half_angle_euclidean(double theta, double phi_e);
double rho_from_half_angles_hyperbolic(double theta, double phi1, double phi2);
double rho_from_half_angles_spherical(double theta, double phi1, double phi2);

struct EnergyReport {
    double value = 0.0;
    std::vector<double> gradient;  // per unoriented face
    double gradient_inf_norm = 0.0;
};

// The circle pattern functional of the problem's geometry and its gradient
// ∂S/∂ρ_f = Φ_f − 2 Σ φ_e over the oriented edges with left face f.
EnergyReport energy_eval(const PatternProblem& p, const std::vector<double>& rho);

// Second derivative quadratic form S''(ρ)[u, u].
double hessian_quadratic_form(const PatternProblem& p,
                              const std::vector<double>& rho,
                              const std::vector<double>& u);

// Dense Hessian matrix of the functional, row-major F × F.
std::vector<double> hessian_matrix(const PatternProblem& p,
                                   const std::vector<double>& rho);

// Target total area from the combinatorial Gauss–Bonnet relation
//   A + Σ_v (2π − Θ_v) + Σ_f (2π − Φ_f) = 2π (|F| − |E| + |V|).
double target_area(const PatternProblem& p);

// A − Σ_e 4 f_{π−θ_e}(ρ_j + ρ_k):  the defect of the spherical kite areas at ρ.
double area_defect(const PatternProblem& p, const std::vector<double>& rho);

struct ReducedSphericalReport {
    double value = 0.0;
    std::vector<double> gradient;  // on the full coordinate space
    double gradient_inf_norm = 0.0;
    double t_star = 0.0;
    bool bracket_ok = true;
};

// S̃(ρ) = max_t S_sph(ρ + t·1) with the maximizing shift and the gradient
// ∇S_sph(ρ + t*·1) (the envelope derivative).
ReducedSphericalReport spherical_reduced(const PatternProblem& p,
                                         const std::vector<double>& rho);

// An angle system assigns φ to every oriented side of every interior edge:
// index 2m for oriented edge 4k, 2m+1 for 4k+2, where k is the m-th interior
// edge in ascending order.
struct AngleSystem {
    std::vector<double> phi;
};

// Half angles induced by log radii.
AngleSystem angles_from_rho(const PatternProblem& p, const std::vector<double>& rho);

// Legendre dual functional
// Ŝ(φ) = Σ_e [Cl(θ*+φ_e−φ_-e) + Cl(θ*−φ_e+φ_-e) + Cl(θ*+φ_e+φ_-e)
//             + Cl(θ*−φ_e−φ_-e) − 2Cl(2θ*)].
double s_hat(const PatternProblem& p, const AngleSystem& a);

// Partial derivatives of Ŝ with respect to each φ entry (finite away from the
// euclidean boundary φ_e + φ_-e = θ*).
std::vector<double> s_hat_gradient(const PatternProblem& p, const AngleSystem& a);

// On euclidean-coherent systems Ŝ reduces to Σ_e [Cl(2φ_e)+Cl(2φ_-e)−Cl(2θ*)]
// whose partials are −2 log(2 sin φ_e).
std::vector<double> s_hat_gradient_euclidean(const PatternProblem& p,
                                             const AngleSystem& a);

// Hyperbolic triangulation functional: one term per triangle,
// V(α) = ½[Cl(2α1)+Cl(2α2)+Cl(2α3)+Cl(π+α1−α2−α3)+Cl(π−α1+α2−α3)
//          +Cl(π−α1−α2+α3)+Cl(π−α1−α2−α3)].
double leibon_v(double a1, double a2, double a3);
double leibon_h(const std::vector<std::array<double, 3>>& triangles);

// Hyperbolic side length opposite the first angle:
// sinh²(l/2) = cos((α1+α2+α3)/2)·cos((−α1+α2+α3)/2)/(sin α2 sin α3).
double leibon_side_length(double a1, double a2, double a3);

enum class VolumeRegime { kEuclidean, kHyperbolic, kSpherical };

struct VolumeReport {
    double value = 0.0;
    VolumeRegime regime = VolumeRegime::kEuclidean;
};

// Volume of the ideal/hyperideal kite polyhedron for crossing angle θ and
// half angles φ1, φ2; the regime follows the sign of φ1+φ2−(π−θ) with a
// 1e−12 snap band.
VolumeReport volume_p(double theta, double phi1, double phi2);

// The Clausen expression of one regime, evaluated regardless of where
// (φ1, φ2) lies; volume_p selects the regime and delegates here.
double volume_p_formula(VolumeRegime regime, double theta, double phi1,
                        double phi2);

// Volume of the orthoscheme with essential angles α ≤ β:
//   ⅛ (2Cl(π−2α) + Cl(2α−2β) + Cl(2α+2β)),  0 < α ≤ β < π/2.
double orthoscheme_volume(double alpha, double beta);

}  // namespace cpat
