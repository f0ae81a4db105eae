#include "energy.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specfun.hpp"

namespace cpat {

namespace {
constexpr double kPi = std::numbers::pi;

struct InteriorEdge {
    int k;        // unoriented edge index
    int fj, fk;   // unoriented faces left of 4k and of 4k+2
    double theta;
};

std::vector<InteriorEdge> interior(const PatternProblem& p) {
    std::vector<InteriorEdge> out;
    for (int k = 0; k < p.surface.num_edges(); ++k) {
        if (!p.surface.edge_is_interior(k)) continue;
        out.push_back({k, p.surface.left_face(4 * k) / 2,
                       p.surface.left_face(4 * k + 2) / 2,
                       p.theta[static_cast<std::size_t>(k)]});
    }
    return out;
}

}  // namespace

std::string geometry_name(Geometry g) {
    switch (g) {
        case Geometry::kEuclidean: return "euclidean";
        case Geometry::kHyperbolic: return "hyperbolic";
        case Geometry::kSpherical: return "spherical";
    }
    return "?";
}

Geometry geometry_from_name(const std::string& name) {
    if (name == "euclidean" || name == "euc") return Geometry::kEuclidean;
    if (name == "hyperbolic" || name == "hyp") return Geometry::kHyperbolic;
    if (name == "spherical" || name == "sph") return Geometry::kSpherical;
    throw std::invalid_argument("unknown geometry: " + name);
}

void PatternProblem::validate() const {
    if (static_cast<int>(theta.size()) != surface.num_edges())
        throw std::invalid_argument("theta length must equal the edge count");
    if (static_cast<int>(phi.size()) != surface.num_faces())
        throw std::invalid_argument("phi length must equal the face count");
    for (int k = 0; k < surface.num_edges(); ++k)
        if (surface.edge_is_interior(k)) {
            const double t = theta[static_cast<std::size_t>(k)];
            if (!(t > 0.0 && t < kPi))
                throw std::invalid_argument("theta outside (0, pi) on an interior edge");
        }
    for (double f : phi)
        if (!(f > 0.0)) throw std::invalid_argument("phi must be positive");
}

double radius_from_rho(Geometry g, double rho) {
    switch (g) {
        case Geometry::kEuclidean: return std::exp(rho);
        case Geometry::kHyperbolic:
            if (!(rho < 0.0))
                throw std::domain_error("hyperbolic radius needs rho < 0");
            return 2.0 * std::atanh(std::exp(rho));
        case Geometry::kSpherical: return 2.0 * std::atan(std::exp(rho));
    }
    return 0.0;
}

double rho_from_radius(Geometry g, double r) {
    if (!(r > 0.0)) throw std::domain_error("radius must be positive");
    switch (g) {
        case Geometry::kEuclidean: return std::log(r);
        case Geometry::kHyperbolic: return std::log(std::tanh(0.5 * r));
        case Geometry::kSpherical:
            if (!(r < kPi)) throw std::domain_error("spherical radius needs r < pi");
            return std::log(std::tan(0.5 * r));
    }
    return 0.0;
}

double kite_half_angle(Geometry g, double theta, double rho_left, double rho_right) {
    const double d = rho_right - rho_left;
    switch (g) {
        case Geometry::kEuclidean: return f_theta(theta, d);
        case Geometry::kHyperbolic:
            return f_theta(theta, d) - f_theta(theta, rho_right + rho_left);
        case Geometry::kSpherical:
            return f_theta(theta, d) + f_theta(kPi - theta, rho_right + rho_left);
    }
    return 0.0;
}

double rho_difference_from_half_angle_euclidean(double theta, double phi_e) {
    return f_theta_inverse(theta, phi_e);
}

double rho_from_half_angles_hyperbolic(double theta, double phi1, double phi2) {
    const double ts = kPi - theta;
    if (!(phi1 > 0.0 && phi2 > 0.0 && phi1 + phi2 < ts))
        throw std::domain_error("hyperbolic half angles need phi1+phi2 < pi-theta");
    const double num = std::sin(0.5 * (ts - phi1 - phi2)) * std::sin(0.5 * (ts - phi1 + phi2));
    const double den = std::sin(0.5 * (ts + phi1 + phi2)) * std::sin(0.5 * (ts + phi1 - phi2));
    return 0.5 * std::log(num / den);
}

double rho_from_half_angles_spherical(double theta, double phi1, double phi2) {
    const double ts = kPi - theta;
    if (!(phi1 + phi2 > ts && phi1 + phi2 < 2.0 * kPi - ts))
        throw std::domain_error(
            "spherical half angles need pi-theta < phi1+phi2 < pi+theta");
    const double num =
        std::sin(0.5 * (phi1 + phi2 - ts)) * std::sin(0.5 * (ts - phi1 + phi2));
    const double den = std::sin(0.5 * (ts + phi1 + phi2)) * std::sin(0.5 * (ts + phi1 - phi2));
    return 0.5 * std::log(num / den);
}

EnergyReport energy_eval(const PatternProblem& p, const std::vector<double>& rho) {
    const auto edges = interior(p);
    EnergyReport rep;
    rep.gradient.assign(p.phi.size(), 0.0);
    double value = 0.0;
    for (const auto& e : edges) {
        const double rj = rho[static_cast<std::size_t>(e.fj)];
        const double rk = rho[static_cast<std::size_t>(e.fk)];
        const double d = rk - rj, s = rj + rk;
        switch (p.geometry) {
            case Geometry::kEuclidean:
                value += im_li(e.theta, d) + im_li(e.theta, -d) - (kPi - e.theta) * s;
                break;
            case Geometry::kHyperbolic:
                value += im_li(e.theta, d) + im_li(e.theta, -d) + im_li(e.theta, s) +
                         im_li(e.theta, -s);
                break;
            case Geometry::kSpherical:
                value += im_li(e.theta, d) + im_li(e.theta, -d) -
                         im_li(kPi - e.theta, s) - im_li(kPi - e.theta, -s) - kPi * s;
                break;
        }
        rep.gradient[static_cast<std::size_t>(e.fj)] -=
            2.0 * kite_half_angle(p.geometry, e.theta, rj, rk);
        rep.gradient[static_cast<std::size_t>(e.fk)] -=
            2.0 * kite_half_angle(p.geometry, e.theta, rk, rj);
    }
    for (std::size_t f = 0; f < p.phi.size(); ++f) {
        value += p.phi[f] * rho[f];
        rep.gradient[f] += p.phi[f];
    }
    rep.value = value;
    for (double g : rep.gradient)
        rep.gradient_inf_norm = std::max(rep.gradient_inf_norm, std::abs(g));
    return rep;
}

double hessian_quadratic_form(const PatternProblem& p,
                              const std::vector<double>& rho,
                              const std::vector<double>& u) {
    double q = 0.0;
    for (const auto& e : interior(p)) {
        const double rj = rho[static_cast<std::size_t>(e.fj)];
        const double rk = rho[static_cast<std::size_t>(e.fk)];
        const double uj = u[static_cast<std::size_t>(e.fj)];
        const double uk = u[static_cast<std::size_t>(e.fk)];
        const double st = std::sin(e.theta), ct = std::cos(e.theta);
        const double diff =
            st / (std::cosh(rk - rj) - ct) * (uk - uj) * (uk - uj);
        const double sum_arg = rj + rk;
        switch (p.geometry) {
            case Geometry::kEuclidean: q += diff; break;
            case Geometry::kHyperbolic:
                q += diff + st / (std::cosh(sum_arg) - ct) * (uj + uk) * (uj + uk);
                break;
            case Geometry::kSpherical:
                q += diff - st / (std::cosh(sum_arg) + ct) * (uj + uk) * (uj + uk);
                break;
        }
    }
    return q;
}

std::vector<double> hessian_matrix(const PatternProblem& p,
                                   const std::vector<double>& rho) {
    const std::size_t F = p.phi.size();
    std::vector<double> h(F * F, 0.0);
    const auto add = [&](int r, int c, double v) {
        h[static_cast<std::size_t>(r) * F + static_cast<std::size_t>(c)] += v;
    };
    for (const auto& e : interior(p)) {
        const double rj = rho[static_cast<std::size_t>(e.fj)];
        const double rk = rho[static_cast<std::size_t>(e.fk)];
        const double st = std::sin(e.theta), ct = std::cos(e.theta);
        // c_d (u_k − u_j)² + sign·c_s (u_j + u_k)²
        const double cd = st / (std::cosh(rk - rj) - ct);
        double cs = 0.0;
        if (p.geometry == Geometry::kHyperbolic)
            cs = st / (std::cosh(rj + rk) - ct);
        else if (p.geometry == Geometry::kSpherical)
            cs = -st / (std::cosh(rj + rk) + ct);
        add(e.fj, e.fj, cd + cs);
        add(e.fk, e.fk, cd + cs);
        add(e.fj, e.fk, -cd + cs);
        add(e.fk, e.fj, -cd + cs);
    }
    return h;
}

double target_area(const PatternProblem& p) {
    const auto& s = p.surface;
    const int chi = s.num_faces() - s.num_edges() + s.num_vertices();
    double sum_theta = 0.0;
    int interior_count = 0;
    for (int k = 0; k < s.num_edges(); ++k)
        if (s.edge_is_interior(k)) {
            sum_theta += p.theta[static_cast<std::size_t>(k)];
            ++interior_count;
        }
    double sum_phi = 0.0;
    for (double f : p.phi) sum_phi += f;
    // A = 2πχ − Σ_v(2π−Θ_v) − Σ_f(2π−Φ_f)  with Σ_v Θ_v = 2 Σ_e θ_e
    return 2.0 * kPi * chi - 2.0 * kPi * s.num_vertices() + 2.0 * sum_theta -
           2.0 * kPi * s.num_faces() + sum_phi;
}

double area_defect(const PatternProblem& p, const std::vector<double>& rho) {
    double area = 0.0;
    for (const auto& e : interior(p))
        area += 4.0 * f_theta(kPi - e.theta,
                              rho[static_cast<std::size_t>(e.fj)] +
                                  rho[static_cast<std::size_t>(e.fk)]);
    return target_area(p) - area;
}

ReducedSphericalReport spherical_reduced(const PatternProblem& p,
                                         const std::vector<double>& rho) {
    if (p.geometry != Geometry::kSpherical)
        throw std::invalid_argument("spherical_reduced needs a spherical problem");
    ReducedSphericalReport rep;
    const auto edges = interior(p);
    const double A = target_area(p);
    auto dg = [&](double t) {
        double area = 0.0;
        for (const auto& e : edges)
            area += 4.0 * f_theta(kPi - e.theta,
                                  rho[static_cast<std::size_t>(e.fj)] +
                                      rho[static_cast<std::size_t>(e.fk)] + 2.0 * t);
        return A - area;
    };
    double lo = -40.0, hi = 40.0;
    if (!(dg(lo) > 0.0 && dg(hi) < 0.0)) {
        rep.bracket_ok = false;
        return rep;
    }
    // d/dt is strictly decreasing: Newton with bisection safeguard
    double t = 0.0;
    if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double d = dg(t);
        if (d > 0.0) lo = t; else hi = t;
        double d2 = 0.0;
        for (const auto& e : edges)
            d2 -= 8.0 * f_theta_derivative(kPi - e.theta,
                                           rho[static_cast<std::size_t>(e.fj)] +
                                               rho[static_cast<std::size_t>(e.fk)] +
                                               2.0 * t);
        double tn = (d2 < 0.0) ? t - d / d2 : 0.5 * (lo + hi);
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
        if (std::abs(tn - t) < 1e-15 * (1.0 + std::abs(t))) {
            t = tn;
            break;
        }
        t = tn;
    }
    rep.t_star = t;
    std::vector<double> shifted(rho);
    for (double& r : shifted) r += t;
    EnergyReport er = energy_eval(p, shifted);
    rep.value = er.value;
    rep.gradient = std::move(er.gradient);
    rep.gradient_inf_norm = er.gradient_inf_norm;
    return rep;
}

AngleSystem angles_from_rho(const PatternProblem& p, const std::vector<double>& rho) {
    AngleSystem a;
    for (const auto& e : interior(p)) {
        const double rj = rho[static_cast<std::size_t>(e.fj)];
        const double rk = rho[static_cast<std::size_t>(e.fk)];
        a.phi.push_back(kite_half_angle(p.geometry, e.theta, rj, rk));
        a.phi.push_back(kite_half_angle(p.geometry, e.theta, rk, rj));
    }
    return a;
}

double s_hat(const PatternProblem& p, const AngleSystem& a) {
    double v = 0.0;
    std::size_t m = 0;
    for (const auto& e : interior(p)) {
        const double ts = kPi - e.theta;
        const double pe = a.phi[2 * m], pr = a.phi[2 * m + 1];
        v += clausen(ts + pe - pr) + clausen(ts - pe + pr) + clausen(ts + pe + pr) +
             clausen(ts - pe - pr) - 2.0 * clausen(2.0 * ts);
        ++m;
    }
    return v;
}

std::vector<double> s_hat_gradient(const PatternProblem& p, const AngleSystem& a) {
    std::vector<double> g(a.phi.size(), 0.0);
    auto lg = [](double x) { return std::log(std::abs(2.0 * std::sin(0.5 * x))); };
    std::size_t m = 0;
    for (const auto& e : interior(p)) {
        const double ts = kPi - e.theta;
        const double pe = a.phi[2 * m], pr = a.phi[2 * m + 1];
        const double d = pe - pr, s = pe + pr;
        // Cl'(x) = −log|2 sin(x/2)|
        g[2 * m] = -lg(ts + d) + lg(ts - d) - lg(ts + s) + lg(ts - s);
        g[2 * m + 1] = lg(ts + d) - lg(ts - d) - lg(ts + s) + lg(ts - s);
        ++m;
    }
    return g;
}

std::vector<double> s_hat_gradient_euclidean(const PatternProblem& p,
                                             const AngleSystem& a) {
    std::vector<double> g(a.phi.size(), 0.0);
    for (std::size_t i = 0; i < a.phi.size(); ++i)
        g[i] = -2.0 * std::log(2.0 * std::sin(a.phi[i]));
    (void)p;
    return g;
}

double leibon_v(double a1, double a2, double a3) {
    return 0.5 * (clausen(2.0 * a1) + clausen(2.0 * a2) + clausen(2.0 * a3) +
                  clausen(kPi + a1 - a2 - a3) + clausen(kPi - a1 + a2 - a3) +
                  clausen(kPi - a1 - a2 + a3) + clausen(kPi - a1 - a2 - a3));
}

double leibon_h(const std::vector<std::array<double, 3>>& triangles) {
    double h = 0.0;
    for (const auto& t : triangles) h += leibon_v(t[0], t[1], t[2]);
    return h;
}

double leibon_side_length(double a1, double a2, double a3) {
    const double num = std::cos(0.5 * (a1 + a2 + a3)) * std::cos(0.5 * (-a1 + a2 + a3));
    const double den = std::sin(a2) * std::sin(a3);
    if (!(num > 0.0 && den > 0.0))
        throw std::domain_error("leibon_side_length: angles outside the valid range");
    return 2.0 * std::asinh(std::sqrt(num / den));
}

double volume_p_formula(VolumeRegime regime, double theta, double phi1,
                        double phi2) {
    const double ts = kPi - theta;
    if (regime == VolumeRegime::kEuclidean)
        return 0.5 * clausen(2.0 * phi1) + 0.5 * clausen(2.0 * phi2);
    const double bracket = clausen(ts + phi1 - phi2) + clausen(ts - phi1 + phi2) +
                           clausen(ts + phi1 + phi2) + clausen(ts - phi1 - phi2) -
                           2.0 * clausen(2.0 * ts);
    return regime == VolumeRegime::kHyperbolic ? bracket : 0.5 * bracket;
}

VolumeReport volume_p(double theta, double phi1, double phi2) {
    const double ts = kPi - theta;
    const double s = phi1 + phi2;
    VolumeReport out;
    if (std::abs(s - ts) <= 1e-12)
        out.regime = VolumeRegime::kEuclidean;
    else
        out.regime = s < ts ? VolumeRegime::kHyperbolic : VolumeRegime::kSpherical;
    out.value = volume_p_formula(out.regime, theta, phi1, phi2);
    return out;
}

double orthoscheme_volume(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha <= beta && beta < 0.5 * kPi))
        throw std::domain_error("orthoscheme_volume needs 0 < alpha <= beta < pi/2");
    return 0.125 * (2.0 * clausen(kPi - 2.0 * alpha) + clausen(2.0 * alpha - 2.0 * beta) +
                    clausen(2.0 * alpha + 2.0 * beta));
}

}  // namespace cpat
