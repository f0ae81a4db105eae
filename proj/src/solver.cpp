#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpat {

namespace {

constexpr double kPi = std::numbers::pi;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double inf_norm(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s = std::max(s, std::abs(v));
    return s;
}

void remove_mean(std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    for (double& x : v) x -= m;
}

struct LineSearchFn {
    const std::function<double(const std::vector<double>&, std::vector<double>&)>& f;
    const std::vector<double>& x0;
    const std::vector<double>& dir;
    std::vector<double> xt, gt;

    double eval(double a, double& dphi) {
        xt.resize(x0.size());
        for (std::size_t i = 0; i < x0.size(); ++i) xt[i] = x0[i] + a * dir[i];
        const double v = f(xt, gt);
        dphi = dot(gt, dir);
        return v;
    }
};

// Strong Wolfe line search (bracket + zoom), c1 = 1e-4, c2 = 0.1.
double line_search(LineSearchFn& ls, double phi0, double dphi0, double a_init) {
    constexpr double c1 = 1e-4, c2 = 0.1;
    constexpr int kMaxSteps = 60;
    double a_prev = 0.0, phi_prev = phi0, dphi_prev = dphi0;
    double a = a_init;

    auto zoom = [&](double lo, double philo, double dphilo, double hi, double phihi) {
        for (int i = 0; i < kMaxSteps; ++i) {
            // quadratic interpolation, safeguarded by bisection
            double at = lo - 0.5 * dphilo * (hi - lo) * (hi - lo) /
                                 (phihi - philo - dphilo * (hi - lo));
            const double w = 0.1 * std::abs(hi - lo);
            if (!std::isfinite(at) || at < std::min(lo, hi) + w ||
                at > std::max(lo, hi) - w)
                at = 0.5 * (lo + hi);
            double dphit;
            const double phit = ls.eval(at, dphit);
            if (phit > phi0 + c1 * at * dphi0 || phit >= philo) {
                hi = at;
                phihi = phit;
            } else {
                if (std::abs(dphit) <= -c2 * dphi0) return at;
                if (dphit * (hi - lo) >= 0.0) {
                    hi = lo;
                    phihi = philo;
                }
                lo = at;
                philo = phit;
                dphilo = dphit;
            }
            if (std::abs(hi - lo) < 1e-16 * (1.0 + std::abs(lo))) return lo;
        }
        return lo;
    };

    for (int i = 0; i < kMaxSteps; ++i) {
        double dphi;
        const double phi = ls.eval(a, dphi);
        if (phi > phi0 + c1 * a * dphi0 || (i > 0 && phi >= phi_prev))
            return zoom(a_prev, phi_prev, dphi_prev, a, phi);
        if (std::abs(dphi) <= -c2 * dphi0) return a;
        if (dphi >= 0.0) return zoom(a, phi, dphi, a_prev, phi_prev);
        a_prev = a;
        phi_prev = phi;
        dphi_prev = dphi;
        a *= 2.0;
    }
    return a_prev;
}

}  // namespace

CgReport minimize_cg(
    const std::function<double(const std::vector<double>&, std::vector<double>&)>& f,
    std::vector<double>& x, const SolveOptions& opt, int restart_every) {
    CgReport rep;
    const std::size_t n = x.size();
    std::vector<double> g(n), g_prev(n), d(n);
    double value = f(x, g);
    rep.gradient_inf_norm = inf_norm(g);
    for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
    double a_prev = 0.0;

    for (int it = 0; it < opt.max_iterations; ++it) {
        rep.iterations = it;
        if (rep.gradient_inf_norm <= opt.tolerance) {
            rep.converged = true;
            break;
        }
        if (inf_norm(x) > opt.divergence_norm) {
            rep.diverged = true;
            break;
        }
        double dphi0 = dot(g, d);
        if (dphi0 >= 0.0) {  // not a descent direction: restart on steepest
            for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
            dphi0 = dot(g, d);
            if (dphi0 >= 0.0) {
                rep.converged = rep.gradient_inf_norm <= opt.tolerance;
                break;
            }
        }
        double a_init = (a_prev > 0.0) ? a_prev : 1.0 / (1.0 + rep.gradient_inf_norm);
        LineSearchFn ls{f, x, d, {}, {}};
        const double a = line_search(ls, value, dphi0, a_init);
        if (!(a > 0.0)) {
            rep.converged = rep.gradient_inf_norm <= opt.tolerance;
            break;
        }
        a_prev = a;
        for (std::size_t i = 0; i < n; ++i) x[i] += a * d[i];
        g_prev = g;
        value = f(x, g);
        rep.gradient_inf_norm = inf_norm(g);

        // Polak–Ribière with nonnegativity safeguard and periodic restart
        double beta = 0.0;
        if (restart_every <= 0 || (it + 1) % restart_every != 0) {
            double num = 0.0;
            for (std::size_t i = 0; i < n; ++i) num += g[i] * (g[i] - g_prev[i]);
            const double den = dot(g_prev, g_prev);
            if (den > 0.0) beta = std::max(0.0, num / den);
        }
        for (std::size_t i = 0; i < n; ++i) d[i] = -g[i] + beta * d[i];
    }
    rep.value = value;
    if (rep.gradient_inf_norm <= opt.tolerance) rep.converged = true;
    return rep;
}

namespace {

// Solve A x = b in place by Gaussian elimination with partial pivoting.
bool solve_linear(std::vector<double> a, std::vector<double> b,
                  std::vector<double>& x) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        if (std::abs(a[pivot * n + col]) < 1e-300) return false;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
        x[r] = s / a[r * n + r];
    }
    return true;
}

// Local Newton refinement on the Euler–Lagrange system; backtracks on the
// gradient norm, so it only ever moves toward the critical point.  The CG
// phase stalls once objective decreases drop below machine precision; the
// gradient itself stays meaningful much further.
void newton_polish(const PatternProblem& p, std::vector<double>& rho, double tol) {
    const std::size_t F = p.phi.size();
    EnergyReport er = energy_eval(p, rho);
    for (int step = 0; step < 40 && er.gradient_inf_norm > tol; ++step) {
        std::vector<double> h = hessian_matrix(p, rho);
        if (p.geometry == Geometry::kEuclidean) {
            // the all-ones direction is a null vector; shifting it away keeps
            // the system regular and the update mean-free
            double trace = 0.0;
            for (std::size_t i = 0; i < F; ++i) trace += h[i * F + i];
            const double mu = std::max(trace / static_cast<double>(F), 1e-8);
            for (std::size_t r = 0; r < F; ++r)
                for (std::size_t c = 0; c < F; ++c)
                    h[r * F + c] += mu / static_cast<double>(F);
        }
        std::vector<double> neg_g(F), delta;
        for (std::size_t i = 0; i < F; ++i) neg_g[i] = -er.gradient[i];
        if (!solve_linear(std::move(h), std::move(neg_g), delta)) return;
        double alpha = 1.0;
        bool accepted = false;
        for (int half = 0; half < 30 && !accepted; ++half, alpha *= 0.5) {
            std::vector<double> cand(F);
            for (std::size_t i = 0; i < F; ++i) cand[i] = rho[i] + alpha * delta[i];
            EnergyReport trial;
            try {
                trial = energy_eval(p, cand);
            } catch (const std::exception&) {
                continue;
            }
            if (trial.gradient_inf_norm < er.gradient_inf_norm) {
                rho = std::move(cand);
                er = std::move(trial);
                accepted = true;
            }
        }
        if (!accepted) return;
    }
}

}  // namespace

SolveResult solve(const PatternProblem& p, std::vector<double> rho0,
                  const SolveOptions& opt) {
    p.validate();
    const std::size_t F = p.phi.size();
    rho0.resize(F, 0.0);
    SolveResult res;

    if (p.geometry == Geometry::kHyperbolic) {
        // Strict slack ΣΦ < Σ 2(π−θ) is necessary: without it the functional
        // decreases forever along ρ → −∞·1 and flattens out, so a small
        // gradient there would masquerade as convergence.
        double balance = 0.0;
        for (double f : p.phi) balance += f;
        for (int k = 0; k < p.surface.num_edges(); ++k)
            if (p.surface.edge_is_interior(k))
                balance -= 2.0 * (kPi - p.theta[static_cast<std::size_t>(k)]);
        if (balance > -1e-9) {
            res.infeasible_detected = true;
            res.rho = std::move(rho0);
            res.message =
                "cone angles leave no slack against the crossing angle total";
            return res;
        }
        auto obj = [&](const std::vector<double>& x, std::vector<double>& g) {
            EnergyReport er = energy_eval(p, x);
            g = er.gradient;
            return er.value;
        };
        CgReport cg = minimize_cg(obj, rho0, opt, static_cast<int>(F));
        if (!cg.diverged) newton_polish(p, rho0, opt.tolerance);
        res.rho = std::move(rho0);
        res.gradient_inf_norm = energy_eval(p, res.rho).gradient_inf_norm;
        res.iterations = cg.iterations;
        res.converged = res.gradient_inf_norm <= opt.tolerance;
        res.diverged = cg.diverged;
    } else if (p.geometry == Geometry::kEuclidean) {
        // A critical point requires ΣΦ = Σ 2(π−θ): the functional is invariant
        // under adding a constant to ρ, so the linear part must vanish on 1_F.
        double balance = 0.0;
        for (double f : p.phi) balance += f;
        for (int k = 0; k < p.surface.num_edges(); ++k)
            if (p.surface.edge_is_interior(k))
                balance -= 2.0 * (kPi - p.theta[static_cast<std::size_t>(k)]);
        if (std::abs(balance) > 1e-9) {
            res.infeasible_detected = true;
            res.rho = std::move(rho0);
            res.message = "cone angles violate the scale-invariance balance";
            return res;
        }
        remove_mean(rho0);
        auto obj = [&](const std::vector<double>& x, std::vector<double>& g) {
            EnergyReport er = energy_eval(p, x);
            g = er.gradient;
            remove_mean(g);
            return er.value;
        };
        CgReport cg = minimize_cg(obj, rho0, opt, static_cast<int>(F));
        if (!cg.diverged) newton_polish(p, rho0, opt.tolerance);
        remove_mean(rho0);  // keep the gauge exactly
        res.rho = std::move(rho0);
        {
            EnergyReport er = energy_eval(p, res.rho);
            remove_mean(er.gradient);
            res.gradient_inf_norm = 0.0;
            for (double g : er.gradient)
                res.gradient_inf_norm = std::max(res.gradient_inf_norm, std::abs(g));
        }
        res.iterations = cg.iterations;
        res.converged = res.gradient_inf_norm <= opt.tolerance;
        res.diverged = cg.diverged;
    } else {
        remove_mean(rho0);
        bool bracket_failed = false;
        double last_t = 0.0;
        auto obj = [&](const std::vector<double>& x, std::vector<double>& g) {
            ReducedSphericalReport rr = spherical_reduced(p, x);
            if (!rr.bracket_ok) {
                bracket_failed = true;
                g.assign(x.size(), 0.0);
                return 0.0;
            }
            last_t = rr.t_star;
            g = rr.gradient;
            remove_mean(g);
            return rr.value;
        };
        CgReport cg = minimize_cg(obj, rho0, opt, static_cast<int>(F));
        if (bracket_failed) {
            res.converged = false;
            res.message = "inner maximization bracket failed";
            res.rho = std::move(rho0);
            return res;
        }
        for (double& r : rho0) r += last_t;  // add the inner shift back
        res.t_star = last_t;
        if (!cg.diverged) newton_polish(p, rho0, opt.tolerance);
        res.rho = std::move(rho0);
        // report the full (unprojected) residual at the shifted point
        EnergyReport er = energy_eval(p, res.rho);
        res.gradient_inf_norm = er.gradient_inf_norm;
        res.iterations = cg.iterations;
        res.converged = res.gradient_inf_norm <= opt.tolerance;
        res.diverged = cg.diverged;
    }
    if (res.diverged) res.message = "iterates diverged: problem looks infeasible";
    return res;
}

}  // namespace cpat
