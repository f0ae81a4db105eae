#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace cpat {

// Chebyshev series approximation of a function on [a, b].
// Coefficients follow the usual convention: f(x) ~ sum_j c[j] T_j(t) - c[0]/2
// with t the affine image of x in [-1, 1].
class ChebyshevSeries {
public:
    ChebyshevSeries() = default;
    ChebyshevSeries(double a, double b, std::vector<double> coeffs);

    // Fit `f` sampled at n Chebyshev nodes, then truncate trailing
    // coefficients smaller than `drop_below` in absolute value.
    template <class F>
    static ChebyshevSeries fit(double a, double b, int n, F&& f,
                               double drop_below = 0.0);

    double evaluate(double x) const;           // Clenshaw recurrence
    ChebyshevSeries antiderivative() const;    // vanishing at x = a
    ChebyshevSeries derivative() const;

    double lower() const { return a_; }
    double upper() const { return b_; }
    const std::vector<double>& coefficients() const { return c_; }

private:
    double a_ = -1.0, b_ = 1.0;
    std::vector<double> c_;
};

// Clausen's integral Cl(x) = -∫_0^x log|2 sin(t/2)| dt, odd and 2π-periodic.
// Absolute error below 1e-13 everywhere.
double clausen(double x);

// Catalan's constant, Cl(π/2).
double catalan_constant();

// The angle function f_θ(x) = (1/2i) log((1 - e^{x-iθ})/(1 - e^{x+iθ})),
// with the branch taking values in (0, π - θ).  θ ∈ (0, π).
double f_theta(double theta, double x);

// d/dx f_θ(x) = sin θ / (2 (cosh x - cos θ)) > 0.
double f_theta_derivative(double theta, double x);

// Inverse of x ↦ f_θ(x):  f_theta_inverse(θ, y) = log(sin y / sin(y + θ))
// for y ∈ (0, π - θ).
double f_theta_inverse(double theta, double y);

// Im Li₂(e^{x+iθ}) for θ ∈ (0, π), evaluated through Clausen's integral:
//   Im Li₂(e^{x+iθ}) = y·x + ½Cl(2y) - ½Cl(2y + 2θ) + ½Cl(2θ),  y = f_θ(x).
double im_li(double theta, double x);

// The symmetric combination Im Li₂(e^{x+iθ}) + Im Li₂(e^{-x+iθ}),
// evaluated directly:  p·x + Cl(p + θ*) + Cl(-p + θ*) - Cl(2θ*) with
// θ* = π - θ and tan(p/2) = tanh(x/2) tan(θ*/2) ... p ∈ (-θ*, θ*).
double im_li_symmetric(double theta, double x);

// --- template implementation -------------------------------------------------

template <class F>
ChebyshevSeries ChebyshevSeries::fit(double a, double b, int n, F&& f,
                                     double drop_below) {
    std::vector<double> fx(static_cast<std::size_t>(n));
    const double bma = 0.5 * (b - a);
    const double bpa = 0.5 * (b + a);
    for (int k = 0; k < n; ++k) {
        const double t = std::cos(3.14159265358979323846 * (k + 0.5) / n);
        fx[static_cast<std::size_t>(k)] = f(t * bma + bpa);
    }
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k)
            s += fx[static_cast<std::size_t>(k)] *
                 std::cos(3.14159265358979323846 * j * (k + 0.5) / n);
        c[static_cast<std::size_t>(j)] = 2.0 * s / n;
    }
    if (drop_below > 0.0) {
        std::size_t keep = c.size();
        while (keep > 1 && std::abs(c[keep - 1]) < drop_below) --keep;
        c.resize(keep);
    }
    return ChebyshevSeries(a, b, std::move(c));
}

}  // namespace cpat
