#include "specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpat {

namespace {
constexpr double kPi = std::numbers::pi;
}

ChebyshevSeries::ChebyshevSeries(double a, double b, std::vector<double> coeffs)
    : a_(a), b_(b), c_(std::move(coeffs)) {
    if (!(a < b)) throw std::invalid_argument("ChebyshevSeries: empty interval");
    if (c_.empty()) c_.push_back(0.0);
}

double ChebyshevSeries::evaluate(double x) const {
    const double t = (2.0 * x - a_ - b_) / (b_ - a_);
    const double t2 = 2.0 * t;
    double d = 0.0, dd = 0.0;
    for (std::size_t j = c_.size() - 1; j >= 1; --j) {
        const double sv = d;
        d = t2 * d - dd + c_[j];
        dd = sv;
    }
    return t * d - dd + 0.5 * c_[0];
}

ChebyshevSeries ChebyshevSeries::antiderivative() const {
    const std::size_t n = c_.size();
    std::vector<double> ci(n + 1, 0.0);
    const double con = 0.25 * (b_ - a_);
    for (std::size_t j = 1; j + 1 < n; ++j)
        ci[j] = con * (c_[j - 1] - c_[j + 1]) / static_cast<double>(j);
    if (n >= 2) ci[n - 1] = con * c_[n - 2] / static_cast<double>(n - 1);
    if (n >= 1) ci[n] = con * c_[n - 1] / static_cast<double>(n);
    ChebyshevSeries out(a_, b_, std::move(ci));
    // Fix the integration constant so the antiderivative vanishes at a.
    out.c_[0] -= 2.0 * out.evaluate(a_);
    return out;
}

ChebyshevSeries ChebyshevSeries::derivative() const {
    const std::size_t n = c_.size();
    std::vector<double> cd(n, 0.0);
    if (n >= 2) {
        cd[n - 1] = 0.0;
        if (n >= 2) cd[n - 2] = 2.0 * static_cast<double>(n - 1) * c_[n - 1];
        for (std::size_t j = n - 2; j >= 1; --j)
            cd[j - 1] = cd[j + 1] + 2.0 * static_cast<double>(j) * c_[j];
    }
    const double con = 2.0 / (b_ - a_);
    for (double& v : cd) v *= con;
    return ChebyshevSeries(a_, b_, std::move(cd));
}

namespace {

// Antiderivative of h(x) = -log(2 sin(x/2) / x), which is analytic on
// [-π, π]; the nearest singularities sit at ±2π, so 32 Chebyshev
// coefficients reach well below 1e-13.
const ChebyshevSeries& clausen_table() {
    static const ChebyshevSeries table = [] {
        auto h = [](double x) {
            if (std::abs(x) < 1e-150) return 0.0;
            return -std::log(2.0 * std::sin(0.5 * x) / x);
        };
        return ChebyshevSeries::fit(-kPi, kPi, 32, h, 1e-16).antiderivative();
    }();
    return table;
}

}  // namespace

double clausen(double x) {
    // Range-reduce to (-π, π].
    double r = std::remainder(x, 2.0 * kPi);
    if (r <= -kPi) r = kPi;
    if (r == 0.0) return 0.0;
    const ChebyshevSeries& h_int = clausen_table();
    const double integral = h_int.evaluate(r) - h_int.evaluate(0.0);
    return integral + r - r * std::log(std::abs(r));
}

double catalan_constant() { return clausen(0.5 * kPi); }

double f_theta(double theta, double x) {
    if (!(theta > 0.0 && theta < kPi))
        throw std::domain_error("f_theta: theta outside (0, pi)");
    const double s = std::sin(theta), c = std::cos(theta);
    if (x <= 0.0) {
        const double ex = std::exp(x);
        if (ex == 0.0) return 0.0;  // correction underflows: exact limit
        return std::atan2(ex * s, 1.0 - ex * c);
    }
    const double emx = std::exp(-x);
    if (emx == 0.0) return kPi - theta;  // exact limit at +infinity
    return std::atan2(s, emx - c);
}

double f_theta_derivative(double theta, double x) {
    return std::sin(theta) / (2.0 * (std::cosh(x) - std::cos(theta)));
}

double f_theta_inverse(double theta, double y) {
    if (!(y > 0.0 && y < kPi - theta))
        throw std::domain_error("f_theta_inverse: value outside (0, pi - theta)");
    return std::log(std::sin(y) / std::sin(y + theta));
}

double im_li(double theta, double x) {
    const double y = f_theta(theta, x);
    return y * x + 0.5 * clausen(2.0 * y) - 0.5 * clausen(2.0 * y + 2.0 * theta) +
           0.5 * clausen(2.0 * theta);
}

double im_li_symmetric(double theta, double x) {
    const double ts = kPi - theta;
    const double p = 2.0 * std::atan(std::tanh(0.5 * x) * std::tan(0.5 * ts));
    return p * x + clausen(p + ts) + clausen(ts - p) - clausen(2.0 * ts);
}

}  // namespace cpat
