#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "specfun.hpp"

using namespace cpat;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle #1: power series around 0, valid for |x| < 2π:
//   Cl(x) = x − x log|x| + Σ_{n≥1} ζ(2n) x^{2n+1} / (n (2n+1) (2π)^{2n})
double clausen_series(double x) {
    if (x == 0.0) return 0.0;
    const double s = x > 0 ? 1.0 : -1.0;
    x = std::abs(x);
    double sum = x - x * std::log(x);
    const double q = (x / (2.0 * kPi)) * (x / (2.0 * kPi));
    double pow = q * x;  // x^{2n+1} / (2π)^{2n} at n = 1
    for (int n = 1; n < 200; ++n) {
        const double term =
            std::riemann_zeta(2.0 * n) * pow / (n * (2.0 * n + 1.0));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        pow *= q;
    }
    return s * sum;
}

// Independent oracle #2: Fourier partial sum plus the exact integral tail
//   Cl(x) = Σ_{n≤N} sin(nx)/n² + Im ∫_0^∞ t e^{(N+1)(ix−t)} / (1−e^{ix−t}) dt
double clausen_fourier(double x) {
    constexpr int N = 32;
    double sum = 0.0;
    for (int n = 1; n <= N; ++n) sum += std::sin(n * x) / (static_cast<double>(n) * n);
    const std::complex<double> ix{0.0, x};
    boost::math::quadrature::tanh_sinh<double> integ;
    const auto f = [&](double t) {
        const std::complex<double> z = std::exp(ix - t);
        return std::imag(t * std::pow(z, N + 1) / (1.0 - z));
    };
    return sum + integ.integrate(f, 0.0, 60.0, 1e-15);
}

double fd_derivative(double (*f)(double, double), double theta, double x) {
    const double h = 1e-6;
    return (f(theta, x + h) - f(theta, x - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("clausen agrees with the power-series oracle on [-pi, pi]") {
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double x = -kPi + 2.0 * kPi * i / 2000.0;
        worst = std::max(worst, std::abs(clausen(x) - clausen_series(x)));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("clausen vs Fourier-tail oracle across several periods") {
    double worst = 0.0;
    for (int i = 0; i <= 997; ++i) {
        const double x = -3.0 * kPi + 6.0 * kPi * i / 997.0;
        worst = std::max(worst, std::abs(clausen(x) - clausen_fourier(x)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("clausen special values and symmetries") {
    // frozen reference value of Catalan's constant
    CHECK(catalan_constant() == doctest::Approx(0.9159655941772190151).epsilon(1e-15));
    CHECK(clausen(kPi / 2.0) == doctest::Approx(catalan_constant()).epsilon(1e-14));
    CHECK(clausen(0.0) == 0.0);
    CHECK(std::abs(clausen(kPi)) < 1e-14);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        const double x = u(rng);
        CHECK(clausen(-x) == doctest::Approx(-clausen(x)).epsilon(1e-13).scale(1.0));
        CHECK(clausen(x + 2.0 * kPi) == doctest::Approx(clausen(x)).epsilon(1e-12));
        // double angle: ½ Cl(2x) = Cl(x) − Cl(π − x)
        CHECK(0.5 * clausen(2.0 * x) ==
              doctest::Approx(clausen(x) - clausen(kPi - x)).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("clausen maximum at pi/3") {
    // Cl is maximal where log|2 sin(x/2)| = 0, i.e. x = π/3
    const double peak = clausen(kPi / 3.0);
    CHECK(peak == doctest::Approx(1.0149416064096536).epsilon(1e-13));
    CHECK(clausen(kPi / 3.0 + 1e-4) < peak);
    CHECK(clausen(kPi / 3.0 - 1e-4) < peak);
}

TEST_CASE("f_theta matches its defining logarithm expression") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ut(0.05, kPi - 0.05), ux(-12.0, 12.0);
    for (int i = 0; i < 1000; ++i) {
        const double theta = ut(rng), x = ux(rng);
        const std::complex<double> I{0.0, 1.0};
        const std::complex<double> val =
            std::log((1.0 - std::exp(x - I * theta)) / (1.0 - std::exp(x + I * theta))) /
            (2.0 * I);
        CHECK(std::abs(std::imag(val)) < 1e-12);
        // the principal log branch differs from the (0, π−θ) branch by π
        double want = std::real(val);
        if (want < 0.0) want += kPi;
        CHECK(f_theta(theta, x) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("f_theta limits, monotonicity and midpoint") {
    const double theta = 1.1;
    CHECK(f_theta(theta, -1e4) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(f_theta(theta, 1e4) == doctest::Approx(kPi - theta).epsilon(1e-15));
    CHECK(f_theta(theta, 0.0) == doctest::Approx(0.5 * (kPi - theta)).epsilon(1e-14));
    double prev = -1.0;
    for (double x = -20.0; x <= 20.0; x += 0.25) {
        const double v = f_theta(theta, x);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("f_theta derivative and inverse") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ut(0.1, kPi - 0.1), ux(-6.0, 6.0);
    for (int i = 0; i < 300; ++i) {
        const double theta = ut(rng), x = ux(rng);
        CHECK(f_theta_derivative(theta, x) ==
              doctest::Approx(fd_derivative(&f_theta, theta, x)).epsilon(1e-7));
        CHECK(f_theta_derivative(theta, x) ==
              doctest::Approx(std::sin(theta) / (2.0 * (std::cosh(x) - std::cos(theta))))
                  .epsilon(1e-13));
        const double y = f_theta(theta, x);
        CHECK(f_theta_inverse(theta, y) == doctest::Approx(x).epsilon(1e-9).scale(1.0));
    }
}

namespace {

// ImLi oracle: Σ_{n≥1} e^{nx} sin(nθ)/n² for x ≤ 0, extended to x > 0 by the
// reflection ImLi(θ, x) = ImLi(θ, −x) + (π − θ)·x.
double im_li_series(double theta, double x) {
    if (x > 0.0) return im_li_series(theta, -x) + (kPi - theta) * x;
    double sum = 0.0;
    for (int n = 1; n < 1000000; ++n) {
        const double term = std::exp(n * x) * std::sin(n * theta) / (static_cast<double>(n) * n);
        sum += term;
        if (std::exp(n * x) / (static_cast<double>(n) * n) < 1e-17) break;
    }
    return sum;
}

// ImLi oracle by quadrature:  ImLi(θ, x) = ∫_{−∞}^x f_θ(ξ) dξ for the branch
// vanishing at −∞; substitute the finite form ∫ f with tanh_sinh on (−80, x).
double im_li_quadrature(double theta, double x) {
    boost::math::quadrature::tanh_sinh<double> integ;
    return integ.integrate([&](double t) { return f_theta(theta, t); },
                           -80.0, x, 1e-15);
}

}  // namespace

TEST_CASE("im_li agrees with the dilogarithm series oracle") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> ut(0.1, kPi - 0.1), ux(-8.0, 8.0);
    for (int i = 0; i < 400; ++i) {
        const double theta = ut(rng), x = ux(rng);
        CHECK(im_li(theta, x) ==
              doctest::Approx(im_li_series(theta, x)).epsilon(1e-11).scale(1.0));
    }
}

TEST_CASE("im_li agrees with direct quadrature of f_theta") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> ut(0.2, kPi - 0.2), ux(-4.0, 4.0);
    for (int i = 0; i < 40; ++i) {
        const double theta = ut(rng), x = ux(rng);
        CHECK(im_li(theta, x) ==
              doctest::Approx(im_li_quadrature(theta, x)).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("im_li_symmetric equals the two-term combination") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> ut(0.1, kPi - 0.1), ux(-6.0, 6.0);
    for (int i = 0; i < 400; ++i) {
        const double theta = ut(rng), x = ux(rng);
        CHECK(im_li_symmetric(theta, x) ==
              doctest::Approx(im_li(theta, x) + im_li(theta, -x)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("im_li derivative is f_theta") {
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> ut(0.1, kPi - 0.1), ux(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double theta = ut(rng), x = ux(rng);
        const double h = 1e-6;
        const double fd = (im_li(theta, x + h) - im_li(theta, x - h)) / (2.0 * h);
        CHECK(fd == doctest::Approx(f_theta(theta, x)).epsilon(1e-7));
    }
}

TEST_CASE("chebyshev series round trip") {
    auto cs = ChebyshevSeries::fit(-1.5, 2.5, 40, [](double x) { return std::exp(x); });
    for (double x = -1.5; x <= 2.5; x += 0.05)
        CHECK(cs.evaluate(x) == doctest::Approx(std::exp(x)).epsilon(1e-13));
    auto anti = cs.antiderivative();
    for (double x = -1.5; x <= 2.5; x += 0.05)
        CHECK(anti.evaluate(x) ==
              doctest::Approx(std::exp(x) - std::exp(-1.5)).epsilon(1e-12).scale(1.0));
    auto der = cs.derivative();
    for (double x = -1.4; x <= 2.4; x += 0.05)
        CHECK(der.evaluate(x) == doctest::Approx(std::exp(x)).epsilon(1e-10));
}
