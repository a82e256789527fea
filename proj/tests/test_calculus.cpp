#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "rnwarp/calculus.hpp"
#include "rnwarp/errors.hpp"

using namespace rnwarp;
using namespace rnwarp::calculus;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("calculus") {

TEST_CASE("arcsine integral on (0,2)") {
    auto f = [](double x) { return 1.0 / std::sqrt(x * (2.0 - x)); };
    CHECK(integrate_endpoint_singular(f, Interval(0.0, 2.0)) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("x over sqrt((2-x) x) on (0,2) is pi") {
    auto f = [](double x) { return x / std::sqrt((2.0 - x) * x); };
    CHECK(std::abs(integrate_endpoint_singular(f, Interval(0.0, 2.0)) - kPi) <= 1e-10);
}

TEST_CASE("constant integrand") {
    auto f = [](double) { return 1.0; };
    CHECK(std::abs(integrate_endpoint_singular(f, Interval(0.0, 1.0)) - 1.0) <= 1e-12);
}

TEST_CASE("endpoint-distance integrand resolves a shifted interval") {
    // 1/sqrt((3-x)(x-1)) on (1,3) with both singular factors built from the
    // supplied distances.
    auto f = [](double, double from_lo, double to_hi) {
        return 1.0 / (std::sqrt(from_lo) * std::sqrt(to_hi));
    };
    CHECK(std::abs(integrate_endpoint_singular(f, Interval(1.0, 3.0)) - kPi) <= 1e-13);
}

TEST_CASE("plain integrand singular at a nonzero endpoint") {
    auto f = [](double x) { return 1.0 / std::sqrt((3.0 - x) * (x - 1.0)); };
    CHECK(std::abs(integrate_endpoint_singular(f, Interval(1.0, 3.0)) - kPi) <= 1e-12);
    auto g = [](double x) { return std::pow(1.0 - x, -0.3); };
    CHECK(std::abs(integrate_endpoint_singular(g, Interval(0.0, 1.0)) - 1.0 / 0.7) <= 1e-10);
}

TEST_CASE("quadrature never evaluates at the endpoints") {
    bool touched = false;
    auto f = [&](double x) {
        if (x <= 0.0 || x >= 1.0) {
            touched = true;
        }
        return std::log(x);
    };
    CHECK(std::abs(integrate_endpoint_singular(f, Interval(0.0, 1.0)) + 1.0) <= 1e-12);
    CHECK_FALSE(touched);
}

TEST_CASE("quadrature additivity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Tolerance tol;
    auto f = [](double x) { return (1.0 + x * x) / std::sqrt(x * (4.0 - x)); };
    for (int i = 0; i < 50; ++i) {
        const double a = 4.0 * u(rng) * 0.2;
        const double c = 4.0 - 4.0 * u(rng) * 0.2;
        const double b = a + (c - a) * (0.05 + 0.9 * u(rng));
        const double whole = integrate_endpoint_singular(f, Interval(a, c), tol);
        const double parts = integrate_endpoint_singular(f, Interval(a, b), tol) +
                             integrate_endpoint_singular(f, Interval(b, c), tol);
        CHECK(std::abs(whole - parts) <= 2.0 * tol.abs_tol);
    }
}

TEST_CASE("quadrature reports non-convergence") {
    Tolerance tol;
    tol.max_iter = 1;
    auto f = [](double x) { return std::cos(40.0 * x); };
    try {
        integrate_endpoint_singular(f, Interval(0.0, 10.0), tol);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::isfinite(e.last_estimate()));
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("interval and tolerance validation") {
    CHECK_THROWS_AS(Interval(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(Interval(2.0, 1.0), DomainError);
    Tolerance bad;
    bad.abs_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = Tolerance{};
    bad.max_iter = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("root finder examples") {
    CHECK(find_root_bracketed([](double x) { return x * x - 2.0; }, Interval(0.0, 2.0)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(std::abs(find_root_bracketed([](double x) { return x; }, Interval(-1.0, 1.0))) <= 1e-10);
    CHECK(find_root_bracketed([](double x) { return std::cos(x); }, Interval(1.0, 2.0)) ==
          doctest::Approx(kPi / 2.0).epsilon(1e-10));
}

TEST_CASE("root finder errors") {
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x * x + 1.0; }, Interval(-1.0, 1.0)),
                    BracketError);
    Tolerance tol;
    tol.abs_tol = 1e-300;
    tol.rel_tol = 1e-300;
    tol.max_iter = 3;
    CHECK_THROWS_AS(
        find_root_bracketed([](double x) { return std::tanh(50.0 * (x - 0.3)); }, Interval(-1.0, 5.0), tol),
        ConvergenceError);
}

TEST_CASE("root stays inside the bracket") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double root = u(rng);
        const double lo = root - std::abs(u(rng)) - 1e-3;
        const double hi = root + std::abs(u(rng)) + 1e-3;
        auto g = [root](double x) { return std::expm1(x - root) + 0.1 * (x - root); };
        const double x = find_root_bracketed(g, Interval(lo, hi));
        CHECK(x >= lo);
        CHECK(x <= hi);
        CHECK(std::abs(x - root) <= 1e-9);
    }
}

TEST_CASE("derivative examples") {
    CHECK(std::abs(derivative([](double x) { return std::sin(x); }, 0.0, 1) - 1.0) <= 1e-9);
    CHECK(std::abs(derivative([](double x) { return x * x; }, 3.0, 2) - 2.0) <= 1e-6);
    CHECK(std::abs(derivative([](double x) { return std::exp(x); }, 1.0, 1) - std::exp(1.0)) <= 1e-8);
}

TEST_CASE("derivative of a linear function") {
    // The default step leaves rounding of order eps |f| / h, far above
    // 1e-10 for |b| ~ 1e3, so an explicit step is used.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coef(-1e3, 1e3);
    std::uniform_real_distribution<double> at(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        const double a = coef(rng);
        const double b = coef(rng);
        const double x = at(rng);
        const double d = derivative([a, b](double t) { return a * t + b; }, x, 1, 0.25);
        CHECK(std::abs(d - a) <= 1e-10 * std::max(std::abs(a), 1.0));
    }
}

TEST_CASE("derivative step and order validation") {
    auto f = [](double x) { return x; };
    CHECK_THROWS_AS(derivative(f, 0.0, 3, 1e-3), DomainError);
    CHECK_THROWS_AS(derivative(f, 0.0, 1, 0.0), DomainError);
    CHECK_THROWS_AS(derivative(f, 0.0, 1, -1e-3), DomainError);
}

TEST_CASE("default step scales with |x|") {
    const double eps = std::numeric_limits<double>::epsilon();
    CHECK(default_step(0.5, 1) == doctest::Approx(std::cbrt(eps)));
    CHECK(default_step(-4.0, 1) == doctest::Approx(4.0 * std::cbrt(eps)));
    CHECK(default_step(10.0, 2) == doctest::Approx(10.0 * std::pow(eps, 0.25)));
}

}  // TEST_SUITE
