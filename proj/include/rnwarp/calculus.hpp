#pragma once

// Numeric primitives shared by the geometry code and the test oracles:
// endpoint-singular quadrature, bracketed root finding and central
// differences. Everything here is a pure function of its arguments.

#include <functional>

namespace rnwarp::calculus {

struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_iter = 200;

    /// Throws DomainError unless abs_tol > 0, rel_tol > 0 and max_iter >= 1.
    void validate() const;
};

/// Open interval (lo, hi) with lo < hi.
class Interval {
public:
    Interval(double lo, double hi);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double width() const noexcept { return hi_ - lo_; }
    bool contains(double x) const noexcept { return x >= lo_ && x <= hi_; }

private:
    double lo_;
    double hi_;
};

using RealFunction = std::function<double(double)>;

/// Integrand that is also told the exact distances of the node to both
/// ends of the interval: f(x, x - lo, hi - x). Integrands singular at an
/// endpoint should build the singular factor from these distances, since
/// `hi - x` recomputed from a rounded x loses every digit near hi.
using EndpointIntegrand = std::function<double(double x, double from_lo, double to_hi)>;

/// Tanh-sinh (double exponential) quadrature over the open interval.
///
/// Never evaluates f at lo or hi, so integrable singularities of order
/// (x - lo)^-1/2 and (hi - x)^-1/2 are fine. Levels are halved until two
/// successive estimates agree within max(abs_tol, rel_tol * |I|); at most
/// min(max_iter, 18) refinements are attempted before ConvergenceError.
double integrate_endpoint_singular(const EndpointIntegrand& f, const Interval& iv,
                                   const Tolerance& tol = {});

/// Same scheme for a plain f(x). Nodes within an ulp of an endpoint are
/// sampled at the nearest interior double and rescaled as if f behaved
/// like an inverse square root there, so such singularities at a nonzero
/// endpoint still integrate to full precision.
double integrate_endpoint_singular(const RealFunction& f, const Interval& iv,
                                   const Tolerance& tol = {});

/// Brent's method: inverse quadratic interpolation with a bisection
/// safeguard. Requires g(lo) * g(hi) <= 0 (BracketError otherwise).
/// Stops when |g(x)| <= abs_tol or the bracket has shrunk to
/// rel_tol * |x|; the result always lies inside the input bracket.
double find_root_bracketed(const RealFunction& g, const Interval& iv, const Tolerance& tol = {});

/// Default central-difference step: eps^(1/3) * max(|x|, 1) for the first
/// derivative and eps^(1/4) * max(|x|, 1) for the second.
double default_step(double x, int order);

/// Five-point first-derivative stencil from samples at x-2h, x-h, x+h, x+2h.
inline double first_difference(double fm2, double fm1, double fp1, double fp2, double h) {
    return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
}

/// Five-point central difference. order = 1 or 2; h > 0.
/// Both stencils are fourth-order accurate in h.
double derivative(const RealFunction& f, double x, int order, double h);

/// derivative() with default_step(x, order).
double derivative(const RealFunction& f, double x, int order);

}  // namespace rnwarp::calculus
