#include "rnwarp/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rnwarp/errors.hpp"

namespace rnwarp::calculus {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Abscissa range of the tanh-sinh trapezoid. At |t| = 4.5 the node sits
// ~1e-61 * width from the endpoint, far below anything that contributes.
constexpr double kTMax = 4.5;
constexpr int kMaxLevels = 18;
constexpr int kMinLevels = 3;

struct Node {
    double dist;    // distance from the nearer endpoint
    double weight;  // dx/dt
};

// Node at parameter t >= 0 for an interval of half-width d.
Node tanh_sinh_node(double t, double half_width) {
    const double u = 0.5 * std::numbers::pi * std::sinh(t);
    const double q = std::exp(-2.0 * u);
    const double dist = 2.0 * half_width * q / (1.0 + q);
    const double sech2 = 4.0 * q / ((1.0 + q) * (1.0 + q));
    const double weight = half_width * 0.5 * std::numbers::pi * std::cosh(t) * sech2;
    return {dist, weight};
}

}  // namespace

void Tolerance::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_iter < 1) {
        throw DomainError("tolerance requires abs_tol > 0, rel_tol > 0 and max_iter >= 1");
    }
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo < hi)) {
        std::ostringstream os;
        os << "interval requires lo < hi, got (" << lo << ", " << hi << ")";
        throw DomainError(os.str());
    }
}

double integrate_endpoint_singular(const EndpointIntegrand& f, const Interval& iv,
                                   const Tolerance& tol) {
    tol.validate();
    const double half = 0.5 * iv.width();
    const double centre = iv.lo() + half;
    const double width = iv.width();

    // Sum of f * weight over the nodes t = k * h of one level (all k when
    // `odd_only` is false, odd k otherwise).
    auto level_sum = [&](double h, bool odd_only) {
        double sum = 0.0;
        if (!odd_only) {
            sum += f(centre, half, half) * half * 0.5 * std::numbers::pi;
        }
        const int stride = odd_only ? 2 : 1;
        const int kmax = static_cast<int>(kTMax / h);
        for (int k = 1; k <= kmax; k += stride) {
            const Node n = tanh_sinh_node(k * h, half);
            if (!(n.dist > 0.0)) {
                break;
            }
            const double far = width - n.dist;
            sum += n.weight * f(iv.lo() + n.dist, n.dist, far);
            sum += n.weight * f(iv.hi() - n.dist, far, n.dist);
        }
        return sum;
    };

    double h = 1.0;
    double sum = level_sum(h, false);
    double estimate = h * sum;
    double last_change = std::numeric_limits<double>::infinity();
    const int levels = std::min(tol.max_iter, kMaxLevels);
    for (int level = 1; level <= levels; ++level) {
        h *= 0.5;
        sum += level_sum(h, true);
        const double next = h * sum;
        if (!std::isfinite(next)) {
            throw ConvergenceError("tanh-sinh quadrature produced a non-finite estimate", next,
                                   last_change);
        }
        last_change = std::abs(next - estimate);
        estimate = next;
        if (level >= kMinLevels &&
            last_change <= std::max(tol.abs_tol, tol.rel_tol * std::abs(estimate))) {
            return estimate;
        }
    }
    throw ConvergenceError("tanh-sinh quadrature did not converge", estimate, last_change);
}

double integrate_endpoint_singular(const RealFunction& f, const Interval& iv,
                                   const Tolerance& tol) {
    const double lo = iv.lo();
    const double hi = iv.hi();
    // A node closer to an endpoint than one ulp rounds onto it (or lands at
    // a representable point whose distance differs from the exact one). The
    // sample is taken at the nearest interior double and rescaled by
    // sqrt(exact distance / actual distance), which is exact for an
    // inverse-square-root endpoint and negligible for regular integrands
    // because those nodes carry tiny weights.
    return integrate_endpoint_singular(
        [&](double x, double from_lo, double to_hi) {
            double xs = x;
            if (xs <= lo) {
                xs = std::nextafter(lo, hi);
            } else if (xs >= hi) {
                xs = std::nextafter(hi, lo);
            }
            const double actual_lo = xs - lo;
            const double actual_hi = hi - xs;
            return f(xs) * std::sqrt((actual_lo / from_lo) * (actual_hi / to_hi));
        },
        iv, tol);
}

double find_root_bracketed(const RealFunction& g, const Interval& iv, const Tolerance& tol) {
    tol.validate();
    double a = iv.lo();
    double b = iv.hi();
    double fa = g(a);
    double fb = g(b);
    if (fa == 0.0) {
        return a;
    }
    if (fb == 0.0) {
        return b;
    }
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream os;
        os << "no sign change on [" << a << ", " << b << "]: g(lo) = " << fa
           << ", g(hi) = " << fb;
        throw BracketError(os.str());
    }

    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    double xm = 0.5 * (c - b);
    for (int iter = 0; iter < tol.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * tol.rel_tol * std::abs(b) +
                            std::numeric_limits<double>::min();
        xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= tol.abs_tol) {
            return b;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                // inverse quadratic interpolation
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            }
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = g(b);
    }
    throw ConvergenceError("bracketed root finder did not converge", b, std::abs(xm));
}

double default_step(double x, int order) {
    const double scale = std::max(std::abs(x), 1.0);
    return order == 1 ? std::cbrt(kEps) * scale : std::sqrt(std::sqrt(kEps)) * scale;
}

double derivative(const RealFunction& f, double x, int order, double h) {
    if (!(h > 0.0)) {
        throw DomainError("derivative step must be positive");
    }
    const double fm2 = f(x - 2.0 * h);
    const double fm1 = f(x - h);
    const double fp1 = f(x + h);
    const double fp2 = f(x + 2.0 * h);
    if (order == 1) {
        return first_difference(fm2, fm1, fp1, fp2, h);
    }
    if (order == 2) {
        const double f0 = f(x);
        return (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    }
    throw DomainError("derivative order must be 1 or 2");
}

double derivative(const RealFunction& f, double x, int order) {
    return derivative(f, x, order, default_step(x, order));
}

}  // namespace rnwarp::calculus
