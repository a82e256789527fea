#include "rnwarp/reissner_nordstrom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rnwarp/errors.hpp"

namespace rnwarp::rn {

namespace {

void require_open_interior(const HorizonPair& hp, double r) {
    if (!(r > hp.r_minus && r < hp.r_plus)) {
        std::ostringstream os;
        os << "r = " << r << " is outside the interior (" << hp.r_minus << ", " << hp.r_plus
           << ")";
        throw DomainError(os.str());
    }
}

void require_closed_interior(const HorizonPair& hp, double r) {
    if (!(r >= hp.r_minus && r <= hp.r_plus)) {
        std::ostringstream os;
        os << "r = " << r << " is outside [" << hp.r_minus << ", " << hp.r_plus << "]";
        throw DomainError(os.str());
    }
}

calculus::Tolerance quadrature_tolerance(const calculus::Tolerance& tol, double mass) {
    calculus::Tolerance q = tol;
    q.abs_tol = std::max(q.abs_tol, 1e-14 * mass);
    q.rel_tol = std::max(q.rel_tol, 1e-14);
    return q;
}

}  // namespace

BlackHoleParams BlackHoleParams::make(double mass, double charge) {
    BlackHoleParams p{mass, std::abs(charge)};
    p.validate();
    return p;
}

void BlackHoleParams::validate() const {
    if (!std::isfinite(mass) || !std::isfinite(charge) || !(mass > 0.0)) {
        throw DomainError("mass must be positive and finite");
    }
    if (charge < 0.0) {
        throw DomainError("charge must be non-negative");
    }
    if (!(charge < mass)) {
        std::ostringstream os;
        os << "Q = " << charge << " >= m = " << mass
           << ": extremal or naked configuration has no interior";
        throw ExtremalError(os.str());
    }
}

HorizonPair horizons(const BlackHoleParams& p) {
    p.validate();
    const double m = p.mass;
    const double q = p.charge;
    // m^2 - Q^2 factored to avoid squaring overflow and cancellation.
    const double disc = std::sqrt((m - q) * (m + q));
    HorizonPair hp;
    hp.r_plus = m + disc;
    hp.r_minus = q * q / hp.r_plus;
    return hp;
}

double lapse_squared(const BlackHoleParams& p, double r) {
    const HorizonPair hp = horizons(p);
    require_open_interior(hp, r);
    return (hp.r_plus - r) * (r - hp.r_minus) / (r * r);
}

double mu_of_r(const BlackHoleParams& p, double r, const calculus::Tolerance& tol) {
    const HorizonPair hp = horizons(p);
    require_closed_interior(hp, r);
    if (r == hp.r_minus) {
        return 0.0;
    }
    const double gap = hp.r_plus - r;
    // Distances come straight from the quadrature so that both
    // inverse-square-root factors keep full precision near the horizons.
    auto integrand = [gap](double x, double from_lo, double to_hi) {
        const double to_outer = gap + to_hi;
        return x / (std::sqrt(to_outer) * std::sqrt(from_lo));
    };
    return calculus::integrate_endpoint_singular(integrand,
                                                 calculus::Interval(hp.r_minus, r), tol);
}

double mu_of_r_paper_closed_form(const BlackHoleParams& p, double r) {
    const HorizonPair hp = horizons(p);
    require_closed_interior(hp, r);
    const double ratio = (hp.r_plus - r) / hp.width();
    return 2.0 * p.mass * std::acos(ratio) - std::sqrt((hp.r_plus - r) * (r - hp.r_minus));
}

double mu_of_r_sqrt_closed_form(const BlackHoleParams& p, double r) {
    const HorizonPair hp = horizons(p);
    require_closed_interior(hp, r);
    const double ratio = (hp.r_plus - r) / hp.width();
    return 2.0 * p.mass * std::acos(std::sqrt(ratio)) -
           std::sqrt((hp.r_plus - r) * (r - hp.r_minus));
}

double r_of_mu(const BlackHoleParams& p, double mu, const calculus::Tolerance& tol) {
    const HorizonPair hp = horizons(p);
    const double mu_max = p.mass * std::numbers::pi;
    if (!(mu > 0.0 && mu < mu_max)) {
        std::ostringstream os;
        os << "mu = " << mu << " is outside (0, " << mu_max << ")";
        throw DomainError(os.str());
    }
    const calculus::Tolerance qtol = quadrature_tolerance(tol, p.mass);
    // Terminate on the mu residual: near extremality dmu/dr ~ 2/(r_+ - r_-)
    // is large, so a bracket of relative width rel_tol in r would leave mu
    // far outside abs_tol. The bracket test is kept only at machine precision.
    calculus::Tolerance rtol = tol;
    rtol.rel_tol = std::min(tol.rel_tol, std::numeric_limits<double>::epsilon());
    // mu_of_r is defined on the closed interval, so the horizons themselves
    // bracket the root: g(r_-) = -mu < 0 and g(r_+) ~ m pi - mu > 0.
    auto g = [&](double r) { return mu_of_r(p, r, qtol) - mu; };
    return calculus::find_root_bracketed(g, calculus::Interval(hp.r_minus, hp.r_plus), rtol);
}

InteriorPoint interior_point(const BlackHoleParams& p, double r, const calculus::Tolerance& tol) {
    const HorizonPair hp = horizons(p);
    require_open_interior(hp, r);
    return {r, mu_of_r(p, r, tol)};
}

warped::WarpState warp_state(const BlackHoleParams& p, double r) {
    const double n2 = lapse_squared(p, r);
    const double m = p.mass;
    const double q2 = p.charge * p.charge;
    warped::WarpState w;
    w.f2 = r;
    w.f1 = std::sqrt(n2);
    w.f2p = w.f1;
    w.f1p = -m / (r * r) + q2 / (r * r * r);
    w.f2pp = w.f1p;
    w.f1pp = -2.0 * w.f1 * w.f1p / w.f2 - q2 * w.f1 / (r * r * r * r);
    return w;
}

warped::RicciDiag ricci_closed_form(const BlackHoleParams& p, double r, double theta) {
    const warped::WarpState w = warp_state(p, r);
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
        throw DomainError("theta must lie in (0, pi)");
    }
    const double q2 = p.charge * p.charge;
    const double r2 = r * r;
    const double r4 = r2 * r2;
    const double s = std::sin(theta);
    warped::RicciDiag rd;
    rd.theta = theta;
    rd.r_mumu = q2 / r4;
    rd.r_nunu = -q2 * w.f1 * w.f1 / r4;
    rd.r_thth = q2 / r2;
    rd.r_phph = q2 * s * s / r2;
    rd.scalar = warped::scalar_from_ricci(rd, w);
    return rd;
}

std::vector<double> guarded_grid(const BlackHoleParams& p, int n, double guard_fraction) {
    if (n < 2) {
        throw DomainError("grid needs at least 2 points");
    }
    if (!(guard_fraction > 0.0 && guard_fraction < 0.5)) {
        throw DomainError("guard fraction must lie in (0, 0.5)");
    }
    const HorizonPair hp = horizons(p);
    const double lo = hp.r_minus + guard_fraction * hp.width();
    const double hi = hp.r_plus - guard_fraction * hp.width();
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double s = static_cast<double>(i) / (n - 1);
        grid[static_cast<std::size_t>(i)] = lo + s * (hi - lo);
    }
    grid.back() = hi;
    return grid;
}

calculus::Tolerance tight_tolerance() {
    calculus::Tolerance tol;
    tol.abs_tol = std::numeric_limits<double>::min();
    tol.rel_tol = std::numeric_limits<double>::epsilon();
    tol.max_iter = 200;
    return tol;
}

oracle::MetricField warped_chart(const BlackHoleParams& p, const calculus::Tolerance& tol) {
    p.validate();
    const double mu_max = p.mass * std::numbers::pi;
    oracle::MetricField mf;
    mf.coord_names = {"mu", "nu", "theta", "phi"};
    mf.g = [p, tol](const oracle::Point4& x) {
        const double r = r_of_mu(p, x[0], tol);
        const HorizonPair hp = horizons(p);
        const double f1sq = (hp.r_plus - r) * (r - hp.r_minus) / (r * r);
        const double s = std::sin(x[2]);
        oracle::Matrix4 g{};
        g[0][0] = -1.0;
        g[1][1] = f1sq;
        g[2][2] = r * r;
        g[3][3] = r * r * s * s;
        return g;
    };
    mf.domain_check = [mu_max](const oracle::Point4& x) {
        return x[0] > 0.0 && x[0] < mu_max && x[2] > 0.0 && x[2] < std::numbers::pi;
    };
    mf.scale = p.mass;
    return mf;
}

namespace {
constexpr double kRadialStepFraction = 3e-4;
constexpr double kAngularStep = 1e-3;
}  // namespace

oracle::Steps warped_chart_steps(const BlackHoleParams& p, double mu) {
    p.validate();
    const double room = std::min(mu, p.mass * std::numbers::pi - mu);
    if (!(room > 0.0)) {
        throw DomainError("mu must lie strictly inside (0, m pi)");
    }
    return {kRadialStepFraction * room, kAngularStep, kAngularStep, kAngularStep};
}

oracle::Steps static_chart_steps(const BlackHoleParams& p, double r) {
    const HorizonPair hp = horizons(p);
    require_open_interior(hp, r);
    const double room = std::min(r - hp.r_minus, hp.r_plus - r);
    return {kAngularStep, kRadialStepFraction * room, kAngularStep, kAngularStep};
}

oracle::MetricField static_chart(const BlackHoleParams& p) {
    const HorizonPair hp = horizons(p);
    oracle::MetricField mf;
    mf.coord_names = {"t", "r", "theta", "phi"};
    mf.g = [hp](const oracle::Point4& x) {
        const double r = x[1];
        const double n2 = (hp.r_plus - r) * (r - hp.r_minus) / (r * r);
        const double s = std::sin(x[2]);
        oracle::Matrix4 g{};
        g[0][0] = n2;
        g[1][1] = -1.0 / n2;
        g[2][2] = r * r;
        g[3][3] = r * r * s * s;
        return g;
    };
    mf.domain_check = [hp](const oracle::Point4& x) {
        return x[1] > hp.r_minus && x[1] < hp.r_plus && x[2] > 0.0 && x[2] < std::numbers::pi;
    };
    mf.scale = p.mass;
    return mf;
}

}  // namespace rnwarp::rn
