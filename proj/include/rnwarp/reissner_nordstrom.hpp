#pragma once

// Interior (r_- < r < r_+) of the Reissner-Nordstrom black hole in
// geometrized units G = c = 1, rewritten as the warped product
//   ds^2 = -dmu^2 + f1(mu)^2 dnu^2 + f2(mu)^2 dOmega^2,
// with mu = F(r) the proper time across the interior, f2 = F^-1(mu) = r and
// f1 = N(r), where N^2 = -1 + 2m/r - Q^2/r^2 is the lapse of the static chart
//   ds^2 = N^2 dt^2 - N^-2 dr^2 + r^2 dOmega^2.
//
// F is defined by quadrature of dmu/dr = 1/N from r_- (F(r_-) = 0).

#include <vector>

#include "rnwarp/calculus.hpp"
#include "rnwarp/tensor_oracle.hpp"
#include "rnwarp/warped.hpp"

namespace rnwarp::rn {

/// Mass m > 0 and charge Q with 0 <= Q < m (nonextremal).
struct BlackHoleParams {
    double mass = 1.0;
    double charge = 0.0;

    /// Builds validated parameters; a negative charge is replaced by |Q|
    /// since only Q^2 enters the geometry.
    static BlackHoleParams make(double mass, double charge);

    /// DomainError for m <= 0 or non-finite input, ExtremalError for Q >= m.
    void validate() const;
};

struct HorizonPair {
    double r_plus = 0.0;
    double r_minus = 0.0;

    double width() const noexcept { return r_plus - r_minus; }
};

/// A point of the interior in both radial coordinates.
struct InteriorPoint {
    double r = 0.0;
    double mu = 0.0;
};

/// r_+- = m +- sqrt(m^2 - Q^2). r_- is evaluated as Q^2 / r_+ so that it
/// keeps full relative precision for small Q.
HorizonPair horizons(const BlackHoleParams& p);

/// N^2 = (r_+ - r)(r - r_-) / r^2 on the open interior (DomainError outside).
double lapse_squared(const BlackHoleParams& p, double r);

/// mu(r) = int_{r_-}^{r} x dx / sqrt((r_+ - x)(x - r_-)) by tanh-sinh
/// quadrature, for r_- <= r <= r_+. Strictly increasing, F(r_+) = m pi.
double mu_of_r(const BlackHoleParams& p, double r, const calculus::Tolerance& tol = {});

/// 2m arccos((r_+ - r)/(r_+ - r_-)) - sqrt((r_+ - r)(r - r_-)), as printed
/// in the source derivation. It matches the quadrature only at r_- and
/// r_+; kept for comparison, never used to define mu.
double mu_of_r_paper_closed_form(const BlackHoleParams& p, double r);

/// 2m arccos(sqrt((r_+ - r)/(r_+ - r_-))) - sqrt((r_+ - r)(r - r_-)), the
/// antiderivative that does reproduce the quadrature.
double mu_of_r_sqrt_closed_form(const BlackHoleParams& p, double r);

/// Inverse of mu_of_r for 0 < mu < m pi, by bracketed root finding on
/// [r_-, r_+]. Stops once |mu_of_r(r) - mu| <= tol.abs_tol or the bracket
/// reaches machine precision; the quadrature inside uses the same
/// tolerance clamped below at 1e-14 (absolute part 1e-14 m).
double r_of_mu(const BlackHoleParams& p, double mu, const calculus::Tolerance& tol = {});

InteriorPoint interior_point(const BlackHoleParams& p, double r,
                             const calculus::Tolerance& tol = {});

/// Analytic warps at radius r:
///   f2 = r, f1 = N, f2' = f1, f1' = -m/f2^2 + Q^2/f2^3, f2'' = f1',
///   f1'' = -2 f1 f1'/f2 - Q^2 f1/f2^4.
warped::WarpState warp_state(const BlackHoleParams& p, double r);

/// (Q^2/r^4, -Q^2 f1^2/r^4, Q^2/r^2, Q^2 sin^2(theta)/r^2). The scalar is
/// the trace against the warped metric, which vanishes up to rounding.
warped::RicciDiag ricci_closed_form(const BlackHoleParams& p, double r, double theta);

/// Uniform r-grid of n >= 2 points spanning
/// [r_- + g (r_+ - r_-), r_+ - g (r_+ - r_-)] with 0 < g < 0.5.
std::vector<double> guarded_grid(const BlackHoleParams& p, int n, double guard_fraction);

/// Tolerance used when the inverse map feeds a finite-difference oracle:
/// the root is resolved to a few ulps.
calculus::Tolerance tight_tolerance();

/// The warped chart (mu, nu, theta, phi) with metric
/// diag(-1, f1^2, f2^2, f2^2 sin^2 theta); f1, f2 via r_of_mu.
/// Domain: 0 < mu < m pi, 0 < theta < pi. Metric scale is m.
oracle::MetricField warped_chart(const BlackHoleParams& p,
                                 const calculus::Tolerance& tol = tight_tolerance());

/// Oracle steps for the warped chart at mu: 3e-4 of the mu-distance to the
/// nearer horizon along mu, 1e-3 along the other axes. The metric then gets
/// sampled no closer than 0.993 of that distance to either horizon.
oracle::Steps warped_chart_steps(const BlackHoleParams& p, double mu);

/// The static chart (t, r, theta, phi) with metric
/// diag(N^2, -N^-2, r^2, r^2 sin^2 theta). Domain: r_- < r < r_+, 0 < theta < pi.
/// Metric scale is m.
oracle::MetricField static_chart(const BlackHoleParams& p);

/// Same policy as warped_chart_steps, measured in r.
oracle::Steps static_chart_steps(const BlackHoleParams& p, double r);

}  // namespace rnwarp::rn
