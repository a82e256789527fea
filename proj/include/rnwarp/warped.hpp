#pragma once

// The warped product M = R x_{f1} R x_{f2} S^2 with metric
//   ds^2 = -dmu^2 + f1(mu)^2 dnu^2 + f2(mu)^2 (dtheta^2 + sin^2 theta dphi^2)
// and its Ricci tensor written purely in terms of the warps and their
// mu-derivatives. Only the two-fiber case is modelled.

namespace rnwarp::warped {

/// Warp values and mu-derivatives at one point of the base.
struct WarpState {
    double f1 = 1.0;  // warp of the nu line
    double f2 = 1.0;  // areal radius of the 2-sphere
    double f1p = 0.0;
    double f2p = 0.0;
    double f1pp = 0.0;
    double f2pp = 0.0;

    /// Throws DomainError unless f1 > 0 and f2 > 0.
    void validate() const;
};

/// Nonvanishing Ricci components in the (mu, nu, theta, phi) chart.
/// r_phph carries its sin^2(theta) factor; theta records where it was taken.
struct RicciDiag {
    double r_mumu = 0.0;
    double r_nunu = 0.0;
    double r_thth = 0.0;
    double r_phph = 0.0;
    double scalar = 0.0;
    double theta = 0.0;
};

/// R_mumu = -f1''/f1 - 2 f2''/f2
/// R_nunu = 2 f1 f1' f2'/f2 + f1 f1''
/// R_thth = f1' f2 f2'/f1 + f2 f2'' + f2'^2 + 1
/// R_phph = R_thth sin^2(theta)
/// Requires 0 < theta < pi. The scalar is filled by scalar_from_ricci.
RicciDiag ricci_from_warps(const WarpState& w, double theta);

/// Trace g^ab R_ab with g = diag(-1, f1^2, f2^2, f2^2 sin^2 theta).
/// At the poles the phi term is replaced by r_thth / f2^2.
double scalar_from_ricci(const RicciDiag& rd, const WarpState& w);

}  // namespace rnwarp::warped
