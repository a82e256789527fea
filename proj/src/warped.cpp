#include "rnwarp/warped.hpp"

#include <cmath>
#include <numbers>

#include "rnwarp/errors.hpp"

namespace rnwarp::warped {

void WarpState::validate() const {
    if (!(f1 > 0.0) || !(f2 > 0.0)) {
        throw DomainError("warping functions must be positive");
    }
}

RicciDiag ricci_from_warps(const WarpState& w, double theta) {
    w.validate();
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
        throw DomainError("theta must lie in (0, pi)");
    }
    RicciDiag rd;
    rd.theta = theta;
    rd.r_mumu = -w.f1pp / w.f1 - 2.0 * w.f2pp / w.f2;
    rd.r_nunu = 2.0 * w.f1 * w.f1p * w.f2p / w.f2 + w.f1 * w.f1pp;
    rd.r_thth = w.f1p * w.f2 * w.f2p / w.f1 + w.f2 * w.f2pp + w.f2p * w.f2p + 1.0;
    const double s = std::sin(theta);
    rd.r_phph = rd.r_thth * s * s;
    rd.scalar = scalar_from_ricci(rd, w);
    return rd;
}

double scalar_from_ricci(const RicciDiag& rd, const WarpState& w) {
    w.validate();
    const double f1sq = w.f1 * w.f1;
    const double f2sq = w.f2 * w.f2;
    const double s = std::sin(rd.theta);
    const double sin2 = s * s;
    // sin^2 of the double nearest pi is ~1.5e-32; treat that as the pole.
    const double phi_term = sin2 > 1e-28 ? rd.r_phph / (f2sq * sin2) : rd.r_thth / f2sq;
    return -rd.r_mumu + rd.r_nunu / f1sq + rd.r_thth / f2sq + phi_term;
}

}  // namespace rnwarp::warped
