#include "rnwarp/einstein_fluid.hpp"

#include <cmath>
#include <numbers>

#include "rnwarp/errors.hpp"

namespace rnwarp::fluid {

EinsteinTensorDiag einstein_tensor(const warped::RicciDiag& rd, const warped::WarpState& w) {
    w.validate();
    const double s = std::sin(rd.theta);
    const double half_r = 0.5 * rd.scalar;
    EinsteinTensorDiag g;
    g.g_mumu = rd.r_mumu - half_r * (-1.0);
    g.g_nunu = rd.r_nunu - half_r * w.f1 * w.f1;
    g.g_thth = rd.r_thth - half_r * w.f2 * w.f2;
    g.g_phph = rd.r_phph - half_r * w.f2 * w.f2 * s * s;
    return g;
}

FluidReport paper_fluid(const rn::BlackHoleParams& p, double r, double theta,
                        const calculus::Tolerance& tol) {
    const warped::WarpState w = rn::warp_state(p, r);
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
        throw DomainError("theta must lie in (0, pi)");
    }
    const double q2 = p.charge * p.charge;
    const double f1sq = w.f1 * w.f1;
    const double f2sq = w.f2 * w.f2;
    const double f2_4 = f2sq * f2sq;
    const double eight_pi = 8.0 * std::numbers::pi;
    const double s = std::sin(theta);
    const double sin2 = s * s;

    FluidReport rep;
    rep.r = r;
    rep.mu = rn::mu_of_r(p, r, tol);
    rep.theta = theta;
    rep.rho = q2 * f1sq / (eight_pi * f2_4);
    rep.pressure = q2 / (eight_pi * f2_4);

    rep.residuals.mumu = q2 / f2_4 - eight_pi * rep.pressure * f1sq;
    rep.residuals.nunu = -q2 * f1sq / f2_4 + eight_pi * rep.rho;
    rep.residuals.thth = q2 / f2sq - eight_pi * rep.pressure * f2sq;
    rep.residuals.phph = (q2 / f2sq - eight_pi * rep.pressure * f2sq) * sin2;
    return rep;
}

std::array<double, 4> stress_energy_perfect_fluid(double rho, double pressure,
                                                  const warped::WarpState& w, double theta) {
    const double s = std::sin(theta);
    const double f2sq = w.f2 * w.f2;
    return {rho, pressure * w.f1 * w.f1, pressure * f2sq, pressure * f2sq * s * s};
}

}  // namespace rnwarp::fluid
