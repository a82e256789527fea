#pragma once

// Einstein tensor of the warped interior and the perfect-fluid source
// T_ab = rho u_a u_b + P (g_ab + u_a u_b), with u along d/dmu.

#include <array>

#include "rnwarp/calculus.hpp"
#include "rnwarp/reissner_nordstrom.hpp"
#include "rnwarp/warped.hpp"

namespace rnwarp::fluid {

struct EinsteinTensorDiag {
    double g_mumu = 0.0;
    double g_nunu = 0.0;
    double g_thth = 0.0;
    double g_phph = 0.0;
};

/// Residuals of the four component equations R_ab - 8 pi T_ab = 0 in the
/// form they are printed for this model:
///   mumu: Q^2/f2^4 - 8 pi P f1^2
///   nunu: -Q^2 f1^2/f2^4 + 8 pi rho
///   thth: Q^2/f2^2 - 8 pi P f2^2
///   phph: (Q^2/f2^2 - 8 pi P f2^2) sin^2 theta
struct FluidResiduals {
    double mumu = 0.0;
    double nunu = 0.0;
    double thth = 0.0;
    double phph = 0.0;
};

struct FluidReport {
    double r = 0.0;
    double mu = 0.0;
    double theta = 0.0;
    double rho = 0.0;
    double pressure = 0.0;
    FluidResiduals residuals;
};

/// G_ab = R_ab - 1/2 R g_ab with g = diag(-1, f1^2, f2^2, f2^2 sin^2 theta),
/// theta taken from rd.
EinsteinTensorDiag einstein_tensor(const warped::RicciDiag& rd, const warped::WarpState& w);

/// rho = Q^2 f1^2 / (8 pi f2^4) solves the nunu equation and
/// P = Q^2 / (8 pi f2^4) solves the thth equation; all four residuals are
/// then evaluated. The mumu residual equals Q^2 (1 - f1^2) / f2^4 and is
/// not zero in general: one isotropic P cannot balance every component.
FluidReport paper_fluid(const rn::BlackHoleParams& p, double r, double theta,
                        const calculus::Tolerance& tol = {});

/// Diagonal of T_ab for u^a = (1, 0, 0, 0) in the warped chart:
/// (rho, P f1^2, P f2^2, P f2^2 sin^2 theta).
std::array<double, 4> stress_energy_perfect_fluid(double rho, double pressure,
                                                  const warped::WarpState& w, double theta);

}  // namespace rnwarp::fluid
