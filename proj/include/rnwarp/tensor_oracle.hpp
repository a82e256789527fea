#pragma once

// Brute-force curvature of an arbitrary 4-dimensional metric given only as
// a component function. Christoffel symbols come from central differences
// of the metric, the Ricci tensor from central differences of those
// Christoffel symbols. Nothing here knows about warped products, so it can
// referee the closed-form expressions elsewhere in the library.
//
// Conventions: Gamma^a_bc = 1/2 g^ad (d_b g_dc + d_c g_db - d_d g_bc) and
//   R_ab = d_c Gamma^c_ab - d_a Gamma^c_cb + Gamma^c_cd Gamma^d_ab - Gamma^c_ad Gamma^d_cb,
// which gives the round 2-sphere of radius a the value R_thth = +1.

#include <array>
#include <functional>
#include <string>

namespace rnwarp::oracle {

using Point4 = std::array<double, 4>;
using Matrix4 = std::array<std::array<double, 4>, 4>;
/// Indexed [a][b][c] for Gamma^a_bc.
using Christoffel = std::array<Matrix4, 4>;
/// Differencing step per coordinate axis.
using Steps = std::array<double, 4>;

struct MetricField {
    std::array<std::string, 4> coord_names;
    std::function<Matrix4(const Point4&)> g;
    std::function<bool(const Point4&)> domain_check = [](const Point4&) { return true; };
    /// Typical magnitude of the components; the metric counts as singular
    /// when |det g| <= 1e-12 * scale^4.
    double scale = 1.0;
};

struct CurvaturePoint {
    Point4 point{};
    Christoffel christoffel{};
    Matrix4 ricci{};
    double scalar = 0.0;
};

/// Cofactor inverse of a 4x4 matrix. Throws SingularMetricError when
/// |det| <= 1e-12 * scale^4.
Matrix4 invert(const Matrix4& m, double scale = 1.0);

double determinant(const Matrix4& m);

/// Levi-Civita connection at x, metric derivatives taken with step h along
/// every axis. Every stencil point must pass domain_check (DomainError).
Christoffel christoffel_at(const MetricField& mf, const Point4& x, double h);
Christoffel christoffel_at(const MetricField& mf, const Point4& x, const Steps& h);

/// Ricci tensor and scalar at x. The connection is differentiated with an
/// outer step of 10 h, so the metric is sampled out to 22 h along each axis.
CurvaturePoint ricci_at(const MetricField& mf, const Point4& x, double h);

/// Per-axis steps. Coordinates of very different natural scale (a time
/// coordinate near a horizon next to an angle) need this: an angular step
/// sized for the radial direction drowns the angular terms in rounding.
CurvaturePoint ricci_at(const MetricField& mf, const Point4& x, const Steps& h);

}  // namespace rnwarp::oracle
