#include "rnwarp/tensor_oracle.hpp"

#include <cmath>
#include <sstream>
#include <type_traits>

#include "rnwarp/calculus.hpp"
#include "rnwarp/errors.hpp"

namespace rnwarp::oracle {

namespace {

constexpr double kOuterStepFactor = 10.0;

double minor3(const Matrix4& m, int skip_row, int skip_col) {
    std::array<int, 3> rows{};
    std::array<int, 3> cols{};
    for (int i = 0, k = 0; i < 4; ++i) {
        if (i != skip_row) rows[k++] = i;
    }
    for (int j = 0, k = 0; j < 4; ++j) {
        if (j != skip_col) cols[k++] = j;
    }
    auto at = [&](int i, int j) { return m[rows[i]][cols[j]]; };
    return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
           at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
           at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

Point4 shifted(const Point4& x, int axis, double delta) {
    Point4 y = x;
    y[axis] += delta;
    return y;
}

void require_domain(const MetricField& mf, const Point4& x) {
    if (!mf.domain_check(x)) {
        std::ostringstream os;
        os << "stencil point (" << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3]
           << ") lies outside the metric's domain";
        throw DomainError(os.str());
    }
}

// d_axis of every component of a matrix-valued function of the point.
template <typename Fn>
auto partial(const Fn& fn, const Point4& x, int axis, double h) {
    auto m2 = fn(shifted(x, axis, -2.0 * h));
    auto m1 = fn(shifted(x, axis, -h));
    auto p1 = fn(shifted(x, axis, h));
    auto p2 = fn(shifted(x, axis, 2.0 * h));
    decltype(m2) out{};
    auto combine = [h](double a, double b, double c, double d) {
        return calculus::first_difference(a, b, c, d, h);
    };
    if constexpr (std::is_same_v<decltype(m2), Matrix4>) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                out[i][j] = combine(m2[i][j], m1[i][j], p1[i][j], p2[i][j]);
    } else {
        for (int a = 0; a < 4; ++a)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    out[a][i][j] = combine(m2[a][i][j], m1[a][i][j], p1[a][i][j], p2[a][i][j]);
    }
    return out;
}

}  // namespace

double determinant(const Matrix4& m) {
    double det = 0.0;
    for (int j = 0; j < 4; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        det += sign * m[0][j] * minor3(m, 0, j);
    }
    return det;
}

Matrix4 invert(const Matrix4& m, double scale) {
    const double det = determinant(m);
    const double s2 = scale * scale;
    if (!(std::abs(det) > 1e-12 * s2 * s2)) {
        std::ostringstream os;
        os << "metric is singular: det = " << det;
        throw SingularMetricError(os.str());
    }
    Matrix4 inv{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            // adjugate is the transposed cofactor matrix
            inv[j][i] = sign * minor3(m, i, j) / det;
        }
    }
    return inv;
}

Christoffel christoffel_at(const MetricField& mf, const Point4& x, double h) {
    return christoffel_at(mf, x, Steps{h, h, h, h});
}

Christoffel christoffel_at(const MetricField& mf, const Point4& x, const Steps& h) {
    for (double step : h) {
        if (!(step > 0.0)) {
            throw DomainError("differencing step must be positive");
        }
    }
    require_domain(mf, x);
    for (int axis = 0; axis < 4; ++axis) {
        require_domain(mf, shifted(x, axis, -2.0 * h[axis]));
        require_domain(mf, shifted(x, axis, 2.0 * h[axis]));
    }

    const Matrix4 ginv = invert(mf.g(x), mf.scale);
    // dg[c][a][b] = d_c g_ab
    std::array<Matrix4, 4> dg{};
    for (int c = 0; c < 4; ++c) {
        dg[c] = partial(mf.g, x, c, h[c]);
    }

    Christoffel gamma{};
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            for (int c = b; c < 4; ++c) {
                double sum = 0.0;
                for (int d = 0; d < 4; ++d) {
                    sum += ginv[a][d] * (dg[b][d][c] + dg[c][d][b] - dg[d][b][c]);
                }
                gamma[a][b][c] = 0.5 * sum;
                gamma[a][c][b] = 0.5 * sum;
            }
        }
    }
    return gamma;
}

CurvaturePoint ricci_at(const MetricField& mf, const Point4& x, double h) {
    return ricci_at(mf, x, Steps{h, h, h, h});
}

CurvaturePoint ricci_at(const MetricField& mf, const Point4& x, const Steps& h) {
    CurvaturePoint cp;
    cp.point = x;
    cp.christoffel = christoffel_at(mf, x, h);
    const Christoffel& gam = cp.christoffel;

    auto connection = [&](const Point4& y) { return christoffel_at(mf, y, h); };
    // dgam[e][a][b][c] = d_e Gamma^a_bc
    std::array<Christoffel, 4> dgam{};
    for (int e = 0; e < 4; ++e) {
        dgam[e] = partial(connection, x, e, kOuterStepFactor * h[e]);
    }

    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            double sum = 0.0;
            for (int c = 0; c < 4; ++c) {
                sum += dgam[c][c][a][b] - dgam[a][c][c][b];
                for (int d = 0; d < 4; ++d) {
                    sum += gam[c][c][d] * gam[d][a][b] - gam[c][a][d] * gam[d][c][b];
                }
            }
            cp.ricci[a][b] = sum;
        }
    }

    const Matrix4 ginv = invert(mf.g(x), mf.scale);
    double scalar = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            scalar += ginv[a][b] * cp.ricci[a][b];
    cp.scalar = scalar;
    return cp;
}

}  // namespace rnwarp::oracle
