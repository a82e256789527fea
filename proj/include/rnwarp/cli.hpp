#pragma once

// Batch command surface: horizons | transform | curvature | fluid | verify.
// Commands build plain tables (or a verification report); writers turn
// them into CSV or JSON. Exit codes: 0 success, 1 verification or
// numerical failure, 2 usage or domain error.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rnwarp/calculus.hpp"
#include "rnwarp/reissner_nordstrom.hpp"
#include "rnwarp/warped.hpp"

namespace rnwarp::cli {

enum class Format { csv, json };

struct RunConfig {
    double mass = 1.0;
    double charge = 0.0;
    int grid_points = 64;
    double guard_fraction = 0.05;
    calculus::Tolerance tol;
    Format format = Format::csv;
    double theta = 1.5707963267948966;
    // transform only; exactly one must be set
    std::optional<double> r;
    std::optional<double> mu;

    /// DomainError on an invalid grid, guard band, theta or tolerance, and
    /// whatever BlackHoleParams::make rejects.
    void validate() const;
    rn::BlackHoleParams params() const;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    /// Single-record tables are written as one JSON object instead of an array.
    bool single_record = false;
};

struct Check {
    std::string name;
    double max_abs_residual = 0.0;
    double threshold = 0.0;
    bool pass = true;
};

/// Quadrature against both closed forms at r = m.
struct ClosedFormProbe {
    double r = 0.0;
    double quadrature = 0.0;
    double paper_closed_form = 0.0;
    double sqrt_closed_form = 0.0;
};

struct VerifyReport {
    std::vector<Check> checks;
    bool pass = true;
    std::vector<std::string> notes;
    ClosedFormProbe closed_form;
};

Table cmd_horizons(const RunConfig& cfg);
Table cmd_transform(const RunConfig& cfg);
Table cmd_curvature(const RunConfig& cfg);
Table cmd_fluid(const RunConfig& cfg);
VerifyReport cmd_verify(const RunConfig& cfg);

/// Shortest decimal that round-trips to the same double (at most 17
/// significant digits); -0 is written as 0, non-finite values as nan/inf.
std::string format_double(double v);

void write_table(std::ostream& out, const Table& t, Format f);
void write_report(std::ostream& out, const VerifyReport& rep, Format f);

using Diag4 = std::array<double, 4>;

inline Diag4 diag_of(const warped::RicciDiag& rd) {
    return {rd.r_mumu, rd.r_nunu, rd.r_thth, rd.r_phph};
}

/// Denominators for componentwise relative comparison of Ricci diagonals:
/// the larger of |exact| and the tidal scale m / f2^3 carried back from the
/// orthonormal frame. The charge terms are differences of tidal-sized terms,
/// so for Q^2 << m r no computation resolves them better than that.
Diag4 ricci_error_scale(const warped::RicciDiag& exact, const warped::WarpState& w, double mass);

/// max_i |a_i - b_i| / scale_i
double relative_error(const Diag4& a, const Diag4& b, const Diag4& scale);

/// Parses argv and runs one subcommand; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rnwarp::cli
