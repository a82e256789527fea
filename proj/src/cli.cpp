#include "rnwarp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "rnwarp/einstein_fluid.hpp"
#include "rnwarp/errors.hpp"
#include "rnwarp/tensor_oracle.hpp"

namespace rnwarp::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kRoundTripSeed = 20240917;
constexpr int kRoundTripSamples = 100;
constexpr double kNearExtremal = 1e-3;

// Running maximum of one verification check.
class CheckAccumulator {
public:
    CheckAccumulator(std::string name, double threshold) {
        check_.name = std::move(name);
        check_.threshold = threshold;
    }

    void add(double residual) {
        if (!std::isfinite(residual)) {
            finite_ = false;
            return;
        }
        check_.max_abs_residual = std::max(check_.max_abs_residual, std::abs(residual));
    }

    Check finish() const {
        Check c = check_;
        if (!finite_) {
            c.max_abs_residual = std::numeric_limits<double>::quiet_NaN();
        }
        c.pass = finite_ && c.max_abs_residual <= c.threshold;
        return c;
    }

private:
    Check check_;
    bool finite_ = true;
};

double relative_to(double value, double reference) {
    return reference != 0.0 ? std::abs(value - reference) / std::abs(reference)
                            : std::abs(value);
}

}  // namespace

void RunConfig::validate() const {
    (void)params();
    if (grid_points < 2) {
        throw DomainError("--grid must be at least 2");
    }
    if (!(guard_fraction > 0.0 && guard_fraction < 0.5)) {
        throw DomainError("--guard must lie in (0, 0.5)");
    }
    if (!(theta > 0.0 && theta < kPi)) {
        throw DomainError("--theta must lie in (0, pi)");
    }
    tol.validate();
}

rn::BlackHoleParams RunConfig::params() const {
    return rn::BlackHoleParams::make(mass, charge);
}

Diag4 ricci_error_scale(const warped::RicciDiag& exact, const warped::WarpState& w, double mass) {
    const double tidal = mass / (w.f2 * w.f2 * w.f2);
    const double s = std::sin(exact.theta);
    const Diag4 frame = {1.0, w.f1 * w.f1, w.f2 * w.f2, w.f2 * w.f2 * s * s};
    const Diag4 values = diag_of(exact);
    Diag4 scale{};
    for (std::size_t i = 0; i < 4; ++i) {
        scale[i] = std::max(std::abs(values[i]), tidal * frame[i]);
    }
    return scale;
}

double relative_error(const Diag4& a, const Diag4& b, const Diag4& scale) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double e = std::abs(a[i] - b[i]) / scale[i];
        if (!std::isfinite(e)) {
            return e;
        }
        worst = std::max(worst, e);
    }
    return worst;
}

Table cmd_horizons(const RunConfig& cfg) {
    cfg.validate();
    const rn::BlackHoleParams p = cfg.params();
    const rn::HorizonPair hp = rn::horizons(p);
    Table t;
    t.columns = {"r_plus", "r_minus", "extremal_margin"};
    t.rows.push_back({hp.r_plus, hp.r_minus, (p.mass - p.charge) * (p.mass + p.charge)});
    t.single_record = true;
    return t;
}

Table cmd_transform(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.r.has_value() == cfg.mu.has_value()) {
        throw DomainError("transform needs exactly one of --r and --mu");
    }
    const rn::BlackHoleParams p = cfg.params();
    double r = 0.0;
    double mu = 0.0;
    if (cfg.r) {
        r = *cfg.r;
        mu = rn::mu_of_r(p, r, cfg.tol);
    } else {
        mu = *cfg.mu;
        r = rn::r_of_mu(p, mu, cfg.tol);
    }
    Table t;
    t.columns = {"r", "mu", "paper_closed_form", "sqrt_closed_form"};
    t.rows.push_back(
        {r, mu, rn::mu_of_r_paper_closed_form(p, r), rn::mu_of_r_sqrt_closed_form(p, r)});
    t.single_record = true;
    return t;
}

Table cmd_curvature(const RunConfig& cfg) {
    cfg.validate();
    const rn::BlackHoleParams p = cfg.params();
    Table t;
    t.columns = {"r", "mu", "f1", "f2", "R_mumu", "R_nunu", "R_thth", "R_phph", "scalar"};
    for (double r : rn::guarded_grid(p, cfg.grid_points, cfg.guard_fraction)) {
        const warped::WarpState w = rn::warp_state(p, r);
        const warped::RicciDiag rd = rn::ricci_closed_form(p, r, cfg.theta);
        t.rows.push_back({r, rn::mu_of_r(p, r, cfg.tol), w.f1, w.f2, rd.r_mumu, rd.r_nunu,
                          rd.r_thth, rd.r_phph, rd.scalar});
    }
    return t;
}

Table cmd_fluid(const RunConfig& cfg) {
    cfg.validate();
    const rn::BlackHoleParams p = cfg.params();
    Table t;
    t.columns = {"r",        "mu",       "rho",      "pressure",
                 "res_mumu", "res_nunu", "res_thth", "res_phph"};
    for (double r : rn::guarded_grid(p, cfg.grid_points, cfg.guard_fraction)) {
        const fluid::FluidReport f = fluid::paper_fluid(p, r, cfg.theta, cfg.tol);
        t.rows.push_back({f.r, f.mu, f.rho, f.pressure, f.residuals.mumu, f.residuals.nunu,
                          f.residuals.thth, f.residuals.phph});
    }
    return t;
}

VerifyReport cmd_verify(const RunConfig& cfg) {
    cfg.validate();
    const rn::BlackHoleParams p = cfg.params();
    const rn::HorizonPair hp = rn::horizons(p);
    const double m = p.mass;
    const double q2 = p.charge * p.charge;
    const double theta = cfg.theta;
    const std::vector<double> grid = rn::guarded_grid(p, cfg.grid_points, cfg.guard_fraction);
    VerifyReport rep;

    {
        CheckAccumulator sum("horizon_vieta_sum", 1e-12);
        CheckAccumulator prod("horizon_vieta_product", 1e-12);
        sum.add(relative_to(hp.r_plus + hp.r_minus, 2.0 * m));
        prod.add(relative_to(hp.r_plus * hp.r_minus, q2));
        rep.checks.push_back(sum.finish());
        rep.checks.push_back(prod.finish());
    }
    {
        CheckAccumulator lower("boundary_mu_at_r_minus", 1e-9);
        CheckAccumulator upper("boundary_mu_at_r_plus", 1e-8);
        lower.add(rn::mu_of_r(p, hp.r_minus, cfg.tol));
        upper.add(rn::mu_of_r(p, hp.r_plus, cfg.tol) - m * kPi);
        rep.checks.push_back(lower.finish());
        rep.checks.push_back(upper.finish());
    }

    CheckAccumulator closed_warped("ricci_closed_vs_warped", 1e-10);
    CheckAccumulator closed_oracle("ricci_closed_vs_oracle", 1e-5);
    CheckAccumulator scalar_closed("scalar_closed_form", 1e-8);
    CheckAccumulator scalar_warped("scalar_warped", 1e-8);
    CheckAccumulator scalar_oracle("scalar_oracle", 1e-5);
    CheckAccumulator covariance("chart_covariance", 1e-5);
    CheckAccumulator offdiag("ricci_offdiagonal", 1e-7);
    CheckAccumulator einstein("einstein_equals_ricci", 1e-12);
    CheckAccumulator d_first("warp_identities_first_derivative", 1e-10);
    CheckAccumulator d_chained("warp_identity_f1pp_chain_rule", 1e-10);
    CheckAccumulator d_direct("warp_identity_f1pp_direct", 1e-6);
    CheckAccumulator sqrt_form("sqrt_closed_form_vs_quadrature", 1e-8);
    CheckAccumulator fluid_nunu("fluid_residual_nunu", 1e-10);
    CheckAccumulator fluid_thth("fluid_residual_thth", 1e-10);
    CheckAccumulator fluid_phph("fluid_residual_phph", 1e-10);
    CheckAccumulator fluid_mumu("fluid_residual_mumu_formula", 1e-10);

    const oracle::MetricField warped_mf = rn::warped_chart(p);
    const oracle::MetricField static_mf = rn::static_chart(p);
    const calculus::Tolerance tight = rn::tight_tolerance();
    auto r_at = [&](double mu) { return rn::r_of_mu(p, mu, tight); };
    auto f1_at = [&](double mu) { return std::sqrt(rn::lapse_squared(p, r_at(mu))); };
    auto f1p_of_r = [&](double r) { return rn::warp_state(p, r).f1p; };
    // Noise-optimal steps for the five-point stencils, h ~ eps^(1/(k+4)) L
    // with L the distance to the nearer horizon. Table lookups through the
    // inverse map carry a few ulps of noise, which the default steps amplify
    // to about 1e-10.
    auto step = [](int order, double room) {
        const double eps = std::numeric_limits<double>::epsilon();
        return std::pow(eps, 1.0 / (order + 4)) * room;
    };

    double max_mumu_residual = 0.0;
    for (double r : grid) {
        const double mu = rn::mu_of_r(p, r, cfg.tol);
        const warped::WarpState w = rn::warp_state(p, r);
        const warped::RicciDiag closed = rn::ricci_closed_form(p, r, theta);
        const warped::RicciDiag from_warps = warped::ricci_from_warps(w, theta);
        const Diag4 scale = ricci_error_scale(closed, w, m);

        closed_warped.add(relative_error(diag_of(from_warps), diag_of(closed), scale));
        // Curvature carries units of 1/length^2; m^2 R is scale-free.
        scalar_closed.add(closed.scalar * m * m);
        scalar_warped.add(from_warps.scalar * m * m);

        const oracle::CurvaturePoint cw = oracle::ricci_at(
            warped_mf, {mu, 0.0, theta, 0.0}, rn::warped_chart_steps(p, mu));
        const Diag4 oracle_diag = {cw.ricci[0][0], cw.ricci[1][1], cw.ricci[2][2],
                                   cw.ricci[3][3]};
        closed_oracle.add(relative_error(oracle_diag, diag_of(closed), scale));
        scalar_oracle.add(cw.scalar * m * m);

        const oracle::CurvaturePoint cs = oracle::ricci_at(
            static_mf, {0.0, r, theta, 0.0}, rn::static_chart_steps(p, r));
        const double n2 = rn::lapse_squared(p, r);
        // dmu = dr / N and nu = t, so R_mumu = N^2 R_rr and R_nunu = R_tt.
        const Diag4 transformed = {cs.ricci[1][1] * n2, cs.ricci[0][0], cs.ricci[2][2],
                                   cs.ricci[3][3]};
        covariance.add(relative_error(transformed, oracle_diag, scale));
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                if (a != b) {
                    offdiag.add(cw.ricci[a][b] * m * m);
                    offdiag.add(cs.ricci[a][b] * m * m);
                }
            }
        }

        const fluid::EinsteinTensorDiag g = fluid::einstein_tensor(closed, w);
        einstein.add(relative_error({g.g_mumu, g.g_nunu, g.g_thth, g.g_phph}, diag_of(closed),
                                    scale));

        // Difference-quotient rounding grows with |f| itself, so the error is
        // measured against max(|f|, |f'|, 1).
        auto rel1 = [](double fd, double exact, double value) {
            return std::abs(fd - exact) /
                   std::max({std::abs(exact), std::abs(value), 1.0});
        };
        const double mu_room = std::min(mu, m * kPi - mu);
        const double r_room = std::min(r - hp.r_minus, hp.r_plus - r);
        d_first.add(rel1(calculus::derivative(r_at, mu, 1, step(1, mu_room)), w.f2p, w.f2));
        d_first.add(rel1(calculus::derivative(f1_at, mu, 1, step(1, mu_room)), w.f1p, w.f1));
        d_first.add(rel1(w.f2p, w.f1, w.f1));
        // d f1'/dmu = (d f1'/dr) f2', with f2' = f1 already checked above.
        d_chained.add(rel1(calculus::derivative(f1p_of_r, r, 1, step(1, r_room)) * w.f2p,
                           w.f1pp, w.f1p));
        d_direct.add(rel1(calculus::derivative(f1_at, mu, 2, step(2, mu_room)), w.f1pp,
                          w.f1));

        sqrt_form.add(rn::mu_of_r_sqrt_closed_form(p, r) - mu);

        const fluid::FluidReport fr = fluid::paper_fluid(p, r, theta, cfg.tol);
        const double f2_4 = std::pow(w.f2, 4);
        const double term_nunu = q2 * w.f1 * w.f1 / f2_4;
        const double term_thth = q2 / (w.f2 * w.f2);
        const double sin2 = std::sin(theta) * std::sin(theta);
        const double expected_mumu = q2 / f2_4 * (1.0 - w.f1 * w.f1);
        fluid_nunu.add(term_nunu > 0.0 ? fr.residuals.nunu / term_nunu : fr.residuals.nunu);
        fluid_thth.add(term_thth > 0.0 ? fr.residuals.thth / term_thth : fr.residuals.thth);
        fluid_phph.add(term_thth > 0.0 ? fr.residuals.phph / (term_thth * sin2)
                                       : fr.residuals.phph);
        fluid_mumu.add(q2 > 0.0 ? (fr.residuals.mumu - expected_mumu) / (q2 / f2_4)
                                : fr.residuals.mumu);
        max_mumu_residual = std::max(max_mumu_residual, std::abs(fr.residuals.mumu));
    }

    CheckAccumulator round_trip("inverse_round_trip", 1e-8 * m * kPi);
    {
        std::mt19937_64 rng(kRoundTripSeed);
        std::uniform_real_distribution<double> dist(0.01 * m * kPi, 0.99 * m * kPi);
        for (int i = 0; i < kRoundTripSamples; ++i) {
            const double mu = dist(rng);
            round_trip.add(rn::mu_of_r(p, rn::r_of_mu(p, mu, cfg.tol), cfg.tol) - mu);
        }
    }

    for (const CheckAccumulator* acc :
         {&closed_warped, &closed_oracle, &scalar_closed, &scalar_warped, &scalar_oracle,
          &covariance, &offdiag, &einstein, &d_first, &d_chained, &d_direct, &round_trip,
          &sqrt_form, &fluid_nunu, &fluid_thth, &fluid_phph, &fluid_mumu}) {
        rep.checks.push_back(acc->finish());
    }
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const Check& c) { return c.pass; });

    ClosedFormProbe& probe = rep.closed_form;
    probe.r = m;
    probe.quadrature = rn::mu_of_r(p, m, cfg.tol);
    probe.paper_closed_form = rn::mu_of_r_paper_closed_form(p, m);
    probe.sqrt_closed_form = rn::mu_of_r_sqrt_closed_form(p, m);
    {
        std::ostringstream os;
        os << "mu(r) closed form with arccos((r_+ - r)/(r_+ - r_-)) disagrees with quadrature"
           << " away from the horizons: at r = " << format_double(probe.r)
           << " quadrature = " << format_double(probe.quadrature)
           << ", closed form = " << format_double(probe.paper_closed_form)
           << " (difference " << format_double(probe.paper_closed_form - probe.quadrature)
           << "); the arccos(sqrt(...)) form gives " << format_double(probe.sqrt_closed_form);
        rep.notes.push_back(os.str());
    }
    {
        std::ostringstream os;
        os << "mumu fluid equation is not balanced by the isotropic pressure that solves"
           << " thth: residual Q^2 (1 - f1^2) / f2^4 reaches "
           << format_double(max_mumu_residual) << " on the grid (reported, not a failure)";
        rep.notes.push_back(os.str());
    }
    if ((m - p.charge) / m < kNearExtremal) {
        std::ostringstream os;
        os << "near-extremal configuration: (m - Q)/m = " << format_double((m - p.charge) / m)
           << ", interior width r_+ - r_- = " << format_double(hp.width());
        rep.notes.push_back(os.str());
    }
    return rep;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (v == 0.0) {
        return "0";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_table(std::ostream& out, const Table& t, Format f) {
    if (f == Format::csv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            out << (i ? "," : "") << t.columns[i];
        }
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << format_double(row[i]);
            }
            out << '\n';
        }
        return;
    }
    nlohmann::ordered_json doc;
    auto record = [&](const std::vector<double>& row) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            const double v = row[i];
            if (std::isfinite(v)) {
                obj[t.columns[i]] = v == 0.0 ? 0.0 : v;
            } else {
                obj[t.columns[i]] = nullptr;
            }
        }
        return obj;
    };
    if (t.single_record && t.rows.size() == 1) {
        doc = record(t.rows.front());
    } else {
        doc = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            doc.push_back(record(row));
        }
    }
    out << doc.dump(2) << '\n';
}

void write_report(std::ostream& out, const VerifyReport& rep, Format f) {
    if (f == Format::csv) {
        out << "check,max_abs_residual,threshold,pass\n";
        for (const Check& c : rep.checks) {
            out << c.name << ',' << format_double(c.max_abs_residual) << ','
                << format_double(c.threshold) << ',' << (c.pass ? "true" : "false") << '\n';
        }
        out << "overall,,," << (rep.pass ? "true" : "false") << '\n';
        for (const std::string& note : rep.notes) {
            out << "# note: " << note << '\n';
        }
        return;
    }
    nlohmann::ordered_json doc;
    doc["checks"] = nlohmann::ordered_json::array();
    for (const Check& c : rep.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        if (std::isfinite(c.max_abs_residual)) {
            jc["max_abs_residual"] = c.max_abs_residual;
        } else {
            jc["max_abs_residual"] = nullptr;
        }
        jc["threshold"] = c.threshold;
        jc["pass"] = c.pass;
        doc["checks"].push_back(jc);
    }
    doc["pass"] = rep.pass;
    doc["closed_form"] = {{"r", rep.closed_form.r},
                          {"quadrature", rep.closed_form.quadrature},
                          {"paper_closed_form", rep.closed_form.paper_closed_form},
                          {"sqrt_closed_form", rep.closed_form.sqrt_closed_form}};
    doc["notes"] = rep.notes;
    out << doc.dump(2) << '\n';
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reissner-Nordstrom interior as a warped product: curvature and checks",
                 "rnwarp"};
    app.require_subcommand(1);

    RunConfig cfg;
    double tol_value = cfg.tol.abs_tol;
    std::string format = "csv";
    double r_value = 0.0;
    double mu_value = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--mass", cfg.mass, "black hole mass m (geometrized units)")->required();
        sub->add_option("--charge", cfg.charge, "charge Q; only |Q| matters");
        sub->add_option("--grid", cfg.grid_points, "number of r grid points");
        sub->add_option("--guard", cfg.guard_fraction,
                        "excluded fraction of r_+ - r_- next to each horizon");
        sub->add_option("--tol", tol_value, "absolute and relative tolerance");
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--theta", cfg.theta, "polar angle for the phi-phi components");
    };

    CLI::App* horizons = app.add_subcommand("horizons", "outer and inner horizon radii");
    CLI::App* transform = app.add_subcommand("transform", "convert between r and mu");
    CLI::App* curvature = app.add_subcommand("curvature", "Ricci components on an r grid");
    CLI::App* fluid_cmd = app.add_subcommand("fluid", "perfect-fluid density and pressure");
    CLI::App* verify = app.add_subcommand("verify", "run the identity suite");
    for (CLI::App* sub : {horizons, transform, curvature, fluid_cmd, verify}) {
        add_common(sub);
    }
    CLI::Option* r_opt = transform->add_option("--r", r_value, "areal radius");
    CLI::Option* mu_opt = transform->add_option("--mu", mu_value, "warped time coordinate");
    r_opt->excludes(mu_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "rnwarp: " << e.what() << '\n';
        return 2;
    }

    cfg.tol.abs_tol = tol_value;
    cfg.tol.rel_tol = tol_value;
    cfg.format = format == "json" ? Format::json : Format::csv;
    cfg.charge = std::abs(cfg.charge);
    if (r_opt->count() > 0) {
        cfg.r = r_value;
    }
    if (mu_opt->count() > 0) {
        cfg.mu = mu_value;
    }

    try {
        if (horizons->parsed()) {
            write_table(out, cmd_horizons(cfg), cfg.format);
        } else if (transform->parsed()) {
            write_table(out, cmd_transform(cfg), cfg.format);
        } else if (curvature->parsed()) {
            write_table(out, cmd_curvature(cfg), cfg.format);
        } else if (fluid_cmd->parsed()) {
            write_table(out, cmd_fluid(cfg), cfg.format);
        } else if (verify->parsed()) {
            const VerifyReport rep = cmd_verify(cfg);
            write_report(out, rep, cfg.format);
            if (!rep.pass) {
                for (const Check& c : rep.checks) {
                    if (!c.pass) {
                        err << "rnwarp: check failed: " << c.name << " ("
                            << format_double(c.max_abs_residual) << " > "
                            << format_double(c.threshold) << ")\n";
                    }
                }
                return 1;
            }
        }
    } catch (const DomainError& e) {
        err << "rnwarp: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "rnwarp: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace rnwarp::cli
