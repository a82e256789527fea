#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "rnwarp/cli.hpp"
#include "rnwarp/errors.hpp"

using namespace rnwarp;
using namespace rnwarp::cli;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "rnwarp");
    std::vector<const char*> argv;
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        result.push_back(line);
    }
    return result;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("number formatting round-trips") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(1.8) == "1.8");
    CHECK(format_double(0.19999999999999998) == "0.19999999999999998");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(-INFINITY) == "-inf");
    for (double v : {std::numbers::pi, 1e-300, -2.5e17, 0.1 + 0.2}) {
        CHECK(std::stod(format_double(v)) == v);
        CHECK(format_double(v).size() <= 24);
    }
}

TEST_CASE("horizons as JSON") {
    const Outcome o = invoke({"horizons", "--mass", "1", "--charge", "0.6", "--format", "json"});
    REQUIRE(o.code == 0);
    const auto doc = nlohmann::json::parse(o.out);
    CHECK(doc["r_plus"].get<double>() == doctest::Approx(1.8).epsilon(1e-15));
    CHECK(doc["r_minus"].get<double>() == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(doc["extremal_margin"].get<double>() == doctest::Approx(0.64).epsilon(1e-15));
}

TEST_CASE("horizons as CSV") {
    const Outcome o = invoke({"horizons", "--mass", "1", "--charge", "0"});
    REQUIRE(o.code == 0);
    CHECK(o.out == "r_plus,r_minus,extremal_margin\n2,0,1\n");
}

TEST_CASE("naked configuration exits 2") {
    const Outcome o = invoke({"horizons", "--mass", "1", "--charge", "1.5"});
    CHECK(o.code == 2);
    CHECK(o.out.empty());
    CHECK_FALSE(o.err.empty());
}

TEST_CASE("usage errors exit 2") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"horizons"}).code == 2);
    CHECK(invoke({"horizons", "--mass", "abc"}).code == 2);
    CHECK(invoke({"curvature", "--mass", "1", "--format", "xml"}).code == 2);
    CHECK(invoke({"curvature", "--mass", "1", "--grid", "1"}).code == 2);
    CHECK(invoke({"curvature", "--mass", "1", "--guard", "0.5"}).code == 2);
    CHECK(invoke({"curvature", "--mass", "1", "--theta", "0"}).code == 2);
    CHECK(invoke({"curvature", "--mass", "1", "--tol", "0"}).code == 2);
    CHECK(invoke({"bogus", "--mass", "1"}).code == 2);
}

TEST_CASE("help exits 0") {
    const Outcome o = invoke({"--help"});
    CHECK(o.code == 0);
    CHECK(o.out.find("verify") != std::string::npos);
}

TEST_CASE("transform from r") {
    const Outcome o = invoke({"transform", "--mass", "1", "--charge", "0.6", "--r", "1", "--format", "json"});
    REQUIRE(o.code == 0);
    const auto doc = nlohmann::json::parse(o.out);
    CHECK(doc["r"].get<double>() == 1.0);
    CHECK(std::abs(doc["mu"].get<double>() - (std::numbers::pi / 2.0 - 0.8)) <= 1e-10);
    CHECK(doc["paper_closed_form"].get<double>() == doctest::Approx(1.29440).epsilon(1e-5));
    CHECK(std::abs(doc["sqrt_closed_form"].get<double>() - doc["mu"].get<double>()) <= 1e-8);
}

TEST_CASE("transform from mu") {
    const Outcome o = invoke({"transform", "--mass", "1", "--charge", "0.6", "--mu", "0.7707963267948966"});
    REQUIRE(o.code == 0);
    const auto rows = lines(o.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "r,mu,paper_closed_form,sqrt_closed_form");
    CHECK(std::stod(rows[1].substr(0, rows[1].find(','))) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("transform at the inner horizon gives mu = 0") {
    const std::string r_minus = format_double(rn::horizons(rn::BlackHoleParams::make(1.0, 0.6)).r_minus);
    const Outcome o = invoke({"transform", "--mass", "1", "--charge", "0.6", "--r", r_minus, "--format", "json"});
    REQUIRE(o.code == 0);
    CHECK(std::abs(nlohmann::json::parse(o.out)["mu"].get<double>()) <= 1e-9);
}

TEST_CASE("transform argument validation") {
    CHECK(invoke({"transform", "--mass", "1", "--charge", "0.6", "--r", "1", "--mu", "0.5"}).code == 2);
    CHECK(invoke({"transform", "--mass", "1", "--charge", "0.6"}).code == 2);
    CHECK(invoke({"transform", "--mass", "1", "--charge", "0.6", "--r", "5"}).code == 2);
    CHECK(invoke({"transform", "--mass", "1", "--charge", "0.6", "--mu", "4"}).code == 2);
}

TEST_CASE("curvature table") {
    RunConfig cfg;
    cfg.mass = 1.0;
    cfg.charge = 0.6;
    cfg.grid_points = 5;
    cfg.guard_fraction = 0.25;
    const Table t = cmd_curvature(cfg);
    REQUIRE(t.columns == std::vector<std::string>{"r", "mu", "f1", "f2", "R_mumu", "R_nunu", "R_thth",
                                                  "R_phph", "scalar"});
    REQUIRE(t.rows.size() == 5);
    const std::vector<double>& mid = t.rows[2];
    CHECK(mid[0] == doctest::Approx(1.0));
    CHECK(mid[4] == doctest::Approx(0.36).epsilon(1e-12));
    for (const auto& row : t.rows) {
        CHECK(std::abs(row[8]) <= 1e-8);
    }
}

TEST_CASE("uncharged curvature and fluid columns vanish") {
    RunConfig cfg;
    cfg.mass = 1.0;
    cfg.charge = 0.0;
    cfg.grid_points = 16;
    for (const auto& row : cmd_curvature(cfg).rows) {
        for (std::size_t i = 4; i < row.size(); ++i) {
            CHECK(std::abs(row[i]) <= 1e-8);
        }
    }
    for (const auto& row : cmd_fluid(cfg).rows) {
        for (std::size_t i = 2; i < row.size(); ++i) {
            CHECK(row[i] == 0.0);
        }
    }
}

TEST_CASE("fluid table") {
    RunConfig cfg;
    cfg.mass = 1.0;
    cfg.charge = 0.6;
    cfg.grid_points = 5;
    cfg.guard_fraction = 0.25;
    const Table t = cmd_fluid(cfg);
    REQUIRE(t.columns == std::vector<std::string>{"r", "mu", "rho", "pressure", "res_mumu", "res_nunu",
                                                  "res_thth", "res_phph"});
    const std::vector<double>& mid = t.rows[2];
    CHECK(mid[2] == doctest::Approx(9.167e-3).epsilon(1e-3));
    CHECK(mid[3] == doctest::Approx(1.4324e-2).epsilon(1e-4));
    for (const auto& row : t.rows) {
        CHECK(std::abs(row[5]) <= 1e-10);
    }
}

TEST_CASE("CSV output is byte-identical across runs") {
    const std::vector<std::string> args = {"curvature", "--mass", "1", "--charge", "0.6", "--grid", "40"};
    const Outcome a = invoke(args);
    const Outcome b = invoke(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find('\r') == std::string::npos);
    CHECK(lines(a.out).size() == 41);
}

TEST_CASE("JSON output round-trips") {
    const Outcome csv = invoke({"fluid", "--mass", "2", "--charge", "1", "--grid", "7"});
    const Outcome json = invoke({"fluid", "--mass", "2", "--charge", "1", "--grid", "7", "--format", "json"});
    REQUIRE(csv.code == 0);
    REQUIRE(json.code == 0);
    const auto doc = nlohmann::json::parse(json.out);
    REQUIRE(doc.is_array());
    const auto rows = lines(csv.out);
    REQUIRE(rows.size() == doc.size() + 1);
    const std::vector<std::string> cols = {"r", "mu", "rho", "pressure", "res_mumu", "res_nunu",
                                           "res_thth", "res_phph"};
    for (std::size_t i = 0; i < doc.size(); ++i) {
        std::istringstream row(rows[i + 1]);
        std::string cell;
        for (const std::string& c : cols) {
            std::getline(row, cell, ',');
            CHECK(doc[i][c].get<double>() == std::stod(cell));
        }
    }
    CHECK(nlohmann::json::parse(doc.dump()) == doc);
}

TEST_CASE("verify examples") {
    const Outcome charged = invoke({"verify", "--mass", "1", "--charge", "0.6"});
    CHECK(charged.code == 0);
    CHECK(charged.out.find("overall,,,true") != std::string::npos);
    CHECK(charged.out.find("# note:") != std::string::npos);

    const Outcome bare = invoke({"verify", "--mass", "1", "--charge", "0"});
    CHECK(bare.code == 0);

    const Outcome edge = invoke({"verify", "--mass", "1", "--charge", "0.999999"});
    CHECK(edge.code == 0);
    CHECK(edge.out.find("near-extremal") != std::string::npos);
    CHECK(charged.out.find("near-extremal") == std::string::npos);
}

TEST_CASE("verify failure exits 1") {
    const Outcome o = invoke({"verify", "--mass", "1", "--charge", "0.6", "--tol", "1e-3", "--grid", "8"});
    CHECK(o.code == 1);
    CHECK(o.out.find("overall,,,false") != std::string::npos);
    CHECK(o.err.find("inverse_round_trip") != std::string::npos);
}

TEST_CASE("verify report as JSON") {
    const Outcome o = invoke({"verify", "--mass", "2", "--charge", "1", "--grid", "8", "--format", "json"});
    REQUIRE(o.code == 0);
    const auto doc = nlohmann::json::parse(o.out);
    CHECK(doc["pass"].get<bool>());
    bool all = true;
    for (const auto& c : doc["checks"]) {
        all = all && c["pass"].get<bool>();
        CHECK(c["max_abs_residual"].get<double>() <= c["threshold"].get<double>());
    }
    CHECK(all);
    CHECK(doc["closed_form"]["r"].get<double>() == 2.0);
    CHECK(doc["notes"].size() >= 2);
}

TEST_CASE("overall pass is the conjunction of checks") {
    RunConfig cfg;
    cfg.mass = 1.0;
    cfg.charge = 0.3;
    cfg.grid_points = 6;
    const VerifyReport rep = cmd_verify(cfg);
    bool all = true;
    for (const Check& c : rep.checks) {
        all = all && c.pass;
    }
    CHECK(rep.pass == all);
    CHECK(rep.pass);
}

TEST_CASE("relative error scale falls back to the tidal scale") {
    const rn::BlackHoleParams p = rn::BlackHoleParams::make(1.0, 0.0);
    const warped::WarpState w = rn::warp_state(p, 1.0);
    const warped::RicciDiag exact = rn::ricci_closed_form(p, 1.0, std::numbers::pi / 2.0);
    const Diag4 s = ricci_error_scale(exact, w, 1.0);
    CHECK(s[0] == doctest::Approx(1.0));
    CHECK(s[1] == doctest::Approx(1.0));
    CHECK(s[2] == doctest::Approx(1.0));
    CHECK(s[3] == doctest::Approx(1.0));
    CHECK(relative_error({1.0, 2.0, 3.0, 4.0}, {1.0, 2.0, 3.5, 4.0}, {1.0, 1.0, 0.25, 1.0}) ==
          doctest::Approx(2.0));
}

}  // TEST_SUITE
