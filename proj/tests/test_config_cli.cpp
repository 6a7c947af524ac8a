#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gmhd/cli.hpp"
#include "gmhd/config.hpp"
#include "gmhd/errors.hpp"
#include "gmhd/gfunction.hpp"
#include "gmhd/kernel_lab.hpp"
#include "gmhd/solver.hpp"

using namespace gmhd;
namespace fs = std::filesystem;

namespace {

std::string write_tmp(const std::string& name, const std::string& text) {
    const std::string path = (fs::temp_directory_path() / name).string();
    std::ofstream out(path);
    out << text;
    return path;
}

const char* ot_preset =
    "# Orszag-Tang run\n"
    "grid.n = 64\n"
    "domain.length = 6.283185307179586\n"
    "physics.alpha = 0.5\n"
    "physics.g.kind = iterated_log\n"
    "physics.g.k = 1\n"
    "physics.g.sigma = 2.718281828459045\n"
    "physics.g.ctilde = 1\n"
    "physics.g.exponent = 0.5\n"
    "time.t_end = 0.1\n"
    "time.cfl = 0.4\n"
    "init.kind = orszag_tang\n"
    "init.seed = 0\n"
    "init.amplitude = 1\n"
    "diag.q = 4\n"
    "diag.s = 2\n"
    "diag.r = 0.2\n"
    "diag.every = 0.02\n"
    "output.checkpoint_every = 0\n"
    "output.checkpoint_path = checkpoint.gmhd\n";

} // namespace

TEST_CASE("minimal config applies documented defaults") {
    const RunConfig c = parse_config("grid.n = 64\nphysics.alpha = 1\ntime.t_end = 2\n");
    CHECK(c.domain_length == doctest::Approx(2.0 * M_PI));
    CHECK(c.cfl == 0.4);
    CHECK(c.g_kind == "constant");
    CHECK(c.g_ctilde == 1.0);
    CHECK(c.init_kind == "orszag_tang");
    CHECK(c.diag_q == 4.0);
    CHECK(c.diag_every == doctest::Approx(0.02));
    CHECK(c.make_g().value(37.0) == 1.0);
}

TEST_CASE("sigma below the tower is rejected") {
    CHECK_THROWS_AS(parse_config("grid.n = 64\nphysics.alpha = 1\ntime.t_end = 2\n"
                                 "physics.g.kind = iterated_log\nphysics.g.k = 1\n"
                                 "physics.g.sigma = 1\n"),
                    ConfigError);
}

TEST_CASE("unknown, missing and out-of-range keys are rejected") {
    CHECK_THROWS_AS(parse_config("grid.n = 64\nphysics.alpha = 1\ntime.t_end = 2\nfoo.bar = 1\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("physics.alpha = 1\ntime.t_end = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid.n = 63\nphysics.alpha = 1\ntime.t_end = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid.n = 64\nphysics.alpha = 0\ntime.t_end = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid.n = 64\nphysics.alpha = 1\ntime.t_end = 2\ntime.cfl = 3\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("grid.n = 64\nphysics.alpha = 1\ntime.t_end = 2\ninit.kind = x\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("grid.n = sixty\nphysics.alpha = 1\ntime.t_end = 2\n"),
                    ConfigError);
}

TEST_CASE("comments and blank lines are accepted") {
    const RunConfig c = parse_config(
        "# header comment\n\ngrid.n = 32   # inline\n  physics.alpha = 1\ntime.t_end = 1\n");
    CHECK(c.grid_n == 32);
}

TEST_CASE("full preset round-trips through serialize and parse") {
    const RunConfig a = parse_config(ot_preset);
    const std::string sa = serialize_config(a);
    const RunConfig b = parse_config(sa);
    CHECK(serialize_config(b) == sa);
    CHECK(b.grid_n == a.grid_n);
    CHECK(b.g_sigma == a.g_sigma);
    CHECK(b.diag_r == a.diag_r);
}

TEST_CASE("fit_scaling recovers exact power laws") {
    std::vector<double> ts, vs;
    for (int i = 0; i < 12; ++i) {
        ts.push_back(std::pow(10.0, -4.0 + i * (4.0 / 11.0)));
        vs.push_back(std::pow(ts.back(), -0.5));
    }
    const ScalingFit fit = fit_scaling(ts, vs);
    CHECK(fit.fitted_exponent == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);
}

TEST_CASE("fit_scaling divides out a g(A_t) correction") {
    const auto g = GFunction::iterated_log(1, std::exp(1.0));
    auto corr = [&](double t) { return g.value(solve_At(g, t)); };
    std::vector<double> ts, vs;
    for (int i = 0; i < 12; ++i) {
        ts.push_back(std::pow(10.0, -5.0 + i * (4.0 / 11.0)));
        vs.push_back(std::pow(ts.back(), -1.0) * corr(ts.back()));
    }
    const ScalingFit fit = fit_scaling(ts, vs, corr);
    CHECK(fit.fitted_exponent == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(fit.correction_used);
}

TEST_CASE("fit_scaling on sampled heat-kernel norms") {
    const auto g = GFunction::constant(1.0);
    std::vector<double> ts, vs;
    for (int i = 0; i < 10; ++i) {
        ts.push_back(std::pow(10.0, -4.0 + i * (3.5 / 9.0)));
        vs.push_back(kernel_hs_norm(g, 0.0, ts.back()));
    }
    const ScalingFit fit = fit_scaling(ts, vs);
    CHECK(fit.fitted_exponent == doctest::Approx(-0.5).epsilon(1e-6));
}

TEST_CASE("fit_scaling input validation") {
    std::vector<double> few{1.0, 2.0, 3.0};
    CHECK_THROWS(fit_scaling(few, few));
    std::vector<double> ts, vs;
    for (int i = 0; i < 10; ++i) {
        ts.push_back(1.0 + i); // spans < 3 decades
        vs.push_back(1.0);
    }
    CHECK_THROWS(fit_scaling(ts, vs));
    ts.clear();
    vs.clear();
    for (int i = 0; i < 10; ++i) {
        ts.push_back(std::pow(10.0, i));
        vs.push_back(i == 3 ? -1.0 : 1.0);
    }
    CHECK_THROWS(fit_scaling(ts, vs));
}

TEST_CASE("cli: simulate runs a small config and exits 0") {
    const std::string cfg = write_tmp("gmhd_cli_sim.cfg",
                                      "grid.n = 32\nphysics.alpha = 1\ntime.t_end = 0.05\n"
                                      "diag.every = 0.01\n");
    CHECK(cli::run({"simulate", "-c", cfg}) == 0);
}

TEST_CASE("cli: config errors exit 2") {
    const std::string cfg = write_tmp("gmhd_cli_bad.cfg", "grid.n = 64\n");
    CHECK(cli::run({"simulate", "-c", cfg}) == 2);
    CHECK(cli::run({"verify-kernel", "-c", cfg}) == 2);
}

TEST_CASE("cli: missing files exit 5") {
    CHECK(cli::run({"simulate", "-c", "/nonexistent/path.cfg"}) == 5);
    CHECK(cli::run({"fit", "-i", "/nonexistent/data.csv", "--col", "x"}) == 5);
}

TEST_CASE("cli: verify-gronwall canonical run exits 0 and writes a trajectory") {
    const std::string out = (fs::temp_directory_path() / "gmhd_traj.csv").string();
    CHECK(cli::run({"verify-gronwall", "--k", "1", "--T", "2", "-o", out}) == 0);
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,coordinate,depth");
    fs::remove(out);
}

TEST_CASE("cli: verify-gronwall flags an adversarial diagnostic series") {
    std::ostringstream csv;
    csv << DiagRecord::csv_header() << "\n";
    for (int i = 0; i < 30; ++i) {
        DiagRecord r;
        r.t = 0.05 * i;
        r.omega_l2 = 1.0;
        r.j_l2 = 0.8;
        r.diss_b = i == 11 ? 300.0 : 0.5;
        r.diss_omega = 2.0;
        r.diss_j = 1.5;
        csv << r.csv_row() << "\n";
    }
    const std::string path = write_tmp("gmhd_adversarial.csv", csv.str());
    CHECK(cli::run({"verify-gronwall", "--diag", path}) == 3);
}

TEST_CASE("cli: fit recovers an exponent from CSV") {
    std::ostringstream csv;
    csv << "t,v\n";
    for (int i = 0; i < 12; ++i) {
        const double t = std::pow(10.0, -4.0 + i / 3.0);
        csv << t << ',' << 2.0 * std::pow(t, -0.75) << "\n";
    }
    const std::string path = write_tmp("gmhd_fit.csv", csv.str());
    CHECK(cli::run({"fit", "-i", path, "--col", "v"}) == 0);
    CHECK(cli::run({"fit", "-i", path, "--col", "missing"}) == 2);
}

TEST_CASE("cli: verify-kernel and verify-besov emit CSV and exit 0") {
    const std::string cfg = write_tmp("gmhd_cli_verify.cfg",
                                      "grid.n = 64\nphysics.alpha = 0.5\ntime.t_end = 1\n"
                                      "physics.g.kind = iterated_log\nphysics.g.k = 1\n");
    const std::string kout = (fs::temp_directory_path() / "gmhd_vk.csv").string();
    CHECK(cli::run({"verify-kernel", "-c", cfg, "-o", kout}) == 0);
    {
        std::ifstream in(kout);
        std::string header;
        std::getline(in, header);
        CHECK(header == "t,s,k,moment,hs_norm,l1_norm,envelope,ratio");
        int rows = 0;
        std::string line;
        while (std::getline(in, line)) ++rows;
        CHECK(rows == 48);
    }
    const std::string bout = (fs::temp_directory_path() / "gmhd_vb.csv").string();
    CHECK(cli::run({"verify-besov", "-c", cfg, "-o", bout}) == 0);
    {
        std::ifstream in(bout);
        std::string header;
        std::getline(in, header);
        CHECK(header == "check,j,k,a,b,q,alpha,value,value2,pass");
    }
    fs::remove(kout);
    fs::remove(bout);
}

TEST_CASE("cli: simulate blow-up exits 4") {
    const std::string ckpt = (fs::temp_directory_path() / "gmhd_cli_blow.bin").string();
    const std::string cfg = write_tmp("gmhd_cli_blow.cfg",
                                      "grid.n = 32\nphysics.alpha = 1\ntime.t_end = 1\n"
                                      "init.kind = random\ninit.amplitude = 1e200\n"
                                      "output.checkpoint_path = " + ckpt + "\n");
    CHECK(cli::run({"simulate", "-c", cfg}) == 4);
    fs::remove(ckpt + ".blowup");
}
