#include "gmhd/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "gmhd/besov.hpp"
#include "gmhd/errors.hpp"
#include "gmhd/gronwall.hpp"
#include "gmhd/kernel_lab.hpp"
#include "gmhd/solver.hpp"
#include "gmhd/spectral_ops.hpp"

namespace gmhd::cli {

namespace {

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::vector<double> column(const std::string& name) const {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == name) {
                std::vector<double> out;
                out.reserve(rows.size());
                for (const auto& r : rows) out.push_back(r[c]);
                return out;
            }
        throw ConfigError("CSV column not found: " + name);
    }
};

Csv read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open CSV: " + path);
    Csv csv;
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty CSV: " + path);
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) csv.header.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != csv.header.size()) throw IoError("ragged CSV row in " + path);
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw IoError("cannot open output: " + path);
    return file;
}

int cmd_simulate(const std::string& config_path) {
    const RunConfig cfg = parse_config_file(config_path);
    SimState final_state(Grid2D(cfg.grid_n, cfg.domain_length), {cfg.alpha, cfg.make_g()});
    const SimResult res = simulate(cfg, &final_state);
    const DiagRecord& last = res.records.back();
    std::cout << "t_final " << res.t_final << "  steps " << res.steps << "  energy "
              << last.energy << "  omega_l2 " << last.omega_l2 << "  j_l2 " << last.j_l2
              << "\n";
    if (res.status == SimStatus::blowup) {
        std::cerr << "blow-up abort at t = " << res.t_final << "\n";
        return 4;
    }
    return 0;
}

int cmd_verify_kernel(const std::string& config_path, const std::string& out_path) {
    const RunConfig cfg = parse_config_file(config_path);
    const GFunction g = cfg.make_g();

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out.precision(12);
    out << "t,s,k,moment,hs_norm,l1_norm,envelope,ratio\n";

    const std::pair<double, double> sk[] = {{0.0, 0.0}, {1.0, 1.0}, {2.0, 1.0}};
    bool violation = false;
    std::vector<double> ts;
    for (int i = 0; i < 16; ++i) ts.push_back(std::pow(10.0, -6.0 + 5.0 * i / 15.0));

    std::map<double, double> l1_cache;
    for (auto [s, k] : sk) {
        double rmin = INFINITY, rmax = 0.0;
        for (double t : ts) {
            const double moment = kernel_moment(g, s, k, t).value;
            const double hs = kernel_hs_norm(g, s, t);
            if (!l1_cache.count(t))
                l1_cache[t] = kernel_l1_norm(g, 0.0, t, choose_l1_grid(g, t));
            const double A = solve_At(g, t);
            const double env = std::pow(t, -(s + 1.0)) * std::pow(g.value(A), s - k + 1.0);
            const double ratio = moment / env;
            rmin = std::min(rmin, ratio);
            rmax = std::max(rmax, ratio);
            out << t << ',' << s << ',' << k << ',' << moment << ',' << hs << ','
                << l1_cache[t] << ',' << env << ',' << ratio << "\n";
        }
        if (rmax / rmin > 10.0) violation = true;
    }
    return violation ? 3 : 0;
}

int cmd_verify_besov(const std::string& config_path, const std::string& out_path) {
    const RunConfig cfg = parse_config_file(config_path);
    const Grid2D grid(cfg.grid_n, cfg.domain_length);
    const DyadicPartition part(grid);

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out.precision(12);
    out << "check,j,k,a,b,q,alpha,value,value2,pass\n";
    bool violation = false;
    auto row = [&](const char* check, double j, double k, double a, double b, double q,
                   double alpha, double v1, double v2, bool pass) {
        out << check << ',' << j << ',' << k << ',' << a << ',' << b << ',' << q << ','
            << alpha << ',' << v1 << ',' << v2 << ',' << (pass ? 1 : 0) << "\n";
        if (!pass) violation = true;
    };

    // Partition of unity across the realized wavenumbers.
    double resid = 0.0;
    for (int i = 0; i < grid.n(); ++i)
        for (int jj = 0; jj < grid.n(); ++jj)
            resid = std::max(resid, std::abs(part.partition_residual(grid.xi_norm(i, jj))));
    row("partition", 0, 0, 0, 0, 0, 0, resid, 0, resid < 1e-12);

    // Block reconstruction of a random field.
    {
        SpectralField2D f = random_band_limited(grid, cfg.init_seed, grid.n() / 4.0);
        SpectralField2D sum(grid, true);
        for (int j = -1; j <= part.j_max; ++j) {
            const auto blk = lp_block(f, j, part);
            for (std::size_t i = 0; i < sum.coeffs.size(); ++i) sum.coeffs[i] += blk.coeffs[i];
        }
        double err = 0.0;
        for (std::size_t i = 0; i < sum.coeffs.size(); ++i)
            err += std::norm(sum.coeffs[i] - f.coeffs[i]);
        err = std::sqrt(err);
        row("reconstruction", 0, 0, 0, 0, 0, 0, err, 0, err < 1e-12);
    }

    // Single-mode Bernstein ratios (= 1 exactly).
    for (int j = 1; j <= 5; ++j) {
        if ((1 << j) >= grid.n() / 2) break; // mode must sit below Nyquist
        for (int k = 0; k <= 2; ++k) {
            SpectralField2D f(grid, true);
            const int m = 1 << j;
            f.mode(m, 0) = cplx{0.0, -0.5};
            f.mode(-m, 0) = cplx{0.0, 0.5};
            const BernsteinReport rep = bernstein_check(std::pow(2.0, j), k, 2.0, 2.0, f);
            const bool ok = std::abs(rep.ratio_canonical - 1.0) < 1e-12 &&
                            std::abs(rep.ratio_upper - 1.0) < 1e-12;
            row("bernstein_single", j, k, 2, 2, 0, 0, rep.ratio_canonical, rep.ratio_upper, ok);
        }
    }

    // Random annulus fields, k = 0, a = 2, b = inf: uniform upper ratio.
    for (int j = 2; j <= 6; ++j) {
        if (std::pow(2.0, j) * (8.0 / 3.0) > grid.n() / 2.0) break;
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const auto f = random_annulus(grid, cfg.init_seed + 977 * trial + j, j);
            const auto rep = bernstein_check(std::pow(2.0, j), 0, 2.0, INFINITY, f);
            worst = std::max(worst, rep.ratio_upper);
        }
        row("bernstein_random", j, 0, 2, INFINITY, 0, 0, worst, 0, std::isfinite(worst));
    }

    // Dissipation lower-bound ratios over seeded fields.
    const std::pair<double, double> aq[] = {{0.5, 2.0}, {0.5, 4.0}, {0.25, 4.0}};
    for (auto [alpha, q] : aq) {
        double min_ratio = INFINITY, min_lhs = INFINITY;
        for (int trial = 0; trial < 50; ++trial) {
            const auto f = random_band_limited(grid, cfg.init_seed + 31 * trial, grid.n() / 8.0);
            const auto pr = dissipation_lower_bound(f, alpha, q);
            min_lhs = std::min(min_lhs, pr.lhs);
            min_ratio = std::min(min_ratio, pr.lhs / pr.rhs);
        }
        row("dissipation", 0, 0, 0, 0, q, alpha, min_ratio, min_lhs,
            min_lhs > 0.0 && min_ratio > 0.0);
    }
    return violation ? 3 : 0;
}

int cmd_verify_gronwall(int k, double alpha0, double T, const std::string& preset,
                        const std::string& diag_csv, const std::string& out_path) {
    bool violation = false;

    GronwallProblem prob;
    prob.k = k;
    prob.alpha0 = alpha0 > 0.0 ? alpha0 : sigma_tower(k);
    prob.T = T;
    if (preset == "canonical") {
        prob.n = [](double) { return 1.0; };
    } else if (preset == "linear") {
        prob.l = [](double) { return 1.0; };
    } else {
        throw ConfigError("verify-gronwall: unknown preset '" + preset + "'");
    }

    const double a0 = preset == "canonical" ? sigma_tower(k + 2) : std::max(prob.alpha0, 10.0);
    const Trajectory traj = integrate_envelope(prob, a0);

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out.precision(17);
    out << "t,coordinate,depth\n";
    for (const auto& p : traj.points) out << p.t << ',' << p.x << ',' << p.depth << "\n";

    if (preset == "canonical") {
        // ln^(k+2)(A + alpha0) grows exactly as fast as int n dt = t.
        const int depth = k + 2;
        const double z0 = Trajectory::at_depth(traj.points.front(), depth);
        double worst = 0.0;
        for (const auto& p : traj.points)
            worst = std::max(worst, std::abs(Trajectory::at_depth(p, depth) - z0 - p.t));
        std::cout << "canonical closed-form max deviation: " << worst << "\n";
        if (!(worst < 1e-6)) violation = true;
    }

    if (!diag_csv.empty()) {
        const Csv csv = read_csv(diag_csv);
        std::vector<DiagRecord> series(csv.rows.size());
        const auto t = csv.column("t");
        const auto wl2 = csv.column("omega_l2");
        const auto jl2 = csv.column("j_l2");
        const auto db = csv.column("diss_b");
        const auto dw = csv.column("diss_omega");
        const auto dj = csv.column("diss_j");
        for (std::size_t i = 0; i < series.size(); ++i) {
            series[i].t = t[i];
            series[i].omega_l2 = wl2[i];
            series[i].j_l2 = jl2[i];
            series[i].diss_b = db[i];
            series[i].diss_omega = dw[i];
            series[i].diss_j = dj[i];
        }
        const UsageReport rep = check_gronwall_usage(series, sigma_tower(k), k);
        std::cout << "n <= C A fitted constant: " << rep.c_n_over_a << "\n";
        std::cout << "inequality fitted constant: " << rep.c_inequality << "\n";
        for (const auto& fs : rep.flagged)
            std::cout << "flagged " << fs.check << " at sample " << fs.index << " (ratio "
                      << fs.ratio << ")\n";
        if (rep.violation) violation = true;
    }
    return violation ? 3 : 0;
}

int cmd_fit(const std::string& input, const std::string& col, const std::string& correction,
            double power, const std::string& config_path) {
    const Csv csv = read_csv(input);
    const auto t = csv.column("t");
    const auto v = csv.column(col);

    std::function<double(double)> corr;
    if (correction == "g_at") {
        GFunction g = GFunction::constant(1.0);
        if (!config_path.empty()) g = parse_config_file(config_path).make_g();
        corr = [g, power](double tt) { return std::pow(g.value(solve_At(g, tt)), power); };
    } else if (!correction.empty()) {
        throw ConfigError("fit: unknown correction '" + correction + "'");
    }

    const ScalingFit fit = fit_scaling(t, v, corr);
    std::cout << "exponent " << fit.fitted_exponent << "  residual " << fit.residual
              << "  correction " << (fit.correction_used ? "g_at" : "none") << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"2D generalized MHD pseudo-spectral solver and analysis lab"};
    app.require_subcommand(1);

    std::string config_path, out_path, diag_csv, preset = "canonical";
    std::string fit_input, fit_col, fit_correction;
    double fit_power = 1.0, alpha0 = 0.0, T = 5.0;
    int k = 1;

    auto* sim = app.add_subcommand("simulate", "run a simulation");
    sim->add_option("-c,--config", config_path)->required();

    auto* vk = app.add_subcommand("verify-kernel", "kernel decay estimates");
    vk->add_option("-c,--config", config_path)->required();
    vk->add_option("-o,--output", out_path);

    auto* vb = app.add_subcommand("verify-besov", "Littlewood-Paley checks");
    vb->add_option("-c,--config", config_path)->required();
    vb->add_option("-o,--output", out_path);

    auto* vg = app.add_subcommand("verify-gronwall", "logarithmic Gronwall checks");
    vg->add_option("-c,--config", config_path);
    vg->add_option("-o,--output", out_path);
    vg->add_option("--k", k);
    vg->add_option("--alpha0", alpha0);
    vg->add_option("--T", T);
    vg->add_option("--preset", preset);
    vg->add_option("--diag", diag_csv);

    auto* ft = app.add_subcommand("fit", "power-law exponent fit on CSV columns");
    ft->add_option("-i,--input", fit_input)->required();
    ft->add_option("--col", fit_col)->required();
    ft->add_option("--correction", fit_correction);
    ft->add_option("--power", fit_power);
    ft->add_option("-c,--config", config_path);

    std::vector<std::string> rargs(args.rbegin(), args.rend());
    try {
        app.parse(rargs);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path);
        if (vk->parsed()) return cmd_verify_kernel(config_path, out_path);
        if (vb->parsed()) return cmd_verify_besov(config_path, out_path);
        if (vg->parsed()) return cmd_verify_gronwall(k, alpha0, T, preset, diag_csv, out_path);
        if (ft->parsed()) return cmd_fit(fit_input, fit_col, fit_correction, fit_power, config_path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BlowUpError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace gmhd::cli
