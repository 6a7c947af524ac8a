#include "gmhd/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gmhd/errors.hpp"

namespace gmhd {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_num(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
    }
}

long parse_int(const std::string& key, const std::string& v) {
    const double x = parse_num(key, v);
    if (x != std::floor(x)) throw ConfigError("config: " + key + " must be an integer");
    return static_cast<long>(x);
}

} // namespace

GFunction RunConfig::make_g() const {
    if (g_kind == "constant") return GFunction::constant(g_ctilde);
    return GFunction::iterated_log(g_k, g_sigma, g_ctilde, g_exponent);
}

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    bool has_n = false, has_alpha = false, has_tend = false, has_sigma = false,
         has_every = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (val.empty()) throw ConfigError("config: empty value for " + key);

        if (key == "grid.n") {
            c.grid_n = static_cast<int>(parse_int(key, val));
            has_n = true;
        } else if (key == "domain.length") {
            c.domain_length = parse_num(key, val);
        } else if (key == "physics.alpha") {
            c.alpha = parse_num(key, val);
            has_alpha = true;
        } else if (key == "physics.g.kind") {
            c.g_kind = val;
        } else if (key == "physics.g.k") {
            c.g_k = static_cast<int>(parse_int(key, val));
        } else if (key == "physics.g.sigma") {
            c.g_sigma = parse_num(key, val);
            has_sigma = true;
        } else if (key == "physics.g.ctilde") {
            c.g_ctilde = parse_num(key, val);
        } else if (key == "physics.g.exponent") {
            c.g_exponent = parse_num(key, val);
        } else if (key == "time.t_end") {
            c.t_end = parse_num(key, val);
            has_tend = true;
        } else if (key == "time.cfl") {
            c.cfl = parse_num(key, val);
        } else if (key == "init.kind") {
            c.init_kind = val;
        } else if (key == "init.seed") {
            const long s = parse_int(key, val);
            if (s < 0) throw ConfigError("config: init.seed must be >= 0");
            c.init_seed = static_cast<std::uint64_t>(s);
        } else if (key == "init.amplitude") {
            c.init_amplitude = parse_num(key, val);
        } else if (key == "diag.q") {
            c.diag_q = parse_num(key, val);
        } else if (key == "diag.s") {
            c.diag_s = parse_num(key, val);
        } else if (key == "diag.r") {
            c.diag_r = parse_num(key, val);
        } else if (key == "diag.every") {
            c.diag_every = parse_num(key, val);
            has_every = true;
        } else if (key == "output.csv") {
            c.output_csv = val;
        } else if (key == "output.checkpoint_every") {
            c.checkpoint_every = parse_int(key, val);
        } else if (key == "output.checkpoint_path") {
            c.checkpoint_path = val;
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    if (!has_n) throw ConfigError("config: missing required key grid.n");
    if (!has_alpha) throw ConfigError("config: missing required key physics.alpha");
    if (!has_tend) throw ConfigError("config: missing required key time.t_end");

    if (c.grid_n < 8 || c.grid_n % 2 != 0)
        throw ConfigError("config: grid.n must be even and >= 8");
    if (!(c.domain_length > 0.0)) throw ConfigError("config: domain.length must be > 0");
    if (!(c.alpha > 0.0)) throw ConfigError("config: physics.alpha must be > 0");
    if (c.g_kind != "constant" && c.g_kind != "iterated_log")
        throw ConfigError("config: physics.g.kind must be constant or iterated_log");
    if (c.g_k < 1) throw ConfigError("config: physics.g.k must be >= 1");
    if (!(c.g_ctilde > 0.0)) throw ConfigError("config: physics.g.ctilde must be > 0");
    if (!(c.g_exponent > 0.0 && c.g_exponent <= 1.0))
        throw ConfigError("config: physics.g.exponent must be in (0, 1]");
    if (c.g_kind == "iterated_log") {
        if (!has_sigma) c.g_sigma = sigma_tower(c.g_k);
        if (c.g_sigma < sigma_tower(c.g_k))
            throw ConfigError("config: physics.g.sigma below the k-fold exponential tower");
    }
    if (!(c.t_end > 0.0)) throw ConfigError("config: time.t_end must be > 0");
    if (!(c.cfl > 0.0 && c.cfl <= 2.0)) throw ConfigError("config: time.cfl must be in (0, 2]");
    if (c.init_kind != "orszag_tang" && c.init_kind != "single_mode" && c.init_kind != "random")
        throw ConfigError("config: init.kind must be orszag_tang, single_mode or random");
    if (!(c.diag_q >= 1.0)) throw ConfigError("config: diag.q must be >= 1");
    if (!(c.diag_r >= 0.0)) throw ConfigError("config: diag.r must be >= 0");
    if (!has_every) c.diag_every = c.t_end / 100.0;
    if (!(c.diag_every > 0.0)) throw ConfigError("config: diag.every must be > 0");
    if (c.checkpoint_every < 0)
        throw ConfigError("config: output.checkpoint_every must be >= 0");
    return c;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    out.precision(17);
    out << "grid.n = " << c.grid_n << "\n";
    out << "domain.length = " << c.domain_length << "\n";
    out << "physics.alpha = " << c.alpha << "\n";
    out << "physics.g.kind = " << c.g_kind << "\n";
    out << "physics.g.k = " << c.g_k << "\n";
    if (c.g_kind == "iterated_log") out << "physics.g.sigma = " << c.g_sigma << "\n";
    out << "physics.g.ctilde = " << c.g_ctilde << "\n";
    out << "physics.g.exponent = " << c.g_exponent << "\n";
    out << "time.t_end = " << c.t_end << "\n";
    out << "time.cfl = " << c.cfl << "\n";
    out << "init.kind = " << c.init_kind << "\n";
    out << "init.seed = " << c.init_seed << "\n";
    out << "init.amplitude = " << c.init_amplitude << "\n";
    out << "diag.q = " << c.diag_q << "\n";
    out << "diag.s = " << c.diag_s << "\n";
    out << "diag.r = " << c.diag_r << "\n";
    out << "diag.every = " << c.diag_every << "\n";
    if (!c.output_csv.empty()) out << "output.csv = " << c.output_csv << "\n";
    out << "output.checkpoint_every = " << c.checkpoint_every << "\n";
    out << "output.checkpoint_path = " << c.checkpoint_path << "\n";
    return out.str();
}

} // namespace gmhd
