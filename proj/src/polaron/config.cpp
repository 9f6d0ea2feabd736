#include "polaron/config.hpp"

#include <fstream>
#include <sstream>

namespace polaron {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        require(pos == v.size(), ErrorCode::parse_error, "");
        return d;
    } catch (...) {
        fail(ErrorCode::parse_error, "config key '" + key + "': not a number: '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long d = std::stol(v, &pos);
        require(pos == v.size(), ErrorCode::parse_error, "");
        return d;
    } catch (...) {
        fail(ErrorCode::parse_error, "config key '" + key + "': not an integer: '" + v + "'");
    }
}

Vec3 to_vec3(const std::string& key, const std::string& v) {
    auto parts = split_ws(v);
    require(parts.size() == 3, ErrorCode::parse_error,
            "config key '" + key + "': expected three numbers");
    return Vec3(to_double(key, parts[0]), to_double(key, parts[1]), to_double(key, parts[2]));
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& tok : split_ws(v)) out.push_back(to_double(key, tok));
    require(!out.empty(), ErrorCode::parse_error, "config key '" + key + "': empty list");
    return out;
}

std::string vec3_str(const Vec3& v) {
    std::ostringstream os;
    os << v.x() << " " << v.y() << " " << v.z();
    return os.str();
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& raw) {
    std::string value = trim(raw);
    if (key == "p") p = to_vec3(key, value);
    else if (key == "electron_mass" || key == "M") M = to_double(key, value);
    else if (key == "photon_mass" || key == "m") m = to_double(key, value);
    else if (key == "coupling" || key == "q") q = to_double(key, value);
    else if (key == "grid.n_radial") grid.n_radial = static_cast<int>(to_long(key, value));
    else if (key == "grid.n_polar") grid.n_polar = static_cast<int>(to_long(key, value));
    else if (key == "grid.n_azimuthal") grid.n_azimuthal = static_cast<int>(to_long(key, value));
    else if (key == "grid.k_min") grid.k_min = to_double(key, value);
    else if (key == "grid.k_max") grid.k_max = to_double(key, value);
    else if (key == "grid.axis") grid.axis = to_vec3(key, value);
    else if (key == "n_max") n_max = static_cast<int>(to_long(key, value));
    else if (key == "cutoff.kind") {
        if (value == "sharp") cutoff.kind = CutoffProfile::Kind::sharp;
        else if (value == "exponential") cutoff.kind = CutoffProfile::Kind::exponential;
        else fail(ErrorCode::parse_error, "cutoff.kind must be sharp or exponential");
    } else if (key == "cutoff.kappa") cutoff.kappa = to_double(key, value);
    else if (key == "cutoff.lambda") cutoff.lambda = to_double(key, value);
    else if (key == "cutoff.decay") cutoff.decay = to_double(key, value);
    else if (key == "polarization.kind") {
        if (value == "xy") polarization = PolarizationKind::xy;
        else if (value == "axis") polarization = PolarizationKind::axis;
        else fail(ErrorCode::parse_error, "polarization.kind must be xy or axis");
    } else if (key == "polarization.axis") polarization_axis = to_vec3(key, value);
    else if (key == "solver.tol") solver.tol = to_double(key, value);
    else if (key == "solver.n_eigs") n_eigs = static_cast<int>(to_long(key, value));
    else if (key == "solver.max_iter") solver.max_iter = static_cast<int>(to_long(key, value));
    else if (key == "solver.seed") solver.seed = static_cast<std::uint64_t>(to_long(key, value));
    else if (key == "solver.dense_threshold")
        solver.dense_threshold = to_long(key, value);
    else if (key == "solver.cluster_tol") solver.cluster_tol = to_double(key, value);
    else if (key == "solver.mode") {
        if (value == "auto") solver.mode = SolverSettings::Mode::automatic;
        else if (value == "dense") solver.mode = SolverSettings::Mode::dense;
        else if (value == "krylov") solver.mode = SolverSettings::Mode::krylov;
        else fail(ErrorCode::parse_error, "solver.mode must be auto, dense or krylov");
    } else if (key == "tol.atol") tol.atol = to_double(key, value);
    else if (key == "tol.rtol") tol.rtol = to_double(key, value);
    else if (key == "tol.strictness_floor") tol.strictness_floor_rel = to_double(key, value);
    else if (key == "budget.max_states")
        max_states = static_cast<std::size_t>(to_long(key, value));
    else if (key == "scan.parameter") {
        if (value == "p") scan.parameter = ScanSpec::Parameter::p;
        else if (value == "M") scan.parameter = ScanSpec::Parameter::M;
        else if (value == "q") scan.parameter = ScanSpec::Parameter::q;
        else if (value == "m") scan.parameter = ScanSpec::Parameter::m;
        else fail(ErrorCode::parse_error, "scan.parameter must be one of p, M, q, m");
    } else if (key == "scan.direction") scan.direction = to_vec3(key, value);
    else if (key == "scan.from") scan.from = to_double(key, value);
    else if (key == "scan.to") scan.to = to_double(key, value);
    else if (key == "scan.count") scan.count = static_cast<int>(to_long(key, value));
    else if (key == "checks") {
        checks.clear();
        for (const auto& tok : split_ws(value)) checks.push_back(tok);
        require(!checks.empty(), ErrorCode::parse_error, "empty check list");
    } else if (key == "check.concavity_segments")
        concavity_segments = static_cast<int>(to_long(key, value));
    else if (key == "check.lipschitz_points")
        lipschitz_points = static_cast<int>(to_long(key, value));
    else if (key == "check.mass_list") mass_list = to_doubles(key, value);
    else if (key == "check.essential_gap_m") essential_gap_m = to_double(key, value);
    else if (key == "check.dispersion_p") dispersion_p = to_vec3(key, value);
    else if (key == "check.ir_qs") ir_qs = to_doubles(key, value);
    else if (key == "check.pullthrough_nmax") {
        pullthrough_nmax.clear();
        for (const auto& tok : split_ws(value))
            pullthrough_nmax.push_back(static_cast<int>(to_long(key, tok)));
    } else if (key == "check.pullthrough_weight")
        pullthrough_weight = to_double(key, value);
    else if (key == "check.seed") check_seed = static_cast<std::uint64_t>(to_long(key, value));
    else if (key == "check.sector_clusters")
        sector_clusters = static_cast<int>(to_long(key, value));
    else if (key == "output.dir") output_dir = value;
    else fail(ErrorCode::parse_error, "unknown config key '" + key + "'");
}

std::string RunConfig::get(const std::string& key) const {
    std::ostringstream os;
    if (key == "p") return vec3_str(p);
    if (key == "electron_mass") { os << M; return os.str(); }
    if (key == "photon_mass") { os << m; return os.str(); }
    if (key == "coupling") { os << q; return os.str(); }
    if (key == "n_max") { os << n_max; return os.str(); }
    if (key == "output.dir") return output_dir;
    if (key == "cutoff.kind")
        return cutoff.kind == CutoffProfile::Kind::sharp ? "sharp" : "exponential";
    if (key == "polarization.kind") return polarization_kind_name(polarization);
    if (key == "solver.seed") { os << solver.seed; return os.str(); }
    fail(ErrorCode::invalid_argument, "config key '" + key + "' is not readable");
}

RunConfig RunConfig::from_string(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        cfg.echo.push_back(line);
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        require(eq != std::string::npos, ErrorCode::parse_error,
                "config line " + std::to_string(lineno) + ": expected key = value");
        cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorCode::io_error, "cannot read config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return from_string(os.str());
}

ModeGrid RunConfig::build_grid() const {
    return build_cylindrical_grid(grid.n_radial, grid.n_polar, grid.n_azimuthal,
                                  grid.k_min, grid.k_max, grid.axis);
}

PolaronModel RunConfig::build_model() const {
    return make_model(build_grid(), n_max, cutoff, polarization, polarization_axis, p, M,
                      m, q, max_states);
}

}  // namespace polaron
