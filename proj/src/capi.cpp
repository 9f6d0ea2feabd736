// capi.cpp — the extern-C shell around the C++ core

#include "polaron.h"

#include <cstring>
#include <string>

#include "polaron/config.hpp"
#include "polaron/report.hpp"
#include "polaron/runner.hpp"
#include "polaron/serialize.hpp"

using namespace polaron;

struct plr_config {
    RunConfig cfg;
};

struct plr_hamiltonian {
    OperatorMatrix matrix;
    SolverSettings solver;
};

struct plr_spectrum {
    SpectrumResult result;
};

namespace {

thread_local std::string g_last_error = "";

plr_status map_code(ErrorCode c) {
    switch (c) {
        case ErrorCode::invalid_argument: return PLR_ERR_INVALID_ARGUMENT;
        case ErrorCode::dimension_mismatch: return PLR_ERR_DIMENSION_MISMATCH;
        case ErrorCode::parse_error: return PLR_ERR_PARSE;
        case ErrorCode::budget_exceeded: return PLR_ERR_BUDGET;
        case ErrorCode::singular_node: return PLR_ERR_SINGULAR_NODE;
        case ErrorCode::symmetry_violation: return PLR_ERR_SYMMETRY;
        case ErrorCode::solver_failure: return PLR_ERR_SOLVER;
        case ErrorCode::hypothesis_not_satisfied: return PLR_ERR_HYPOTHESIS;
        case ErrorCode::io_error: return PLR_ERR_IO;
        case ErrorCode::internal: return PLR_ERR_INTERNAL;
    }
    return PLR_ERR_INTERNAL;
}

template <typename Fn>
plr_status guarded(Fn&& fn) {
    try {
        fn();
        return PLR_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PLR_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return PLR_ERR_INTERNAL;
    }
}

plr_status require_arg(bool ok, const char* what) {
    if (ok) return PLR_OK;
    g_last_error = what;
    return PLR_ERR_INVALID_ARGUMENT;
}

std::string resolve_dir(const plr_config* cfg, const char* out_dir) {
    return out_dir ? std::string(out_dir) : cfg->cfg.output_dir;
}

std::vector<std::string> split_csv(const char* which) {
    std::vector<std::string> out;
    if (!which) return out;
    std::string s(which);
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        std::string tok = s.substr(pos, next - pos);
        if (!tok.empty()) out.push_back(tok);
        pos = next + 1;
    }
    return out;
}

}  // namespace

extern "C" {

const char* plr_status_name(plr_status s) {
    switch (s) {
        case PLR_OK: return "ok";
        case PLR_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case PLR_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
        case PLR_ERR_PARSE: return "parse_error";
        case PLR_ERR_BUDGET: return "budget_exceeded";
        case PLR_ERR_SINGULAR_NODE: return "singular_node";
        case PLR_ERR_SYMMETRY: return "symmetry_violation";
        case PLR_ERR_SOLVER: return "solver_failure";
        case PLR_ERR_HYPOTHESIS: return "hypothesis_not_satisfied";
        case PLR_ERR_IO: return "io_error";
        case PLR_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* plr_last_error(void) { return g_last_error.c_str(); }

plr_status plr_config_create(plr_config** out) {
    if (auto s = require_arg(out != nullptr, "null output handle")) return s;
    return guarded([&] { *out = new plr_config{RunConfig{}}; });
}

plr_status plr_config_load(const char* path, plr_config** out) {
    if (auto s = require_arg(path && out, "null argument")) return s;
    return guarded([&] { *out = new plr_config{RunConfig::from_file(path)}; });
}

plr_status plr_config_parse(const char* text, plr_config** out) {
    if (auto s = require_arg(text && out, "null argument")) return s;
    return guarded([&] { *out = new plr_config{RunConfig::from_string(text)}; });
}

void plr_config_destroy(plr_config* cfg) { delete cfg; }

plr_status plr_config_set(plr_config* cfg, const char* key, const char* value) {
    if (auto s = require_arg(cfg && key && value, "null argument")) return s;
    return guarded([&] {
        cfg->cfg.set(key, value);
        cfg->cfg.echo.push_back(std::string(key) + " = " + value);
    });
}

plr_status plr_config_get(const plr_config* cfg, const char* key, char* buf,
                          size_t buflen) {
    if (auto s = require_arg(cfg && key && buf && buflen > 0, "null argument")) return s;
    return guarded([&] {
        std::string v = cfg->cfg.get(key);
        require(v.size() + 1 <= buflen, ErrorCode::invalid_argument,
                "buffer too small for value of '" + std::string(key) + "'");
        std::memcpy(buf, v.c_str(), v.size() + 1);
    });
}

plr_status plr_assemble(const plr_config* cfg, plr_hamiltonian** out) {
    if (auto s = require_arg(cfg && out, "null argument")) return s;
    return guarded([&] {
        PolaronHamiltonian h = assemble(cfg->cfg.build_model());
        *out = new plr_hamiltonian{std::move(h.matrix), cfg->cfg.solver};
    });
}

void plr_hamiltonian_destroy(plr_hamiltonian* h) { delete h; }

plr_status plr_hamiltonian_dim(const plr_hamiltonian* h, uint64_t* dim) {
    if (auto s = require_arg(h && dim, "null argument")) return s;
    *dim = static_cast<uint64_t>(h->matrix.dim());
    return PLR_OK;
}

plr_status plr_hamiltonian_nnz(const plr_hamiltonian* h, uint64_t* nnz) {
    if (auto s = require_arg(h && nnz, "null argument")) return s;
    *nnz = static_cast<uint64_t>(h->matrix.nnz());
    return PLR_OK;
}

plr_status plr_hamiltonian_write_json(const plr_hamiltonian* h, const char* path) {
    if (auto s = require_arg(h && path, "null argument")) return s;
    return guarded([&] {
        write_text_file(path, operator_to_json(h->matrix).dump(2) + "\n");
    });
}

plr_status plr_solve_lowest(const plr_hamiltonian* h, uint32_t n_eigs,
                            plr_spectrum** out) {
    if (auto s = require_arg(h && out && n_eigs >= 1, "need a handle and n_eigs >= 1"))
        return s;
    return guarded([&] {
        SpectrumResult r =
            krylov_lowest(h->matrix, static_cast<int>(n_eigs), h->solver.tol,
                          h->solver.max_iter, h->solver.seed, h->solver.cluster_tol);
        require(r.converged, ErrorCode::solver_failure,
                "krylov did not converge within the iteration budget");
        *out = new plr_spectrum{std::move(r)};
    });
}

plr_status plr_solve_dense(const plr_hamiltonian* h, plr_spectrum** out) {
    if (auto s = require_arg(h && out, "null argument")) return s;
    return guarded([&] {
        *out = new plr_spectrum{
            dense_spectrum(h->matrix, h->solver.dense_threshold, h->solver.cluster_tol)};
    });
}

void plr_spectrum_destroy(plr_spectrum* s) { delete s; }

plr_status plr_spectrum_count(const plr_spectrum* s, uint64_t* count) {
    if (auto st = require_arg(s && count, "null argument")) return st;
    *count = s->result.eigenvalues.size();
    return PLR_OK;
}

plr_status plr_spectrum_eigenvalue(const plr_spectrum* s, uint64_t i, double* value) {
    if (auto st = require_arg(s && value, "null argument")) return st;
    if (auto st = require_arg(i < s->result.eigenvalues.size(), "index out of range"))
        return st;
    *value = s->result.eigenvalues[i];
    return PLR_OK;
}

plr_status plr_spectrum_residual(const plr_spectrum* s, uint64_t i, double* value) {
    if (auto st = require_arg(s && value, "null argument")) return st;
    if (auto st = require_arg(i < s->result.residuals.size(), "index out of range"))
        return st;
    *value = s->result.residuals[i];
    return PLR_OK;
}

plr_status plr_ground_energy(const plr_config* cfg, double* energy) {
    if (auto s = require_arg(cfg && energy, "null argument")) return s;
    return guarded([&] {
        EnergyLab lab(cfg->cfg.build_model(), cfg->cfg.solver, cfg->cfg.tol);
        *energy = lab.energy(lab.base().p);
    });
}

plr_status plr_run_assemble(const plr_config* cfg, const char* out_dir) {
    if (auto s = require_arg(cfg != nullptr, "null config")) return s;
    return guarded([&] { cmd_assemble(cfg->cfg, resolve_dir(cfg, out_dir)); });
}

plr_status plr_run_solve(const plr_config* cfg, const char* out_dir) {
    if (auto s = require_arg(cfg != nullptr, "null config")) return s;
    return guarded([&] { cmd_solve(cfg->cfg, resolve_dir(cfg, out_dir)); });
}

plr_status plr_run_scan(const plr_config* cfg, const char* out_dir) {
    if (auto s = require_arg(cfg != nullptr, "null config")) return s;
    return guarded([&] { cmd_scan(cfg->cfg, resolve_dir(cfg, out_dir)); });
}

plr_status plr_run_dispersion(const plr_config* cfg, const char* out_dir) {
    if (auto s = require_arg(cfg != nullptr, "null config")) return s;
    return guarded([&] { cmd_dispersion(cfg->cfg, resolve_dir(cfg, out_dir)); });
}

plr_status plr_run_ir(const plr_config* cfg, const char* out_dir) {
    if (auto s = require_arg(cfg != nullptr, "null config")) return s;
    return guarded([&] { cmd_ir(cfg->cfg, resolve_dir(cfg, out_dir)); });
}

plr_status plr_run_sectors(const plr_config* cfg, const char* out_dir) {
    if (auto s = require_arg(cfg != nullptr, "null config")) return s;
    return guarded([&] { cmd_sectors(cfg->cfg, resolve_dir(cfg, out_dir)); });
}

plr_status plr_run_check(const plr_config* cfg, const char* which, const char* out_dir,
                         int* hard_failures) {
    if (auto s = require_arg(cfg != nullptr, "null config")) return s;
    return guarded([&] {
        CheckRunResult r =
            cmd_check(cfg->cfg, split_csv(which), resolve_dir(cfg, out_dir));
        if (hard_failures) *hard_failures = r.hard_failures;
    });
}

}  // extern "C"
