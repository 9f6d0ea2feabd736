// polaron_main.cpp — batch front door; drives the shared library through the
// C API only

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polaron.h"

namespace {

struct ConfigGuard {
    plr_config* cfg = nullptr;
    ~ConfigGuard() { plr_config_destroy(cfg); }
};

int fail_with(plr_status s, const char* where) {
    std::fprintf(stderr, "error: %s: %s (%s)\n", where, plr_last_error(),
                 plr_status_name(s));
    return 2;
}

int load_config(const std::string& path, const std::vector<std::string>& overrides,
                ConfigGuard& guard) {
    plr_status s = plr_config_load(path.c_str(), &guard.cfg);
    if (s != PLR_OK) return fail_with(s, "config");
    for (const auto& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
            return 2;
        }
        std::string key = kv.substr(0, eq);
        std::string value = kv.substr(eq + 1);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        s = plr_config_set(guard.cfg, key.c_str(), value.c_str());
        if (s != PLR_OK) return fail_with(s, "config override");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirac polaron spectral laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    std::string only_checks;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("-c,--config", config_path, "configuration file (key = value lines)")
            ->required();
        cmd->add_option("-o,--out", out_dir, "output directory (default: config output.dir)");
        cmd->add_option("--set", overrides, "override a config key, e.g. --set coupling=0.2");
    };

    CLI::App* assemble = app.add_subcommand("assemble", "build and export the Hamiltonian");
    CLI::App* solve = app.add_subcommand("solve", "lowest eigenvalues of the model");
    CLI::App* scan = app.add_subcommand("scan", "ground-energy surface along a parameter");
    CLI::App* check = app.add_subcommand("check", "run the verification suite");
    CLI::App* dispersion =
        app.add_subcommand("dispersion", "dispersion gaps against their bounds");
    CLI::App* ir = app.add_subcommand("ir", "infrared criterion quadrature");
    CLI::App* sectors =
        app.add_subcommand("sectors", "angular momentum sectors and pairing");
    for (CLI::App* cmd : {assemble, solve, scan, check, dispersion, ir, sectors})
        add_common(cmd);
    check->add_option("--only", only_checks,
                      "comma-separated subset of checks (default: config `checks`)");

    CLI11_PARSE(app, argc, argv);

    ConfigGuard guard;
    if (int rc = load_config(config_path, overrides, guard)) return rc;
    const char* dir = out_dir.empty() ? nullptr : out_dir.c_str();

    plr_status s = PLR_OK;
    if (assemble->parsed()) {
        s = plr_run_assemble(guard.cfg, dir);
        if (s != PLR_OK) return fail_with(s, "assemble");
        std::printf("assemble: reports written\n");
    } else if (solve->parsed()) {
        s = plr_run_solve(guard.cfg, dir);
        if (s != PLR_OK) return fail_with(s, "solve");
        std::printf("solve: spectrum written\n");
    } else if (scan->parsed()) {
        s = plr_run_scan(guard.cfg, dir);
        if (s != PLR_OK) return fail_with(s, "scan");
        std::printf("scan: surface written\n");
    } else if (dispersion->parsed()) {
        s = plr_run_dispersion(guard.cfg, dir);
        if (s != PLR_OK) return fail_with(s, "dispersion");
        std::printf("dispersion: report written\n");
    } else if (ir->parsed()) {
        s = plr_run_ir(guard.cfg, dir);
        if (s != PLR_OK) return fail_with(s, "ir");
        std::printf("ir: report written\n");
    } else if (sectors->parsed()) {
        s = plr_run_sectors(guard.cfg, dir);
        if (s != PLR_OK) return fail_with(s, "sectors");
        std::printf("sectors: report written\n");
    } else if (check->parsed()) {
        int hard_failures = 0;
        s = plr_run_check(guard.cfg, only_checks.empty() ? nullptr : only_checks.c_str(),
                          dir, &hard_failures);
        if (s != PLR_OK) return fail_with(s, "check");
        if (hard_failures > 0) {
            std::printf("check: %d hard failure(s); see checks.json\n", hard_failures);
            return 1;
        }
        std::printf("check: all selected checks passed (unmet hypotheses, if any, "
                    "are flagged in checks.json)\n");
    }
    return 0;
}
