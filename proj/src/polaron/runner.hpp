// runner.hpp — batch pipelines behind the CLI subcommands

#pragma once

#include <string>
#include <vector>

#include "polaron/config.hpp"

namespace polaron {

struct CheckOutcome {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    double worst_slack = 0;
};

struct CheckRunResult {
    std::vector<CheckOutcome> outcomes;
    int hard_failures = 0;  // status == fail counts; unmet hypotheses do not
};

// every command writes its reports under out_dir (created if missing)
void cmd_assemble(const RunConfig& cfg, const std::string& out_dir);
void cmd_solve(const RunConfig& cfg, const std::string& out_dir);
void cmd_scan(const RunConfig& cfg, const std::string& out_dir);
void cmd_dispersion(const RunConfig& cfg, const std::string& out_dir);
void cmd_ir(const RunConfig& cfg, const std::string& out_dir);
void cmd_sectors(const RunConfig& cfg, const std::string& out_dir);
CheckRunResult cmd_check(const RunConfig& cfg, const std::vector<std::string>& which,
                         const std::string& out_dir);

std::vector<std::string> all_check_names();

}  // namespace polaron
