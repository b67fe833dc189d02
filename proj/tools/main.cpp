// chsav command-line front end: run simulations and convergence studies.
//
// Exit codes: 0 success / rate bands met, 1 configuration error,
// 2 solver or I/O failure, 3 rate bands violated.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "chsav/commands.hpp"
#include "chsav/config.hpp"

namespace {

struct CommonArgs {
    std::optional<std::string> config_path;
    chsav::KeyValueOverrides overrides;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option_function<std::string>(
           "--config", [&args](const std::string& v) { args.config_path = v; },
           "Path to a key = value config file");
    for (const auto& key : chsav::config_keys()) {
        cmd->add_option_function<std::string>(
               "--" + key,
               [&args, key](const std::string& v) { args.overrides.emplace_back(key, v); },
               "Override config key '" + key + "'")
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SAV finite element solver for the Cahn-Hilliard equation"};
    app.require_subcommand(1);

    CommonArgs run_args, time_args, space_args;
    CLI::App* run_cmd = app.add_subcommand("run", "Integrate and write trace.csv + snapshots");
    add_common_options(run_cmd, run_args);
    CLI::App* time_cmd =
        app.add_subcommand("conv-time", "Temporal convergence study against a fine-dt reference");
    add_common_options(time_cmd, time_args);
    CLI::App* space_cmd =
        app.add_subcommand("conv-space", "Spatial convergence study against a fine-mesh reference");
    add_common_options(space_cmd, space_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            const auto config = chsav::parse_config(run_args.config_path, run_args.overrides);
            return chsav::cmd_run(config);
        }
        if (time_cmd->parsed()) {
            const auto config = chsav::parse_config(time_args.config_path, time_args.overrides);
            return chsav::cmd_convergence(chsav::StudyKind::temporal, config);
        }
        const auto config = chsav::parse_config(space_args.config_path, space_args.overrides);
        return chsav::cmd_convergence(chsav::StudyKind::spatial, config);
    } catch (const chsav::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 2;
    }
}
