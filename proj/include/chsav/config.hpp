// config.hpp
// Run configuration: flat `key = value` files with `#` comments, overridden
// by command-line flags of the same names.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chsav/sav.hpp"
#include "chsav/snapshot.hpp"

namespace chsav {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    SchemeConfig scheme{};
    std::string out_dir = "out";
    std::vector<double> snapshot_times;  // must lie in [0, T]
    SnapshotFormat snapshot_format = SnapshotFormat::vtk;

    // Temporal convergence study. The default ladder stays below the
    // e-folding time of the default potential's fastest mode (~6e-4).
    int time_n = 32;
    double time_T = 0.01;
    std::vector<double> time_dt_ladder = {1e-4, 5e-5, 2.5e-5, 1.25e-5};
    double time_dt_ref = 3.125e-6;

    // Spatial convergence study
    double space_dt = 2e-5;
    double space_T = 0.01;
    std::vector<int> space_n_ladder = {4, 8, 16};
    int space_n_ref = 64;

    // Accepted rate bands (exit status of the conv commands)
    double rate_band_lo = 0.7;
    double rate_band_hi = 1.3;
    double rate_band_r_lo = 1.6;
    double rate_band_r_hi = 2.5;
};

using KeyValueOverrides = std::vector<std::pair<std::string, std::string>>;

// Parses the optional config file, then applies overrides in order (later
// values win). Errors name the offending key and, for files, the line.
RunConfig parse_config(const std::optional<std::string>& path,
                       const KeyValueOverrides& overrides = {});

// Known config keys, in documentation order (one CLI override flag each).
std::vector<std::string> config_keys();

}  // namespace chsav
