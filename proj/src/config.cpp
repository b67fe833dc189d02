#include "chsav/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>

namespace chsav {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& context, const std::string& why) {
    throw config_error("config key '" + key + "' (" + context + "): " + why);
}

double parse_double(const std::string& key, const std::string& context, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (pos != raw.size()) fail(key, context, "trailing characters in '" + raw + "'");
        return v;
    } catch (const config_error&) {
        throw;
    } catch (const std::exception&) {
        fail(key, context, "cannot parse '" + raw + "' as a number");
    }
}

int parse_int(const std::string& key, const std::string& context, const std::string& raw) {
    int v = 0;
    const auto* first = raw.data();
    const auto* last = raw.data() + raw.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
        fail(key, context, "cannot parse '" + raw + "' as an integer");
    }
    return v;
}

std::vector<std::string> split_list(const std::string& raw) {
    std::vector<std::string> items;
    std::string current;
    for (char c : raw) {
        if (c == ',') {
            items.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    items.push_back(trim(current));
    return items;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& context,
                                      const std::string& raw) {
    std::vector<double> out;
    if (trim(raw).empty()) return out;
    for (const auto& item : split_list(raw)) out.push_back(parse_double(key, context, item));
    return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& context,
                                const std::string& raw) {
    std::vector<int> out;
    if (trim(raw).empty()) return out;
    for (const auto& item : split_list(raw)) out.push_back(parse_int(key, context, item));
    return out;
}

void apply_key(RunConfig& config, const std::string& key, const std::string& value,
               const std::string& context) {
    if (key == "n") {
        config.scheme.n = parse_int(key, context, value);
    } else if (key == "dt") {
        config.scheme.dt = parse_double(key, context, value);
    } else if (key == "T") {
        config.scheme.T = parse_double(key, context, value);
    } else if (key == "epsilon") {
        config.scheme.potential.epsilon = parse_double(key, context, value);
    } else if (key == "C0") {
        config.scheme.potential.C0 = parse_double(key, context, value);
    } else if (key == "projection_tol") {
        config.scheme.projection_tol = parse_double(key, context, value);
    } else if (key == "record_every") {
        config.scheme.record_every = parse_int(key, context, value);
    } else if (key == "snapshot_times") {
        config.snapshot_times = parse_double_list(key, context, value);
    } else if (key == "snapshot_format") {
        const std::string v = trim(value);
        if (v == "vtk") {
            config.snapshot_format = SnapshotFormat::vtk;
        } else if (v == "csv") {
            config.snapshot_format = SnapshotFormat::csv;
        } else {
            fail(key, context, "expected 'vtk' or 'csv', got '" + v + "'");
        }
    } else if (key == "out") {
        config.out_dir = trim(value);
    } else if (key == "time_n") {
        config.time_n = parse_int(key, context, value);
    } else if (key == "time_T") {
        config.time_T = parse_double(key, context, value);
    } else if (key == "time_dt_ladder") {
        config.time_dt_ladder = parse_double_list(key, context, value);
    } else if (key == "time_dt_ref") {
        config.time_dt_ref = parse_double(key, context, value);
    } else if (key == "space_dt") {
        config.space_dt = parse_double(key, context, value);
    } else if (key == "space_T") {
        config.space_T = parse_double(key, context, value);
    } else if (key == "space_n_ladder") {
        config.space_n_ladder = parse_int_list(key, context, value);
    } else if (key == "space_n_ref") {
        config.space_n_ref = parse_int(key, context, value);
    } else if (key == "rate_band") {
        const auto band = parse_double_list(key, context, value);
        if (band.size() != 2) fail(key, context, "expected two comma-separated values");
        config.rate_band_lo = band[0];
        config.rate_band_hi = band[1];
    } else if (key == "rate_band_r") {
        const auto band = parse_double_list(key, context, value);
        if (band.size() != 2) fail(key, context, "expected two comma-separated values");
        config.rate_band_r_lo = band[0];
        config.rate_band_r_hi = band[1];
    } else {
        throw config_error("unknown config key '" + key + "' (" + context + ")");
    }
}

void check(bool ok, const std::string& key, const std::string& why) {
    if (!ok) throw config_error("config key '" + key + "': " + why);
}

void check_halving(const std::vector<double>& ladder, const std::string& key) {
    check(!ladder.empty(), key, "ladder must not be empty");
    for (double v : ladder) check(v > 0.0, key, "ladder entries must be positive");
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
        check(std::abs(ladder[i] / ladder[i + 1] - 2.0) <= 1e-9, key,
              "ladder must decrease by factors of 2");
    }
}

void validate(const RunConfig& config) {
    check(config.scheme.n >= 1, "n", "must be >= 1");
    check(config.scheme.dt > 0.0, "dt", "must be positive");
    check(config.scheme.T >= config.scheme.dt, "T", "must be >= dt");
    check(config.scheme.potential.epsilon > 0.0, "epsilon", "must be positive");
    check(config.scheme.potential.C0 > 0.0, "C0", "must be positive");
    check(config.scheme.projection_tol > 0.0, "projection_tol", "must be positive");
    check(config.scheme.record_every >= 1, "record_every", "must be >= 1");
    for (double ts : config.snapshot_times) {
        check(ts >= 0.0 && ts <= config.scheme.T, "snapshot_times",
              "time " + std::to_string(ts) + " outside [0, T]");
    }
    check(!config.out_dir.empty(), "out", "must not be empty");

    check(config.time_n >= 1, "time_n", "must be >= 1");
    check(config.time_T > 0.0, "time_T", "must be positive");
    check_halving(config.time_dt_ladder, "time_dt_ladder");
    check(config.time_dt_ref > 0.0, "time_dt_ref", "must be positive");

    check(config.space_dt > 0.0, "space_dt", "must be positive");
    check(config.space_T > 0.0, "space_T", "must be positive");
    check(!config.space_n_ladder.empty(), "space_n_ladder", "ladder must not be empty");
    for (std::size_t i = 0; i + 1 < config.space_n_ladder.size(); ++i) {
        check(config.space_n_ladder[i + 1] == 2 * config.space_n_ladder[i], "space_n_ladder",
              "ladder must refine by factors of 2");
    }
    for (int n : config.space_n_ladder) {
        check(n >= 1, "space_n_ladder", "resolutions must be >= 1");
        check(config.space_n_ref % n == 0, "space_n_ref",
              "must be a multiple of every ladder resolution");
    }

    check(config.rate_band_lo < config.rate_band_hi, "rate_band", "low bound must be below high");
    check(config.rate_band_r_lo < config.rate_band_r_hi, "rate_band_r",
          "low bound must be below high");
}

}  // namespace

RunConfig parse_config(const std::optional<std::string>& path, const KeyValueOverrides& overrides) {
    RunConfig config;

    if (path) {
        std::ifstream file(*path);
        if (!file) throw config_error("cannot open config file '" + *path + "'");
        std::string line;
        int line_number = 0;
        while (std::getline(file, line)) {
            ++line_number;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            const std::string context = *path + ":" + std::to_string(line_number);
            if (eq == std::string::npos) {
                throw config_error("expected 'key = value' (" + context + "): '" + line + "'");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            apply_key(config, key, value, context);
        }
    }

    for (const auto& [key, value] : overrides) {
        apply_key(config, key, value, "command line");
    }

    validate(config);
    return config;
}

std::vector<std::string> config_keys() {
    return {"n",          "dt",           "T",
            "epsilon",    "C0",           "projection_tol",
            "record_every", "snapshot_times", "snapshot_format",
            "out",        "time_n",       "time_T",
            "time_dt_ladder", "time_dt_ref", "space_dt",
            "space_T",    "space_n_ladder", "space_n_ref",
            "rate_band",  "rate_band_r"};
}

}  // namespace chsav
