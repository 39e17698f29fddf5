#pragma once

#include "exmort/dates.hpp"
#include "exmort/model_spec.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace exmort {

/// Effective settings for one CLI invocation: the config file contents with
/// any command-line overrides already applied. The `hash()` fingerprint goes
/// into every output's provenance header, so identical effective configs
/// produce identical files no matter how the settings were supplied.
struct RunConfig {
    std::string deaths_path;
    std::string population_path;     // current vintage
    std::string population_old_path; // previous vintage (rebase comparison)
    std::string covid_path;          // optional covid-attributed deaths

    ModelSpec spec;
    std::vector<YearRange> windows = {YearRange{2020, 2023}};
    Quarter standard_quarter{2021, 1};
    int sweep_shortest = 4;
    int sweep_longest = 10;
    std::vector<std::string> aggregations = {"total", "year", "month", "age_band", "sex"};

    int draws = 10000;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    std::string format = "csv"; // csv | json

    YearRange window() const { return windows.front(); }

    /// Stable key=value rendering of every effective setting.
    std::string canonical() const;
    /// FNV-1a hash of canonical(), as 16 hex digits.
    std::string hash() const;

    /// Existence checks for the paths a command needs.
    /// Throws Error{ConfigError} naming the missing file.
    void require_inputs(bool need_old_population, bool need_covid) const;
};

/// Parses `key = value` lines; '#' starts a comment, blank lines are
/// skipped. Unknown keys or malformed values throw Error{ConfigError}.
RunConfig load_config(const std::string& path);

/// Applies one key=value setting (same keys as the file grammar).
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

} // namespace exmort
