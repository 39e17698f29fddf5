#include "commands.hpp"

#include "exmort/errors.hpp"
#include "exmort/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <string>

namespace {

// 0 = success, 2 = input/validation error, 3 = numerical/model failure
int exit_code_for(const exmort::Error& e) { return exmort::is_numerical(e.kind()) ? 3 : 2; }

void print_error(const std::string& kind, const std::string& message) {
    nlohmann::json j{{"error", {{"kind", kind}, {"message", message}}}};
    std::cerr << j.dump() << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"excess mortality estimation from stratified death counts"};
    app.set_version_flag("--version", std::string("exmort ") + exmort::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string format;
    std::uint64_t seed = 0;
    int draws = 0;
    app.add_option("--config", config_path, "settings file (key = value lines)");
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides config)");
    auto* draws_opt = app.add_option("--draws", draws, "Monte Carlo draws (overrides config)");
    auto* out_opt = app.add_option("--out", out_dir, "output directory (overrides config)");
    auto* format_opt =
        app.add_option("--format", format, "output format, csv or json (overrides config)");

    auto* fit = app.add_subcommand("fit", "fit the baseline model; write fit.json and fig_s3.csv");
    auto* excess = app.add_subcommand("excess", "excess-death reports at every aggregation");
    auto* sweep = app.add_subcommand("sweep", "refit across baseline lengths");
    auto* standardize =
        app.add_subcommand("standardize", "standardized rates and the rate-trend comparator");
    auto* rebase =
        app.add_subcommand("rebase-diff", "compare population vintages and excess sensitivity");
    auto* figures = app.add_subcommand("figures", "run every figure-data emitter");

    // Let the global options (--config, --seed, ...) appear after the
    // subcommand name as well as before it.
    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return 2;
    }

    try {
        exmort::RunConfig config;
        if (!config_path.empty()) config = exmort::load_config(config_path);
        if (seed_opt->count() > 0) config.seed = seed;
        if (draws_opt->count() > 0) config.draws = draws;
        if (out_opt->count() > 0) exmort::apply_setting(config, "out", out_dir);
        if (format_opt->count() > 0) exmort::apply_setting(config, "format", format);

        if (fit->parsed()) exmort::cmd_fit(config);
        if (excess->parsed()) exmort::cmd_excess(config);
        if (sweep->parsed()) exmort::cmd_sweep(config);
        if (standardize->parsed()) exmort::cmd_standardize(config);
        if (rebase->parsed()) exmort::cmd_rebase_diff(config);
        if (figures->parsed()) exmort::cmd_figures(config);
        return 0;
    } catch (const exmort::Error& e) {
        print_error(exmort::to_string(e.kind()), e.message());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        print_error("Internal", e.what());
        return 3;
    }
}
