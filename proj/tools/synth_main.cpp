#include "exmort/csv_io.hpp"
#include "exmort/rng.hpp"
#include "exmort/synthetic.hpp"
#include "exmort/version.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using namespace exmort;

namespace {

// The older vintage mirrors the newer one but drifts upward after its base
// quarter, so the comparison shows the newer estimates revising recent
// population downward.
PopulationSeries make_old_vintage(const PopulationSeries& current, Quarter base,
                                  double drift_pct) {
    std::vector<StratumValues> counts;
    counts.reserve(static_cast<std::size_t>(current.num_quarters()));
    for (int i = 0; i < current.num_quarters(); ++i) {
        const Quarter q = current.quarter_at(i);
        StratumValues row = current.counts_at(i);
        const int since = q.index() - base.index();
        if (since > 0) {
            const double ramp = std::min(1.0, since / 20.0);
            for (double& v : row) v *= 1.0 + drift_pct / 100.0 * ramp;
        }
        counts.push_back(row);
    }
    return PopulationSeries("2018base", current.first_quarter(), std::move(counts));
}

void write_covid_csv_file(const fs::path& path, const DeathsSeries& deaths,
                          const SyntheticConfig& cfg) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << "month,age_band,sex,deaths\n";
    for (int i = 0; i < deaths.num_months(); ++i) {
        const Month m = deaths.month_at(i);
        const auto shock_it = cfg.year_shock.find(m.year);
        if (shock_it == cfg.year_shock.end()) continue;
        const double share = 0.9 * (shock_it->second - 1.0) / shock_it->second;
        for (const StratumKey& s : all_strata()) {
            PoissonSampler sampler(derive_seed(cfg.seed ^ 0x9e3779b97f4a7c15ull,
                                               static_cast<std::uint64_t>(m.index()) * 64 +
                                                   static_cast<std::uint64_t>(s.index())));
            const auto actual = static_cast<double>(deaths.count(m, s));
            out << m.str() << ',' << age_band_token(s.band) << ',' << sex_token(s.sex) << ','
                << sampler(share * actual) << '\n';
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generate a synthetic demo dataset for the excess-mortality pipeline"};
    app.set_version_flag("--version", std::string("exmort-synth ") + kVersion);

    std::string out_dir = "data";
    std::uint64_t seed = 1;
    int first_year = 2010;
    int last_year = 2024;
    int draws = 2000;
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--first-year", first_year, "first data year");
    app.add_option("--last-year", last_year, "last data year");
    app.add_option("--draws", draws, "draw count written into the demo config");

    CLI11_PARSE(app, argc, argv);

    SyntheticConfig cfg;
    cfg.first_year = first_year;
    cfg.last_year = last_year;
    cfg.seed = seed;
    cfg.year_shock = {{2022, 1.03}, {2023, 1.02}};

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    const PopulationSeries current = synthetic_population(cfg, "2023base");
    const PopulationSeries old_vintage = make_old_vintage(current, Quarter{2018, 2}, 0.9);
    const DeathsSeries deaths = synthetic_deaths(current, cfg);

    write_population_csv(current, (dir / "population_2023base.csv").string());
    write_population_csv(old_vintage, (dir / "population_2018base.csv").string());
    write_deaths_csv(deaths, (dir / "deaths.csv").string());
    write_covid_csv_file(dir / "covid_deaths.csv", deaths, cfg);

    std::ofstream conf(dir / "demo.conf", std::ios::binary | std::ios::trunc);
    conf << "# synthetic demo dataset, seed " << seed << "\n"
         << "deaths = " << (dir / "deaths.csv").string() << "\n"
         << "population = " << (dir / "population_2023base.csv").string() << "\n"
         << "population_old = " << (dir / "population_2018base.csv").string() << "\n"
         << "covid = " << (dir / "covid_deaths.csv").string() << "\n"
         << "baseline = 2014:2019\n"
         << "windows = 2020:2023,2020:2022\n"
         << "standard_quarter = 2021-Q1\n"
         << "draws = " << draws << "\n"
         << "seed = " << seed << "\n"
         << "out = " << (dir / "results").string() << "\n";

    std::cout << "wrote synthetic dataset and demo.conf under " << out_dir << '\n';
    return 0;
}
