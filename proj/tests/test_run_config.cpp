#include "exmort/errors.hpp"

#include "run_config.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cctype>
#include <fstream>
#include <string>

using namespace exmort;
using namespace testsupport;

namespace {

std::string write_file(const std::string& dir, const std::string& name,
                       const std::string& content) {
    const std::string path = dir + "/" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

bool is_hex16(const std::string& s) {
    if (s.size() != 16) return false;
    for (char c : s)
        if (!std::isxdigit(static_cast<unsigned char>(c)) ||
            (std::isalpha(static_cast<unsigned char>(c)) && !std::islower(static_cast<unsigned char>(c))))
            return false;
    return true;
}

} // namespace

TEST_SUITE("run_config") {

TEST_CASE("config files parse key = value with comments and blank lines") {
    const std::string dir = fresh_temp_dir("config");
    const std::string path = write_file(dir, "run.conf",
                                        "# run settings\n"
                                        "deaths = data/deaths.csv\n"
                                        "population= data/pop.csv   # inline comment\n"
                                        "population_old = data/old.csv\n"
                                        "covid = data/covid.csv\n"
                                        "\n"
                                        "stratification = none\n"
                                        "harmonics = 1\n"
                                        "baseline = 2014:2019\n"
                                        "windows = 2020:2023, 2020:2022\n"
                                        "standard_quarter = 2021-Q2\n"
                                        "sweep_shortest = 5\n"
                                        "sweep_longest = 8\n"
                                        "aggregations = total, year\n"
                                        "draws = 250\n"
                                        "seed = 42\n"
                                        "out = outdir\n"
                                        "format = json\n");

    const RunConfig config = load_config(path);
    CHECK(config.deaths_path == "data/deaths.csv");
    CHECK(config.population_path == "data/pop.csv");
    CHECK(config.population_old_path == "data/old.csv");
    CHECK(config.covid_path == "data/covid.csv");
    CHECK(config.spec.stratification == Stratification::None);
    CHECK(config.spec.harmonics == 1);
    CHECK(config.spec.baseline == YearRange{2014, 2019});
    REQUIRE(config.windows.size() == 2);
    CHECK(config.windows[0] == YearRange{2020, 2023});
    CHECK(config.windows[1] == YearRange{2020, 2022});
    CHECK(config.window() == YearRange{2020, 2023});
    CHECK(config.standard_quarter == Quarter{2021, 2});
    CHECK(config.sweep_shortest == 5);
    CHECK(config.sweep_longest == 8);
    REQUIRE(config.aggregations.size() == 2);
    CHECK(config.aggregations[0] == "total");
    CHECK(config.aggregations[1] == "year");
    CHECK(config.draws == 250);
    CHECK(config.seed == 42);
    CHECK(config.out_dir == "outdir");
    CHECK(config.format == "json");
}

TEST_CASE("defaults survive a config that only names the inputs") {
    const std::string dir = fresh_temp_dir("config");
    const std::string path =
        write_file(dir, "min.conf", "deaths = d.csv\npopulation = p.csv\n");
    const RunConfig config = load_config(path);
    CHECK(config.spec.stratification == Stratification::AgeSex);
    CHECK(config.spec.harmonics == 2);
    CHECK(config.spec.baseline == YearRange{2014, 2019});
    CHECK(config.windows.size() == 1);
    CHECK(config.draws == 10000);
    CHECK(config.seed == 1);
    CHECK(config.format == "csv");
    CHECK(config.aggregations.size() == 5);
}

TEST_CASE("malformed configs fail with pointed messages") {
    const std::string dir = fresh_temp_dir("config");

    SUBCASE("missing file") {
        try {
            load_config(dir + "/absent.conf");
            FAIL("expected ConfigError");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ConfigError);
            CHECK(std::string(e.what()).find("absent.conf") != std::string::npos);
        }
    }

    SUBCASE("line without an equals sign names the line") {
        const std::string path =
            write_file(dir, "noeq.conf", "deaths = d.csv\npopulation p.csv\n");
        try {
            load_config(path);
            FAIL("expected ConfigError");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find(":2:") != std::string::npos);
            CHECK(std::string(e.what()).find("key = value") != std::string::npos);
        }
    }

    SUBCASE("unknown key") {
        const std::string path = write_file(dir, "unknown.conf", "bogus = 1\n");
        try {
            load_config(path);
            FAIL("expected ConfigError");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ConfigError);
            CHECK(std::string(e.what()).find("unknown config key 'bogus'") != std::string::npos);
        }
    }

    SUBCASE("bad values are re-badged as config errors") {
        RunConfig config;
        try {
            apply_setting(config, "standard_quarter", "2021-Q7");
            FAIL("expected ConfigError");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ConfigError);
            CHECK(std::string(e.what()).find("bad value for 'standard_quarter'") !=
                  std::string::npos);
        }
        CHECK_THROWS_AS(apply_setting(config, "draws", "many"), Error);
        CHECK_THROWS_AS(apply_setting(config, "baseline", "2014-2019"), Error);
        CHECK_THROWS_AS(apply_setting(config, "format", "xml"), Error);
        CHECK_THROWS_AS(apply_setting(config, "windows", ""), Error);
    }
}

TEST_CASE("the config hash is stable, lowercase hex and sensitive to every setting") {
    RunConfig a;
    a.deaths_path = "d.csv";
    a.population_path = "p.csv";
    RunConfig b = a;

    CHECK(is_hex16(a.hash()));
    CHECK(a.hash() == b.hash());

    b.seed = a.seed + 1;
    CHECK(a.hash() != b.hash());

    RunConfig c = a;
    c.out_dir = "elsewhere";
    CHECK(a.hash() != c.hash());

    RunConfig d = a;
    apply_setting(d, "windows", "2020:2021");
    CHECK(a.hash() != d.hash());

    // The canonical rendering is what gets hashed, so it must mention the
    // settings by name.
    CHECK(a.canonical().find("deaths=d.csv") != std::string::npos);
    CHECK(a.canonical().find("seed=1") != std::string::npos);
}

TEST_CASE("required inputs are checked per command needs") {
    const std::string dir = fresh_temp_dir("config");
    const std::string deaths = write_file(dir, "d.csv", "");
    const std::string pop = write_file(dir, "p.csv", "");

    RunConfig config;
    config.deaths_path = deaths;
    config.population_path = pop;
    CHECK_NOTHROW(config.require_inputs(false, false));

    SUBCASE("old population only when needed") {
        try {
            config.require_inputs(true, false);
            FAIL("expected ConfigError");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("population_old") != std::string::npos);
        }
        config.population_old_path = write_file(dir, "old.csv", "");
        CHECK_NOTHROW(config.require_inputs(true, false));
    }

    SUBCASE("covid only when needed, but never dangling") {
        try {
            config.require_inputs(false, true);
            FAIL("expected ConfigError");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("covid") != std::string::npos);
        }
        config.covid_path = dir + "/missing-covid.csv";
        try {
            config.require_inputs(false, false);
            FAIL("expected ConfigError");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("missing-covid.csv") != std::string::npos);
        }
    }

    SUBCASE("a named but absent deaths file is an error") {
        config.deaths_path = dir + "/gone.csv";
        try {
            config.require_inputs(false, false);
            FAIL("expected ConfigError");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ConfigError);
            CHECK(std::string(e.what()).find("gone.csv") != std::string::npos);
        }
    }
}

} // TEST_SUITE
