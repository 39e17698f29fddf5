#include "run_config.hpp"

#include "exmort/errors.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace exmort {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

YearRange parse_year_range(const std::string& token) {
    const std::size_t colon = token.find(':');
    if (colon == std::string::npos)
        throw Error(ErrorKind::ConfigError,
                    "year range must look like 2014:2019, got '" + token + "'");
    int a = 0, b = 0;
    const std::string lhs = token.substr(0, colon), rhs = token.substr(colon + 1);
    auto ra = std::from_chars(lhs.data(), lhs.data() + lhs.size(), a);
    auto rb = std::from_chars(rhs.data(), rhs.data() + rhs.size(), b);
    if (ra.ec != std::errc{} || rb.ec != std::errc{} || ra.ptr != lhs.data() + lhs.size() ||
        rb.ptr != rhs.data() + rhs.size() || a > b)
        throw Error(ErrorKind::ConfigError,
                    "year range must look like 2014:2019, got '" + token + "'");
    return YearRange{a, b};
}

long parse_long(const std::string& key, const std::string& value) {
    long v = 0;
    auto r = std::from_chars(value.data(), value.data() + value.size(), v);
    if (r.ec != std::errc{} || r.ptr != value.data() + value.size())
        throw Error(ErrorKind::ConfigError, key + " must be an integer, got '" + value + "'");
    return v;
}

} // namespace

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
    try {
        if (key == "deaths") {
            config.deaths_path = value;
        } else if (key == "population") {
            config.population_path = value;
        } else if (key == "population_old") {
            config.population_old_path = value;
        } else if (key == "covid") {
            config.covid_path = value;
        } else if (key == "stratification") {
            config.spec.stratification = parse_stratification(value);
        } else if (key == "harmonics") {
            config.spec.harmonics = static_cast<int>(parse_long(key, value));
        } else if (key == "baseline") {
            config.spec.baseline = parse_year_range(value);
        } else if (key == "windows") {
            config.windows.clear();
            for (const std::string& token : split(value, ','))
                config.windows.push_back(parse_year_range(token));
            if (config.windows.empty())
                throw Error(ErrorKind::ConfigError, "windows must name at least one year range");
        } else if (key == "standard_quarter") {
            config.standard_quarter = Quarter::parse(value);
        } else if (key == "sweep_shortest") {
            config.sweep_shortest = static_cast<int>(parse_long(key, value));
        } else if (key == "sweep_longest") {
            config.sweep_longest = static_cast<int>(parse_long(key, value));
        } else if (key == "aggregations") {
            config.aggregations = split(value, ',');
            if (config.aggregations.empty())
                throw Error(ErrorKind::ConfigError, "aggregations must name at least one level");
        } else if (key == "draws") {
            config.draws = static_cast<int>(parse_long(key, value));
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(parse_long(key, value));
        } else if (key == "out") {
            config.out_dir = value;
        } else if (key == "format") {
            if (value != "csv" && value != "json")
                throw Error(ErrorKind::ConfigError, "format must be csv or json, got '" + value + "'");
            config.format = value;
        } else {
            throw Error(ErrorKind::ConfigError, "unknown config key '" + key + "'");
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigError) throw;
        // re-badge parse errors from date/spec helpers as config errors
        throw Error(ErrorKind::ConfigError, "bad value for '" + key + "': " + e.message());
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigError, "cannot open config file '" + path + "'");

    RunConfig config;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::ConfigError, path + ":" + std::to_string(lineno) +
                                                    ": expected 'key = value', got '" + line + "'");
        apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

std::string RunConfig::canonical() const {
    std::ostringstream out;
    out << "aggregations=";
    for (std::size_t i = 0; i < aggregations.size(); ++i)
        out << (i ? "," : "") << aggregations[i];
    out << '\n';
    out << "baseline=" << spec.baseline.first << ':' << spec.baseline.last << '\n';
    out << "covid=" << covid_path << '\n';
    out << "deaths=" << deaths_path << '\n';
    out << "draws=" << draws << '\n';
    out << "format=" << format << '\n';
    out << "harmonics=" << spec.harmonics << '\n';
    out << "out=" << out_dir << '\n';
    out << "population=" << population_path << '\n';
    out << "population_old=" << population_old_path << '\n';
    out << "seed=" << seed << '\n';
    out << "standard_quarter=" << standard_quarter.str() << '\n';
    out << "stratification=" << to_string(spec.stratification) << '\n';
    out << "sweep_longest=" << sweep_longest << '\n';
    out << "sweep_shortest=" << sweep_shortest << '\n';
    out << "windows=";
    for (std::size_t i = 0; i < windows.size(); ++i)
        out << (i ? "," : "") << windows[i].first << ':' << windows[i].last;
    out << '\n';
    return out.str();
}

std::string RunConfig::hash() const {
    // FNV-1a, 64 bit
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void RunConfig::require_inputs(bool need_old_population, bool need_covid) const {
    auto check = [](const std::string& what, const std::string& path) {
        if (path.empty())
            throw Error(ErrorKind::ConfigError, "config does not set a " + what + " file");
        if (!std::filesystem::exists(path))
            throw Error(ErrorKind::ConfigError, what + " file '" + path + "' does not exist");
    };
    check("deaths", deaths_path);
    check("population", population_path);
    if (need_old_population) check("population_old", population_old_path);
    if (need_covid) check("covid", covid_path);
    if (!covid_path.empty() && !std::filesystem::exists(covid_path))
        throw Error(ErrorKind::ConfigError, "covid file '" + covid_path + "' does not exist");
}

} // namespace exmort
