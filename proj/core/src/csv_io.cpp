#include "exmort/csv_io.hpp"

#include "exmort/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace exmort {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

struct CsvReader {
    std::ifstream in;
    std::string path;
    int line_no = 0;

    explicit CsvReader(const std::string& p) : in(p), path(p) {
        if (!in) throw Error(ErrorKind::IoError, "cannot open '" + p + "'");
    }

    void expect_header(const std::string& expected) {
        std::string line;
        if (!std::getline(in, line)) {
            throw Error(ErrorKind::MalformedRow, path + ": empty file");
        }
        ++line_no;
        line = strip_cr(line);
        if (line.rfind("\xEF\xBB\xBF", 0) == 0) line = line.substr(3); // UTF-8 BOM
        if (line != expected) {
            throw Error(ErrorKind::MalformedRow,
                        path + ": header must be '" + expected + "', got '" + line + "'");
        }
    }

    std::optional<std::vector<std::string>> next_row(std::size_t num_fields) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            line = strip_cr(line);
            if (line.empty()) continue;
            auto fields = split_fields(line);
            if (fields.size() != num_fields) {
                throw Error(ErrorKind::MalformedRow,
                            where() + ": expected " + std::to_string(num_fields) +
                                " fields, got " + std::to_string(fields.size()));
            }
            return fields;
        }
        return std::nullopt;
    }

    std::string where() const { return path + ":" + std::to_string(line_no); }
};

double parse_population_value(const std::string& token, const std::string& where) {
    double v = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw Error(ErrorKind::MalformedRow, where + ": bad population value '" + token + "'");
    }
    if (v < 0.0) {
        throw Error(ErrorKind::NegativeCount, where + ": population '" + token + "' is negative");
    }
    return v;
}

std::int64_t parse_count_value(const std::string& token, const std::string& where) {
    std::int64_t v = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec == std::errc{} && ptr == end) {
        if (v < 0) {
            throw Error(ErrorKind::NegativeCount, where + ": count '" + token + "' is negative");
        }
        return v;
    }
    double d = 0.0;
    auto [dptr, dec] = std::from_chars(begin, end, d);
    if (dec == std::errc{} && dptr == end && std::isfinite(d)) {
        throw Error(ErrorKind::NonIntegerCount, where + ": count '" + token + "' is not an integer");
    }
    throw Error(ErrorKind::MalformedRow, where + ": bad count '" + token + "'");
}

// Wraps token parsers so errors carry the file position.
template <typename Fn>
auto at_row(const std::string& where, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::MalformedRow) {
            throw Error(ErrorKind::MalformedRow, where + ": " + e.message());
        }
        throw;
    }
}

} // namespace

PopulationSeries ingest_population(const std::string& path, const std::string& vintage_label) {
    CsvReader reader(path);
    reader.expect_header("quarter,age_band,sex,population");

    std::map<int, std::array<std::optional<double>, kNumStrata>> cells;
    while (auto row = reader.next_row(4)) {
        const std::string where = reader.where();
        const Quarter q = at_row(where, [&] { return Quarter::parse((*row)[0]); });
        const AgeBand band = at_row(where, [&] { return parse_age_band((*row)[1]); });
        const Sex sex = at_row(where, [&] { return parse_sex((*row)[2]); });
        const double v = parse_population_value((*row)[3], where);
        auto& slot = cells[q.index()][static_cast<std::size_t>(StratumKey{band, sex}.index())];
        if (slot) {
            throw Error(ErrorKind::MalformedRow,
                        where + ": duplicate row for " + q.str() + " " +
                            StratumKey{band, sex}.label());
        }
        slot = v;
    }
    if (cells.empty()) {
        throw Error(ErrorKind::MalformedRow, path + ": no data rows");
    }

    const int first_idx = cells.begin()->first;
    const int last_idx = cells.rbegin()->first;
    std::vector<StratumValues> dense;
    dense.reserve(static_cast<std::size_t>(last_idx - first_idx + 1));
    for (int qi = first_idx; qi <= last_idx; ++qi) {
        auto it = cells.find(qi);
        if (it == cells.end()) {
            throw Error(ErrorKind::NonContiguousQuarters,
                        path + ": quarter " + Quarter::from_index(qi).str() + " is missing");
        }
        StratumValues values{};
        for (int g = 0; g < kNumStrata; ++g) {
            const auto& slot = it->second[static_cast<std::size_t>(g)];
            if (!slot) {
                throw Error(ErrorKind::MissingStratum,
                            path + ": " + Quarter::from_index(qi).str() + " lacks stratum " +
                                StratumKey::from_index(g).label());
            }
            values[static_cast<std::size_t>(g)] = *slot;
        }
        dense.push_back(values);
    }
    return PopulationSeries(vintage_label, Quarter::from_index(first_idx), std::move(dense));
}

DeathsSeries ingest_deaths(const std::string& path) {
    CsvReader reader(path);
    reader.expect_header("month,age_band,sex,deaths");

    std::map<int, std::array<std::optional<std::int64_t>, kNumStrata>> cells;
    while (auto row = reader.next_row(4)) {
        const std::string where = reader.where();
        const Month m = at_row(where, [&] { return Month::parse((*row)[0]); });
        const AgeBand band = at_row(where, [&] { return parse_age_band((*row)[1]); });
        const Sex sex = at_row(where, [&] { return parse_sex((*row)[2]); });
        const std::int64_t v = parse_count_value((*row)[3], where);
        auto& slot = cells[m.index()][static_cast<std::size_t>(StratumKey{band, sex}.index())];
        if (slot) {
            throw Error(ErrorKind::MalformedRow,
                        where + ": duplicate row for " + m.str() + " " +
                            StratumKey{band, sex}.label());
        }
        slot = v;
    }
    if (cells.empty()) {
        throw Error(ErrorKind::MalformedRow, path + ": no data rows");
    }

    const int first_idx = cells.begin()->first;
    const int last_idx = cells.rbegin()->first;
    std::vector<DeathValues> dense;
    dense.reserve(static_cast<std::size_t>(last_idx - first_idx + 1));
    for (int mi = first_idx; mi <= last_idx; ++mi) {
        auto it = cells.find(mi);
        if (it == cells.end()) {
            throw Error(ErrorKind::NonContiguousMonths,
                        path + ": month " + Month::from_index(mi).str() + " is missing");
        }
        DeathValues values{};
        for (int g = 0; g < kNumStrata; ++g) {
            const auto& slot = it->second[static_cast<std::size_t>(g)];
            if (!slot) {
                throw Error(ErrorKind::MissingStratum,
                            path + ": " + Month::from_index(mi).str() + " lacks stratum " +
                                StratumKey::from_index(g).label());
            }
            values[static_cast<std::size_t>(g)] = *slot;
        }
        dense.push_back(values);
    }
    return DeathsSeries(Month::from_index(first_idx), std::move(dense));
}

CovidDeathsSeries ingest_covid_deaths(const std::string& path) {
    CsvReader reader(path);
    reader.expect_header("month,age_band,sex,deaths");

    std::map<int, CovidMonth> months;
    while (auto row = reader.next_row(4)) {
        const std::string where = reader.where();
        const Month m = at_row(where, [&] { return Month::parse((*row)[0]); });
        const std::string& band_tok = (*row)[1];
        const std::string& sex_tok = (*row)[2];
        const std::int64_t v = parse_count_value((*row)[3], where);
        CovidMonth& cm = months[m.index()];
        auto dup = [&] {
            throw Error(ErrorKind::MalformedRow,
                        where + ": duplicate covid row for " + m.str() + " " + band_tok + "|" +
                            sex_tok);
        };
        if (band_tok == "*" && sex_tok == "*") {
            if (cm.total) dup();
            cm.total = v;
        } else if (band_tok == "*") {
            const Sex sex = at_row(where, [&] { return parse_sex(sex_tok); });
            auto& slot = cm.by_sex[static_cast<std::size_t>(sex)];
            if (slot) dup();
            slot = v;
        } else if (sex_tok == "*") {
            const AgeBand band = at_row(where, [&] { return parse_age_band(band_tok); });
            if (!cm.by_age.emplace(static_cast<int>(band), v).second) dup();
        } else {
            const AgeBand band = at_row(where, [&] { return parse_age_band(band_tok); });
            const Sex sex = at_row(where, [&] { return parse_sex(sex_tok); });
            if (!cm.strata.emplace(StratumKey{band, sex}.index(), v).second) dup();
        }
    }

    std::vector<std::pair<Month, CovidMonth>> out;
    out.reserve(months.size());
    for (auto& [idx, cm] : months) out.emplace_back(Month::from_index(idx), std::move(cm));
    return CovidDeathsSeries(std::move(out));
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

void write_population_csv(const PopulationSeries& pop, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
    out << "quarter,age_band,sex,population\n";
    for (int i = 0; i < pop.num_quarters(); ++i) {
        const Quarter q = pop.quarter_at(i);
        const StratumValues& v = pop.counts_at(i);
        for (int g = 0; g < kNumStrata; ++g) {
            const StratumKey s = StratumKey::from_index(g);
            out << q.str() << ',' << age_band_token(s.band) << ',' << sex_token(s.sex) << ','
                << format_double(v[static_cast<std::size_t>(g)]) << '\n';
        }
    }
}

void write_deaths_csv(const DeathsSeries& deaths, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
    out << "month,age_band,sex,deaths\n";
    for (int i = 0; i < deaths.num_months(); ++i) {
        const Month m = deaths.month_at(i);
        const DeathValues& v = deaths.counts_at(i);
        for (int g = 0; g < kNumStrata; ++g) {
            const StratumKey s = StratumKey::from_index(g);
            out << m.str() << ',' << age_band_token(s.band) << ',' << sex_token(s.sex) << ','
                << v[static_cast<std::size_t>(g)] << '\n';
        }
    }
}

} // namespace exmort
