#include "exmort/series.hpp"

#include "exmort/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace exmort {

PopulationSeries::PopulationSeries(std::string vintage_label, Quarter first_quarter,
                                   std::vector<StratumValues> counts)
    : vintage_label_(std::move(vintage_label)), first_(first_quarter), counts_(std::move(counts)) {
    if (counts_.empty()) {
        throw Error(ErrorKind::MalformedRow, "population series has no quarters");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        for (int g = 0; g < kNumStrata; ++g) {
            const double v = counts_[i][static_cast<std::size_t>(g)];
            const Quarter q = Quarter::from_index(first_.index() + static_cast<int>(i));
            if (!std::isfinite(v)) {
                throw Error(ErrorKind::MalformedRow,
                            "non-finite population at " + q.str() + " stratum " +
                                StratumKey::from_index(g).label());
            }
            if (v < 0.0) {
                throw Error(ErrorKind::NegativeCount,
                            "negative population at " + q.str() + " stratum " +
                                StratumKey::from_index(g).label());
            }
        }
    }
}

const StratumValues& PopulationSeries::counts(Quarter q) const {
    if (!contains(q)) {
        throw Error(ErrorKind::QuarterNotFound,
                    q.str() + " not in population series [" + first_.str() + ", " +
                        last_quarter().str() + "]");
    }
    return counts_[static_cast<std::size_t>(q.index() - first_.index())];
}

double PopulationSeries::total(Quarter q) const {
    const StratumValues& v = counts(q);
    return std::accumulate(v.begin(), v.end(), 0.0);
}

DeathsSeries::DeathsSeries(Month first_month, std::vector<DeathValues> counts)
    : first_(first_month), counts_(std::move(counts)) {
    if (counts_.empty()) {
        throw Error(ErrorKind::MalformedRow, "deaths series has no months");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        for (int g = 0; g < kNumStrata; ++g) {
            if (counts_[i][static_cast<std::size_t>(g)] < 0) {
                const Month m = Month::from_index(first_.index() + static_cast<int>(i));
                throw Error(ErrorKind::NegativeCount,
                            "negative deaths at " + m.str() + " stratum " +
                                StratumKey::from_index(g).label());
            }
        }
    }
}

const DeathValues& DeathsSeries::counts(Month m) const {
    if (m < first_ || last_month() < m) {
        throw Error(ErrorKind::WindowNotCovered,
                    m.str() + " not in deaths series [" + first_.str() + ", " +
                        last_month().str() + "]");
    }
    return counts_[static_cast<std::size_t>(m.index() - first_.index())];
}

std::int64_t DeathsSeries::month_total(Month m) const {
    const DeathValues& v = counts(m);
    return std::accumulate(v.begin(), v.end(), std::int64_t{0});
}

std::array<std::int64_t, kNumStrata> DeathsSeries::year_by_stratum(int year) const {
    std::array<std::int64_t, kNumStrata> out{};
    for (int m = 1; m <= 12; ++m) {
        const DeathValues& v = counts(Month{year, m});
        for (int g = 0; g < kNumStrata; ++g) out[static_cast<std::size_t>(g)] += v[static_cast<std::size_t>(g)];
    }
    return out;
}

std::int64_t DeathsSeries::year_total(int year) const {
    const auto by_stratum = year_by_stratum(year);
    return std::accumulate(by_stratum.begin(), by_stratum.end(), std::int64_t{0});
}

namespace {

void validate_covid_month(const Month& m, const CovidMonth& c) {
    auto check_nonneg = [&](std::int64_t v) {
        if (v < 0) {
            throw Error(ErrorKind::NegativeCount, "negative covid deaths at " + m.str());
        }
    };
    std::int64_t strata_sum = 0;
    for (const auto& [g, v] : c.strata) {
        check_nonneg(v);
        strata_sum += v;
    }
    std::int64_t age_sum = 0;
    for (const auto& [b, v] : c.by_age) {
        check_nonneg(v);
        age_sum += v;
    }
    std::int64_t sex_sum = 0;
    bool sex_complete = true;
    for (const auto& v : c.by_sex) {
        if (v) {
            check_nonneg(*v);
            sex_sum += *v;
        } else {
            sex_complete = false;
        }
    }
    if (c.total) {
        check_nonneg(*c.total);
        const bool strata_complete = c.strata.size() == kNumStrata;
        const bool age_complete = c.by_age.size() == kNumAgeBands;
        auto against = [&](std::int64_t sum, bool complete, const char* what) {
            if (complete && sum != *c.total) {
                throw Error(ErrorKind::MalformedRow,
                            std::string("covid ") + what + " breakdown at " + m.str() +
                                " sums to " + std::to_string(sum) + " but total is " +
                                std::to_string(*c.total));
            }
            if (!complete && sum > *c.total) {
                throw Error(ErrorKind::MalformedRow,
                            std::string("covid partial ") + what + " breakdown at " + m.str() +
                                " exceeds the month total");
            }
        };
        if (!c.strata.empty()) against(strata_sum, strata_complete, "stratum");
        if (!c.by_age.empty()) against(age_sum, age_complete, "age");
        if (c.by_sex[0] || c.by_sex[1]) against(sex_sum, sex_complete, "sex");
    }
}

} // namespace

CovidDeathsSeries::CovidDeathsSeries(std::vector<std::pair<Month, CovidMonth>> months)
    : months_(std::move(months)) {
    std::sort(months_.begin(), months_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < months_.size(); ++i) {
        if (months_[i].first == months_[i - 1].first) {
            throw Error(ErrorKind::MalformedRow,
                        "duplicate covid month " + months_[i].first.str());
        }
    }
    for (const auto& [m, c] : months_) validate_covid_month(m, c);
}

const CovidMonth* CovidDeathsSeries::find(Month m) const {
    auto it = std::lower_bound(months_.begin(), months_.end(), m,
                               [](const auto& a, const Month& b) { return a.first < b; });
    if (it == months_.end() || it->first != m) return nullptr;
    return &it->second;
}

std::optional<std::int64_t> CovidDeathsSeries::month_total(Month m) const {
    const CovidMonth* c = find(m);
    if (!c) return std::nullopt;
    if (c->total) return c->total;
    if (c->strata.size() == kNumStrata) {
        std::int64_t s = 0;
        for (const auto& [g, v] : c->strata) s += v;
        return s;
    }
    if (c->by_age.size() == kNumAgeBands) {
        std::int64_t s = 0;
        for (const auto& [b, v] : c->by_age) s += v;
        return s;
    }
    if (c->by_sex[0] && c->by_sex[1]) return *c->by_sex[0] + *c->by_sex[1];
    return std::nullopt;
}

std::optional<std::array<std::int64_t, kNumAgeBands>> CovidDeathsSeries::month_by_age(Month m) const {
    const CovidMonth* c = find(m);
    if (!c) return std::nullopt;
    if (c->by_age.size() == kNumAgeBands) {
        std::array<std::int64_t, kNumAgeBands> out{};
        for (const auto& [b, v] : c->by_age) out[static_cast<std::size_t>(b)] = v;
        return out;
    }
    if (c->strata.size() == kNumStrata) {
        std::array<std::int64_t, kNumAgeBands> out{};
        for (const auto& [g, v] : c->strata) out[static_cast<std::size_t>(g / kNumSexes)] += v;
        return out;
    }
    return std::nullopt;
}

std::optional<std::array<std::int64_t, kNumSexes>> CovidDeathsSeries::month_by_sex(Month m) const {
    const CovidMonth* c = find(m);
    if (!c) return std::nullopt;
    if (c->by_sex[0] && c->by_sex[1]) {
        return std::array<std::int64_t, kNumSexes>{*c->by_sex[0], *c->by_sex[1]};
    }
    if (c->strata.size() == kNumStrata) {
        std::array<std::int64_t, kNumSexes> out{};
        for (const auto& [g, v] : c->strata) out[static_cast<std::size_t>(g % kNumSexes)] += v;
        return out;
    }
    return std::nullopt;
}

bool CovidDeathsSeries::provides_total() const {
    for (const auto& [m, c] : months_) {
        if (month_total(m)) return true;
    }
    return false;
}

bool CovidDeathsSeries::provides_age() const {
    for (const auto& [m, c] : months_) {
        if (month_by_age(m)) return true;
    }
    return false;
}

bool CovidDeathsSeries::provides_sex() const {
    for (const auto& [m, c] : months_) {
        if (month_by_sex(m)) return true;
    }
    return false;
}

MonthlyExposure::MonthlyExposure(Month first_month, std::vector<StratumValues> person_years)
    : first_(first_month), person_years_(std::move(person_years)) {
    if (person_years_.empty()) {
        throw Error(ErrorKind::WindowOutOfRange, "exposure window is empty");
    }
}

const StratumValues& MonthlyExposure::person_years(Month m) const {
    if (m < first_ || last_month() < m) {
        throw Error(ErrorKind::WindowNotCovered,
                    m.str() + " not in exposure window [" + first_.str() + ", " +
                        last_month().str() + "]");
    }
    return person_years_[static_cast<std::size_t>(m.index() - first_.index())];
}

double MonthlyExposure::month_total(Month m) const {
    const StratumValues& v = person_years(m);
    return std::accumulate(v.begin(), v.end(), 0.0);
}

StratumValues MonthlyExposure::year_by_stratum(int year) const {
    StratumValues out{};
    for (int m = 1; m <= 12; ++m) {
        const StratumValues& v = person_years(Month{year, m});
        for (int g = 0; g < kNumStrata; ++g) out[static_cast<std::size_t>(g)] += v[static_cast<std::size_t>(g)];
    }
    return out;
}

} // namespace exmort
