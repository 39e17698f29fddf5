#include "exmort/strata.hpp"

#include "exmort/errors.hpp"

namespace exmort {

namespace {

const std::array<std::string, kNumAgeBands> kBandTokens = {
    "0-9", "10-19", "20-29", "30-39", "40-49", "50-59", "60-69", "70-79", "80-89", "90+"};

const std::array<std::string, kNumSexes> kSexTokens = {"F", "M"};

} // namespace

const std::string& age_band_token(AgeBand band) {
    return kBandTokens[static_cast<std::size_t>(band)];
}

const std::string& sex_token(Sex sex) { return kSexTokens[static_cast<std::size_t>(sex)]; }

AgeBand parse_age_band(const std::string& token) {
    for (int i = 0; i < kNumAgeBands; ++i) {
        if (kBandTokens[static_cast<std::size_t>(i)] == token) return static_cast<AgeBand>(i);
    }
    throw Error(ErrorKind::MalformedRow, "unknown age band '" + token + "'");
}

Sex parse_sex(const std::string& token) {
    if (token == "F") return Sex::Female;
    if (token == "M") return Sex::Male;
    throw Error(ErrorKind::MalformedRow, "unknown sex '" + token + "'");
}

const std::array<StratumKey, kNumStrata>& all_strata() {
    static const std::array<StratumKey, kNumStrata> table = [] {
        std::array<StratumKey, kNumStrata> t{};
        for (int i = 0; i < kNumStrata; ++i) t[static_cast<std::size_t>(i)] = StratumKey::from_index(i);
        return t;
    }();
    return table;
}

} // namespace exmort
