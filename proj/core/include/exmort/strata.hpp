#pragma once

#include <array>
#include <string>

namespace exmort {

/// Ten-year age bands; the last band is open-ended.
enum class AgeBand : int {
    A00_09 = 0,
    A10_19,
    A20_29,
    A30_39,
    A40_49,
    A50_59,
    A60_69,
    A70_79,
    A80_89,
    A90_plus,
};

enum class Sex : int { Female = 0, Male = 1 };

inline constexpr int kNumAgeBands = 10;
inline constexpr int kNumSexes = 2;
inline constexpr int kNumStrata = kNumAgeBands * kNumSexes;

const std::string& age_band_token(AgeBand band); // "0-9" ... "90+"
const std::string& sex_token(Sex sex);           // "F" / "M"

/// Throws Error{MalformedRow} on unknown tokens.
AgeBand parse_age_band(const std::string& token);
Sex parse_sex(const std::string& token);

/// One (age band, sex) cell. The full stratum set is the 10 x 2 cross
/// product; strata are indexed band-major with F before M, so
/// index = 2*band + sex and stratum 0 is (0-9, F).
struct StratumKey {
    AgeBand band = AgeBand::A00_09;
    Sex sex = Sex::Female;

    int index() const { return static_cast<int>(band) * kNumSexes + static_cast<int>(sex); }
    static StratumKey from_index(int idx) {
        return StratumKey{static_cast<AgeBand>(idx / kNumSexes),
                          static_cast<Sex>(idx % kNumSexes)};
    }

    std::string label() const { return age_band_token(band) + "|" + sex_token(sex); }

    auto operator<=>(const StratumKey&) const = default;
};

/// All 20 strata in index order.
const std::array<StratumKey, kNumStrata>& all_strata();

/// Dense per-stratum values, indexed by StratumKey::index().
using StratumValues = std::array<double, kNumStrata>;

} // namespace exmort
