#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace exmort {

/// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(int year, int month, int day);

bool is_leap_year(int year);
int days_in_month(int year, int month);

/// A calendar month, the time resolution of the deaths series.
struct Month {
    int year = 0;
    int mon = 1; // 1..12

    /// Months since year 0, used for contiguity checks and iteration.
    int index() const { return year * 12 + (mon - 1); }
    static Month from_index(int idx);

    Month next() const { return from_index(index() + 1); }
    int days() const { return days_in_month(year, mon); }

    /// Continuous time coordinate of the month midpoint, in days since epoch.
    double mid_day() const;

    /// "YYYY-MM"
    std::string str() const;
    /// Throws Error{MalformedRow} on a bad token.
    static Month parse(const std::string& token);

    auto operator<=>(const Month&) const = default;
};

/// A calendar quarter anchored at its end date (Mar/Jun/Sep/Dec).
struct Quarter {
    int year = 0;
    int q = 1; // 1..4

    int index() const { return year * 4 + (q - 1); }
    static Quarter from_index(int idx);

    Quarter next() const { return from_index(index() + 1); }
    Quarter prev() const { return from_index(index() - 1); }

    /// End month of the quarter (3, 6, 9 or 12).
    int end_month() const { return q * 3; }

    /// Anchor date = last day of the quarter, in days since epoch.
    std::int64_t anchor_day() const;

    /// "YYYY-Qn"
    std::string str() const;
    static Quarter parse(const std::string& token);

    auto operator<=>(const Quarter&) const = default;
};

/// Inclusive month range.
struct MonthRange {
    Month first;
    Month last;

    int count() const { return last.index() - first.index() + 1; }
    bool contains(const Month& m) const { return first <= m && m <= last; }
    std::vector<Month> months() const;

    /// "YYYY-MM..YYYY-MM"
    std::string str() const;

    /// January of `y0` through December of `y1`.
    static MonthRange years(int y0, int y1) { return {{y0, 1}, {y1, 12}}; }
};

/// Inclusive calendar-year range.
struct YearRange {
    int first = 0;
    int last = 0;

    int count() const { return last - first + 1; }
    bool contains(int y) const { return first <= y && y <= last; }
    std::string str() const;

    auto operator<=>(const YearRange&) const = default;
};

inline constexpr double kDaysPerYear = 365.25;

} // namespace exmort
