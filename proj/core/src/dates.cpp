#include "exmort/dates.hpp"

#include "exmort/errors.hpp"

#include <cctype>

namespace exmort {

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
    if (to > s.size()) return false;
    for (std::size_t i = from; i < to; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

} // namespace

std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static const int days[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return days[month - 1];
}

Month Month::from_index(int idx) {
    int y = idx / 12;
    int m = idx % 12;
    if (m < 0) {
        m += 12;
        y -= 1;
    }
    return Month{y, m + 1};
}

double Month::mid_day() const {
    return static_cast<double>(days_from_civil(year, mon, 1)) + days() / 2.0;
}

std::string Month::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, mon);
    return buf;
}

Month Month::parse(const std::string& token) {
    if (token.size() != 7 || token[4] != '-' || !all_digits(token, 0, 4) ||
        !all_digits(token, 5, 7)) {
        throw Error(ErrorKind::MalformedRow, "invalid month token '" + token + "'");
    }
    int y = std::stoi(token.substr(0, 4));
    int m = std::stoi(token.substr(5, 2));
    if (m < 1 || m > 12) {
        throw Error(ErrorKind::MalformedRow, "invalid month token '" + token + "'");
    }
    return Month{y, m};
}

Quarter Quarter::from_index(int idx) {
    int y = idx / 4;
    int q = idx % 4;
    if (q < 0) {
        q += 4;
        y -= 1;
    }
    return Quarter{y, q + 1};
}

std::int64_t Quarter::anchor_day() const {
    const int m = end_month();
    return days_from_civil(year, m, days_in_month(year, m));
}

std::string Quarter::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-Q%d", year, q);
    return buf;
}

Quarter Quarter::parse(const std::string& token) {
    if (token.size() != 7 || token[4] != '-' || token[5] != 'Q' || !all_digits(token, 0, 4) ||
        !all_digits(token, 6, 7)) {
        throw Error(ErrorKind::MalformedRow, "invalid quarter token '" + token + "'");
    }
    int y = std::stoi(token.substr(0, 4));
    int q = token[6] - '0';
    if (q < 1 || q > 4) {
        throw Error(ErrorKind::MalformedRow, "invalid quarter token '" + token + "'");
    }
    return Quarter{y, q};
}

std::vector<Month> MonthRange::months() const {
    std::vector<Month> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (int i = first.index(); i <= last.index(); ++i) out.push_back(Month::from_index(i));
    return out;
}

std::string MonthRange::str() const {
    return first.str() + ".." + last.str();
}

std::string YearRange::str() const {
    return std::to_string(first) + "-" + std::to_string(last);
}

} // namespace exmort
