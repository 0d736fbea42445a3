#include "botreg/timeparse.hpp"

#include <charconv>
#include <cstdio>
#include <string>

#include "botreg/errors.hpp"

namespace botreg {

// Howard Hinnant's days-from-civil, shifted so the era starts on a
// March 1 and leap days land at the end of the cycle.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

namespace {

bool is_leap(std::int64_t y) {
    return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

unsigned days_in_month(std::int64_t y, unsigned m) {
    static const unsigned lengths[] = {31, 28, 31, 30, 31, 30,
                                       31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

// Parse exactly `width` digits at text[pos..]; advance pos.
unsigned fixed_digits(std::string_view text, std::size_t& pos,
                      std::size_t width, std::string_view what) {
    if (pos + width > text.size())
        throw ParseError("timestamp too short reading " + std::string(what) +
                         ": '" + std::string(text) + "'");
    unsigned value = 0;
    for (std::size_t i = 0; i < width; ++i) {
        const char c = text[pos + i];
        if (c < '0' || c > '9')
            throw ParseError("non-digit in " + std::string(what) + ": '" +
                             std::string(text) + "'");
        value = value * 10 + static_cast<unsigned>(c - '0');
    }
    pos += width;
    return value;
}

void expect(std::string_view text, std::size_t& pos, char c) {
    if (pos >= text.size() || text[pos] != c)
        throw ParseError(std::string("expected '") + c + "' in timestamp '" +
                         std::string(text) + "'");
    ++pos;
}

}  // namespace

std::int64_t parse_utc_timestamp(std::string_view text) {
    std::size_t pos = 0;
    const unsigned year = fixed_digits(text, pos, 4, "year");
    expect(text, pos, '-');
    const unsigned month = fixed_digits(text, pos, 2, "month");
    expect(text, pos, '-');
    const unsigned day = fixed_digits(text, pos, 2, "day");
    expect(text, pos, 'T');
    const unsigned hour = fixed_digits(text, pos, 2, "hour");
    expect(text, pos, ':');
    const unsigned minute = fixed_digits(text, pos, 2, "minute");
    expect(text, pos, ':');
    const unsigned second = fixed_digits(text, pos, 2, "second");

    const std::string_view rest = text.substr(pos);
    if (rest != "Z" && rest != "+00:00")
        throw ParseError("timestamp must end in Z or +00:00: '" +
                         std::string(text) + "'");

    if (month < 1 || month > 12)
        throw RangeError("month out of range in '" + std::string(text) + "'");
    if (day < 1 || day > days_in_month(year, month))
        throw RangeError("day out of range in '" + std::string(text) + "'");
    if (hour > 23 || minute > 59 || second > 59)
        throw RangeError("time of day out of range in '" + std::string(text) +
                         "'");

    const std::int64_t days = days_from_civil(year, month, day);
    return days * 86400 + hour * 3600 + minute * 60 + second;
}

std::string format_utc_timestamp(std::int64_t epoch_s) {
    std::int64_t days = epoch_s / 86400;
    std::int64_t rem = epoch_s % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    // Inverse of days_from_civil.
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe =
        (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;

    char buf[48];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), m, d,
                  static_cast<long long>(rem / 3600),
                  static_cast<long long>(rem % 3600 / 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

std::int64_t days_between(std::int64_t from_epoch_s, std::int64_t to_epoch_s) {
    const std::int64_t diff = to_epoch_s - from_epoch_s;
    // Floor division so a partial day before `from` counts as -1, not 0.
    std::int64_t days = diff / 86400;
    if (diff % 86400 != 0 && diff < 0) --days;
    return days;
}

}  // namespace botreg
