#pragma once

#include <cstdint>
#include <string_view>

namespace botreg {

// Seconds since the Unix epoch for an ISO-8601 UTC timestamp of the form
// YYYY-MM-DDTHH:MM:SSZ (a trailing "+00:00" is accepted in place of Z).
// Throws ParseError on anything else, including out-of-range fields.
std::int64_t parse_utc_timestamp(std::string_view text);

// Days elapsed from `from` to `to`, rounded down; negative if to < from.
std::int64_t days_between(std::int64_t from_epoch_s, std::int64_t to_epoch_s);

// Civil date to days since 1970-01-01 (proleptic Gregorian).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d);

// Epoch seconds back to YYYY-MM-DDTHH:MM:SSZ.
std::string format_utc_timestamp(std::int64_t epoch_s);

}  // namespace botreg
