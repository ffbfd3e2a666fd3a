#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace electsent {

/// Calendar date in the proleptic Gregorian calendar. All timestamps in this
/// project are UTC; period boundaries fall on UTC midnights.
struct CivilDate {
    int year = 1970;
    unsigned month = 1;  // 1..12
    unsigned day = 1;    // 1..31

    auto operator<=>(const CivilDate&) const = default;
};

/// Days since 1970-01-01.
std::int64_t days_from_civil(CivilDate d);
CivilDate civil_from_days(std::int64_t z);

bool valid_civil(CivilDate d);

/// Calendar date of a UTC instant.
CivilDate date_of(std::int64_t epoch_seconds);

/// "YYYY-MM-DD"
std::optional<CivilDate> parse_date(std::string_view s);
std::string format_date(CivilDate d);

/// Accepts the classic Twitter form ("Wed Dec 16 00:00:00 +0000 2015") and
/// ISO-8601 ("2015-12-16T00:00:00Z", offset or space-separated variants).
/// Returns seconds since the Unix epoch, UTC.
std::optional<std::int64_t> parse_timestamp(std::string_view s);

std::string format_iso8601(std::int64_t epoch_seconds);
std::string format_twitter(std::int64_t epoch_seconds);

}  // namespace electsent
