#include "electsent/dates.hpp"

#include <array>
#include <cstdio>

#include "electsent/util.hpp"

namespace electsent {

namespace {

constexpr std::array<const char*, 12> kMonthNames = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

constexpr std::array<const char*, 7> kDayNames = {
    "Thu", "Fri", "Sat", "Sun", "Mon", "Tue", "Wed"};  // day 0 = 1970-01-01

bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

unsigned days_in_month(int y, unsigned m) {
    static constexpr std::array<unsigned, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                         31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

bool parse_uint(std::string_view s, size_t pos, size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int value = 0;
    for (size_t i = pos; i < pos + len; ++i) {
        char c = s[i];
        if (c < '0' || c > '9') return false;
        value = value * 10 + (c - '0');
    }
    out = value;
    return true;
}

int month_from_name(std::string_view name) {
    for (size_t i = 0; i < kMonthNames.size(); ++i) {
        if (name == kMonthNames[i]) return static_cast<int>(i) + 1;
    }
    return 0;
}

std::optional<std::int64_t> from_fields(int year, int month, int day, int hh, int mm,
                                        int ss, std::int64_t offset_seconds) {
    CivilDate d{year, static_cast<unsigned>(month), static_cast<unsigned>(day)};
    if (!valid_civil(d)) return std::nullopt;
    if (hh < 0 || hh > 23 || mm < 0 || mm > 59 || ss < 0 || ss > 59) return std::nullopt;
    std::int64_t local = days_from_civil(d) * 86400 + hh * 3600 + mm * 60 + ss;
    return local - offset_seconds;
}

// "Wed Dec 16 00:00:00 +0000 2015"
std::optional<std::int64_t> parse_twitter_format(std::string_view s) {
    auto parts = split(trim(s), ' ');
    if (parts.size() != 6) return std::nullopt;
    const std::string& dow = parts[0];
    if (dow.size() != 3) return std::nullopt;
    int month = month_from_name(parts[1]);
    if (month == 0) return std::nullopt;
    int day = 0, year = 0;
    if (!parse_uint(parts[2], 0, parts[2].size(), day)) return std::nullopt;
    const std::string& hms = parts[3];
    int hh = 0, mm = 0, ss = 0;
    if (hms.size() != 8 || hms[2] != ':' || hms[5] != ':') return std::nullopt;
    if (!parse_uint(hms, 0, 2, hh) || !parse_uint(hms, 3, 2, mm) || !parse_uint(hms, 6, 2, ss))
        return std::nullopt;
    const std::string& off = parts[4];
    if (off.size() != 5 || (off[0] != '+' && off[0] != '-')) return std::nullopt;
    int oh = 0, om = 0;
    if (!parse_uint(off, 1, 2, oh) || !parse_uint(off, 3, 2, om)) return std::nullopt;
    std::int64_t offset = (oh * 3600 + om * 60) * (off[0] == '-' ? -1 : 1);
    if (!parse_uint(parts[5], 0, 4, year) || parts[5].size() != 4) return std::nullopt;
    return from_fields(year, month, day, hh, mm, ss, offset);
}

// "2015-12-16T00:00:00Z", "2015-12-16 00:00:00+00:00", "2015-12-16"
std::optional<std::int64_t> parse_iso_format(std::string_view raw) {
    std::string s = trim(raw);
    int year = 0, month = 0, day = 0;
    if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!parse_uint(s, 0, 4, year) || !parse_uint(s, 5, 2, month) || !parse_uint(s, 8, 2, day))
        return std::nullopt;
    int hh = 0, mm = 0, ss = 0;
    std::int64_t offset = 0;
    size_t pos = 10;
    if (pos < s.size()) {
        if (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ') return std::nullopt;
        ++pos;
        if (pos + 8 > s.size() || s[pos + 2] != ':' || s[pos + 5] != ':') return std::nullopt;
        if (!parse_uint(s, pos, 2, hh) || !parse_uint(s, pos + 3, 2, mm) ||
            !parse_uint(s, pos + 6, 2, ss))
            return std::nullopt;
        pos += 8;
        if (pos < s.size() && s[pos] == '.') {  // fractional seconds: ignored
            ++pos;
            size_t digits = 0;
            while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos, ++digits;
            if (digits == 0) return std::nullopt;
        }
        if (pos < s.size()) {
            char c = s[pos];
            if (c == 'Z' || c == 'z') {
                ++pos;
            } else if (c == '+' || c == '-') {
                ++pos;
                int oh = 0, om = 0;
                if (!parse_uint(s, pos, 2, oh)) return std::nullopt;
                pos += 2;
                if (pos < s.size() && s[pos] == ':') ++pos;
                if (!parse_uint(s, pos, 2, om)) return std::nullopt;
                pos += 2;
                offset = (oh * 3600 + om * 60) * (c == '-' ? -1 : 1);
            }
        }
        if (pos != s.size()) return std::nullopt;
    }
    return from_fields(year, month, day, hh, mm, ss, offset);
}

}  // namespace

std::int64_t days_from_civil(CivilDate d) {
    int y = d.year;
    unsigned m = d.month;
    unsigned day = d.day;
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned day = doy - (153 * mp + 2) / 5 + 1;
    const unsigned month = mp < 10 ? mp + 3 : mp - 9;
    return CivilDate{static_cast<int>(y + (month <= 2)), month, day};
}

bool valid_civil(CivilDate d) {
    if (d.month < 1 || d.month > 12) return false;
    if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return false;
    return true;
}

CivilDate date_of(std::int64_t epoch_seconds) {
    return civil_from_days(floor_div(epoch_seconds, 86400));
}

std::optional<CivilDate> parse_date(std::string_view s) {
    std::string t = trim(s);
    if (t.size() != 10 || t[4] != '-' || t[7] != '-') return std::nullopt;
    int y = 0, m = 0, d = 0;
    if (!parse_uint(t, 0, 4, y) || !parse_uint(t, 5, 2, m) || !parse_uint(t, 8, 2, d))
        return std::nullopt;
    CivilDate out{y, static_cast<unsigned>(m), static_cast<unsigned>(d)};
    if (!valid_civil(out)) return std::nullopt;
    return out;
}

std::string format_date(CivilDate d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", d.year, d.month, d.day);
    return std::string(buf);
}

std::optional<std::int64_t> parse_timestamp(std::string_view s) {
    std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    if (t[0] >= '0' && t[0] <= '9') return parse_iso_format(t);
    return parse_twitter_format(t);
}

std::string format_iso8601(std::int64_t epoch_seconds) {
    std::int64_t day = epoch_seconds / 86400;
    std::int64_t sec = epoch_seconds % 86400;
    if (sec < 0) {
        sec += 86400;
        --day;
    }
    CivilDate d = civil_from_days(day);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", d.year, d.month, d.day,
                  static_cast<int>(sec / 3600), static_cast<int>(sec / 60 % 60),
                  static_cast<int>(sec % 60));
    return std::string(buf);
}

std::string format_twitter(std::int64_t epoch_seconds) {
    std::int64_t day = epoch_seconds / 86400;
    std::int64_t sec = epoch_seconds % 86400;
    if (sec < 0) {
        sec += 86400;
        --day;
    }
    CivilDate d = civil_from_days(day);
    std::int64_t dow = ((day % 7) + 7) % 7;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s %s %02u %02d:%02d:%02d +0000 %04d", kDayNames[dow],
                  kMonthNames[d.month - 1], d.day, static_cast<int>(sec / 3600),
                  static_cast<int>(sec / 60 % 60), static_cast<int>(sec % 60), d.year);
    return std::string(buf);
}

}  // namespace electsent
