#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tifti {

/// Calendar date. All arithmetic is exact civil-calendar arithmetic.
struct DateStamp {
    int year = 1970;
    int month = 1;  // 1-12
    int day = 1;    // 1-31

    bool valid() const;

    /// Days since 1970-01-01 (negative before the epoch).
    std::int64_t to_days() const;
    static DateStamp from_days(std::int64_t days);

    DateStamp plus_days(std::int64_t n) const;
    /// Shift by whole months, clamping the day to the target month's length
    /// (2019-03-31 minus one month is 2019-02-28).
    DateStamp plus_months(int n) const;

    /// 0 = Monday ... 6 = Sunday.
    int weekday() const;

    /// "YYYY-MM-DD", zero padded.
    std::string iso() const;
    static std::optional<DateStamp> parse_iso(std::string_view s);

    friend auto operator<=>(const DateStamp&, const DateStamp&) = default;
};

/// b - a in days.
std::int64_t days_between(const DateStamp& a, const DateStamp& b);

inline std::int64_t abs_day_diff(const DateStamp& a, const DateStamp& b) {
    auto d = days_between(a, b);
    return d < 0 ? -d : d;
}

int days_in_month(int year, int month);

}  // namespace tifti
