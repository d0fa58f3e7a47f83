#include "tifti/dates.hpp"

#include <chrono>
#include <cstdio>

namespace tifti {

namespace chr = std::chrono;

static chr::year_month_day to_ymd(const DateStamp& d) {
    return chr::year{d.year} / chr::month{static_cast<unsigned>(d.month)} /
           chr::day{static_cast<unsigned>(d.day)};
}

bool DateStamp::valid() const {
    if (month < 1 || month > 12 || day < 1) return false;
    return to_ymd(*this).ok();
}

std::int64_t DateStamp::to_days() const {
    return chr::sys_days{to_ymd(*this)}.time_since_epoch().count();
}

DateStamp DateStamp::from_days(std::int64_t days) {
    chr::year_month_day ymd{chr::sys_days{chr::days{days}}};
    return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month())),
            static_cast<int>(static_cast<unsigned>(ymd.day()))};
}

DateStamp DateStamp::plus_days(std::int64_t n) const {
    return from_days(to_days() + n);
}

DateStamp DateStamp::plus_months(int n) const {
    chr::year_month_day ymd = to_ymd(*this) + chr::months{n};
    if (!ymd.ok()) {
        // day overflowed the target month; clamp to its last day
        ymd = ymd.year() / ymd.month() / chr::last;
    }
    return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month())),
            static_cast<int>(static_cast<unsigned>(ymd.day()))};
}

int DateStamp::weekday() const {
    chr::weekday wd{chr::sys_days{to_ymd(*this)}};
    return static_cast<int>(wd.iso_encoding()) - 1;  // Monday = 0
}

std::string DateStamp::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::optional<DateStamp> DateStamp::parse_iso(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto digits = [&](int from, int to) -> std::optional<int> {
        int v = 0;
        for (int i = from; i < to; ++i) {
            if (s[i] < '0' || s[i] > '9') return std::nullopt;
            v = v * 10 + (s[i] - '0');
        }
        return v;
    };
    auto y = digits(0, 4), m = digits(5, 7), d = digits(8, 10);
    if (!y || !m || !d) return std::nullopt;
    DateStamp out{*y, *m, *d};
    if (!out.valid()) return std::nullopt;
    return out;
}

std::int64_t days_between(const DateStamp& a, const DateStamp& b) {
    return b.to_days() - a.to_days();
}

int days_in_month(int year, int month) {
    chr::year_month_day_last last = chr::year{year} / chr::month{static_cast<unsigned>(month)} / chr::last;
    return static_cast<int>(static_cast<unsigned>(last.day()));
}

}  // namespace tifti
