#include "tifti/temporal.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>
#include <stdexcept>

#include "tifti/text.hpp"

namespace tifti {

const char* bucket_name(TimeBucket b) {
    switch (b) {
        case TimeBucket::ExplicitDate: return "EXPLICIT-DATE";
        case TimeBucket::MonthYear: return "MONTH-YEAR";
        case TimeBucket::RelativeDay: return "RELATIVE-DAY";
        case TimeBucket::DurationAgo: return "DURATION-AGO";
        case TimeBucket::DurationFor: return "DURATION-FOR";
    }
    return "?";
}

std::optional<TimeBucket> bucket_from_name(std::string_view name) {
    for (TimeBucket b : {TimeBucket::ExplicitDate, TimeBucket::MonthYear, TimeBucket::RelativeDay,
                         TimeBucket::DurationAgo, TimeBucket::DurationFor}) {
        if (name == bucket_name(b)) return b;
    }
    return std::nullopt;
}

namespace {

constexpr const char* kMonths =
    "january|february|march|april|may|june|july|august|september|october|november|december";
constexpr const char* kWeekdays = "monday|tuesday|wednesday|thursday|friday|saturday|sunday";
constexpr const char* kNumberWords =
    "one|two|three|four|five|six|seven|eight|nine|ten|eleven|twelve";

int month_index(std::string_view name) {
    static const std::array<std::string_view, 12> names = {
        "january", "february", "march",     "april",   "may",      "june",
        "july",    "august",   "september", "october", "november", "december"};
    std::string lower = to_lower_ascii(name);
    for (int i = 0; i < 12; ++i) {
        if (lower == names[static_cast<std::size_t>(i)]) return i + 1;
    }
    throw std::invalid_argument("unknown month name: " + lower);
}

int weekday_index(std::string_view name) {
    static const std::array<std::string_view, 7> names = {"monday", "tuesday", "wednesday", "thursday",
                                                          "friday", "saturday", "sunday"};
    std::string lower = to_lower_ascii(name);
    for (int i = 0; i < 7; ++i) {
        if (lower == names[static_cast<std::size_t>(i)]) return i;  // Monday = 0
    }
    throw std::invalid_argument("unknown weekday: " + lower);
}

int parse_count(std::string_view s) {
    std::string lower = to_lower_ascii(s);
    if (lower == "a") return 1;
    if (std::isdigit(static_cast<unsigned char>(lower[0]))) {
        long v = std::stol(lower);
        if (v < 0 || v > 100000) throw std::invalid_argument("count out of range: " + lower);
        return static_cast<int>(v);
    }
    static const std::array<std::string_view, 12> words = {"one", "two",   "three", "four",
                                                           "five", "six",   "seven", "eight",
                                                           "nine", "ten",   "eleven", "twelve"};
    for (int i = 0; i < 12; ++i) {
        if (lower == words[static_cast<std::size_t>(i)]) return i + 1;
    }
    throw std::invalid_argument("unparseable count: " + lower);
}

DateStamp checked(int y, int m, int d, std::string_view surface) {
    DateStamp out{y, m, d};
    if (!out.valid()) throw std::invalid_argument("invalid date in '" + std::string(surface) + "'");
    return out;
}

int expand_two_digit_year(int yy) {
    return yy <= 69 ? 2000 + yy : 1900 + yy;
}

// Most recent valid (m, d) on or before the anchor. The year scan is bounded
// so Feb 29 resolves across leap gaps and impossible dates (Feb 30) fail.
DateStamp recent_month_day(int m, int d, DateStamp anchor, std::string_view surface) {
    for (int y = anchor.year; y >= anchor.year - 11; --y) {
        DateStamp cand{y, m, d};
        if (cand.valid() && cand <= anchor) return cand;
    }
    throw std::invalid_argument("no recent occurrence of '" + std::string(surface) + "'");
}

DateStamp shift_back(DateStamp anchor, int count, std::string_view unit_lower) {
    if (unit_lower == "day") return anchor.plus_days(-count);
    if (unit_lower == "week") return anchor.plus_days(-7l * count);
    if (unit_lower == "month") return anchor.plus_months(-count);
    throw std::invalid_argument("unknown unit: " + std::string(unit_lower));
}

struct Pattern {
    std::regex re;
    TimeBucket bucket;
    int priority;  // tie break when spans coincide
};

const std::vector<Pattern>& pattern_table() {
    static const std::vector<Pattern> table = [] {
        auto rx = [](const std::string& s) {
            return std::regex(s, std::regex::ECMAScript | std::regex::icase);
        };
        std::string months(kMonths), weekdays(kWeekdays), numbers(kNumberWords);
        std::vector<Pattern> t;
        t.push_back({rx(R"(\b\d{4}-\d{2}-\d{2}\b)"), TimeBucket::ExplicitDate, 0});
        t.push_back({rx(R"(\b\d{1,2}/\d{1,2}/\d{4}\b)"), TimeBucket::ExplicitDate, 1});
        t.push_back({rx(R"(\b\d{1,2}/\d{1,2}/\d{2}\b)"), TimeBucket::ExplicitDate, 2});
        t.push_back({rx(R"(\b\d{1,2}/\d{1,2}\b)"), TimeBucket::ExplicitDate, 3});
        t.push_back({rx(R"(\b(?:)" + months + R"()\s+\d{1,2}(?:,\s*\d{4})?\b)"),
                     TimeBucket::ExplicitDate, 4});
        t.push_back({rx(R"(\b(?:)" + months + R"()\s+\d{4}\b)"), TimeBucket::MonthYear, 5});
        t.push_back({rx(R"(\bin\s+(?:)" + months + R"()\b)"), TimeBucket::MonthYear, 6});
        t.push_back({rx(R"(\b(?:today|yesterday)\b)"), TimeBucket::RelativeDay, 7});
        t.push_back({rx(R"(\blast\s+(?:)" + weekdays + R"()\b)"), TimeBucket::RelativeDay, 8});
        t.push_back({rx(R"(\b(?:\d+|)" + numbers + R"()\s+(?:day|week|month)s?\s+ago\b)"),
                     TimeBucket::DurationAgo, 9});
        t.push_back({rx(R"(\bfor\s+(?:a|\d+)\s+(?:day|week|month)s?\b)"), TimeBucket::DurationFor, 10});
        return t;
    }();
    return table;
}

// Per-bucket parsers used by resolve_mapped_date. Anchored full matches.
const std::regex& re_iso() {
    static const std::regex re(R"((\d{4})-(\d{2})-(\d{2}))");
    return re;
}
const std::regex& re_slashes() {
    static const std::regex re(R"((\d{1,2})/(\d{1,2})(?:/(\d{2}|\d{4}))?)");
    return re;
}
const std::regex& re_month_day() {
    static const std::regex re(std::string(R"(()") + kMonths + R"()\s+(\d{1,2})(?:,\s*(\d{4}))?)",
                               std::regex::icase);
    return re;
}
const std::regex& re_month_year() {
    static const std::regex re(std::string(R"(()") + kMonths + R"()\s+(\d{4}))", std::regex::icase);
    return re;
}
const std::regex& re_in_month() {
    static const std::regex re(std::string(R"(in\s+()") + kMonths + R"())", std::regex::icase);
    return re;
}
const std::regex& re_last_weekday() {
    static const std::regex re(std::string(R"(last\s+()") + kWeekdays + R"())", std::regex::icase);
    return re;
}
const std::regex& re_ago() {
    static const std::regex re(std::string(R"((\d+|)") + kNumberWords +
                                   R"()\s+(day|week|month)s?\s+ago)",
                               std::regex::icase);
    return re;
}
const std::regex& re_for() {
    static const std::regex re(R"(for\s+(a|\d+)\s+(day|week|month)s?)", std::regex::icase);
    return re;
}

struct Candidate {
    std::size_t begin;
    std::size_t end;
    TimeBucket bucket;
    int priority;
    DateStamp mapped;
};

}  // namespace

DateStamp resolve_mapped_date(std::string_view surface, TimeBucket bucket, DateStamp anchor) {
    std::string s(surface);
    std::smatch m;
    switch (bucket) {
        case TimeBucket::ExplicitDate: {
            if (std::regex_match(s, m, re_iso())) {
                return checked(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), surface);
            }
            if (std::regex_match(s, m, re_slashes())) {
                int mo = std::stoi(m[1]), d = std::stoi(m[2]);
                if (!m[3].matched) return recent_month_day(mo, d, anchor, surface);
                std::string ys = m[3];
                int y = std::stoi(ys);
                if (ys.size() == 2) y = expand_two_digit_year(y);
                return checked(y, mo, d, surface);
            }
            if (std::regex_match(s, m, re_month_day())) {
                int mo = month_index(m[1].str()), d = std::stoi(m[2]);
                if (!m[3].matched) return recent_month_day(mo, d, anchor, surface);
                return checked(std::stoi(m[3]), mo, d, surface);
            }
            break;
        }
        case TimeBucket::MonthYear: {
            if (std::regex_match(s, m, re_month_year())) {
                return checked(std::stoi(m[2]), month_index(m[1].str()), 1, surface);
            }
            if (std::regex_match(s, m, re_in_month())) {
                int mo = month_index(m[1].str());
                DateStamp cand{anchor.year, mo, 1};
                if (cand > anchor) cand.year -= 1;
                return cand;
            }
            break;
        }
        case TimeBucket::RelativeDay: {
            std::string lower = to_lower_ascii(trim(s));
            if (lower == "today") return anchor;
            if (lower == "yesterday") return anchor.plus_days(-1);
            if (std::regex_match(s, m, re_last_weekday())) {
                int target = weekday_index(m[1].str());
                int diff = (anchor.weekday() - target + 7) % 7;
                if (diff == 0) diff = 7;  // strictly before the anchor
                return anchor.plus_days(-diff);
            }
            break;
        }
        case TimeBucket::DurationAgo: {
            if (std::regex_match(s, m, re_ago())) {
                return shift_back(anchor, parse_count(m[1].str()), to_lower_ascii(m[2].str()));
            }
            break;
        }
        case TimeBucket::DurationFor: {
            if (std::regex_match(s, m, re_for())) {
                return shift_back(anchor, parse_count(m[1].str()), to_lower_ascii(m[2].str()));
            }
            break;
        }
    }
    throw std::invalid_argument(std::string("surface '") + s + "' does not match bucket " +
                                bucket_name(bucket));
}

std::vector<TimeExpression> tag_sentence(const std::string& sentence, DateStamp anchor) {
    std::vector<Candidate> candidates;
    for (const Pattern& p : pattern_table()) {
        auto begin = std::sregex_iterator(sentence.begin(), sentence.end(), p.re);
        for (auto it = begin; it != std::sregex_iterator(); ++it) {
            std::size_t b = static_cast<std::size_t>(it->position(0));
            std::size_t e = b + static_cast<std::size_t>(it->length(0));
            DateStamp mapped;
            try {
                mapped = resolve_mapped_date(sentence.substr(b, e - b), p.bucket, anchor);
            } catch (const std::invalid_argument&) {
                continue;  // shape matched but the date is impossible (e.g. month 25)
            }
            candidates.push_back({b, e, p.bucket, p.priority, mapped});
        }
    }
    // longest match first, then leftmost, then table order
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        std::size_t la = a.end - a.begin, lb = b.end - b.begin;
        if (la != lb) return la > lb;
        if (a.begin != b.begin) return a.begin < b.begin;
        return a.priority < b.priority;
    });
    std::vector<Candidate> accepted;
    for (const Candidate& c : candidates) {
        bool overlaps = false;
        for (const Candidate& a : accepted) {
            if (c.begin < a.end && a.begin < c.end) {
                overlaps = true;
                break;
            }
        }
        if (!overlaps) accepted.push_back(c);
    }
    std::sort(accepted.begin(), accepted.end(),
              [](const Candidate& a, const Candidate& b) { return a.begin < b.begin; });

    std::vector<TimeExpression> out;
    out.reserve(accepted.size());
    for (const Candidate& c : accepted) {
        TimeExpression e;
        e.begin = c.begin;
        e.end = c.end;
        e.surface = sentence.substr(c.begin, c.end - c.begin);
        e.bucket = c.bucket;
        e.mapped_date = c.mapped;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<TimeExpression> tag_time_expressions(const DocumentTimeline& timeline) {
    std::vector<TimeExpression> out;
    for (std::size_t di = 0; di < timeline.docs.size(); ++di) {
        const CondensedDocument& doc = timeline.docs[di];
        for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
            for (TimeExpression e : tag_sentence(doc.sentences[si], doc.timestamp)) {
                e.doc_index = static_cast<int>(di);
                e.sentence_index = static_cast<int>(si);
                out.push_back(std::move(e));
            }
        }
    }
    return out;
}

}  // namespace tifti
