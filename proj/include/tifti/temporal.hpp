#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tifti/corpus.hpp"
#include "tifti/dates.hpp"

namespace tifti {

enum class TimeBucket { ExplicitDate, MonthYear, RelativeDay, DurationAgo, DurationFor };

const char* bucket_name(TimeBucket b);
std::optional<TimeBucket> bucket_from_name(std::string_view name);

struct TimeExpression {
    int doc_index = 0;
    int sentence_index = 0;
    std::size_t begin = 0;  // byte offsets into the sentence, [begin, end)
    std::size_t end = 0;
    std::string surface;
    TimeBucket bucket = TimeBucket::ExplicitDate;
    DateStamp mapped_date;
};

/// All maximal non-overlapping pattern matches across the timeline's real
/// documents, in document order then span order. Overlaps resolve longest
/// match first, then leftmost.
std::vector<TimeExpression> tag_time_expressions(const DocumentTimeline& timeline);

/// Tag a single sentence anchored at `anchor` (debugging aid and test entry).
std::vector<TimeExpression> tag_sentence(const std::string& sentence, DateStamp anchor);

/// Resolve a surface that matched `bucket` to its mapped date.
/// Throws std::invalid_argument if the surface does not parse under the
/// bucket's rules.
DateStamp resolve_mapped_date(std::string_view surface, TimeBucket bucket, DateStamp anchor);

}  // namespace tifti
