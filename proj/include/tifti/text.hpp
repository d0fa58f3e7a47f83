#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tifti {

/// One surface string to rewrite and the placeholder that replaces it.
struct MentionRule {
    std::string surface;      // matched case-insensitively on word boundaries
    std::string placeholder;  // e.g. "DRUG" or "OTHER-DRUG"
    int priority = 0;         // lower wins when surfaces collide
};

bool is_word_byte(unsigned char c);
std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);

/// Split note text into sentences. Boundaries are '.', '!' or '?' followed by
/// whitespace and an uppercase letter or digit, plus newlines. A short
/// abbreviation list ("Dr.", "mg.", ...) suppresses splits.
std::vector<std::string> split_sentences(std::string_view text);

/// Whole-word, case-insensitive scan.
bool contains_mention(std::string_view text, std::span<const std::string> surfaces);

/// Replace every rule surface (whole-word, case-insensitive, longest match
/// first) with its placeholder. Single left-to-right pass; replacements are
/// never rescanned.
std::string replace_mentions(std::string_view text, std::span<const MentionRule> rules);

}  // namespace tifti
