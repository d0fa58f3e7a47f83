#include "tifti/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace tifti {

bool is_word_byte(unsigned char c) {
    // Bytes >= 0x80 are treated as word characters so UTF-8 sequences are
    // never split in the middle.
    return std::isalnum(c) || c >= 0x80;
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

namespace {

const std::array<std::string_view, 14> kAbbreviations = {
    "dr", "mr", "mrs", "ms", "st", "vs", "fig", "mg", "mcg", "ml", "approx", "etc", "eg", "ie"};

bool preceding_token_is_abbreviation(std::string_view text, std::size_t dot) {
    std::size_t e = dot;
    std::size_t b = e;
    while (b > 0 && is_word_byte(static_cast<unsigned char>(text[b - 1]))) --b;
    if (b == e) return false;
    std::string tok = to_lower_ascii(text.substr(b, e - b));
    return std::find(kAbbreviations.begin(), kAbbreviations.end(), tok) != kAbbreviations.end();
}

bool case_insensitive_at(std::string_view text, std::size_t pos, std::string_view surface) {
    if (pos + surface.size() > text.size()) return false;
    for (std::size_t i = 0; i < surface.size(); ++i) {
        unsigned char a = static_cast<unsigned char>(text[pos + i]);
        unsigned char b = static_cast<unsigned char>(surface[i]);
        if (std::tolower(a) != std::tolower(b)) return false;
    }
    return true;
}

bool boundary_before(std::string_view text, std::size_t pos) {
    return pos == 0 || !is_word_byte(static_cast<unsigned char>(text[pos - 1]));
}

bool boundary_after(std::string_view text, std::size_t end) {
    return end >= text.size() || !is_word_byte(static_cast<unsigned char>(text[end]));
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    const std::size_t n = text.size();
    auto flush = [&](std::size_t end) {
        std::string s = trim(text.substr(start, end - start));
        if (!s.empty()) out.push_back(std::move(s));
        start = end;
    };
    for (std::size_t i = 0; i < n; ++i) {
        char c = text[i];
        if (c == '\n') {
            flush(i + 1);
            continue;
        }
        if (c != '.' && c != '!' && c != '?') continue;
        // require whitespace then an uppercase letter or digit
        std::size_t j = i + 1;
        if (j >= n || !std::isspace(static_cast<unsigned char>(text[j]))) continue;
        while (j < n && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j >= n) continue;
        unsigned char nxt = static_cast<unsigned char>(text[j]);
        if (!std::isupper(nxt) && !std::isdigit(nxt)) continue;
        if (c == '.' && preceding_token_is_abbreviation(text, i)) continue;
        flush(i + 1);
    }
    flush(n);
    return out;
}

bool contains_mention(std::string_view text, std::span<const std::string> surfaces) {
    for (const auto& surface : surfaces) {
        if (surface.empty()) continue;
        for (std::size_t pos = 0; pos + surface.size() <= text.size(); ++pos) {
            if (!boundary_before(text, pos)) continue;
            if (!case_insensitive_at(text, pos, surface)) continue;
            if (!boundary_after(text, pos + surface.size())) continue;
            return true;
        }
    }
    return false;
}

std::string replace_mentions(std::string_view text, std::span<const MentionRule> rules) {
    // longest surface first, then priority, then surface for determinism
    std::vector<const MentionRule*> order;
    order.reserve(rules.size());
    for (const auto& r : rules) {
        if (!r.surface.empty()) order.push_back(&r);
    }
    std::sort(order.begin(), order.end(), [](const MentionRule* a, const MentionRule* b) {
        if (a->surface.size() != b->surface.size()) return a->surface.size() > b->surface.size();
        if (a->priority != b->priority) return a->priority < b->priority;
        return a->surface < b->surface;
    });

    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const MentionRule* hit = nullptr;
        if (boundary_before(text, i)) {
            for (const MentionRule* r : order) {
                if (case_insensitive_at(text, i, r->surface) &&
                    boundary_after(text, i + r->surface.size())) {
                    hit = r;
                    break;
                }
            }
        }
        if (hit) {
            out += hit->placeholder;
            i += hit->surface.size();
        } else {
            out += text[i++];
        }
    }
    return out;
}

}  // namespace tifti
