#include "tifti/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <span>

#include "tifti/text.hpp"

namespace tifti {

bool FeatureConfig::valid() const {
    if (ngram_orders.empty()) return false;
    for (int k : ngram_orders) {
        if (k < 1) return false;
    }
    return dim >= 2 && (dim & (dim - 1)) == 0;
}

namespace {

// checked longest-first
const std::string_view kPlaceholders[] = {"OTHER-DRUG", "DRUG", "TIME"};

bool placeholder_at(std::string_view text, std::size_t pos, std::string_view& out) {
    for (std::string_view ph : kPlaceholders) {
        if (pos + ph.size() > text.size()) continue;
        if (text.compare(pos, ph.size(), ph) != 0) continue;
        std::size_t end = pos + ph.size();
        if (end < text.size() && is_word_byte(static_cast<unsigned char>(text[end]))) continue;
        out = ph;
        return true;
    }
    return false;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, bool lowercase) {
    std::vector<std::string> tokens;
    std::string word;
    auto flush = [&] {
        if (!word.empty()) {
            tokens.push_back(word);
            word.clear();
        }
    };
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        bool at_boundary = word.empty() && (i == 0 || !is_word_byte(static_cast<unsigned char>(text[i - 1])));
        if (at_boundary) {
            std::string_view ph;
            if (placeholder_at(text, i, ph)) {
                tokens.emplace_back(ph);
                i += ph.size();
                continue;
            }
        }
        if (is_word_byte(c)) {
            word += lowercase ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
        } else {
            flush();
        }
        ++i;
    }
    flush();
    return tokens;
}

std::uint64_t ngram_hash(int order, std::span<const std::string> tokens, std::size_t first) {
    std::uint64_t h = kFnvOffset;
    unsigned char ob = static_cast<unsigned char>('0' + order);
    h ^= ob;
    h *= kFnvPrime;
    for (int k = 0; k < order; ++k) {
        h ^= 0x1f;
        h *= kFnvPrime;
        h = fnv1a64(tokens[first + static_cast<std::size_t>(k)], h);
    }
    return h;
}

FeatureVector featurize(std::string_view text, const FeatureConfig& config) {
    std::vector<std::string> tokens = tokenize(text, config.lowercase);
    std::map<std::uint32_t, double> acc;
    for (int order : config.ngram_orders) {
        if (static_cast<std::size_t>(order) > tokens.size()) continue;
        std::size_t count = tokens.size() - static_cast<std::size_t>(order) + 1;
        for (std::size_t i = 0; i < count; ++i) {
            std::uint32_t idx = static_cast<std::uint32_t>(ngram_hash(order, tokens, i) & (config.dim - 1));
            acc[idx] += 1.0;
        }
    }
    FeatureVector v;
    v.dim = config.dim;
    v.entries.assign(acc.begin(), acc.end());
    return v;
}

double l2_norm(const FeatureVector& v) {
    double s = 0.0;
    for (const auto& [idx, w] : v.entries) s += w * w;
    return std::sqrt(s);
}

}  // namespace tifti
