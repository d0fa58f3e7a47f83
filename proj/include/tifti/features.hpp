#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tifti {

// Seedless 64-bit FNV-1a. These constants are part of the model file format;
// trained models are only portable while they stay fixed.
inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = kFnvOffset) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

struct FeatureConfig {
    std::vector<int> ngram_orders{1, 2};
    std::uint32_t dim = 1u << 18;  // power of two
    bool lowercase = true;         // placeholder tokens DRUG, OTHER-DRUG, TIME exempt

    bool valid() const;
    bool operator==(const FeatureConfig&) const = default;
};

/// Sparse hashed n-gram counts. Indices strictly increasing, no zero weights.
struct FeatureVector {
    std::uint32_t dim = 0;
    std::vector<std::pair<std::uint32_t, double>> entries;
};

/// Split on whitespace and punctuation; punctuation is dropped. The
/// placeholder tokens DRUG, OTHER-DRUG and TIME are kept verbatim, everything
/// else is lowercased when requested.
std::vector<std::string> tokenize(std::string_view text, bool lowercase = true);

FeatureVector featurize(std::string_view text, const FeatureConfig& config);

/// Hash of one n-gram: order byte, then each token preceded by a 0x1f
/// separator, through FNV-1a.
std::uint64_t ngram_hash(int order, std::span<const std::string> tokens, std::size_t first);

double l2_norm(const FeatureVector& v);

}  // namespace tifti
