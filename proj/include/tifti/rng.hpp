#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tifti {

// Deterministic random source. All derived draws are defined directly on the
// mt19937_64 output stream so that results are identical across platforms and
// standard library implementations (std::uniform_* distributions are not
// portable).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be positive.
    int below(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }

    /// Uniform integer in [lo, hi] inclusive.
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }

    bool bernoulli(double p) { return uniform() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(static_cast<int>(v.size()))];
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[static_cast<std::size_t>(below(static_cast<int>(i)))]);
        }
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace tifti
