#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace moobox {

/// Counter-based pseudo-random generator: draw i is a bit mix of
/// seed + i * golden_gamma, so streams are stateless functions of
/// (seed, counter) and every draw is reproducible bit-for-bit on any
/// platform with 64-bit integers and IEEE doubles. The mixing function is
/// the splitmix64 finalizer.
class CounterRng {
  public:
    /// Identifier recorded in output metadata so archived results name the
    /// exact stream algorithm they were produced with.
    static constexpr std::string_view algorithm_id = "splitmix64ctr-v1";

    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform draw in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Unbiased integer in [0, n) via rejection sampling; n must be nonzero.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t zone = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= zone);
        return v % n;
    }

    /// Fisher-Yates shuffle of {0, ..., n-1}.
    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        for (std::size_t i = n; i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t draws() const { return counter_; }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace moobox
