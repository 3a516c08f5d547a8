#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace irrsim {

// Seeded random stream. Wraps std::mt19937_64, whose output sequence is fixed
// by the standard; uniform draws are derived from raw bits here rather than
// through <random> distributions so results do not depend on the standard
// library implementation.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Seed for run `index` under `master_seed`; a pure function of both.
std::uint64_t child_seed(std::uint64_t master_seed, std::uint64_t index);

}  // namespace irrsim
