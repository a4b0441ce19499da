#pragma once

// Counter-based random stream keyed by (master seed, coordinates...).
// Every (key, counter) pair maps to a fixed 64-bit output, so a replica's
// stream does not depend on which thread runs it or in what order.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>

namespace ultralis {

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream identifiers, so the sign and magnitude draws of one replica are
/// independent streams.
enum class Stream : std::uint64_t { Signs = 1, Magnitudes = 2, Increments = 3, Resample = 4 };

class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key) : key_(mix64(key)) {}
    CounterRng(std::uint64_t master, std::initializer_list<std::uint64_t> coords)
        : key_(mix64(master)) {
        for (std::uint64_t c : coords) key_ = mix64(key_ ^ mix64(c + 0x9e3779b97f4a7c15ULL));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /// Integer in [1, 2^53); k * 2^-53 is an exactly representable uniform in (0,1).
    std::uint64_t uniform53() {
        std::uint64_t k = 0;
        while (k == 0) k = (*this)() >> 11;
        return k;
    }
    double uniform_open() { return static_cast<double>(uniform53()) * 0x1.0p-53; }
    bool coin() { return ((*this)() >> 63) != 0; }

    double exponential() { return -std::log(uniform_open()); }
    double normal() {
        // Box-Muller, one output per call
        const double u = uniform_open();
        const double v = uniform_open();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace ultralis
