#pragma once

// Named property suites behind `check --suite`. Each returns a JSON report
// with per-check detail and an overall "passed" flag.

#include <cstddef>
#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace ultralis {

struct CheckParams {
    std::size_t n = 100;       // walk length (recursion, subadd)
    std::size_t t = 64;        // time for the NBU suite
    std::size_t reps = 1000;   // sampled walks
    std::size_t a = 4;         // NBU levels
    std::size_t b = 4;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

/// Reference decimals the constants suite compares against.
inline constexpr double kBeta0Reference = 0.690069;
inline constexpr double kBeta1Reference = 0.814834;

/// nbu | recursion | subadd | domination | constants. Throws
/// std::invalid_argument for an unknown suite.
nlohmann::ordered_json check_suite(const std::string& name, const CheckParams& params);

nlohmann::ordered_json constants_report();

}  // namespace ultralis
