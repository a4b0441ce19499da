#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ultralis/harness.hpp"
#include "ultralis/lis.hpp"

using namespace ultralis;

namespace {

// Explicit partial sums in the module, S_0 = 0 at index 0.
std::vector<UltraElement> module_sums(const WalkSample& w) {
    std::vector<UltraElement> s{UltraElement{}};
    for (std::size_t k = 1; k <= w.size(); ++k) s.push_back(s.back() + UltraElement::generator(w.magnitude(k), w.sign(k)));
    return s;
}

// Longest strictly increasing subsequence of S_1..S_n by trying every subset.
std::size_t brute_force_lis(const std::vector<UltraElement>& s) {
    const std::size_t n = s.size() - 1;
    std::size_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::size_t prev = 0, len = 0;
        bool increasing = true;
        for (std::size_t k = 1; k <= n && increasing; ++k) {
            if (!(mask & (1u << (k - 1)))) continue;
            if (prev != 0 && compare(s[prev], s[k]) != Ordering::Less) increasing = false;
            prev = k;
            ++len;
        }
        if (increasing) best = std::max(best, len);
    }
    return best;
}

template <class W>
std::vector<std::size_t> quadratic_lis(const W& w, std::size_t first, std::size_t last) {
    // best[t] = longest increasing run ending at position t.
    std::vector<std::size_t> best(last + 1, 0), prefix(last + 1, 0);
    std::size_t running = 0;
    for (std::size_t j = first; j <= last; ++j) {
        best[j] = 1;
        for (std::size_t i = first; i < j; ++i) {
            if (w.less(i, j)) best[j] = std::max(best[j], best[i] + 1);
        }
        running = std::max(running, best[j]);
        prefix[j] = running;
    }
    return prefix;
}

// Greedy length by direct scanning, independent of the range-max table.
std::size_t greedy_oracle(const WalkSample& w, std::size_t a, std::size_t b) {
    if (b < a) return 0;
    if (b == a) return 1;
    std::size_t s = a + 1;
    for (std::size_t k = a + 2; k <= b; ++k) {
        if (w.magnitude(k) > w.magnitude(s)) s = k;
    }
    if (w.sign(s) > 0) return greedy_oracle(w, a, s - 1) + greedy_oracle(w, s, b);
    return s - a >= b - s + 1 ? greedy_oracle(w, a, s - 1) : greedy_oracle(w, s, b);
}

WalkSample walk(std::size_t n, std::uint64_t seed) { return sample_ultrafat(n, replica_seed(99, n, seed)); }

}  // namespace

TEST(LisTrajectory, RealWalkExample) {
    const RealWalkSample w = RealWalkSample::from_increments(Model::gaussian(), {1.0, 2.0, -1.0});
    const LisResult r = lis_trajectory(w, 3);
    EXPECT_EQ(r.lengths, (std::vector<std::uint32_t>{0, 1, 2, 2}));
}

TEST(LisTrajectory, AllDownIsOne) {
    const WalkSample w({-1, -1, -1, -1, -1}, {0.5, 0.1, 0.9, 0.3, 0.7});
    const LisResult r = lis_trajectory(w, 5);
    for (std::size_t t = 1; t <= 5; ++t) EXPECT_EQ(r.lengths[t], 1u);
}

TEST(LisTrajectory, MatchesExhaustiveSearch) {
    for (std::size_t n = 1; n <= 10; ++n) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const WalkSample w = walk(n, seed);
            const auto sums = module_sums(w);
            ASSERT_EQ(lis_trajectory(w, n).length(), brute_force_lis(sums)) << n << ' ' << seed;
        }
    }
}

TEST(LisTrajectory, MatchesQuadraticDp) {
    for (std::size_t n : {50u, 333u, 2000u}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const WalkSample w = walk(n, seed);
            const auto dp = quadratic_lis(w, 1, n);
            const LisResult r = lis_trajectory(w, n);
            for (std::size_t t = 1; t <= n; ++t) ASSERT_EQ(r.lengths[t], dp[t]) << n << ' ' << t;
            const RealWalkSample g = sample_stable(n, 1.3, seed);
            const auto dp_real = quadratic_lis(g, 1, n);
            EXPECT_EQ(lis_trajectory(g, n).length(), dp_real[n]);
        }
    }
}

TEST(LisTrajectory, TrajectoryAndWitnessInvariants) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const WalkSample w = walk(300, seed);
        const LisResult r = lis_trajectory(w, 300, true);
        EXPECT_EQ(r.lengths[0], 0u);
        EXPECT_EQ(r.lengths[1], 1u);
        for (std::size_t t = 1; t <= 300; ++t) {
            const auto step = r.lengths[t] - r.lengths[t - 1];
            ASSERT_TRUE(step == 0 || step == 1);
        }
        ASSERT_TRUE(r.witness.has_value());
        const auto& wit = *r.witness;
        ASSERT_EQ(wit.size(), r.length());
        for (std::size_t i = 1; i < wit.size(); ++i) {
            EXPECT_LT(wit[i - 1], wit[i]);
            EXPECT_TRUE(w.less(wit[i - 1], wit[i]));
        }
    }
}

TEST(LisTrajectory, RejectsTooLong) {
    EXPECT_THROW(lis_trajectory(walk(5, 0), 6), std::out_of_range);
}

TEST(LisSubinterval, Examples) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const WalkSample w = walk(64, seed);
        EXPECT_EQ(lis_subinterval(w, 0, 64), lis_trajectory(w, 64).length());
        EXPECT_EQ(lis_subinterval(w, 63, 64), 1u);
        EXPECT_EQ(lis_subinterval(w, 10, 40), quadratic_lis(w, 11, 40)[40]);
    }
    EXPECT_THROW(lis_subinterval(walk(8, 0), 4, 4), std::invalid_argument);
}

TEST(LisSubinterval, ShiftedLawMatches) {
    // Two-sample Kolmogorov-Smirnov between L(16, 32) and L(16).
    const std::size_t samples = 10000;
    std::vector<std::size_t> shifted, fresh;
    for (std::size_t r = 0; r < samples; ++r) {
        shifted.push_back(lis_subinterval(sample_ultrafat(32, replica_seed(5, 32, r)), 16, 32));
        fresh.push_back(lis_trajectory(sample_ultrafat(16, replica_seed(6, 16, r)), 16).length());
    }
    double ks = 0.0;
    for (std::size_t v = 0; v <= 16; ++v) {
        const double a = std::count_if(shifted.begin(), shifted.end(), [v](auto x) { return x <= v; }) / double(samples);
        const double b = std::count_if(fresh.begin(), fresh.end(), [v](auto x) { return x <= v; }) / double(samples);
        ks = std::max(ks, std::abs(a - b));
    }
    EXPECT_LT(ks, 1.628 * std::sqrt(2.0 / samples));
}

TEST(FirstPassage, Examples) {
    LisResult r;
    r.lengths = {0, 1, 2, 2, 3};
    const FirstPassage fp = first_passage(r);
    EXPECT_EQ(fp.max_length(), 3u);
    EXPECT_EQ(fp.time(1), 1u);
    EXPECT_EQ(fp.time(2), 2u);
    EXPECT_EQ(fp.time(3), 4u);
    EXPECT_FALSE(fp.time(4).has_value());
}

TEST(FirstPassage, Invariants) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const LisResult r = lis_trajectory(walk(200, seed), 200);
        const FirstPassage fp = first_passage(r);
        EXPECT_EQ(fp.time(1), 1u);
        for (std::size_t l = 1; l <= fp.max_length(); ++l) {
            EXPECT_EQ(r.lengths[fp.times[l]], l);
            if (l > 1) EXPECT_GT(fp.times[l], fp.times[l - 1]);
        }
        for (std::size_t t = 1; t <= 200; ++t) EXPECT_LE(fp.times[r.lengths[t]], t);
    }
}

TEST(Superadditivity, MatchesDirectRecomputation) {
    // T(l+m) >= T(l) + (first time the post-T(l) walk reaches LIS m).
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const WalkSample w = walk(40, seed);
        const FirstPassage fp = first_passage(lis_trajectory(w, 40));
        for (std::size_t l = 1; l < fp.max_length(); ++l) {
            const std::size_t start = fp.times[l];
            const auto tail = quadratic_lis(w, start + 1, 40);
            for (std::size_t m = 1; l + m <= fp.max_length(); ++m) {
                std::size_t q = start + 1;
                while (q <= 40 && tail[q] < m) ++q;
                ASSERT_LE(q, 40u);
                ASSERT_GE(fp.times[l + m], q) << seed;
            }
        }
        ASSERT_EQ(count_superadditivity_violations(w, 40), 0u);
    }
}

TEST(SplitRecursion, TwoStepExamples) {
    const SplitCheck up = verify_split_recursion(WalkSample({1, 1}, {0.5, 0.2}), 2);
    EXPECT_EQ(up.sigma, 2u);
    EXPECT_TRUE(up.up);
    EXPECT_EQ(up.lis_before, 1u);
    EXPECT_EQ(up.lis_after, 1u);
    EXPECT_EQ(up.lis_total, 2u);
    EXPECT_TRUE(up.holds);
    const SplitCheck down = verify_split_recursion(WalkSample({1, -1}, {0.5, 0.2}), 2);
    EXPECT_FALSE(down.up);
    EXPECT_EQ(down.lis_total, 1u);
    EXPECT_TRUE(down.holds);
}

TEST(SplitRecursion, HoldsOnRandomWalks) {
    for (std::size_t n : {3u, 10u, 100u, 1000u}) {
        for (std::uint64_t seed = 0; seed < 2000; ++seed) {
            const SplitCheck c = verify_split_recursion(walk(n, seed), n);
            ASSERT_TRUE(c.holds) << n << ' ' << seed;
            const std::size_t expect = c.up ? c.lis_before + c.lis_after : std::max(c.lis_before, c.lis_after);
            ASSERT_EQ(c.lis_total, expect);
        }
    }
}

TEST(Greedy, Examples) {
    EXPECT_EQ(greedy_length(WalkSample({-1}, {0.4}), 1), 1u);
    EXPECT_EQ(greedy_length(WalkSample({-1, 1, 1}, {0.4, 0.2, 0.7}), 3), 3u);
    // Down step exactly in the middle of four positions keeps the left half.
    EXPECT_EQ(greedy_length(WalkSample({1, 1, -1, -1}, {0.1, 0.5, 0.9, 0.2}), 4), 2u);
}

TEST(Greedy, MatchesOracleAndNeverBeatsLis) {
    for (std::size_t n : {2u, 5u, 17u, 256u, 5000u}) {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const WalkSample w = walk(n, seed);
            const std::size_t g = greedy_length(w, n);
            ASSERT_EQ(g, greedy_oracle(w, 1, n));
            ASSERT_LE(g, lis_trajectory(w, n).length());
        }
    }
}

TEST(Subadditivity, Examples) {
    const WalkSample w = walk(2, 0);
    EXPECT_TRUE(verify_subadditivity(w, 1, 1));
    const WalkSample up({1, 1, 1, 1, 1, 1}, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
    EXPECT_EQ(lis_length(up, 1, 6), lis_length(up, 1, 3) + lis_length(up, 4, 6));
    EXPECT_TRUE(verify_subadditivity(up, 3, 3));
    EXPECT_THROW(verify_subadditivity(w, 0, 1), std::invalid_argument);
}

TEST(Subadditivity, NoViolations) {
    std::size_t violations = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        const WalkSample w = walk(64, seed);
        violations += !verify_subadditivity(w, 8, 8);
        violations += !verify_subadditivity(w, 16, 48);
    }
    EXPECT_EQ(violations, 0u);
    for (std::uint64_t seed = 0; seed < 200; ++seed) EXPECT_EQ(count_subadditivity_violations(walk(300, seed), 300), 0u);
}
