#include <cmath>

#include <gtest/gtest.h>

#include "ultralis/harness.hpp"
#include "ultralis/numerics.hpp"

using namespace ultralis;

namespace {

// x + 2^{-1-x} = 1, solved to high precision with mpmath.
constexpr double kBeta0 = 0.69009306761931;

}  // namespace

TEST(Integrate, PolynomialsAndEndpointBehaviour) {
    EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12), 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10), 2.0, 1e-8);
    EXPECT_NEAR(integrate([](double x) { return std::pow(x, 0.001); }, 0.0, 1.0, 1e-10), 1.0 / 1.001, 1e-10);
    EXPECT_THROW(integrate([](double x) { return x; }, 0.0, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-10), ConvergenceError);
}

TEST(CBeta, ClosedForm) {
    EXPECT_DOUBLE_EQ(c_beta(0.0), 1.5);
    EXPECT_DOUBLE_EQ(c_beta(1.0), 7.0 / 8.0);
    EXPECT_NEAR(c_beta(kBeta0), 1.0, 1e-9);
    EXPECT_THROW(c_beta(-1.0), std::invalid_argument);
    for (double b = 0.0; b < 1.0; b += 0.05) EXPECT_GT(c_beta(b), c_beta(b + 0.05));
}

TEST(CBeta, QuadratureMatchesClosedForm) {
    for (double b : {0.0, 0.3, kBeta0, 1.0}) EXPECT_NEAR(c_beta_quadrature(b, 1e-12), c_beta(b), 1e-9) << b;
}

TEST(Beta0, RootAndDualFormulation) {
    const RootResult r = solve_beta0(1e-9);
    EXPECT_NEAR(r.root, kBeta0, 1e-9);
    EXPECT_LT(std::abs(r.residual), 1e-9);
    EXPECT_LE(r.lo, r.root);
    EXPECT_GE(r.hi, r.root);
    EXPECT_NEAR(solve_c_beta_unit(1e-9).root, r.root, 1e-9);
    EXPECT_THROW(solve_beta0(0.0), std::invalid_argument);
}

TEST(Beta0, StableUnderToleranceAndMethod) {
    const double base = solve_beta0(1e-9).root;
    EXPECT_NEAR(solve_beta0(5e-10).root, base, 1e-9);
    EXPECT_NEAR(solve_beta0(1e-9, RootMethod::Newton).root, base, 1e-9);
    EXPECT_NEAR(solve_c_beta_unit(1e-9, RootMethod::Newton).root, base, 1e-9);
}

TEST(UpperFunctional, ClosedFormEnds) {
    EXPECT_NEAR(upper_functional(0.0, 1e-12), 1.75, 1e-12);
    EXPECT_NEAR(upper_functional(1.0, 1e-12), 11.0 / 12.0, 1e-12);
    EXPECT_THROW(upper_functional(1.5, 1e-10), std::invalid_argument);
}

TEST(UpperFunctional, DecreasingOnGrid) {
    double previous = upper_functional(0.1, 1e-10);
    for (int i = 2; i <= 10; ++i) {
        const double v = upper_functional(0.1 * i, 1e-10);
        EXPECT_LT(v, previous) << i;
        previous = v;
    }
}

TEST(Beta1, RootContractAndStability) {
    const RootResult r = solve_beta1(1e-8, 1e-10);
    EXPECT_NEAR(r.root, 0.814834, 1e-5);
    EXPECT_LT(std::abs(upper_functional(r.root, 1e-10) - 1.0), 1e-8);
    EXPECT_NEAR(upper_functional(r.root, 1e-10), 1.0, 1e-6);
    EXPECT_NEAR(solve_beta1(1e-8, 5e-11).root, r.root, 1e-6);
    EXPECT_NEAR(solve_beta1(5e-9, 5e-11).root, r.root, 1e-8);
    EXPECT_NEAR(solve_beta1(1e-8, 1e-10, RootMethod::Newton).root, r.root, 1e-8);
}

TEST(LowerRecursion, SmallValuesAndMonotone) {
    const auto l = iterate_lower_recursion(4096);
    EXPECT_DOUBLE_EQ(l[1], 1.0);
    EXPECT_DOUBLE_EQ(l[2], 1.5);
    EXPECT_DOUBLE_EQ(l[3], 2.0);
    for (std::size_t n = 2; n <= 4096; ++n) ASSERT_GE(l[n], l[n - 1]);
    EXPECT_THROW(iterate_lower_recursion(1), std::invalid_argument);
}

TEST(LowerRecursion, SlopeNearBeta0) {
    const auto l = iterate_lower_recursion(std::size_t{1} << 20);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t n = std::size_t{1} << 14; n <= (std::size_t{1} << 20); n *= 2) pts.emplace_back(double(n), l[n]);
    EXPECT_NEAR(fit_power_law(pts).slope, kBeta0, 0.02);
}
