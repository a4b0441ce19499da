#pragma once

// Exact small-n laws of L(n) and of the greedy length, the expected-greedy
// recursion, and checkers for the NBU family of inequalities.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ultralis {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);

/// Law of a nonnegative integer variable: either a finite pmf or the
/// geometric law started from zero, P(Y = k) = (1/(1+mu)) (mu/(1+mu))^k.
class DiscreteLaw {
public:
    static DiscreteLaw finite(std::vector<Rational> pmf);
    static DiscreteLaw point_mass(std::size_t value);
    static DiscreteLaw geometric(const Rational& mean);

    bool is_geometric() const { return geometric_; }
    /// Largest value with positive mass; npos for the geometric law.
    std::size_t support_max() const;
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    Rational pmf(std::size_t k) const;
    /// P(X >= k)
    Rational tail(std::size_t k) const;
    /// sum over j >= k of P(X >= j)
    Rational tail_sum(std::size_t k) const;
    Rational mean() const;

    /// E phi(X) in double precision; the geometric series is summed until
    /// the remaining mass is negligible.
    double expect(const std::function<double(double)>& phi) const;

private:
    bool geometric_ = false;
    Rational mean_;
    std::vector<Rational> pmf_;  // finite case
};

struct ExactDistribution {
    std::size_t n = 0;
    std::vector<Rational> pmf;  // pmf[v] = P(value = v), v = 0..n

    Rational mean() const;
    Rational tail(std::size_t k) const;
    DiscreteLaw law() const { return DiscreteLaw::finite(pmf); }
};

/// Exact law of L(n), 2 <= n <= 9, by enumerating every magnitude order and
/// sign pattern of steps 2..n.
ExactDistribution exact_lis_distribution(std::size_t n);
/// Exact law of the greedy length, 1 <= n <= 9, same enumeration.
ExactDistribution exact_greedy_distribution(std::size_t n);

/// z_1..z_{n_max} of the expected-greedy recursion; entry 0 is unused.
std::vector<double> greedy_mean_dp(std::size_t n_max);
std::vector<Rational> greedy_mean_dp_exact(std::size_t n_max);

/// Right-hand side of the exact mean identity for L(n), built from the exact
/// laws of L(1..n-1); equals E L(n) for 3 <= n <= 9.
Rational lis_mean_recursion_rhs(std::size_t n);

/// P(X >= a+b) <= P(X >= a) P(X >= b) for all a, b >= 1, exactly.
bool is_nbu(const DiscreteLaw& law);

struct TailSums {
    std::vector<Rational> a, A, g, G;  // index n = 0..size-1
    Rational mu;
};

TailSums tail_sums(const DiscreteLaw& law, std::size_t upto);

struct DominationReport {
    bool passed = false;
    double max_gap = 0.0;      // max over n of A_n - G_n (<= 0 on pass)
    std::size_t checked = 0;   // n = 0..checked-1 compared
};

DominationReport check_tail_domination(const DiscreteLaw& law);

struct ConvexReport {
    bool passed = false;
    double lhs = 0.0;  // E phi(X)
    double rhs = 0.0;  // E phi(Y), Y geometric with the same mean
};

/// Throws std::invalid_argument if phi fails the second-difference test.
ConvexReport check_convex_domination(const DiscreteLaw& law, const std::function<double(double)>& phi);

enum class CheckStatus { Passed, Failed, Skipped };

struct QuantileReport {
    CheckStatus status = CheckStatus::Skipped;
    Rational epsilon;  // P(X < q)
    Rational mean;
    Rational bound;    // q / epsilon
};

QuantileReport check_quantile_bound(const DiscreteLaw& law, const Rational& q);

Rational min_nbu_bound(const Rational& a, const Rational& b);
/// E min(X1, X2) under the product measure.
Rational expected_min(const DiscreteLaw& x1, const DiscreteLaw& x2);

struct MinReport {
    bool passed = false;
    Rational expected_min;
    Rational bound;
};

MinReport check_min_bound(const DiscreteLaw& x1, const DiscreteLaw& x2);

struct NbuSampleReport {
    double difference = 0.0;  // P(L >= a+b) - P(L >= a) P(L >= b)
    double stderr_ = 0.0;
    double z = 0.0;
    bool violation = false;   // difference above +3 standard errors
};

/// Delta-method test of the NBU inequality on i.i.d. samples (>= 10^4).
NbuSampleReport empirical_nbu_check(std::span<const std::uint32_t> samples, std::size_t a, std::size_t b);

}  // namespace ultralis
