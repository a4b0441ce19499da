#include "ultralis/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ultralis {

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

Rational power(const Rational& base, std::size_t k) {
    Rational out = 1;
    for (std::size_t i = 0; i < k; ++i) out *= base;
    return out;
}

Rational geometric_ratio(const Rational& mean) { return mean / (1 + mean); }

}  // namespace

DiscreteLaw DiscreteLaw::finite(std::vector<Rational> pmf) {
    Rational total = 0;
    for (const Rational& p : pmf) {
        if (p < 0) throw std::invalid_argument("negative probability");
        total += p;
    }
    if (total != 1) throw std::invalid_argument("probabilities must sum to 1");
    while (!pmf.empty() && pmf.back() == 0) pmf.pop_back();
    DiscreteLaw law;
    law.pmf_ = std::move(pmf);
    law.mean_ = 0;
    for (std::size_t v = 0; v < law.pmf_.size(); ++v) law.mean_ += law.pmf_[v] * v;
    return law;
}

DiscreteLaw DiscreteLaw::point_mass(std::size_t value) {
    std::vector<Rational> pmf(value + 1, Rational(0));
    pmf[value] = 1;
    return finite(std::move(pmf));
}

DiscreteLaw DiscreteLaw::geometric(const Rational& mean) {
    if (mean <= 0) throw std::invalid_argument("geometric law needs a positive mean");
    DiscreteLaw law;
    law.geometric_ = true;
    law.mean_ = mean;
    return law;
}

std::size_t DiscreteLaw::support_max() const { return geometric_ ? npos : pmf_.size() - 1; }

Rational DiscreteLaw::pmf(std::size_t k) const {
    if (geometric_) {
        const Rational p = geometric_ratio(mean_);
        return (1 - p) * power(p, k);
    }
    return k < pmf_.size() ? pmf_[k] : Rational(0);
}

Rational DiscreteLaw::tail(std::size_t k) const {
    if (geometric_) return power(geometric_ratio(mean_), k);
    Rational out = 0;
    for (std::size_t v = k; v < pmf_.size(); ++v) out += pmf_[v];
    return out;
}

Rational DiscreteLaw::tail_sum(std::size_t k) const {
    if (geometric_) return (1 + mean_) * power(geometric_ratio(mean_), k);
    Rational out = 0;
    for (std::size_t v = k; v < pmf_.size(); ++v) out += pmf_[v] * (v - k + 1);
    return out;
}

Rational DiscreteLaw::mean() const { return mean_; }

double DiscreteLaw::expect(const std::function<double(double)>& phi) const {
    if (!geometric_) {
        double sum = 0.0;
        for (std::size_t v = 0; v < pmf_.size(); ++v) {
            if (pmf_[v] != 0) sum += to_double(pmf_[v]) * phi(static_cast<double>(v));
        }
        return sum;
    }
    const double p = to_double(geometric_ratio(mean_));
    double weight = 1.0 - p;  // P(Y = k)
    double beyond = p;        // P(Y > k)
    double sum = 0.0;
    for (std::size_t k = 0; k < 100'000'000; ++k) {
        const double term = weight * phi(static_cast<double>(k));
        sum += term;
        weight *= p;
        beyond *= p;
        if (beyond < 1e-20 && std::abs(term) <= 1e-18 * std::max(1.0, std::abs(sum))) break;
    }
    return sum;
}

Rational ExactDistribution::mean() const {
    Rational m = 0;
    for (std::size_t v = 0; v < pmf.size(); ++v) m += pmf[v] * v;
    return m;
}

Rational ExactDistribution::tail(std::size_t k) const {
    Rational t = 0;
    for (std::size_t v = k; v < pmf.size(); ++v) t += pmf[v];
    return t;
}

namespace {

constexpr std::size_t kMaxExactN = 9;

// Enumerates magnitude orders and sign patterns of steps 2..n. `visit`
// receives argmax[i][j] (largest step among i+1..j, positions 1-based) and
// the sign mask (bit s set when step s is up).
template <class Visit>
void enumerate_walks(std::size_t n, Visit&& visit) {
    const std::size_t steps = n - 1;
    std::array<std::size_t, kMaxExactN + 1> rank{};  // rank[s] of step s >= 2
    std::vector<std::size_t> order(steps);
    std::iota(order.begin(), order.end(), 0);
    std::array<std::array<std::size_t, kMaxExactN + 1>, kMaxExactN + 1> argmax{};
    do {
        for (std::size_t s = 0; s < steps; ++s) rank[s + 2] = order[s];
        for (std::size_t i = 1; i <= n; ++i) {
            std::size_t best = 0;
            for (std::size_t j = i + 1; j <= n; ++j) {
                if (best == 0 || rank[j] > rank[best]) best = j;
                argmax[i][j] = best;
            }
        }
        for (std::uint32_t mask = 0; mask < (1u << steps); ++mask) {
            visit(argmax, static_cast<std::uint32_t>(mask << 2));
        }
    } while (std::next_permutation(order.begin(), order.end()));
}

template <class Table>
std::size_t small_lis(const Table& argmax, std::uint32_t up, std::size_t n) {
    std::array<std::size_t, kMaxExactN + 1> best{};
    std::size_t overall = 0;
    for (std::size_t j = 1; j <= n; ++j) {
        best[j] = 1;
        for (std::size_t i = 1; i < j; ++i) {
            if ((up >> argmax[i][j]) & 1u) best[j] = std::max(best[j], best[i] + 1);
        }
        overall = std::max(overall, best[j]);
    }
    return overall;
}

template <class Table>
std::size_t small_greedy(const Table& argmax, std::uint32_t up, std::size_t first, std::size_t last) {
    if (first == last) return 1;
    const std::size_t s = argmax[first][last];
    if ((up >> s) & 1u) return small_greedy(argmax, up, first, s - 1) + small_greedy(argmax, up, s, last);
    if (s - first >= last - s + 1) return small_greedy(argmax, up, first, s - 1);
    return small_greedy(argmax, up, s, last);
}

ExactDistribution from_counts(std::size_t n, const std::vector<std::uint64_t>& counts) {
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    ExactDistribution d;
    d.n = n;
    d.pmf.resize(n + 1);
    for (std::size_t v = 0; v <= n; ++v) d.pmf[v] = Rational(counts[v]) / Rational(total);
    return d;
}

}  // namespace

ExactDistribution exact_lis_distribution(std::size_t n) {
    if (n < 2 || n > kMaxExactN) throw std::out_of_range("exact_lis_distribution supports 2 <= n <= 9");
    std::vector<std::uint64_t> counts(n + 1, 0);
    enumerate_walks(n, [&](const auto& argmax, std::uint32_t up) { ++counts[small_lis(argmax, up, n)]; });
    return from_counts(n, counts);
}

ExactDistribution exact_greedy_distribution(std::size_t n) {
    if (n < 1 || n > kMaxExactN) throw std::out_of_range("exact_greedy_distribution supports 1 <= n <= 9");
    if (n == 1) return {1, {Rational(0), Rational(1)}};
    std::vector<std::uint64_t> counts(n + 1, 0);
    enumerate_walks(n, [&](const auto& argmax, std::uint32_t up) { ++counts[small_greedy(argmax, up, 1, n)]; });
    return from_counts(n, counts);
}

std::vector<double> greedy_mean_dp(std::size_t n_max) {
    if (n_max < 1) throw std::invalid_argument("greedy_mean_dp needs n_max >= 1");
    // The sum over split points k of z_{max(k-1, n-k+1)} visits each
    // m in (n/2, n-1] twice and m = n/2 once.
    std::vector<double> z(n_max + 1, 0.0);
    std::vector<double> prefix(n_max + 1, 0.0);
    z[1] = 1.0;
    prefix[1] = 1.0;
    for (std::size_t n = 2; n <= n_max; ++n) {
        const std::size_t half_up = (n + 1) / 2;
        const double both_sides = 2.0 * prefix[n - 1];
        double longer = 2.0 * (prefix[n - 1] - prefix[half_up - 1]);
        if (n % 2 == 0) longer -= z[n / 2];
        z[n] = (0.5 * both_sides + 0.5 * longer) / static_cast<double>(n - 1);
        prefix[n] = prefix[n - 1] + z[n];
    }
    return z;
}

std::vector<Rational> greedy_mean_dp_exact(std::size_t n_max) {
    if (n_max < 1) throw std::invalid_argument("greedy_mean_dp_exact needs n_max >= 1");
    std::vector<Rational> z(n_max + 1, Rational(0));
    z[1] = 1;
    for (std::size_t n = 2; n <= n_max; ++n) {
        Rational sum = 0;
        for (std::size_t k = 2; k <= n; ++k) {
            sum += (z[k - 1] + z[n - k + 1]) / 2 + z[std::max(k - 1, n - k + 1)] / 2;
        }
        z[n] = sum / (n - 1);
    }
    return z;
}

namespace {

DiscreteLaw lis_law(std::size_t k) {
    if (k == 1) return DiscreteLaw::point_mass(1);
    return exact_lis_distribution(k).law();
}

Rational expected_max(const DiscreteLaw& x, const DiscreteLaw& y) {
    const std::size_t top = std::max(x.support_max(), y.support_max());
    Rational sum = 0;
    for (std::size_t j = 1; j <= top; ++j) sum += 1 - (1 - x.tail(j)) * (1 - y.tail(j));
    return sum;
}

}  // namespace

Rational lis_mean_recursion_rhs(std::size_t n) {
    if (n < 2 || n > kMaxExactN + 1) throw std::out_of_range("lis_mean_recursion_rhs supports 2 <= n <= 10");
    std::vector<DiscreteLaw> laws;
    laws.reserve(n);
    laws.push_back(DiscreteLaw::point_mass(0));
    for (std::size_t k = 1; k < n; ++k) laws.push_back(lis_law(k));
    Rational means = 0;
    Rational maxes = 0;
    for (std::size_t k = 2; k <= n; ++k) {
        means += laws[k - 1].mean() + laws[n - k + 1].mean();
        maxes += expected_max(laws[k - 1], laws[n - k + 1]);
    }
    return (means + maxes) / (2 * (n - 1));
}

bool is_nbu(const DiscreteLaw& law) {
    const std::size_t top = law.is_geometric() ? 64 : law.support_max() + 1;
    for (std::size_t a = 1; a <= top; ++a) {
        for (std::size_t b = 1; a + b <= top + 1; ++b) {
            if (law.tail(a + b) > law.tail(a) * law.tail(b)) return false;
        }
    }
    return true;
}

TailSums tail_sums(const DiscreteLaw& law, std::size_t upto) {
    TailSums ts;
    ts.mu = law.mean();
    const DiscreteLaw geo = DiscreteLaw::geometric(ts.mu);
    for (std::size_t n = 0; n < upto; ++n) {
        ts.a.push_back(law.tail(n));
        ts.A.push_back(law.tail_sum(n));
        ts.g.push_back(geo.tail(n));
        ts.G.push_back(geo.tail_sum(n));
    }
    return ts;
}

DominationReport check_tail_domination(const DiscreteLaw& law) {
    if (law.mean() <= 0) throw std::invalid_argument("tail domination needs a positive mean");
    const std::size_t upto = law.is_geometric() ? 64 : law.support_max() + 2;
    const TailSums ts = tail_sums(law, upto);
    DominationReport r;
    r.passed = true;
    r.checked = upto;
    r.max_gap = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < upto; ++n) {
        r.max_gap = std::max(r.max_gap, to_double(ts.A[n] - ts.G[n]));
        if (ts.A[n] > ts.G[n]) r.passed = false;
    }
    return r;
}

ConvexReport check_convex_domination(const DiscreteLaw& law, const std::function<double(double)>& phi) {
    const std::size_t window = law.is_geometric() ? 256 : std::max<std::size_t>(law.support_max() + 2, 256);
    for (std::size_t k = 0; k < window; ++k) {
        const double f0 = phi(k), f1 = phi(k + 1), f2 = phi(k + 2);
        const double scale = std::abs(f0) + std::abs(f1) + std::abs(f2) + 1.0;
        if (f2 - 2.0 * f1 + f0 < -1e-12 * scale) throw std::invalid_argument("phi is not convex on the integers");
    }
    ConvexReport r;
    r.lhs = law.expect(phi);
    r.rhs = DiscreteLaw::geometric(law.mean()).expect(phi);
    r.passed = r.lhs <= r.rhs + 1e-12 * std::max(1.0, std::abs(r.rhs));
    return r;
}

QuantileReport check_quantile_bound(const DiscreteLaw& law, const Rational& q) {
    QuantileReport r;
    r.mean = law.mean();
    if (q <= 0) {
        r.epsilon = 0;
        return r;
    }
    using boost::multiprecision::cpp_int;
    const cpp_int num = boost::multiprecision::numerator(q);
    const cpp_int den = boost::multiprecision::denominator(q);
    const cpp_int ceiling = (num + den - 1) / den;
    r.epsilon = 1 - law.tail(ceiling.convert_to<std::size_t>());
    if (r.epsilon == 0) return r;
    r.bound = q / r.epsilon;
    r.status = r.mean <= r.bound ? CheckStatus::Passed : CheckStatus::Failed;
    return r;
}

Rational min_nbu_bound(const Rational& a, const Rational& b) { return a * b / (a + b + 1); }

Rational expected_min(const DiscreteLaw& x1, const DiscreteLaw& x2) {
    if (x1.is_geometric() && x2.is_geometric()) {
        const Rational r = geometric_ratio(x1.mean()) * geometric_ratio(x2.mean());
        return r / (1 - r);
    }
    const std::size_t top = std::min(x1.support_max(), x2.support_max());
    Rational sum = 0;
    for (std::size_t k = 1; k <= top; ++k) sum += x1.tail(k) * x2.tail(k);
    return sum;
}

MinReport check_min_bound(const DiscreteLaw& x1, const DiscreteLaw& x2) {
    MinReport r;
    r.expected_min = expected_min(x1, x2);
    r.bound = min_nbu_bound(x1.mean(), x2.mean());
    r.passed = r.expected_min >= r.bound;
    return r;
}

NbuSampleReport empirical_nbu_check(std::span<const std::uint32_t> samples, std::size_t a, std::size_t b) {
    if (samples.size() < 10'000) throw std::invalid_argument("empirical_nbu_check needs at least 10^4 samples");
    const double count = static_cast<double>(samples.size());
    auto freq = [&](std::size_t level) {
        std::size_t hits = 0;
        for (std::uint32_t v : samples) hits += v >= level;
        return static_cast<double>(hits) / count;
    };
    const double p_ab = freq(a + b);
    const double p_a = freq(a);
    const double p_b = freq(b);
    NbuSampleReport r;
    r.difference = p_ab - p_a * p_b;
    // Indicators of {L >= x} are nested, so E[I_x I_y] = P(L >= max(x, y)).
    const std::array<std::size_t, 3> levels{a + b, a, b};
    const std::array<double, 3> p{p_ab, p_a, p_b};
    const std::array<double, 3> grad{1.0, -p_b, -p_a};
    double variance = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const double joint = p[levels[i] >= levels[j] ? i : j];
            variance += grad[i] * grad[j] * (joint - p[i] * p[j]);
        }
    }
    r.stderr_ = std::sqrt(std::max(variance, 0.0) / count);
    if (r.difference == 0.0) {
        r.z = 0.0;
    } else if (r.stderr_ == 0.0) {
        r.z = r.difference > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    } else {
        r.z = r.difference / r.stderr_;
    }
    r.violation = r.difference > 0.0 && r.difference > 3.0 * r.stderr_;
    return r;
}

}  // namespace ultralis
