#include "ultralis/numerics.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include <boost/math/tools/roots.hpp>

namespace ultralis {

namespace {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

// 15-point Kronrod rule with the embedded 7-point Gauss rule; nodes are
// interior to [a, b].
Panel gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    static constexpr std::array<double, 8> xgk{
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0};
    static constexpr std::array<double, 8> wgk{
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr std::array<double, 4> wg{  // at xgk[1], xgk[3], xgk[5] and the center
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = wgk[7] * fc;
    double gauss = wg[3] * fc;
    for (std::size_t i = 0; i < 7; ++i) {
        const double pair = f(center - half * xgk[i]) + f(center + half * xgk[i]);
        kronrod += wgk[i] * pair;
        if (i % 2 == 1) gauss += wg[i / 2] * pair;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
    // Repeatedly bisect the panel with the largest error estimate.
    std::priority_queue<Panel> panels;
    panels.push(gauss_kronrod_15(f, a, b));
    double value = panels.top().value;
    double error = panels.top().error;
    constexpr std::size_t kMaxPanels = 20000;
    while (error > tol * std::abs(value) && error > 1e-15 * std::abs(b - a)) {
        if (panels.size() >= kMaxPanels) throw ConvergenceError("quadrature did not reach tolerance " + std::to_string(tol));
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = gauss_kronrod_15(f, worst.a, mid);
        const Panel right = gauss_kronrod_15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    if (!std::isfinite(value)) throw ConvergenceError("quadrature produced a non-finite value");
    // Re-sum to shed the drift of the running updates.
    value = 0.0;
    for (; !panels.empty(); panels.pop()) value += panels.top().value;
    return value;
}

double c_beta(double beta) {
    if (!(beta > -1.0)) throw std::invalid_argument("c_beta needs beta > -1");
    return (2.0 - std::exp2(-beta - 1.0)) / (beta + 1.0);
}

double c_beta_quadrature(double beta, double tol) {
    auto power = [beta](double x) { return std::pow(x, beta); };
    return integrate(power, 0.0, 1.0, tol) + integrate(power, 0.5, 1.0, tol);
}

namespace {

constexpr std::uintmax_t kMaxIterations = 400;

// Solves f = 0 on [lo, hi] where f changes sign. The returned bracket is a
// certified sign change around the root.
RootResult solve(const std::function<double(double)>& f, const std::function<double(double)>& derivative,
                 double lo, double hi, double tol, RootMethod method) {
    if (!(tol > 0.0)) throw std::invalid_argument("root tolerance must be positive");
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo * f_hi > 0.0) throw std::invalid_argument("root is not bracketed");
    RootResult r;
    std::uintmax_t iterations = kMaxIterations;
    if (method == RootMethod::Bisection) {
        auto width_ok = [tol](double a, double b) { return std::abs(b - a) <= tol; };
        const auto [a, b] = boost::math::tools::bisect(f, lo, hi, width_ok, iterations);
        r.root = 0.5 * (a + b);
        r.lo = a;
        r.hi = b;
    } else {
        auto f_df = [&](double x) { return std::make_pair(f(x), derivative(x)); };
        const int digits = std::min(std::numeric_limits<double>::digits,
                                    static_cast<int>(std::ceil(-std::log2(tol))) + 4);
        r.root = boost::math::tools::newton_raphson_iterate(f_df, 0.5 * (lo + hi), lo, hi, digits, iterations);
        r.lo = std::max(lo, r.root - tol);
        r.hi = std::min(hi, r.root + tol);
        if (f(r.lo) * f(r.hi) > 0.0) throw ConvergenceError("newton iterate is not inside a sign change");
    }
    r.iterations = static_cast<std::size_t>(iterations);
    r.residual = f(r.root);
    if (iterations >= kMaxIterations || !(std::abs(r.residual) < tol)) {
        throw ConvergenceError("root not resolved to tolerance " + std::to_string(tol));
    }
    return r;
}

}  // namespace

RootResult solve_beta0(double tol, RootMethod method) {
    auto f = [](double x) { return x + std::exp2(-1.0 - x) - 1.0; };
    auto df = [](double x) { return 1.0 - std::log(2.0) * std::exp2(-1.0 - x); };
    return solve(f, df, 0.0, 1.0, tol, method);
}

RootResult solve_c_beta_unit(double tol, RootMethod method) {
    auto f = [](double b) { return c_beta(b) - 1.0; };
    auto df = [](double b) {
        const double q = std::exp2(-b - 1.0);
        return (std::log(2.0) * q * (b + 1.0) - (2.0 - q)) / ((b + 1.0) * (b + 1.0));
    };
    return solve(f, df, 0.0, 1.0, tol, method);
}

double upper_functional(double beta, double quad_tol) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("upper_functional needs beta in [0,1]");
    auto integrand = [beta](double x) {
        const double a = std::pow(x, beta);
        const double b = std::pow(1.0 - x, beta);
        return a * b / (a + b);
    };
    return 2.0 / (1.0 + beta) - integrate(integrand, 0.0, 0.5, quad_tol);
}

RootResult solve_beta1(double tol, double quad_tol, RootMethod method) {
    if (!(quad_tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
    auto f = [quad_tol](double b) { return upper_functional(b, quad_tol) - 1.0; };
    auto df = [&f](double b) {
        const double h = 1e-5;
        const double lo = std::max(b - h, 1e-9);
        const double hi = std::min(b + h, 1.0);
        return (f(hi) - f(lo)) / (hi - lo);
    };
    return solve(f, df, 1e-3, 1.0, tol, method);
}

std::vector<double> iterate_lower_recursion(std::size_t n_max) {
    if (n_max < 2) throw std::invalid_argument("iterate_lower_recursion needs n_max >= 2");
    std::vector<double> l(n_max + 1, 0.0);
    std::vector<double> prefix(n_max + 1, 0.0);  // prefix[k] = l_1 + ... + l_k
    l[1] = 1.0;
    prefix[1] = 1.0;
    for (std::size_t n = 2; n <= n_max; ++n) {
        const std::size_t half_start = (n + 1) / 2;  // ceil(n/2)
        double upper_half = prefix[n - 1] - prefix[half_start - 1];
        if (n % 2 == 0) upper_half -= 0.5 * l[n / 2];
        l[n] = (prefix[n - 1] + upper_half) / static_cast<double>(n - 1);
        prefix[n] = prefix[n - 1] + l[n];
    }
    return l;
}

}  // namespace ultralis
