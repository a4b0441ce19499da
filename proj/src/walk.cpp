#include "ultralis/walk.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "ultralis/rng.hpp"

namespace ultralis {

Model Model::stable(double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("stable index must lie in (0,2]");
    return {ModelKind::Stable, alpha};
}

std::string Model::name() const {
    switch (kind) {
        case ModelKind::UltraFat: return "ultrafat";
        case ModelKind::Stable: return "stable";
        case ModelKind::Gaussian: return "gaussian";
    }
    return "unknown";
}

Model Model::parse(const std::string& name, double alpha) {
    if (name == "ultrafat") return ultrafat();
    if (name == "gaussian") return gaussian();
    if (name == "stable") return stable(alpha);
    throw std::invalid_argument("unknown model: " + name);
}

std::uint64_t replica_seed(std::uint64_t master, std::uint64_t n, std::uint64_t replica) {
    return CounterRng(master, {n, replica})();
}

namespace {

std::uint64_t make_key(double magnitude, int sign) {
    return (std::bit_cast<std::uint64_t>(magnitude) << 1) | (sign > 0 ? 1u : 0u);
}

// Steps whose magnitude repeats an earlier step's magnitude.
std::vector<std::size_t> collisions(std::span<const double> magnitudes) {
    std::vector<double> sorted(magnitudes.begin(), magnitudes.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) return {};
    std::vector<std::pair<double, std::size_t>> indexed(magnitudes.size());
    for (std::size_t i = 0; i < magnitudes.size(); ++i) indexed[i] = {magnitudes[i], i};
    std::sort(indexed.begin(), indexed.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < indexed.size(); ++i) {
        if (indexed[i].first == indexed[i - 1].first) out.push_back(indexed[i].second);
    }
    return out;
}

}  // namespace

WalkSample::WalkSample(std::vector<std::int8_t> signs, std::vector<double> magnitudes) {
    if (signs.size() != magnitudes.size()) throw std::invalid_argument("signs and magnitudes differ in length");
    if (signs.empty()) throw std::invalid_argument("walk must have at least one step");
    for (std::int8_t s : signs) {
        if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
    }
    for (double m : magnitudes) {
        if (!(m > 0.0 && m < 1.0)) throw std::invalid_argument("magnitudes must lie in (0,1)");
    }
    if (!collisions(magnitudes).empty()) throw std::invalid_argument("magnitudes must be pairwise distinct");
    *this = WalkSample(Validated{}, std::move(signs), std::move(magnitudes));
}

WalkSample::WalkSample(Validated, std::vector<std::int8_t> signs, std::vector<double> magnitudes) {
    auto data = std::make_shared<Data>();
    data->signs = std::move(signs);
    data->magnitudes = std::move(magnitudes);
    data->keys.resize(data->signs.size());
    for (std::size_t i = 0; i < data->keys.size(); ++i) data->keys[i] = make_key(data->magnitudes[i], data->signs[i]);
    data->rmq = SparseTableArgmax(data->keys);
    data_ = std::move(data);
}

UltraElement WalkSample::partial_sum(std::size_t t) const {
    if (t > size()) throw std::out_of_range("partial_sum position out of range");
    std::vector<std::pair<double, std::int64_t>> terms;
    terms.reserve(t);
    for (std::size_t k = 1; k <= t; ++k) terms.emplace_back(magnitude(k), sign(k));
    return UltraElement::from_terms(terms);
}

WalkSample sample_ultrafat(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("walk must have at least one step");
    CounterRng sign_rng(seed, {static_cast<std::uint64_t>(Stream::Signs)});
    CounterRng mag_rng(seed, {static_cast<std::uint64_t>(Stream::Magnitudes)});
    std::vector<std::int8_t> signs(n);
    std::vector<double> magnitudes(n);
    for (std::size_t k = 0; k < n; ++k) signs[k] = sign_rng.coin() ? 1 : -1;
    for (std::size_t k = 0; k < n; ++k) magnitudes[k] = mag_rng.uniform_open();
    CounterRng resample(seed, {static_cast<std::uint64_t>(Stream::Resample)});
    for (auto dup = collisions(magnitudes); !dup.empty(); dup = collisions(magnitudes)) {
        for (std::size_t k : dup) magnitudes[k] = resample.uniform_open();
    }
    return WalkSample(WalkSample::Validated{}, std::move(signs), std::move(magnitudes));
}

Ordering compare_partial_sums(const WalkSample& w, std::size_t i, std::size_t j) {
    if (i < 1 || j < 1 || i > w.size() || j > w.size()) throw std::out_of_range("position out of range");
    if (i == j) return Ordering::Equal;
    return w.less(i, j) ? Ordering::Less : Ordering::Greater;
}

SplitPoint sigma(const WalkSample& w, std::size_t n) {
    if (n < 2) throw std::invalid_argument("sigma needs n >= 2");
    if (n > w.size()) throw std::out_of_range("sigma prefix exceeds walk length");
    const std::size_t s = w.argmax_step(2, n);
    return {s, w.sign(s) > 0};
}

double stable_variate(double alpha, CounterRng& rng) {
    const double v = std::numbers::pi * (rng.uniform_open() - 0.5);
    if (alpha == 1.0) return std::tan(v);
    const double w = rng.exponential();
    return std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
}

namespace {

// Error-free transformations: s + e == a + b exactly.
inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double bv = s - a;
    const double av = s - bv;
    e = (a - av) + (b - bv);
}

inline void fast_two_sum(double a, double b, double& s, double& e) {  // |a| >= |b|
    s = a + b;
    e = b - (s - a);
}

// h = e + b with zero components dropped; e nonoverlapping, increasing.
void grow_expansion(std::span<const double> e, double b, std::vector<double>& h) {
    h.clear();
    double q = b;
    for (double c : e) {
        double s, err;
        two_sum(q, c, s, err);
        if (err != 0.0) h.push_back(err);
        q = s;
    }
    if (q != 0.0 || h.empty()) h.push_back(q);
}

// Shewchuk's compression: afterwards the largest component approximates the
// sum to within one ulp.
void compress(std::vector<double>& e, std::vector<double>& scratch) {
    const std::size_t m = e.size();
    if (m <= 1) return;
    scratch.assign(m, 0.0);
    std::size_t bottom = m - 1;
    double q = e[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
        double big, small;
        fast_two_sum(q, e[i], big, small);
        if (small != 0.0) {
            scratch[bottom--] = big;
            q = small;
        } else {
            q = big;
        }
    }
    scratch[bottom] = q;
    e.clear();
    q = scratch[bottom];
    for (std::size_t i = bottom + 1; i < m; ++i) {
        double big, small;
        fast_two_sum(scratch[i], q, big, small);
        if (small != 0.0) e.push_back(small);
        q = big;
    }
    e.push_back(q);
}

}  // namespace

RealWalkSample RealWalkSample::from_increments(Model model, std::vector<double> increments) {
    RealWalkSample w{model, std::move(increments), {}, {}, {}};
    const std::size_t n = w.increments.size();
    w.partial_sums.resize(n);
    w.offsets.reserve(n + 1);
    w.offsets.push_back(0);
    w.components.reserve(2 * n);
    std::vector<double> sum, next, scratch;
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(w.increments[k])) throw std::invalid_argument("increments must be finite");
        grow_expansion(sum, w.increments[k], next);
        compress(next, scratch);
        std::swap(sum, next);
        w.components.insert(w.components.end(), sum.begin(), sum.end());
        w.offsets.push_back(w.components.size());
        w.partial_sums[k] = sum.back();
    }
    return w;
}

int RealWalkSample::difference_sign(std::size_t j, std::size_t i) const {
    thread_local std::vector<double> acc, next;
    acc.assign(components.begin() + static_cast<std::ptrdiff_t>(offsets[j - 1]),
               components.begin() + static_cast<std::ptrdiff_t>(offsets[j]));
    for (std::size_t c = offsets[i - 1]; c < offsets[i]; ++c) {
        grow_expansion(acc, -components[c], next);
        std::swap(acc, next);
    }
    // Nonoverlapping: the largest component carries the sign.
    const double top = acc.back();
    return (top > 0.0) - (top < 0.0);
}

RealWalkSample sample_stable(std::size_t n, double alpha, std::uint64_t seed) {
    const Model model = Model::stable(alpha);
    CounterRng rng(seed, {static_cast<std::uint64_t>(Stream::Increments)});
    std::vector<double> inc(n);
    for (double& x : inc) x = stable_variate(alpha, rng);
    return RealWalkSample::from_increments(model, std::move(inc));
}

RealWalkSample sample_gaussian(std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed, {static_cast<std::uint64_t>(Stream::Increments)});
    std::vector<double> inc(n);
    for (double& x : inc) x = rng.normal();
    return RealWalkSample::from_increments(Model::gaussian(), std::move(inc));
}

RealWalkSample sample_real(const Model& model, std::size_t n, std::uint64_t seed) {
    switch (model.kind) {
        case ModelKind::Stable: return sample_stable(n, model.alpha, seed);
        case ModelKind::Gaussian: return sample_gaussian(n, seed);
        case ModelKind::UltraFat: break;
    }
    throw std::invalid_argument("ultrafat walks are not real-valued");
}

double tail_dominance(std::span<const RealWalkSample> samples, std::size_t n) {
    if (samples.empty()) throw std::invalid_argument("tail_dominance needs at least one sample");
    std::size_t hits = 0;
    for (const RealWalkSample& w : samples) {
        if (n > w.size()) throw std::out_of_range("walk shorter than n");
        double largest = 0.0;
        double total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double m = std::abs(w.increments[k]);
            largest = std::max(largest, m);
            total += m;
        }
        if (largest > total - largest) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(samples.size());
}

void write_walk_csv(std::ostream& out, const WalkSample& w) {
    out << "k,sign,magnitude\n";
    out.precision(17);
    for (std::size_t k = 1; k <= w.size(); ++k) out << k << ',' << w.sign(k) << ',' << w.magnitude(k) << '\n';
}

}  // namespace ultralis
