#pragma once

// Walk samplers: the Ultra-fat tailed walk (sign/magnitude representation
// with an O(1) partial-sum comparator), symmetric stable walks and a
// Gaussian baseline.
//
// Positions and steps are 1-based throughout: step k carries U_k and
// position t is the partial sum S_t = X_1 + ... + X_t.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ultralis/ordered_space.hpp"
#include "ultralis/rng.hpp"
#include "ultralis/sparse_table.hpp"

namespace ultralis {

enum class ModelKind { UltraFat, Stable, Gaussian };

struct Model {
    ModelKind kind = ModelKind::UltraFat;
    double alpha = 0.0;  // stability index, Stable only

    static Model ultrafat() { return {ModelKind::UltraFat, 0.0}; }
    static Model stable(double alpha);
    static Model gaussian() { return {ModelKind::Gaussian, 2.0}; }

    std::string name() const;
    /// Accepts "ultrafat", "gaussian" or "stable" (alpha taken from the argument).
    static Model parse(const std::string& name, double alpha);
};

/// Seed for replica `replica` at size n of a sweep keyed by `master`.
std::uint64_t replica_seed(std::uint64_t master, std::uint64_t n, std::uint64_t replica);

struct SplitPoint {
    std::size_t sigma;  // step index of the largest magnitude
    bool up;            // sign of that step
};

/// One realization of the Ultra-fat tailed walk. A cheap handle onto
/// immutable shared data.
class WalkSample {
public:
    /// signs[k] in {+1,-1}; magnitudes in (0,1), pairwise distinct.
    WalkSample(std::vector<std::int8_t> signs, std::vector<double> magnitudes);

    std::size_t size() const { return data_->signs.size(); }
    std::span<const std::int8_t> signs() const { return data_->signs; }
    std::span<const double> magnitudes() const { return data_->magnitudes; }
    int sign(std::size_t step) const { return data_->signs[step - 1]; }
    double magnitude(std::size_t step) const { return data_->magnitudes[step - 1]; }

    /// Step with the largest magnitude among steps first..last (1-based, inclusive).
    std::size_t argmax_step(std::size_t first, std::size_t last) const {
        return data_->rmq.argmax(first - 1, last - 1) + 1;
    }

    /// S_i < S_j, positions 1-based. Unchecked hot path for patience sorting.
    bool less(std::size_t i, std::size_t j) const {
        if (i == j) return false;
        if (i < j) return (data_->keys[data_->rmq.argmax(i, j - 1)] & 1u) != 0;
        return (data_->keys[data_->rmq.argmax(j, i - 1)] & 1u) == 0;
    }

    /// Explicit partial sum S_t as a module element (small t; for cross-checks).
    UltraElement partial_sum(std::size_t t) const;

    std::size_t rmq_bytes() const { return data_->rmq.memory_bytes(); }

private:
    struct Validated {};
    WalkSample(Validated, std::vector<std::int8_t> signs, std::vector<double> magnitudes);
    friend WalkSample sample_ultrafat(std::size_t n, std::uint64_t seed);

    struct Data {
        std::vector<std::int8_t> signs;
        std::vector<double> magnitudes;
        std::vector<std::uint64_t> keys;  // magnitude bits << 1 | (sign > 0)
        SparseTableArgmax rmq;
    };
    std::shared_ptr<const Data> data_;
};

/// Real-valued walk: increments and their running sums. Heavy tails make
/// rounded running sums swallow small steps after a large one, so every S_k
/// is also kept exactly as a floating-point expansion and near-ties are
/// settled on the expansions.
struct RealWalkSample {
    Model model;
    std::vector<double> increments;
    /// S_k rounded to double, at index k - 1.
    std::vector<double> partial_sums;
    /// S_k exactly: nonoverlapping components [offsets[k-1], offsets[k]) of
    /// `components`, increasing in magnitude.
    std::vector<double> components;
    std::vector<std::size_t> offsets;

    std::size_t size() const { return increments.size(); }

    bool less(std::size_t i, std::size_t j) const {
        const double a = partial_sums[i - 1];
        const double b = partial_sums[j - 1];
        const double margin = 1e-14 * std::max(std::abs(a), std::abs(b));
        if (b - a > margin) return true;
        if (a - b > margin) return false;
        return difference_sign(j, i) > 0;
    }

    /// Sign of S_j - S_i, exactly.
    int difference_sign(std::size_t j, std::size_t i) const;

    static RealWalkSample from_increments(Model model, std::vector<double> increments);
};

WalkSample sample_ultrafat(std::size_t n, std::uint64_t seed);

/// Order of S_i and S_j; throws std::out_of_range outside 1..n.
Ordering compare_partial_sums(const WalkSample& w, std::size_t i, std::size_t j);

/// Largest-magnitude step among 2..n and its sign; throws for n < 2.
SplitPoint sigma(const WalkSample& w, std::size_t n);

/// One symmetric alpha-stable variate (Chambers-Mallows-Stuck, unit scale;
/// alpha = 2 gives N(0, 2)).
double stable_variate(double alpha, CounterRng& rng);

RealWalkSample sample_stable(std::size_t n, double alpha, std::uint64_t seed);
RealWalkSample sample_gaussian(std::size_t n, std::uint64_t seed);
RealWalkSample sample_real(const Model& model, std::size_t n, std::uint64_t seed);

/// Fraction of samples with W_n > Z_n - W_n, where W_n is the largest and
/// Z_n the total increment magnitude over the first n steps.
double tail_dominance(std::span<const RealWalkSample> samples, std::size_t n);

/// Debug dump with columns k,sign,magnitude.
void write_walk_csv(std::ostream& out, const WalkSample& w);

}  // namespace ultralis
