#pragma once

// Longest increasing subsequence over a walk's partial sums, for any walk
// exposing a strict order on positions. Patience sorting keeps pile tops as
// positions; equal partial sums never extend a pile.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ultralis/walk.hpp"

namespace ultralis {

template <class W>
concept OrderedWalk = requires(const W& w, std::size_t i) {
    { w.size() } -> std::convertible_to<std::size_t>;
    { w.less(i, i) } -> std::same_as<bool>;
};

struct LisResult {
    /// lengths[t] = L(t) for t = 0..n, with L(0) = 0.
    std::vector<std::uint32_t> lengths;
    /// Positions of one longest increasing subsequence, ascending.
    std::optional<std::vector<std::size_t>> witness;

    std::size_t n() const { return lengths.empty() ? 0 : lengths.size() - 1; }
    std::size_t length() const { return lengths.empty() ? 0 : lengths.back(); }
};

struct FirstPassage {
    /// times[l] = T(l) for l = 1..max length; times[0] is unused and 0.
    std::vector<std::size_t> times;

    std::size_t max_length() const { return times.empty() ? 0 : times.size() - 1; }
    std::optional<std::size_t> time(std::size_t length) const {
        if (length == 0 || length >= times.size()) return std::nullopt;
        return times[length];
    }
};

/// Pile tops of patience sorting under an arbitrary strict order.
template <class Less>
class PatienceSorter {
public:
    explicit PatienceSorter(Less less) : less_(std::move(less)) {}

    /// Inserts position j; returns its 0-based pile index.
    std::size_t push(std::size_t j) {
        auto it = std::lower_bound(tops_.begin(), tops_.end(), j,
                                   [this](std::size_t top, std::size_t x) { return less_(top, x); });
        const auto pile = static_cast<std::size_t>(it - tops_.begin());
        if (it == tops_.end()) {
            tops_.push_back(j);
        } else {
            *it = j;
        }
        return pile;
    }

    std::size_t piles() const { return tops_.size(); }
    const std::vector<std::size_t>& tops() const { return tops_; }

    void reserve(std::size_t n) { tops_.reserve(n); }

private:
    Less less_;
    std::vector<std::size_t> tops_;
};

template <class Less>
PatienceSorter(Less) -> PatienceSorter<Less>;

/// L(t) for t = 1..n and optionally one witness subsequence.
template <OrderedWalk W>
LisResult lis_trajectory(const W& w, std::size_t n, bool with_witness = false) {
    if (n > w.size()) throw std::out_of_range("lis_trajectory: n exceeds walk length");
    LisResult out;
    out.lengths.assign(n + 1, 0);
    PatienceSorter piles([&w](std::size_t a, std::size_t b) { return w.less(a, b); });
    std::vector<std::size_t> predecessor;
    if (with_witness) predecessor.assign(n + 1, 0);
    for (std::size_t t = 1; t <= n; ++t) {
        const std::size_t pile = piles.push(t);
        if (with_witness) predecessor[t] = pile == 0 ? 0 : piles.tops()[pile - 1];
        out.lengths[t] = static_cast<std::uint32_t>(piles.piles());
    }
    if (with_witness) {
        std::vector<std::size_t> witness;
        for (std::size_t p = piles.piles() == 0 ? 0 : piles.tops().back(); p != 0; p = predecessor[p]) {
            witness.push_back(p);
        }
        std::reverse(witness.begin(), witness.end());
        out.witness = std::move(witness);
    }
    return out;
}

/// LIS length of positions first..last (1-based, inclusive); 0 if empty.
template <OrderedWalk W>
std::size_t lis_length(const W& w, std::size_t first, std::size_t last) {
    if (last > w.size()) throw std::out_of_range("lis_length: range exceeds walk length");
    PatienceSorter piles([&w](std::size_t a, std::size_t b) { return w.less(a, b); });
    for (std::size_t t = first; t <= last; ++t) piles.push(t);
    return piles.piles();
}

/// L(m, n): LIS of positions m+1..n, the initial element S_m excluded.
template <OrderedWalk W>
std::size_t lis_subinterval(const W& w, std::size_t m, std::size_t n) {
    if (m >= n) throw std::invalid_argument("lis_subinterval requires m < n");
    return lis_length(w, m + 1, n);
}

/// suffix[s] = LIS of positions s+1..n for s = 0..n (suffix[n] = 0).
template <OrderedWalk W>
std::vector<std::uint32_t> suffix_lis_lengths(const W& w, std::size_t n) {
    if (n > w.size()) throw std::out_of_range("suffix_lis_lengths: n exceeds walk length");
    // Read backwards, an increasing run becomes a decreasing one.
    PatienceSorter piles([&w](std::size_t a, std::size_t b) { return w.less(b, a); });
    std::vector<std::uint32_t> suffix(n + 1, 0);
    for (std::size_t t = n; t >= 1; --t) {
        piles.push(t);
        suffix[t - 1] = static_cast<std::uint32_t>(piles.piles());
    }
    return suffix;
}

FirstPassage first_passage(const LisResult& lr);

/// Components of the split identity at n for the Ultra-fat walk.
struct SplitCheck {
    std::size_t n = 0;
    std::size_t sigma = 0;
    bool up = false;
    std::size_t lis_before = 0;  // L(sigma - 1)
    std::size_t lis_after = 0;   // L(sigma - 1, n)
    std::size_t lis_total = 0;   // L(n)
    bool holds = false;
};

SplitCheck verify_split_recursion(const WalkSample& w, std::size_t n);

/// L(s+t) <= L(s) + L(t) o theta^s on this walk.
template <OrderedWalk W>
bool verify_subadditivity(const W& w, std::size_t s, std::size_t t) {
    if (s < 1 || t < 1) throw std::invalid_argument("verify_subadditivity requires s, t >= 1");
    return lis_length(w, 1, s + t) <= lis_length(w, 1, s) + lis_length(w, s + 1, s + t);
}

/// Number of splits s in 1..n-1 violating L(n) <= L(s) + L(n-s) o theta^s.
template <OrderedWalk W>
std::size_t count_subadditivity_violations(const W& w, std::size_t n) {
    const LisResult prefix = lis_trajectory(w, n);
    const auto suffix = suffix_lis_lengths(w, n);
    std::size_t violations = 0;
    for (std::size_t s = 1; s < n; ++s) {
        if (prefix.lengths[n] > prefix.lengths[s] + suffix[s]) ++violations;
    }
    return violations;
}

/// Number of pairs (l, m) with l + m <= L(n) violating
/// T(l+m) >= T(l) + T(m) o theta^{T(l)}.
///
/// The inequality for (l, m) is equivalent to an increasing run of length m
/// inside positions T(l)+1..T(l+m). The patience predecessor chain ending at
/// T(l+m) is checked as such a certificate for every l at once; pairs whose
/// certificate fails are recomputed directly from the shifted walk.
template <OrderedWalk W>
std::size_t count_superadditivity_violations(const W& w, std::size_t n) {
    if (n > w.size()) throw std::out_of_range("count_superadditivity_violations: n exceeds walk length");
    PatienceSorter piles([&w](std::size_t a, std::size_t b) { return w.less(a, b); });
    std::vector<std::size_t> predecessor(n + 1, 0);
    std::vector<std::size_t> times{0};  // times[l] = T(l)
    for (std::size_t t = 1; t <= n; ++t) {
        const std::size_t pile = piles.push(t);
        predecessor[t] = pile == 0 ? 0 : piles.tops()[pile - 1];
        if (pile + 1 == times.size()) times.push_back(t);
    }
    const std::size_t top = times.size() - 1;

    std::vector<std::size_t> chain;
    std::vector<std::pair<std::size_t, std::size_t>> pending;  // (l, m)
    for (std::size_t k = 2; k <= top; ++k) {
        chain.assign(1, times[k]);
        while (predecessor[chain.back()] != 0) chain.push_back(predecessor[chain.back()]);
        std::reverse(chain.begin(), chain.end());  // chain[i] is element i+1
        // valid_from = smallest i such that chain[i..k-1] is increasing.
        std::size_t valid_from = chain.size() - 1;
        while (valid_from > 0 && chain[valid_from - 1] < chain[valid_from] &&
               w.less(chain[valid_from - 1], chain[valid_from])) {
            --valid_from;
        }
        const bool whole = chain.size() == k;
        for (std::size_t l = 1; l < k; ++l) {
            // Elements l+1..k are chain[l..k-1].
            if (!(whole && valid_from <= l && chain[l] > times[l])) pending.emplace_back(l, k - l);
        }
    }

    std::sort(pending.begin(), pending.end());
    std::size_t violations = 0;
    std::size_t current = 0;
    std::vector<std::size_t> shifted;  // shifted[m] = T(m) o theta^{T(l)}
    for (const auto& [l, m] : pending) {
        if (l != current) {
            current = l;
            const std::size_t start = times[l];
            PatienceSorter fresh([&w](std::size_t a, std::size_t b) { return w.less(a, b); });
            shifted.assign(1, 0);
            for (std::size_t q = start + 1; q <= n && shifted.size() <= top - l; ++q) {
                const std::size_t before = fresh.piles();
                fresh.push(q);
                if (fresh.piles() > before) shifted.push_back(q - start);
            }
        }
        if (m >= shifted.size() || times[l + m] < times[l] + shifted[m]) ++violations;
    }
    return violations;
}

/// Length of the greedy increasing subsequence of positions 1..n: split at
/// the largest step; keep both sides on an up step, only the longer side
/// (left on ties) on a down step.
std::size_t greedy_length(const WalkSample& w, std::size_t n);

}  // namespace ultralis
