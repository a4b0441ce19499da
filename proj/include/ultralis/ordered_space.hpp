#pragma once

// Free Z-module over generators indexed by reals in (0,1), ordered
// lexicographically from the largest generator down.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ultralis {

enum class Ordering { Less, Equal, Greater };

inline Ordering reverse(Ordering o) {
    if (o == Ordering::Less) return Ordering::Greater;
    if (o == Ordering::Greater) return Ordering::Less;
    return Ordering::Equal;
}

/// Index of one generator of the module. Identity is bitwise equality of
/// the stored double; for values in (0,1) the bit pattern orders the same
/// way as the value.
class GeneratorId {
public:
    explicit GeneratorId(double value);

    double value() const { return value_; }
    std::uint64_t bits() const;

    friend bool operator==(GeneratorId a, GeneratorId b) { return a.bits() == b.bits(); }
    friend std::strong_ordering operator<=>(GeneratorId a, GeneratorId b) {
        return a.bits() <=> b.bits();
    }

private:
    double value_;
};

struct Term {
    GeneratorId generator;
    std::int64_t coefficient;
};

/// Finite integer combination of generators. Terms are kept sorted by
/// descending generator with no zero coefficients, so the zero element has
/// no terms.
class UltraElement {
public:
    UltraElement() = default;

    /// coefficient * g(index)
    static UltraElement generator(double index, std::int64_t coefficient = 1);
    /// Builds from arbitrary (index, coefficient) pairs; duplicates are summed.
    static UltraElement from_terms(std::span<const std::pair<double, std::int64_t>> terms);

    /// Parses the debug form, e.g. `2*g(0.3)+-1*g(0.5)` or `0`.
    static UltraElement parse(std::string_view text);
    std::string to_string() const;

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Largest generator with a nonzero coefficient; 0 for the zero element.
    double degree() const { return terms_.empty() ? 0.0 : terms_.front().generator.value(); }
    std::int64_t leading_coefficient() const {
        return terms_.empty() ? 0 : terms_.front().coefficient;
    }
    std::int64_t coefficient(double index) const;

    /// Sign of the element: sign of the coefficient at its degree.
    int signum() const;

    friend UltraElement operator+(const UltraElement& a, const UltraElement& b);
    friend UltraElement operator-(const UltraElement& a);
    friend UltraElement operator-(const UltraElement& a, const UltraElement& b) { return a + (-b); }
    UltraElement& operator+=(const UltraElement& other) { return *this = *this + other; }

    friend bool operator==(const UltraElement& a, const UltraElement& b);
    friend std::strong_ordering operator<=>(const UltraElement& a, const UltraElement& b);

private:
    std::vector<Term> terms_;  // descending generator, nonzero coefficients
};

inline bool operator==(const Term& a, const Term& b) {
    return a.generator == b.generator && a.coefficient == b.coefficient;
}

UltraElement add(const UltraElement& a, const UltraElement& b);
UltraElement negate(const UltraElement& a);
Ordering compare(const UltraElement& a, const UltraElement& b);

}  // namespace ultralis
