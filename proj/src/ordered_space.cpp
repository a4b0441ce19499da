#include "ultralis/ordered_space.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ultralis {

GeneratorId::GeneratorId(double value) : value_(value) {
    if (!(value > 0.0 && value < 1.0)) {
        throw std::invalid_argument("generator index must lie in (0,1)");
    }
}

std::uint64_t GeneratorId::bits() const { return std::bit_cast<std::uint64_t>(value_); }

UltraElement UltraElement::generator(double index, std::int64_t coefficient) {
    UltraElement e;
    GeneratorId id(index);
    if (coefficient != 0) e.terms_.push_back({id, coefficient});
    return e;
}

UltraElement UltraElement::from_terms(std::span<const std::pair<double, std::int64_t>> terms) {
    UltraElement e;
    e.terms_.reserve(terms.size());
    for (const auto& [index, coefficient] : terms) e.terms_.push_back({GeneratorId(index), coefficient});
    std::stable_sort(e.terms_.begin(), e.terms_.end(),
                     [](const Term& a, const Term& b) { return a.generator > b.generator; });
    std::vector<Term> merged;
    for (const Term& t : e.terms_) {
        if (!merged.empty() && merged.back().generator == t.generator) {
            merged.back().coefficient += t.coefficient;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const Term& t) { return t.coefficient == 0; });
    e.terms_ = std::move(merged);
    return e;
}

std::int64_t UltraElement::coefficient(double index) const {
    for (const Term& t : terms_) {
        if (t.generator.value() == index) return t.coefficient;
    }
    return 0;
}

int UltraElement::signum() const {
    if (terms_.empty()) return 0;
    return terms_.front().coefficient > 0 ? 1 : -1;
}

UltraElement operator+(const UltraElement& a, const UltraElement& b) {
    UltraElement out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->generator > ib->generator)) {
            out.terms_.push_back(*ia++);
        } else if (ia == a.terms_.end() || ib->generator > ia->generator) {
            out.terms_.push_back(*ib++);
        } else {
            const std::int64_t c = ia->coefficient + ib->coefficient;
            if (c != 0) out.terms_.push_back({ia->generator, c});
            ++ia;
            ++ib;
        }
    }
    return out;
}

UltraElement operator-(const UltraElement& a) {
    UltraElement out = a;
    for (Term& t : out.terms_) t.coefficient = -t.coefficient;
    return out;
}

bool operator==(const UltraElement& a, const UltraElement& b) { return a.terms_ == b.terms_; }

std::strong_ordering operator<=>(const UltraElement& a, const UltraElement& b) {
    // Walk both term lists from the top generator. The first place they
    // differ decides: a generator present on one side only contributes its
    // coefficient's sign, a shared generator compares coefficients.
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->generator > ib->generator)) {
            return ia->coefficient > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        if (ia == a.terms_.end() || ib->generator > ia->generator) {
            return ib->coefficient < 0 ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        if (ia->coefficient != ib->coefficient) return ia->coefficient <=> ib->coefficient;
        ++ia;
        ++ib;
    }
    return std::strong_ordering::equal;
}

std::string UltraElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i > 0) out += '+';
        out += std::to_string(terms_[i].coefficient);
        out += "*g(";
        auto res = std::to_chars(buf, buf + sizeof buf, terms_[i].generator.value());
        out.append(buf, res.ptr);
        out += ')';
    }
    return out;
}

UltraElement UltraElement::parse(std::string_view text) {
    auto fail = [&]() -> UltraElement {
        throw std::invalid_argument("malformed element: " + std::string(text));
    };
    if (text.empty()) return fail();
    if (text == "0") return {};
    std::vector<std::pair<double, std::int64_t>> terms;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(")", pos);
        if (end == std::string_view::npos) return fail();
        std::string_view term = text.substr(pos, end - pos + 1);
        std::size_t star = term.find("*g(");
        if (star == std::string_view::npos) return fail();
        std::int64_t coefficient = 0;
        double index = 0.0;
        auto c = std::from_chars(term.data(), term.data() + star, coefficient);
        if (c.ec != std::errc{} || c.ptr != term.data() + star) return fail();
        const char* first = term.data() + star + 3;
        const char* last = term.data() + term.size() - 1;
        auto g = std::from_chars(first, last, index);
        if (g.ec != std::errc{} || g.ptr != last) return fail();
        terms.emplace_back(index, coefficient);
        pos = end + 1;
        if (pos < text.size()) {
            if (text[pos] != '+') return fail();
            ++pos;
            if (pos == text.size()) return fail();
        }
    }
    return from_terms(terms);
}

UltraElement add(const UltraElement& a, const UltraElement& b) { return a + b; }
UltraElement negate(const UltraElement& a) { return -a; }

Ordering compare(const UltraElement& a, const UltraElement& b) {
    const auto c = a <=> b;
    if (c < 0) return Ordering::Less;
    if (c > 0) return Ordering::Greater;
    return Ordering::Equal;
}

}  // namespace ultralis
