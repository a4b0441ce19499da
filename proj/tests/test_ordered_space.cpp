#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ultralis/ordered_space.hpp"

using namespace ultralis;

namespace {

UltraElement g(double index, std::int64_t coefficient = 1) { return UltraElement::generator(index, coefficient); }

// Random element over a small generator pool so that ties in individual
// coordinates are common.
UltraElement random_element(std::mt19937_64& rng) {
    static const std::vector<double> pool{0.1, 0.25, 0.3, 0.5, 0.7, 0.9};
    std::uniform_int_distribution<int> count(0, 4), pick(0, static_cast<int>(pool.size()) - 1), coef(-3, 3);
    std::vector<std::pair<double, std::int64_t>> terms;
    for (int i = count(rng); i > 0; --i) terms.emplace_back(pool[pick(rng)], coef(rng));
    return UltraElement::from_terms(terms);
}

}  // namespace

TEST(GeneratorId, RejectsOutsideOpenUnitInterval) {
    EXPECT_THROW(GeneratorId(0.0), std::invalid_argument);
    EXPECT_THROW(GeneratorId(1.0), std::invalid_argument);
    EXPECT_THROW(GeneratorId(-0.5), std::invalid_argument);
    EXPECT_THROW(GeneratorId(std::nan("")), std::invalid_argument);
    EXPECT_NO_THROW(GeneratorId(0.5));
}

TEST(UltraElement, AddExamples) {
    EXPECT_TRUE(add(g(0.7), g(0.7, -1)).is_zero());
    const UltraElement a = g(0.3, 2) + g(0.5);
    EXPECT_EQ(add(a, UltraElement{}), a);
    EXPECT_EQ(add(a, g(0.5, -1)), g(0.3, 2));
}

TEST(UltraElement, NegateExamples) {
    EXPECT_TRUE(negate(UltraElement{}).is_zero());
    EXPECT_EQ(negate(g(0.2, 3)), g(0.2, -3));
    const UltraElement a = g(0.3, 2) + g(0.8, -5);
    EXPECT_EQ(negate(negate(a)), a);
}

TEST(UltraElement, CompareExamples) {
    EXPECT_EQ(compare(g(0.9), g(0.5, 3)), Ordering::Greater);
    EXPECT_EQ(compare(g(0.5) + g(0.2), g(0.5)), Ordering::Greater);
    EXPECT_EQ(compare(g(0.8, -1), g(0.1, 5)), Ordering::Less);
    EXPECT_EQ(compare(UltraElement{}, UltraElement{}), Ordering::Equal);
    EXPECT_EQ(compare(g(0.4, -1), UltraElement{}), Ordering::Less);
}

TEST(UltraElement, NoMultipleOfSmallerGeneratorExceedsLarger) {
    for (std::int64_t k : {1, 10, 1000, 1000000000}) {
        EXPECT_EQ(compare(g(0.5000001), g(0.5, k)), Ordering::Greater) << k;
    }
}

TEST(UltraElement, DegreeAndCanonicalForm) {
    EXPECT_EQ(UltraElement{}.degree(), 0.0);
    const UltraElement a = g(0.3, 2) + g(0.6, -1);
    EXPECT_EQ(a.degree(), 0.6);
    EXPECT_EQ(a.leading_coefficient(), -1);
    EXPECT_EQ(a.signum(), -1);
    const UltraElement b = add(a, UltraElement{});
    for (const Term& t : b.terms()) EXPECT_NE(t.coefficient, 0);
    const UltraElement c = add(a, g(0.6));
    ASSERT_EQ(c.terms().size(), 1u);
    EXPECT_EQ(c.degree(), 0.3);
}

TEST(UltraElement, FromTermsMergesDuplicates) {
    const std::vector<std::pair<double, std::int64_t>> terms{{0.4, 2}, {0.2, 1}, {0.4, -2}, {0.2, 4}};
    EXPECT_EQ(UltraElement::from_terms(terms), g(0.2, 5));
}

TEST(UltraElement, TextFormat) {
    EXPECT_EQ(UltraElement{}.to_string(), "0");
    EXPECT_TRUE(UltraElement::parse("0").is_zero());
    const UltraElement a = UltraElement::parse("2*g(0.3)+-1*g(0.5)");
    EXPECT_EQ(a, g(0.3, 2) + g(0.5, -1));
    EXPECT_EQ(UltraElement::parse(a.to_string()), a);
    EXPECT_THROW(UltraElement::parse("2*g(1.5)"), std::invalid_argument);
    EXPECT_THROW(UltraElement::parse("2*h(0.5)"), std::invalid_argument);
    EXPECT_THROW(UltraElement::parse(""), std::invalid_argument);
}

TEST(UltraElementProperty, TextRoundTrip) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        std::vector<std::pair<double, std::int64_t>> terms;
        for (int k = 0; k < 4; ++k) terms.emplace_back(u(rng), static_cast<std::int64_t>(rng() % 2001) - 1000);
        const UltraElement a = UltraElement::from_terms(terms);
        EXPECT_EQ(UltraElement::parse(a.to_string()), a) << a.to_string();
    }
}

TEST(UltraElementProperty, TotalAntisymmetricTransitive) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 3000; ++i) {
        const UltraElement a = random_element(rng), b = random_element(rng), c = random_element(rng);
        const Ordering ab = compare(a, b);
        EXPECT_EQ(compare(b, a), reverse(ab));
        EXPECT_EQ(ab == Ordering::Equal, a == b);
        if (ab != Ordering::Greater && compare(b, c) != Ordering::Greater) {
            EXPECT_NE(compare(a, c), Ordering::Greater);
        }
    }
}

TEST(UltraElementProperty, OrderRespectsAddition) {
    std::mt19937_64 rng(2);
    int checked = 0;
    for (int i = 0; i < 5000; ++i) {
        UltraElement a = random_element(rng), b = random_element(rng);
        UltraElement c = random_element(rng), d = random_element(rng);
        if (compare(a, b) == Ordering::Less) std::swap(a, b);
        if (compare(c, d) == Ordering::Less) std::swap(c, d);
        if (compare(a, b) != Ordering::Greater) continue;
        ++checked;
        EXPECT_NE(compare(add(a, c), add(b, d)), Ordering::Less);
        EXPECT_EQ(compare(add(a, c), add(b, d)), Ordering::Greater);
    }
    EXPECT_GT(checked, 1000);
}

TEST(UltraElementProperty, CompareMatchesSignOfDifference) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 3000; ++i) {
        const UltraElement a = random_element(rng), b = random_element(rng);
        EXPECT_EQ(compare(a, b), compare(add(a, negate(b)), UltraElement{}));
        EXPECT_TRUE(add(a, negate(a)).is_zero());
    }
}
