#include <doctest.h>

#include <set>
#include <stdexcept>

#include "fibcmv/fib_words.hpp"

using namespace fibcmv::words;

TEST_CASE("fibonacci numbers F_1=1, F_2=2") {
    CHECK(fib_number(1) == 1);
    CHECK(fib_number(2) == 2);
    CHECK(fib_number(3) == 3);
    CHECK(fib_number(8) == 34);
    CHECK(fib_number(10) == 89);
    for (int k = 2; k <= 20; ++k)
        CHECK(fib_number(k + 1) == fib_number(k) + fib_number(k - 1));
}

TEST_CASE("substitution a->ab, b->a") {
    CHECK(substitute("a") == "ab");
    CHECK(substitute("b") == "a");
    CHECK(substitute("aba") == "abaab");
    CHECK_THROWS_AS(substitute("ax"), std::invalid_argument);
}

TEST_CASE("fib_word iterates the substitution") {
    CHECK(fib_word(0) == "a");
    CHECK(fib_word(1) == "ab");
    CHECK(fib_word(2) == "aba");
    CHECK(fib_word(5) == "abaababaabaab");
    for (int k = 0; k <= 15; ++k)
        CHECK(static_cast<long long>(fib_word(k).size()) == fib_number(k + 1));
    for (int k = 2; k <= 12; ++k)
        CHECK(fib_word(k) == fib_word(k - 1) + fib_word(k - 2));
    CHECK_THROWS_AS(fib_word(60), std::length_error);
}

TEST_CASE("fixed point prefix") {
    CHECK(fixed_point_prefix(1) == "a");
    CHECK(fixed_point_prefix(3) == "aba");
    CHECK(fixed_point_prefix(13) == "abaababaabaab");
    // agrees with every fib_word on the overlap
    for (int k = 0; k <= 14; ++k) {
        const Word w = fib_word(k);
        CHECK(fixed_point_prefix(static_cast<long long>(w.size())) == w);
    }
}

TEST_CASE("is_factor") {
    CHECK(is_factor("aa"));
    CHECK(is_factor("aba"));
    CHECK_FALSE(is_factor("bb"));
    CHECK_FALSE(is_factor("aaa"));
    CHECK(is_factor(fib_word(9)));
    CHECK_THROWS_AS(is_factor(""), std::invalid_argument);
}

TEST_CASE("is_repeatable") {
    CHECK_FALSE(is_repeatable("aa"));
    CHECK(is_repeatable("ab"));
    CHECK(is_repeatable("ba"));
    // prefixes of u are rotations of themselves
    for (int k = 1; k <= 8; ++k) CHECK(is_repeatable(fib_word(k)));
    CHECK_THROWS_AS(is_repeatable("bb"), std::invalid_argument);
}

TEST_CASE("every factor of the doubled prefix W_k W_k is repeatable") {
    for (int k = 3; k <= 7; ++k) {
        const Word w = fib_word(k - 1);  // W_k = S^{k-1}(a)
        const Word doubled = w + w;
        for (std::size_t i = 0; i + w.size() <= doubled.size(); ++i) {
            const Word factor = doubled.substr(i, w.size());
            CHECK(is_repeatable(factor));
        }
    }
}

TEST_CASE("factor census") {
    const FactorCensus c2 = factor_census(2);
    CHECK(c2.length == 3);
    CHECK(c2.count == 4);
    CHECK(c2.repeatable == 3);
    CHECK(c2.nonrepeatable == "bab");

    const FactorCensus c3 = factor_census(3);
    CHECK(c3.length == 5);
    CHECK(c3.count == 6);
    CHECK(c3.repeatable == 5);

    const FactorCensus c4 = factor_census(4);
    CHECK(c4.length == 8);
    CHECK(c4.count == 9);
    CHECK(c4.repeatable == 8);
}

TEST_CASE("fibonacci word complexity: l+1 factors of each length") {
    const long long max_len = fib_number(10);
    const Word u = fixed_point_prefix(4 * max_len);
    for (long long l : {1LL, 2LL, 5LL, 13LL, 34LL, 55LL, 89LL}) {
        std::set<std::string_view> factors;
        std::string_view view(u);
        for (std::size_t i = 0; i + l <= view.size(); ++i)
            factors.insert(view.substr(i, static_cast<std::size_t>(l)));
        CHECK(static_cast<long long>(factors.size()) == l + 1);
    }
}

TEST_CASE("unique nonrepeatable factor sits one letter before the end of W_{k+1} W_k") {
    for (int k = 2; k <= 10; ++k) {
        const long long len = fib_number(k);
        const FactorCensus c = factor_census_length(len);
        CHECK(c.count == len + 1);
        CHECK(c.repeatable == len);
        // W_{k+1} W_k = S^{k+1}(a), the window of length F_k ending one letter
        // before its end
        const Word big = fib_word(k + 1);  // length F_{k+2}
        const Word expected =
            big.substr(big.size() - 1 - static_cast<std::size_t>(len), static_cast<std::size_t>(len));
        CHECK(c.nonrepeatable == expected);
    }
}

TEST_CASE("subshift points index the subshift") {
    const SubshiftPoint u = SubshiftPoint::fixed_point();
    CHECK(u.window(0, 13) == "abaababaabaab");
    // fixed left extension ...ab
    CHECK(u.at(-1) == 'b');
    CHECK(u.at(-2) == 'a');

    const SubshiftPoint s1 = SubshiftPoint::shift(1);
    CHECK(s1.window(0, 5) == "baaba");

    const SubshiftPoint r0 = SubshiftPoint::rotation(0.0);
    CHECK(r0.window(0, 13) == "abaababaabaab");

    CHECK_THROWS_AS(SubshiftPoint::rotation(1.0), std::invalid_argument);
    CHECK_THROWS_AS(SubshiftPoint::rotation(-0.25), std::invalid_argument);
    CHECK_THROWS_AS(SubshiftPoint::shift(-2), std::invalid_argument);
}

TEST_CASE("subshift windows are factors of u") {
    std::vector<SubshiftPoint> points;
    points.push_back(SubshiftPoint::fixed_point());
    for (long long j = 1; j <= 7; ++j) points.push_back(SubshiftPoint::shift(5 * j));
    for (int i = 0; i < 12; ++i)
        points.push_back(SubshiftPoint::rotation(double(i) / 12.37));
    for (const auto& p : points)
        for (long long begin : {-40LL, -3LL, 0LL, 11LL})
            for (long long len : {1LL, 8LL, 55LL, 100LL})
                CHECK(is_factor(p.window(begin, len)));
}

TEST_CASE("repeatable prefix lengths") {
    const SubshiftPoint u = SubshiftPoint::fixed_point();
    const auto all = repeatable_prefix_lengths(u, 10);
    CHECK(all.size() == 10);  // every prefix of u is repeatable

    const auto shifted = repeatable_prefix_lengths(SubshiftPoint::shift(1), 8);
    CHECK(!shifted.empty());
    const auto rotated = repeatable_prefix_lengths(SubshiftPoint::rotation(0.5), 8);
    CHECK(!rotated.empty());
}

TEST_CASE("repeatability is invariant under rotations that stay factors") {
    for (int k = 2; k <= 6; ++k) {
        const Word w = fib_word(k);
        const Word doubled = w + w;
        for (std::size_t r = 0; r < w.size(); ++r) {
            const Word rot = doubled.substr(r, w.size());
            if (is_factor(rot)) CHECK(is_repeatable(rot));
        }
    }
}
