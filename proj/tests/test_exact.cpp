#include "lefschetz/exact.hpp"
#include "lefschetz/smith_normal_form.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace lefschetz;

TEST_CASE("integer parsing and arithmetic") {
    CHECK(Integer::parse("-42") == Integer(-42));
    CHECK(Integer::parse("+7") == Integer(7));
    CHECK_THROWS_AS(Integer::parse("4x"), std::invalid_argument);
    CHECK_THROWS_AS(Integer::parse(""), std::invalid_argument);
    const Integer big = Integer::parse("123456789012345678901234567890");
    CHECK((big * big).str() == "15241578753238836750495351562536198787501905199875019052100");
    CHECK(floor_div(Integer(-7), Integer(2)) == Integer(-4));
    CHECK(mod(Integer(-7), Integer(5)) == Integer(3));
    CHECK(gcd(Integer(12), Integer(-18)) == Integer(6));
    CHECK(Integer(14).divisible_by(Integer(7)));
    CHECK_THROWS_AS(big.to_int64(), std::overflow_error);
}

TEST_CASE("rationals print in lowest terms") {
    CHECK(Rational(Integer(6), Integer(-4)).str() == "-3/2");
    CHECK(Rational::parse("10/4").str() == "5/2");
    CHECK(Rational::parse("-8/4").str() == "-2");
    CHECK(Rational::parse("-8/4").is_integer());
    CHECK(Rational::parse("3/2").numerator() == Integer(3));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/2").to_integer(), std::domain_error);
    CHECK(Rational(1) / Rational(3) + Rational(1) / Rational(6) == Rational(Integer(1), Integer(2)));
}

TEST_CASE("exact scalars work inside Eigen expressions") {
    IntMatrix a(2, 2);
    a << Integer(1), Integer(2), Integer(3), Integer(4);
    const IntMatrix b = a * a;
    CHECK(b(0, 0) == Integer(7));
    CHECK(b(1, 1) == Integer(22));
}

TEST_CASE("smith normal form agrees with determinantal divisors") {
    std::mt19937 rng(20261019);
    std::uniform_int_distribution<int> entry(-6, 6);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        const int r = dim(rng);
        const int c = dim(rng);
        IntMatrix m(r, c);
        oracle::Mat o(static_cast<std::size_t>(r), oracle::Vec(static_cast<std::size_t>(c)));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                const int v = trial % 5 == 0 ? 2 * entry(rng) : entry(rng);
                m(i, j) = Integer(v);
                o[i][j] = v;
            }
        const auto got = smith_invariant_factors(m);
        const auto want = oracle::invariant_factors(o);
        REQUIRE(got.size() == want.size());
        for (std::size_t k = 0; k < got.size(); ++k) CHECK(got[k] == Integer(want[k]));
        for (std::size_t k = 1; k < got.size(); ++k) CHECK(got[k].divisible_by(got[k - 1]));
    }
}

TEST_CASE("cokernel invariants") {
    IntMatrix m(2, 1);
    m << Integer(2), Integer(0);
    const auto inv = cokernel_invariants(m);  // Z/2 + Z
    REQUIRE(inv.size() == 2);
    CHECK(inv[0] == Integer(2));
    CHECK(inv[1] == Integer(0));
    CHECK(cokernel_invariants(IntMatrix(IntMatrix::Identity(3, 3))).empty());
    CHECK(cokernel_invariants(IntMatrix(IntMatrix::Zero(2, 0))).size() == 2);
}
