// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "eqrefute/rational.hpp"

using namespace eqrefute;

TEST_CASE("rational string round trip is canonical") {
    CHECK(rational_to_string(Rational(3) / 4) == "3/4");
    CHECK(rational_to_string(Rational(-6) / 4) == "-3/2");
    CHECK(rational_to_string(Rational(5)) == "5");
    CHECK(rational_to_string(Rational(0)) == "0");
    CHECK(rational_to_string(Rational(-7)) == "-7");
}

TEST_CASE("parse_rational accepts fractions, decimals and signs") {
    CHECK(parse_rational("3/4") == Rational(3) / 4);
    CHECK(parse_rational("-3/4") == Rational(-3) / 4);
    CHECK(parse_rational("0.25") == Rational(1) / 4);
    CHECK(parse_rational("-1.5") == Rational(-3) / 2);
    CHECK(parse_rational("0.999") == Rational(999) / 1000);
    CHECK(parse_rational("42") == Rational(42));
    CHECK(parse_rational("+7/2") == Rational(7) / 2);
    // Large decimal: exactness must survive well past double precision.
    CHECK(parse_rational("0.10000000000000000001") ==
          Rational("10000000000000000001") / Rational("100000000000000000000"));
    CHECK_THROWS(parse_rational(""));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("parse inverts to_string on arithmetic combinations") {
    Rational vals[] = {Rational(0),       Rational(1),        Rational(-1),
                       Rational(7) / 3,   Rational(-22) / 7,  Rational(1000001) / 999983,
                       Rational(1) / 1000000};
    for (const Rational& a : vals)
        for (const Rational& b : vals) {
            Rational sum = a + b;
            Rational prod = a * b;
            CHECK(parse_rational(rational_to_string(sum)) == sum);
            CHECK(parse_rational(rational_to_string(prod)) == prod);
        }
}

TEST_CASE("is_integer and rational_pow") {
    CHECK(is_integer(Rational(5)));
    CHECK(is_integer(Rational(-3)));
    CHECK(is_integer(Rational(0)));
    CHECK(!is_integer(Rational(1) / 2));
    CHECK(rational_pow(Rational(2) / 3, 3) == Rational(8) / 27);
    CHECK(rational_pow(Rational(-2), 4) == Rational(16));
    CHECK(rational_pow(Rational(7), 0) == Rational(1));
}

TEST_CASE("to_double is a faithful approximation") {
    CHECK(to_double(Rational(1) / 2) == doctest::Approx(0.5));
    CHECK(to_double(Rational(-999) / 1000) == doctest::Approx(-0.999));
    CHECK(to_double(Rational("8991000999") / 4501000) == doctest::Approx(1997.5563).epsilon(1e-6));
}

TEST_CASE("exact comparisons have no rounding slack") {
    Rational third = Rational(1) / 3;
    CHECK(third * 3 == Rational(1));
    CHECK(third + third + third == Rational(1));
    Rational tiny = Rational(1) / 1000000;
    CHECK(tiny > 0);
    CHECK(tiny * 1000000 == Rational(1));
}
