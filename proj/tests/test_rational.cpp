#include <doctest.h>

#include "probscale/rational.hpp"

using probscale::Rational;

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, -7).den() == 1);

    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
    CHECK(-Rational(3, 5) == Rational(-3, 5));

    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-5, 4) < Rational(-1));
    CHECK(Rational(7, 7) == Rational(1));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational formatting") {
    CHECK(Rational(-5, 4).str() == "-5/4");
    CHECK(Rational(3).str() == "3");
    CHECK(Rational(-5, 4).decimal() == "-1.25");
    CHECK(Rational(1, 3).decimal() == "0.333333333333333");
    CHECK(Rational(1, 2).to_double() == 0.5);
}

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("-5/4") == Rational(-5, 4));
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational::parse("6/8") == Rational(3, 4));
    CHECK(Rational::parse("−5/4") == Rational(-5, 4)); // U+2212 minus
    CHECK(Rational::parse(" 1/2 ") == Rational(1, 2));
    CHECK_THROWS(Rational::parse(""));
    CHECK_THROWS(Rational::parse("a/b"));
    CHECK_THROWS(Rational::parse("1/0"));
}
