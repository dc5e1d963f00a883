#include <catch2/catch_amalgamated.hpp>

#include <limits>

#include "fctp/rational.hpp"
#include "helpers.hpp"

using namespace fctp;

TEST_CASE("checked arithmetic guards overflow") {
    REQUIRE(checked_add(3, 4) == 7);
    REQUIRE(checked_mul(-5, 6) == -30);
    const Cap big = std::numeric_limits<Cap>::max();
    REQUIRE(testutil::raised([&] { checked_add(big, 1); }) == Errc::validation_error);
    REQUIRE(testutil::raised([&] { checked_mul(big, 2); }) == Errc::validation_error);
}

TEST_CASE("is_integer and to_string") {
    REQUIRE(is_integer(Rational(5)));
    REQUIRE_FALSE(is_integer(Rational(7, 2)));
    REQUIRE(to_string(Rational(5)) == "5");
    REQUIRE(to_string(Rational(-7, 2)) == "-7/2");
    REQUIRE(to_string(Rational(0)) == "0");
}

TEST_CASE("parse_rational accepts integers, fractions, and exact decimals") {
    REQUIRE(parse_rational("7") == 7);
    REQUIRE(parse_rational("-3") == -3);
    REQUIRE(parse_rational("7/2") == Rational(7, 2));
    REQUIRE(parse_rational("-9/10") == Rational(-9, 10));
    REQUIRE(parse_rational("9/12") == Rational(3, 4));  // normalized
    REQUIRE(parse_rational("1.0") == 1);
    REQUIRE(parse_rational("0.95") == Rational(19, 20));
    REQUIRE(parse_rational("-0.25") == Rational(-1, 4));
    REQUIRE(parse_rational(".5") == Rational(1, 2));
}

TEST_CASE("parse_rational rejects malformed input") {
    REQUIRE(testutil::raised([] { parse_rational(""); }) == Errc::parse_error);
    REQUIRE(testutil::raised([] { parse_rational("x"); }) == Errc::parse_error);
    REQUIRE(testutil::raised([] { parse_rational("2."); }) == Errc::parse_error);
    REQUIRE(testutil::raised([] { parse_rational("1/0"); }) == Errc::parse_error);
    REQUIRE(testutil::raised([] { parse_rational("1/"); }) == Errc::parse_error);
    REQUIRE(testutil::raised([] { parse_rational("1.2.3"); }) == Errc::parse_error);
}

TEST_CASE("rational_ceil") {
    REQUIRE(rational_ceil(Rational(333, 10)) == 34);
    REQUIRE(rational_ceil(Rational(34)) == 34);
    REQUIRE(rational_ceil(Rational(-3, 2)) == -1);
    REQUIRE(rational_ceil(Rational(0)) == 0);
    // the generator's target: ceil(r * C)
    REQUIRE(rational_ceil(Rational(9, 10) * 37) == 34);
    REQUIRE(rational_ceil(Rational(19, 20) * 40) == 38);
}

TEST_CASE("finite decimal detection and rendering") {
    REQUIRE(has_finite_decimal(Rational(7)));
    REQUIRE(has_finite_decimal(Rational(1, 4)));
    REQUIRE(has_finite_decimal(Rational(3, 40)));
    REQUIRE_FALSE(has_finite_decimal(Rational(1, 3)));
    REQUIRE_FALSE(has_finite_decimal(Rational(1, 6)));
    REQUIRE(to_decimal_string(Rational(1, 4)) == "0.25");
    REQUIRE(to_decimal_string(Rational(-3, 8)) == "-0.375");
    REQUIRE(to_decimal_string(Rational(5)) == "5");
    REQUIRE(to_decimal_string(Rational(19, 20)) == "0.95");
    REQUIRE(to_decimal_string(Rational(3, 40)) == "0.075");
    REQUIRE(testutil::raised([] { to_decimal_string(Rational(1, 3)); }) == Errc::validation_error);
}

TEST_CASE("to_cap range guard") {
    REQUIRE(to_cap(BigInt(-12)) == -12);
    REQUIRE(to_cap(BigInt(std::numeric_limits<Cap>::max())) == std::numeric_limits<Cap>::max());
    REQUIRE(testutil::raised([] { to_cap(BigInt(1) << 70); }) == Errc::validation_error);
}
