#include <redge/rational.hpp>

#include <catch2/catch_amalgamated.hpp>

using redge::Rational;
using redge::rational;

TEST_CASE("rational arithmetic is exact and normalized", "[rational]") {
    Rational a = rational(1, 3);
    Rational b = rational(1, 6);
    CHECK(a + b == rational(1, 2));
    CHECK(a - b == rational(1, 6));
    CHECK(a * b == rational(1, 18));
    CHECK(a / b == rational(2));
    CHECK(rational(4, 8) == rational(1, 2));
    CHECK(rational(-4, 8) == rational(-1, 2));
    CHECK(boost::multiprecision::denominator(rational(3, -6)) == 2);
}

TEST_CASE("rational survives large exact accumulations", "[rational]") {
    // Harmonic-style sum with huge denominators must stay exact.
    Rational sum = 0;
    for (int i = 1; i <= 50; ++i) sum += rational(1, i);
    Rational again = 0;
    for (int i = 50; i >= 1; --i) again += rational(1, i);
    CHECK(sum == again);
    CHECK(sum > rational(4));
    CHECK(sum < rational(5));
}

TEST_CASE("fraction rendering", "[rational]") {
    CHECK(redge::to_fraction_string(rational(43, 8)) == "43/8");
    CHECK(redge::to_fraction_string(rational(7)) == "7");
    CHECK(redge::to_fraction_string(rational(0)) == "0");
    CHECK(redge::to_fraction_string(rational(-14, 29)) == "-14/29");
    CHECK(redge::to_fraction_string(rational(6, 3)) == "2");
}

TEST_CASE("fraction parsing", "[rational]") {
    CHECK(redge::parse_rational("43/8") == rational(43, 8));
    CHECK(redge::parse_rational("-3/9") == rational(-1, 3));
    CHECK(redge::parse_rational("17") == rational(17));
    CHECK(redge::parse_rational("+2/4") == rational(1, 2));
    CHECK_FALSE(redge::parse_rational("1/0").has_value());
    CHECK_FALSE(redge::parse_rational("").has_value());
    CHECK_FALSE(redge::parse_rational("a/b").has_value());
    CHECK_FALSE(redge::parse_rational("1/").has_value());
    CHECK_FALSE(redge::parse_rational("/2").has_value());
    CHECK_FALSE(redge::parse_rational("1/-2").has_value());
    CHECK_FALSE(redge::parse_rational("1.5").has_value());
}

TEST_CASE("decimal rendering rounds half to even", "[rational]") {
    CHECK(redge::to_decimal_string(rational(11, 6)) == "1.833333");
    CHECK(redge::to_decimal_string(rational(39, 4)) == "9.750000");
    CHECK(redge::to_decimal_string(rational(1593, 128)) == "12.445312");
    // Exact half cases: 0.0000005 -> even digit 0; 0.0000015 -> even digit 2.
    CHECK(redge::to_decimal_string(rational(5, 10000000)) == "0.000000");
    CHECK(redge::to_decimal_string(rational(15, 10000000)) == "0.000002");
    CHECK(redge::to_decimal_string(rational(25, 10000000)) == "0.000002");
    CHECK(redge::to_decimal_string(rational(-11, 6)) == "-1.833333");
    CHECK(redge::to_decimal_string(rational(0)) == "0.000000");
    CHECK(redge::to_decimal_string(rational(130, 87)) == "1.494253");
    CHECK(redge::to_decimal_string(rational(3, 2), 0) == "2");
    CHECK(redge::to_decimal_string(rational(1, 2), 0) == "0");
}

TEST_CASE("round trip parse/render", "[rational]") {
    for (int p = -20; p <= 20; ++p)
        for (int q = 1; q <= 12; ++q) {
            Rational r = rational(p, q);
            auto back = redge::parse_rational(redge::to_fraction_string(r));
            REQUIRE(back.has_value());
            CHECK(*back == r);
        }
}
