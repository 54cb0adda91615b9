#include "doctest.h"

#include "vmlab/error.hpp"
#include "vmlab/exact_value.hpp"

#include <limits>

using namespace vmlab;

TEST_CASE("rational is kept in lowest terms with a positive denominator") {
    Rational r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rational(0, 7) == Rational(0));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic and ordering are exact") {
    CHECK(Rational(1, 10) + Rational(2, 10) == Rational(3, 10));
    CHECK(Rational(9, 10) * Rational(10) == Rational(9));
    CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
    CHECK(Rational(7, 2) / Rational(7, 4) == Rational(2));
    CHECK(Rational(1, 3) < Rational(34, 100));
    CHECK(abs(Rational(-5, 3)) == Rational(5, 3));
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(7, 2).floor() == 3);
}

TEST_CASE("overflow is reported rather than wrapped") {
    const auto big = std::numeric_limits<std::int64_t>::max();
    CHECK_THROWS_AS(Rational(big) * Rational(2), std::overflow_error);
}

TEST_CASE("decimal rendering") {
    CHECK(Rational(1, 10).to_decimal() == "0.1");
    CHECK(Rational(1, 20).to_decimal() == "0.05");
    CHECK(Rational(10).to_decimal() == "10");
    CHECK(Rational(123, 10).to_fixed(1) == "12.3");
    CHECK(Rational(123, 10).to_fixed(3) == "12.300");
    CHECK(Rational(1, 100).to_fixed(2) == "0.01");
    CHECK(Rational(0).to_fixed(1) == "0.0");
    CHECK_THROWS_AS(Rational(1, 3).to_decimal(), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 100).to_fixed(1), std::invalid_argument);
}

TEST_CASE("values compare exactly across mm and μm") {
    ExactValue mm{Rational(35, 100), Unit::Millimetre};
    ExactValue um{Rational(350), Unit::Micrometre};
    CHECK(same_quantity(mm, um));
    CHECK(compare(ExactValue{Rational(1, 10), Unit::Millimetre}, um) == std::strong_ordering::less);
    CHECK_THROWS_AS(compare(mm, ExactValue{Rational(1), Unit::Degree}), LabError);
}
