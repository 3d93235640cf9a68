#include "doctest.h"

#include "tritime/errors.hpp"
#include "tritime/number.hpp"

using tritime::expr::Number;
using tritime::expr::Rational;

TEST_CASE("rational arithmetic normalizes") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(2, 3) * Rational(3, 4)) == Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), tritime::DomainError);
}

TEST_CASE("exact complex numbers") {
    Number i = Number::imag_unit();
    CHECK((i * i).is_minus_one());
    CHECK((Number(1) / i) == -i);
    CHECK(Number(Rational(4, 9)).pow(Rational(1, 2)) == Number(Rational(2, 3)));
    CHECK(Number(2).pow(Rational(-2)) == Number(Rational(1, 4)));
    CHECK_FALSE(Number(2).pow(Rational(1, 2)).exact());
}

TEST_CASE("overflow falls back to doubles") {
    Number big(INT64_MAX);
    Number r = big * big;
    CHECK_FALSE(r.exact());
    CHECK(r.value().real() == doctest::Approx(9.223372036854775807e18 * 9.223372036854775807e18));
}
