#include <afm/power_series.hpp>

#include <catch2/catch_amalgamated.hpp>

using afm::PowerSeries;
using afm::Rational;

TEST_CASE("power series - ring operations") {
    PowerSeries a(4), b(4);
    a[0] = Rational(1); a[1] = Rational(2); a[2] = Rational(3);
    b[0] = Rational(1); b[1] = Rational(-1);
    PowerSeries p = a * b;
    CHECK(p[0] == Rational(1));
    CHECK(p[1] == Rational(1));  // 2 - 1
    CHECK(p[2] == Rational(1));  // 3 - 2
    CHECK(p[3] == Rational(-3));
    CHECK(p[4] == Rational(0));

    CHECK_THROWS_AS(a * PowerSeries(3), std::invalid_argument);
}

TEST_CASE("power series - exp/log are mutually inverse") {
    PowerSeries s(6);
    s[1] = Rational(1, 3); s[2] = Rational(-2, 5); s[4] = Rational(7);
    PowerSeries e = s.exp();
    CHECK(e[0] == Rational(1));
    PowerSeries back = e.log();
    for (std::size_t i = 0; i <= 6; ++i) CHECK(back[i] == s[i]);

    // exp(x) has the factorial coefficients
    PowerSeries x = PowerSeries::x(5);
    PowerSeries ex = x.exp();
    for (std::size_t i = 0; i <= 5; ++i)
        CHECK(ex[i] == Rational(afm::BigInt(1), afm::factorial(static_cast<unsigned>(i))));

    CHECK_THROWS_AS(PowerSeries(3, Rational(1)).exp(), std::domain_error);
    CHECK_THROWS_AS(PowerSeries(3).log(), std::domain_error);
}

TEST_CASE("power series - binomial powers") {
    PowerSeries one_minus_x(5, Rational(1));
    one_minus_x[1] = Rational(-1);

    // (1-x)^{-1} = geometric series
    PowerSeries geo = one_minus_x.pow(Rational(-1));
    for (std::size_t i = 0; i <= 5; ++i) CHECK(geo[i] == Rational(1));

    // (1-x)^{1/2} squared gives back 1-x
    PowerSeries root = one_minus_x.pow(Rational(1, 2));
    PowerSeries sq = root * root;
    CHECK(sq[0] == Rational(1));
    CHECK(sq[1] == Rational(-1));
    for (std::size_t i = 2; i <= 5; ++i) CHECK(sq[i] == Rational(0));

    // integer power agrees with repeated multiplication
    PowerSeries cube = one_minus_x.pow(Rational(3));
    PowerSeries ref = one_minus_x * one_minus_x * one_minus_x;
    for (std::size_t i = 0; i <= 5; ++i) CHECK(cube[i] == ref[i]);
}
