#include <afm/rational.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using afm::BigInt;
using afm::Rational;

TEST_CASE("double factorial - small values against the direct product") {
    auto direct = [](long long n) {
        BigInt r = 1;
        for (long long i = (n % 2 == 0) ? 2 : 1; i <= n; i += 2) r *= i;
        return r;
    };
    CHECK(afm::double_factorial(-1) == 1); // empty product
    CHECK(afm::double_factorial(0) == 1);
    CHECK(afm::double_factorial(3) == 3);
    CHECK(afm::double_factorial(7) == 105);
    for (long long n = 1; n <= 40; ++n)
        CHECK(afm::double_factorial(n) == direct(n));
    CHECK_THROWS_AS(afm::double_factorial(-2), std::domain_error);
}

TEST_CASE("double factorial - the 60+ digit value at the table edge") {
    // (2(L+k)-1)!! at L=14, k=28 is 83!!
    BigInt v = afm::double_factorial(83);
    CHECK(v.str().size() > 60);
    // consistency: (2m-1)!! 2^m m! = (2m)!
    for (unsigned m = 1; m <= 30; ++m) {
        BigInt lhs = afm::double_factorial(2 * static_cast<long long>(m) - 1) *
                     boost::multiprecision::pow(BigInt(2), m) * afm::factorial(m);
        CHECK(lhs == afm::factorial(2 * m));
    }
}

TEST_CASE("rational - canonical form and arithmetic") {
    CHECK(Rational(47, 480) == Rational(-47, -480));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-1, 2).numerator() == -1);
    CHECK(Rational(-1, 2).denominator() == 2);
    CHECK(Rational(1, 12) + Rational(1, 288) * Rational(0) == Rational(1, 12));

    // n(2) assembled from its four k-contributions
    Rational sum = Rational(-5, 2) + Rational(329, 32) + Rational(-105, 8) +
                   Rational(385, 72);
    CHECK(sum == Rational(1, 288));

    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational - field properties on random values") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<long long> num(-1000, 1000), den(1, 1000);
    for (int i = 0; i < 200; ++i) {
        Rational r(num(rng), den(rng)), s(num(rng), den(rng));
        CHECK((r + s) - s == r);
        if (!r.is_zero()) CHECK(r * (Rational(1) / r) == Rational(1));
    }
}

TEST_CASE("rational - text format round trip") {
    CHECK(Rational(-47, 480).str() == "-47/480");
    CHECK(Rational(5).str() == "5"); // integers render without /1
    CHECK(Rational::parse("-139/51840") == Rational(-139, 51840));
    CHECK(Rational::parse("17") == Rational(17));
    CHECK(Rational::parse(Rational(22, 7).str()) == Rational(22, 7));
}

TEST_CASE("rational - pow with negative exponents") {
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK(Rational(5).pow(0) == Rational(1));
    CHECK_THROWS_AS(Rational(0).pow(-1), std::domain_error);
}

TEST_CASE("multinomial") {
    CHECK(afm::multinomial(4, {2, 2}) == 6);
    CHECK(afm::multinomial(5, {5}) == 1);
    CHECK(afm::multinomial(6, {1, 2, 3}) == 60);
}
