#include <afm/fermion.hpp>
#include <afm/quadrature.hpp>
#include <afm/rational.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using afm::Integrand;
using afm::IntegrandKind;
using afm::QuadScheme;

TEST_CASE("quadrature - Gamma form against factorials") {
    // int_0^inf (1/t) e^{-N(t - ln t)} dt = Gamma(N)/N^N
    Integrand ig{IntegrandKind::gamma_form, 5.0};
    auto r = afm::integrate(ig, 1e-12);
    CHECK_THAT(r.value, Catch::Matchers::WithinRel(24.0 / std::pow(5.0, 5.0), 1e-10));
    CHECK(r.err_est <= 1e-12 * std::fabs(r.value) * 10); // sane estimate

    for (int N = 1; N <= 10; ++N) {
        Integrand g{IntegrandKind::gamma_form, double(N)};
        double got = afm::integrate(g, 1e-12).value * std::pow(double(N), N);
        double want = afm::Rational(afm::factorial(static_cast<unsigned>(N - 1))).to_double();
        CHECK_THAT(got, Catch::Matchers::WithinRel(want, 1e-10));
    }
}

TEST_CASE("quadrature - fermion form against the closed-form partition sum") {
    Integrand ig;
    ig.kind = IntegrandKind::fermion_form;
    ig.N = 2;
    ig.omega = ig.omega0 = ig.lambda = 1.0;
    auto r = afm::integrate(ig, 1e-10);
    CHECK_THAT(r.value, Catch::Matchers::WithinRel(2.5 * std::sqrt(2.0 * M_PI / 2.0), 1e-8));

    // large-coupling case exercises the overflow shift
    Integrand big = ig;
    big.omega0 = 1e2;
    big.lambda = 10.0;
    double z = afm::integrate(big, 1e-10).value * std::sqrt(2.0 / (2.0 * M_PI));
    CHECK_THAT(z, Catch::Matchers::WithinRel(
                      afm::exact_partition({2, 1.0, 1e2, 10.0}), 1e-8));
}

TEST_CASE("quadrature - the two transformation schemes agree") {
    for (double N : {1.0, 3.0, 7.5}) {
        Integrand ig{IntegrandKind::gamma_form, N};
        double a = afm::integrate(ig, 1e-11, QuadScheme::double_exponential).value;
        double b = afm::integrate(ig, 1e-11, QuadScheme::gauss_kronrod).value;
        CHECK_THAT(a, Catch::Matchers::WithinRel(b, 1e-9));
    }
    Integrand f;
    f.kind = IntegrandKind::fermion_form;
    f.N = 3;
    f.omega = 1.0;
    f.omega0 = 0.01;
    f.lambda = 0.1;
    double a = afm::integrate(f, 1e-11, QuadScheme::double_exponential).value;
    double b = afm::integrate(f, 1e-11, QuadScheme::gauss_kronrod).value;
    CHECK_THAT(a, Catch::Matchers::WithinRel(b, 1e-9));
}

TEST_CASE("quadrature - halving the tolerance stays within the error estimate") {
    Integrand ig{IntegrandKind::gamma_form, 7.5};
    auto coarse = afm::integrate(ig, 1e-8);
    auto fine = afm::integrate(ig, 5e-9);
    CHECK(std::fabs(coarse.value - fine.value) <=
          std::max(coarse.err_est, 1e-12 * std::fabs(coarse.value)));
}

TEST_CASE("quadrature - tolerance domain is enforced") {
    Integrand ig{IntegrandKind::gamma_form, 2.0};
    CHECK_THROWS_AS(afm::integrate(ig, 1e-3), std::domain_error);
    CHECK_THROWS_AS(afm::integrate(ig, 1e-14), std::domain_error);
}

TEST_CASE("quadrature - custom integrands") {
    Integrand ig;
    ig.kind = IntegrandKind::custom;
    ig.fn = [](double t) { return std::exp(-t * t); };
    ig.lower = -std::numeric_limits<double>::infinity();
    ig.upper = std::numeric_limits<double>::infinity();
    CHECK_THAT(afm::integrate(ig, 1e-12).value,
               Catch::Matchers::WithinRel(std::sqrt(M_PI), 1e-10));
}
