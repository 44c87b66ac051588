#include <afm/combinatorics.hpp>
#include <afm/fermion.hpp>
#include <afm/gamma.hpp>
#include <afm/laplace.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

using afm::DerivativeJet;
using afm::Rational;

namespace {

// Brute-force evaluator over raw ordered tuples (n_1..n_k), dividing by k!
// instead of using multiset weights — an independent route to c_L.
void tuples_rec(int k, int s, bool atmost, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
    if (k == 0) {
        if (s == 0 || atmost) out.push_back(cur);
        return;
    }
    for (int n = 0; n <= s; ++n) {
        cur.push_back(n);
        tuples_rec(k - 1, s - n, atmost, cur, out);
        cur.pop_back();
    }
}

Rational c_by_tuples(const DerivativeJet<Rational>& jet, int L, bool with_g) {
    Rational inv_f2 = Rational(1) / jet.f(2);
    Rational total(0);
    for (int k = 0; k <= 2 * L; ++k) {
        std::vector<std::vector<int>> tuples;
        std::vector<int> cur;
        tuples_rec(k, 2 * L - k, with_g, cur, tuples);
        for (auto& t : tuples) {
            int sum = 0;
            Rational term = Rational((k % 2) ? -1 : 1) *
                            Rational(afm::double_factorial(2 * (L + k) - 1),
                                     afm::factorial(static_cast<unsigned>(k)));
            term *= inv_f2.pow(L + k);
            for (int n : t) {
                sum += n;
                term *= jet.f(n + 3) / Rational(afm::factorial(static_cast<unsigned>(n + 3)));
            }
            int m = 2 * L - k - sum;
            if (with_g)
                term *= jet.g(m) / Rational(afm::factorial(static_cast<unsigned>(m)));
            total += term;
        }
    }
    return total;
}

DerivativeJet<Rational> random_jet(std::mt19937& rng, int L_max, bool with_g) {
    std::uniform_int_distribution<long long> num(-6, 6), den(1, 5);
    DerivativeJet<Rational> jet;
    jet.f0 = Rational(num(rng), den(rng));
    jet.f_derivs.push_back(Rational(den(rng))); // keep f'' > 0
    for (int n = 3; n <= 2 * L_max + 3; ++n)
        jet.f_derivs.push_back(Rational(num(rng), den(rng)));
    if (with_g)
        for (int m = 0; m <= 2 * L_max; ++m)
            jet.g_derivs.push_back(Rational(num(rng), den(rng)));
    return jet;
}

} // namespace

TEST_CASE("engine - exact Stirling coefficients from the Gamma jet") {
    auto series = afm::method1_coefficients(afm::gamma_jet(4), 4);
    REQUIRE(series.coeffs.size() == 5);
    CHECK(series.coeffs[0] == Rational(1));
    CHECK(series.coeffs[1] == Rational(1, 12));
    CHECK(series.coeffs[2] == Rational(1, 288));
    CHECK(series.coeffs[3] == Rational(-139, 51840));
    CHECK(series.coeffs[4] == Rational(-571, 2488320));
}

TEST_CASE("engine - pure Gaussian jets have no loop corrections") {
    DerivativeJet<Rational> jet;
    jet.f0 = Rational(0);
    for (int n = 2; n <= 9; ++n)
        jet.f_derivs.push_back(n == 2 ? Rational(2) : Rational(0));
    jet.g_derivs.assign(7, Rational(0));
    jet.g_derivs[0] = Rational(5); // constant prefactor
    auto s1 = afm::method1_coefficients(jet, 3);
    CHECK(s1.coeffs == std::vector<Rational>{Rational(5), Rational(0), Rational(0), Rational(0)});

    jet.g_derivs.clear();
    auto s2 = afm::method2_coefficients(jet, 3);
    CHECK(s2.coeffs == std::vector<Rational>{Rational(1), Rational(0), Rational(0), Rational(0)});
}

TEST_CASE("engine - equality-constrained route reproduces the T-coefficient sums") {
    // Jet with f~^(n) = (-1)^n (n-1)!, f~'' = 1: coefficients must be n(L).
    DerivativeJet<Rational> jet;
    jet.f0 = Rational(0);
    for (int n = 2; n <= 11; ++n)
        jet.f_derivs.push_back(
            Rational(((n % 2) ? afm::BigInt(-1) : afm::BigInt(1)) * afm::factorial(n - 1)));
    auto s = afm::method2_coefficients(jet, 4);
    for (int L = 0; L <= 4; ++L)
        CHECK(s.coeffs[static_cast<std::size_t>(L)] == afm::n_of_L(L));
}

TEST_CASE("engine - both modes agree when g == 1 literally") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        auto jet = random_jet(rng, 3, false);
        auto jet_with_one = jet;
        jet_with_one.g_derivs.assign(7, Rational(0));
        jet_with_one.g_derivs[0] = Rational(1);
        auto a = afm::method1_coefficients(jet_with_one, 3);
        auto b = afm::method2_coefficients(jet, 3);
        for (std::size_t i = 0; i < a.coeffs.size(); ++i)
            CHECK(a.coeffs[i] == b.coeffs[i]);
    }
}

TEST_CASE("engine - multiset route equals the raw tuple route exactly") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 8; ++trial) {
        auto jet = random_jet(rng, 3, true);
        auto s = afm::method1_coefficients(jet, 3);
        for (int L = 0; L <= 3; ++L)
            CHECK(s.coeffs[static_cast<std::size_t>(L)] == c_by_tuples(jet, L, true));
    }
    for (int trial = 0; trial < 8; ++trial) {
        auto jet = random_jet(rng, 3, false);
        auto s = afm::method2_coefficients(jet, 3);
        for (int L = 0; L <= 3; ++L)
            CHECK(s.coeffs[static_cast<std::size_t>(L)] == c_by_tuples(jet, L, false));
    }
}

TEST_CASE("engine - error conditions") {
    DerivativeJet<Rational> unstable;
    unstable.f_derivs.push_back(Rational(-1));
    unstable.g_derivs.push_back(Rational(1));
    CHECK_THROWS_AS(afm::method1_coefficients(unstable, 1), afm::StabilityError);

    DerivativeJet<Rational> shallow;
    shallow.f_derivs.push_back(Rational(1)); // f'' only; L=1 needs f''' etc.
    shallow.g_derivs.assign(3, Rational(1));
    CHECK_THROWS_AS(afm::method1_coefficients(shallow, 1), afm::ArityError);

    auto series = afm::method1_coefficients(afm::gamma_jet(2), 2);
    CHECK_THROWS_AS(afm::evaluate_l_loop(series, 2.0, 5), afm::OrderError);

    DerivativeJet<Rational> no_g;
    no_g.f_derivs.push_back(Rational(1));
    CHECK_THROWS_AS(afm::method1_coefficients(no_g, 0), std::invalid_argument);
}

TEST_CASE("engine - evaluation at tree and loop orders") {
    auto series = afm::method1_coefficients(afm::gamma_jet(14), 14);
    // Gamma(1): 1-loop ratio 0.92214 (N^N = 1)
    double one_loop = afm::evaluate_l_loop(series, 1.0, 1);
    CHECK_THAT(one_loop, Catch::Matchers::WithinRel(0.92214, 1e-4));
    // tree at N = 10: N^N e^{-N} = 4.53999e5 / 10^10
    double tree = afm::evaluate_l_loop(series, 10.0, 0);
    CHECK_THAT(tree * std::pow(10.0, 10), Catch::Matchers::WithinRel(4.53999e5, 1e-4));
}

TEST_CASE("engine - double-precision fermion jet matches the closed T-form") {
    // c_1 of the explicit-prefactor expansion at the upper quadratic saddle
    afm::FermionParams p{2, 1.0, 1.0, 1.0};
    double disc = std::sqrt(p.omega * p.omega + 4.0 * p.lambda * p.lambda);
    double O0 = (p.omega + disc) / 2.0;
    auto jet = afm::fermion_jet(p, O0, 2);
    auto series = afm::method1_coefficients(jet, 2);
    double D = O0 * O0 + p.lambda * p.lambda;
    for (int L = 0; L <= 2; ++L) {
        double closed = 0.0;
        for (int k = 0; k <= 2 * L; ++k) {
            double t1 = afm::t_coefficient(L, k, 2 * L - k).to_double();
            double t2 = (2 * L - k - 1 >= 0)
                            ? afm::t_coefficient(L, k, 2 * L - k - 1).to_double()
                            : 0.0;
            closed += std::pow(p.lambda * p.lambda / D, L + k) *
                      ((O0 + p.delta_omega()) * t1 - O0 * t2);
        }
        CHECK_THAT(series.coeffs[static_cast<std::size_t>(L)],
                   Catch::Matchers::WithinRel(closed, 1e-12));
    }
}
