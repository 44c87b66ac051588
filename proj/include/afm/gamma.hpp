#pragma once

// The Gamma function as the workhorse example:
//
//   Gamma(N) = N^N int_0^inf dt (1/t) e^{-N(t - ln t)}
//
// expanded around the saddle t0 = 1.  All derivatives at the saddle are
// exact integers (f^(n) = (-1)^n (n-1)!, g^(m) = (-1)^m m!), so the loop
// coefficients come out of the engine as exact rationals — the Stirling
// series.  The absorbed-prefactor route moves ln t into the exponent,
// shifting the saddle to t_c = 1 - 1/N; re-expanding that route in 1/N
// must reproduce the same coefficients, which method2_gamma_check verifies
// with exact power-series arithmetic.

#include <afm/combinatorics.hpp>
#include <afm/laplace.hpp>
#include <afm/power_series.hpp>
#include <afm/quadrature.hpp>
#include <afm/rational.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace afm {

// Exact jet of f = t - ln t, g = 1/t at t0 = 1, deep enough for L_max
// loop orders.
inline DerivativeJet<Rational> gamma_jet(int L_max) {
    DerivativeJet<Rational> jet;
    jet.f0 = Rational(1); // f(1) = 1
    const int n_max = 2 * L_max + 3;
    for (int n = 2; n <= n_max; ++n)
        jet.f_derivs.push_back(Rational(((n % 2) ? BigInt(-1) : BigInt(1)) * factorial(n - 1)));
    for (int m = 0; m <= 2 * L_max; ++m)
        jet.g_derivs.push_back(Rational(((m % 2) ? BigInt(-1) : BigInt(1)) * factorial(m)));
    return jet;
}

// Stirling-series coefficients [1, 1/12, 1/288, ...] through L_max, via
// the generic engine (deliberately not via n_of_L, so the two code paths
// stay independent and cross-checkable).
inline std::vector<Rational> stirling_coefficients(int L_max) {
    return method1_coefficients(gamma_jet(L_max), L_max).coeffs;
}

struct GammaEval {
    double N = 0.0;
    int l = 0;        // 0 = tree
    double approx = 0.0;
    double exact = 0.0; // (N-1)! for integer N, else NaN
    double ratio = 0.0;
};

// l-loop approximation of Gamma(N) = N^N e^{-N} [tree] or
// N^N e^{-N} sqrt(2 pi/N) sum_{L<l} n(L)/N^L.
inline GammaEval gamma_l_loop(double N, int l) {
    static std::vector<Rational> coeffs = stirling_coefficients(15);
    GammaEval ev;
    ev.N = N;
    ev.l = l;
    double base = std::pow(N, N) * std::exp(-N);
    if (l == 0) {
        ev.approx = base;
    } else {
        double sum = 0.0;
        for (int L = l - 1; L >= 0; --L)
            sum = coeffs.at(static_cast<std::size_t>(L)).to_double() + sum / N;
        ev.approx = base * std::sqrt(2.0 * M_PI / N) * sum;
    }
    double nr = std::round(N);
    if (nr == N && N >= 1.0) {
        ev.exact = Rational(factorial(static_cast<unsigned>(nr) - 1)).to_double();
        ev.ratio = ev.approx / ev.exact;
    } else {
        ev.exact = std::nan("");
        ev.ratio = std::nan("");
    }
    return ev;
}

struct CheckReport {
    bool all_pass = true;
    std::vector<std::string> failures;
};

// Re-expansion route.  With the prefactor absorbed, the saddle is exactly
// t_c = 1 - x (x = 1/N) and, in x:
//
//   prefactor  P(x) = exp( sum_{n>=2} x^{n-1}/(n(n-1)) ) * (1-x)^{1/2}
//   loop factor L(x) = sum_L n(L) x^L (1-x)^{-L}
//
// (the (1-x)^{-L} weights come from the residual t_c powers in the
// equality-constrained coefficients).  The product's x-coefficients must
// equal the direct-route n(L) exactly, order by order.
inline CheckReport method2_gamma_check(int L_max) {
    CheckReport rep;
    const std::size_t ord = static_cast<std::size_t>(L_max) + 1;

    PowerSeries expo(ord);
    for (std::size_t n = 2; n <= ord + 1; ++n)
        if (n - 1 <= ord)
            expo[n - 1] = Rational(1, static_cast<long long>(n * (n - 1)));
    PowerSeries one_minus_x(ord, Rational(1));
    if (ord >= 1) one_minus_x[1] = Rational(-1);

    PowerSeries prefactor = expo.exp() * one_minus_x.pow(Rational(1, 2));

    // Spot checks on the prefactor itself: no 1/N term, and -1/12 at 1/N^2.
    if (ord >= 1 && prefactor[1] != Rational(0)) {
        rep.all_pass = false;
        rep.failures.push_back("prefactor x^1 coefficient is " + prefactor[1].str() +
                               ", expected 0");
    }
    if (ord >= 2 && prefactor[2] != Rational(-1, 12)) {
        rep.all_pass = false;
        rep.failures.push_back("prefactor x^2 coefficient is " + prefactor[2].str() +
                               ", expected -1/12");
    }

    PowerSeries loops(ord);
    for (int L = 0; L <= L_max; ++L) {
        // n(L) x^L (1-x)^{-L}
        PowerSeries term = one_minus_x.pow(Rational(-L)) * n_of_L(L);
        PowerSeries shifted(ord); // times x^L, within the truncation
        for (std::size_t i = 0; i + static_cast<std::size_t>(L) <= ord; ++i)
            shifted[i + static_cast<std::size_t>(L)] = term[i];
        loops = loops + shifted;
    }

    PowerSeries product = prefactor * loops;
    for (int L = 0; L <= L_max; ++L) {
        Rational want = n_of_L(L);
        Rational got = product[static_cast<std::size_t>(L)];
        if (got != want) {
            rep.all_pass = false;
            std::ostringstream os;
            os << "x^" << L << ": re-expanded route gives " << got.str()
               << ", direct route gives " << want.str();
            rep.failures.push_back(os.str());
        }
    }
    return rep;
}

// Numerical check that the 1/t prefactor makes no difference to the
// integral's value: int (1/t) e^{-N(t-ln t)} = int e^{-N(t-ln t)}, i.e.
// Gamma(N+1) = N Gamma(N).  Uses the quadrature oracle on both sides.
inline CheckReport g_elimination_check(const std::vector<double>& N_grid,
                                       double rel_tol = 1e-11) {
    CheckReport rep;
    for (double N : N_grid) {
        Integrand with_g{IntegrandKind::gamma_form, N};
        Integrand without_g;
        without_g.kind = IntegrandKind::custom;
        without_g.fn = [N](double t) {
            if (t <= 0.0) return 0.0;
            return std::exp(-N * (t - std::log(t)) + N);
        };
        without_g.lower = 0.0;
        without_g.upper = std::numeric_limits<double>::infinity();
        double lhs = integrate(with_g, rel_tol).value;
        double rhs = integrate(without_g, rel_tol).value * std::exp(-N);
        if (std::fabs(lhs - rhs) > 1e-10 * std::fabs(rhs)) {
            rep.all_pass = false;
            std::ostringstream os;
            os << "N=" << N << ": with-prefactor integral " << lhs
               << " vs plain integral " << rhs;
            rep.failures.push_back(os.str());
        }
    }
    return rep;
}

// Table emitters -------------------------------------------------------

// Rows: tree plus loop orders 1..loops; per N a value column and a
// ratio-to-(N-1)! column.
inline void emit_gamma_table(std::ostream& os, const std::vector<double>& N_list,
                             int loops, int precision) {
    os << "loop";
    for (double N : N_list) os << ",value_N" << N << ",ratio_N" << N;
    os << '\n';
    for (int l = 0; l <= loops; ++l) {
        if (l == 0) os << "tree";
        else os << l;
        for (double N : N_list) {
            GammaEval ev = gamma_l_loop(N, l);
            char buf[64];
            std::snprintf(buf, sizeof buf, ",%.*g,%.*g", precision, ev.approx,
                          precision, ev.ratio);
            os << buf;
        }
        os << '\n';
    }
}

// Ratio-versus-order dataset (one column per N).
inline void emit_gamma_figure(std::ostream& os, const std::vector<double>& N_list,
                              int loops, int precision) {
    os << "loop";
    for (double N : N_list) os << ",ratio_N" << N;
    os << '\n';
    for (int l = 0; l <= loops; ++l) {
        os << l;
        for (double N : N_list) {
            char buf[32];
            std::snprintf(buf, sizeof buf, ",%.*g", precision, gamma_l_loop(N, l).ratio);
            os << buf;
        }
        os << '\n';
    }
}

} // namespace afm
