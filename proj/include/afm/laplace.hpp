#pragma once

// The model-independent loop-expansion engine.  Input is a derivative jet
// at a stable saddle t0 of the exponent f (plus, optionally, derivatives
// of a prefactor g); output is the coefficient list c_0..c_Lmax of
//
//   I_N ~ e^{-N f0} sqrt(2 pi / (N f''(t0))) sum_L c_L / N^L .
//
// Two closely related modes:
//  * with a prefactor, each vertex multiset leaves a residual derivative
//    order m = 2L - k - sum(n_j) >= 0 for g (the inequality-constrained
//    conditional sum);
//  * with g == 1, only m = 0 survives, so the constraint collapses to the
//    equality sum(n_j) = 2L - k.
//
// The engine is generic over the scalar: exact Rational jets give exact
// rational coefficients, double jets give doubles, with one code path.
//
// A parity note that the implementation exploits: every surviving term has
// total Gaussian moment 2(L+k) (odd moments vanish), so the power of
// f''(t0) pulled out of the moment is always the integer L+k and no square
// roots of f''(t0) are ever formed.

#include <afm/combinatorics.hpp>
#include <afm/rational.hpp>

#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace afm {

// Scalar adapters: build an S from an exact integer/rational, and collapse
// an S to double for final evaluation.
template <class S> struct ScalarTraits;

template <> struct ScalarTraits<Rational> {
    static Rational from(const Rational& r) { return r; }
    static double to_double(const Rational& r) { return r.to_double(); }
};
template <> struct ScalarTraits<double> {
    static double from(const Rational& r) { return r.to_double(); }
    static double to_double(double v) { return v; }
};

struct StabilityError : std::domain_error {
    using std::domain_error::domain_error;
};
struct ArityError : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct OrderError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Derivatives of f and g at the saddle.  f_derivs[i] holds f^(i+2)(t0)
// (the list starts at the quadratic term); g_derivs[i] holds g^(i)(t0).
// An empty g_derivs means g == 1 identically (the absorbed-prefactor mode).
template <class S>
struct DerivativeJet {
    S f0{};
    std::vector<S> f_derivs;
    std::vector<S> g_derivs;

    const S& f(int n) const { // f^(n), n >= 2
        if (n < 2 || static_cast<std::size_t>(n - 2) >= f_derivs.size())
            throw ArityError("jet is missing f derivative of order " + std::to_string(n));
        return f_derivs[static_cast<std::size_t>(n - 2)];
    }
    const S& g(int m) const { // g^(m), m >= 0
        if (static_cast<std::size_t>(m) >= g_derivs.size())
            throw ArityError("jet is missing g derivative of order " + std::to_string(m));
        return g_derivs[static_cast<std::size_t>(m)];
    }
    bool g_absent() const { return g_derivs.empty(); }
};

enum class ExpansionMode { with_prefactor, absorbed_prefactor };

template <class S>
struct LoopSeries {
    ExpansionMode mode{};
    S f0{};  // exponent value at the saddle; e^{-N f0} applied at evaluation
    S f2{};  // f''(t0); the sqrt(2 pi/(N f2)) norm is applied at evaluation
    std::vector<S> coeffs; // c_0 .. c_Lmax
};

namespace detail {

// One multiset's contribution to c_L:
//
//   (-1)^k (2(L+k)-1)!! f2^{-(L+k)} [prod (f^(A+3)/(A+3)!)^Q / Q!]
//                                   * g^(m)/m!       (m = 2L-k-sum QA)
//
// The (-1)^k comes from k powers of the (-N) in the exponent; 1/k! times
// the tuple count collapses to the 1/prod(Q!) multiset weight.
template <class S>
S multiset_term(const DerivativeJet<S>& jet, const S& inv_f2,
                int L, int k, const ConstrainedMultiset& ms) {
    const int sum_qa = ms.sum_qa();
    const int m = 2 * L - k - sum_qa;
    assert(m >= 0);
    // Total moment must be even: sum(A+3) + m = 2L - k + 3k ... = 2(L+k).
    assert((sum_qa + 3 * k + m) == 2 * (L + k));

    S term = ScalarTraits<S>::from(
        Rational(((k % 2) ? BigInt(-1) : BigInt(1)) * double_factorial(2 * (L + k) - 1)));
    S p = inv_f2;
    for (int e = 1; e < L + k; ++e) p = p * inv_f2;
    if (L + k > 0) term = term * p;

    for (auto& [a, q] : ms.parts) {
        S factor = jet.f(a + 3) * ScalarTraits<S>::from(Rational(1, factorial(a + 3)));
        for (int e = 0; e < q; ++e) term = term * factor;
        term = term * ScalarTraits<S>::from(Rational(1, factorial(q)));
    }
    if (!jet.g_absent())
        term = term * jet.g(m) * ScalarTraits<S>::from(Rational(1, factorial(m)));
    return term;
}

template <class S>
void require_stable(const DerivativeJet<S>& jet) {
    if (!(ScalarTraits<S>::to_double(jet.f(2)) > 0.0))
        throw StabilityError("saddle is not stable: f''(t0) <= 0");
}

template <class S>
LoopSeries<S> expand(const DerivativeJet<S>& jet, int L_max, ExpansionMode mode) {
    require_stable(jet);
    const S one = ScalarTraits<S>::from(Rational(1));
    const S inv_f2 = one / jet.f(2);
    const SumMode sum_mode =
        mode == ExpansionMode::with_prefactor ? SumMode::at_most : SumMode::exact;

    LoopSeries<S> out;
    out.mode = mode;
    out.f0 = jet.f0;
    out.f2 = jet.f(2);
    out.coeffs.reserve(static_cast<std::size_t>(L_max) + 1);
    for (int L = 0; L <= L_max; ++L) {
        S c{};
        for (int k = 0; k <= 2 * L; ++k)
            for (const auto& ms : enumerate_multisets(k, 2 * L - k, sum_mode))
                c = c + multiset_term(jet, inv_f2, L, k, ms);
        out.coeffs.push_back(c);
    }
    return out;
}

} // namespace detail

// Expansion keeping the prefactor explicit: c_0 = g(t0), and the
// conditional sums run over sum(n_j) <= 2L - k with the slack absorbed by
// a derivative of g.
template <class S>
LoopSeries<S> method1_coefficients(const DerivativeJet<S>& jet, int L_max) {
    if (jet.g_absent())
        throw std::invalid_argument("method1_coefficients: jet carries no g derivatives");
    return detail::expand(jet, L_max, ExpansionMode::with_prefactor);
}

// Expansion with the prefactor absorbed into the exponent (g == 1): c_0 = 1
// and the conditional sums are equality-constrained.  When the saddle of
// the modified exponent is itself an 1/N series, re-expanding these
// coefficients in 1/N is the caller's job.
template <class S>
LoopSeries<S> method2_coefficients(const DerivativeJet<S>& jet, int L_max) {
    if (!jet.g_absent())
        throw std::invalid_argument("method2_coefficients: jet must not carry g derivatives");
    return detail::expand(jet, L_max, ExpansionMode::absorbed_prefactor);
}

// l = 0: tree value e^{-N f0} g(t0).  l >= 1: Gaussian norm times the
// partial sum of c_L/N^L through L = l-1.
template <class S>
double evaluate_l_loop(const LoopSeries<S>& series, double N, int l) {
    if (l < 0 || static_cast<std::size_t>(l) > series.coeffs.size())
        throw OrderError("requested loop order exceeds the computed series");
    const double f0 = ScalarTraits<S>::to_double(series.f0);
    if (l == 0)
        return std::exp(-N * f0) * ScalarTraits<S>::to_double(series.coeffs.at(0));
    double sum = 0.0; // Horner over 1/N
    for (int L = l - 1; L >= 0; --L)
        sum = ScalarTraits<S>::to_double(series.coeffs[static_cast<std::size_t>(L)]) + sum / N;
    const double f2 = ScalarTraits<S>::to_double(series.f2);
    return std::exp(-N * f0) * std::sqrt(2.0 * M_PI / (N * f2)) * sum;
}

} // namespace afm
