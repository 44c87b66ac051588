#pragma once

// Numerical integration oracle for the one-dimensional integrals behind
// every series in this library: the Gamma form  int_0^inf g(t) e^{-N f(t)}
// with f = t - ln t, g = 1/t, and the fermion form over the whole line
// with f = t^2/2 - ln(omega + lambda t), g = omega0 + lambda t.
//
// Overflow discipline: the exponent is evaluated in log form and shifted
// by its maximum C before exponentiating, with e^C restored at the end.
// The prefactor g changes sign on the fermion domain, so it stays a linear
// factor and is never folded into the log.
//
// Two independent transformation schemes back every result: a
// double-exponential substitution and adaptive Gauss-Kronrod with its
// rational mapping of the infinite endpoints.  Agreement between them is
// part of the test contract.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>

#include <cmath>
#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace afm {

enum class IntegrandKind { gamma_form, fermion_form, custom };

struct Integrand {
    IntegrandKind kind = IntegrandKind::custom;
    double N = 1.0;
    // fermion parameters (ignored by gamma_form)
    double omega = 1.0;
    double omega0 = 1.0;
    double lambda = 1.0;
    // custom: arbitrary function on (lower, upper); infinities allowed
    std::function<double(double)> fn;
    double lower = 0.0;
    double upper = 0.0;
};

enum class QuadScheme { double_exponential, gauss_kronrod };

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;
};

struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& what, double best, double achieved)
        : std::runtime_error(what), best_estimate(best), achieved_tol(achieved) {}
    double best_estimate;
    double achieved_tol;
};

namespace detail {

// Shifted gamma integrand on (0, inf): exponent -N(t - ln t) peaks at
// t = 1 with value -N, so C = -N.
inline std::function<double(double)> gamma_integrand(double N, double& C) {
    C = -N;
    return [N](double t) {
        if (t <= 0.0) return 0.0;
        double e = -N * (t - std::log(t)) + N;
        return std::exp(e) / t;
    };
}

// Shifted fermion integrand on (-inf, inf).  For integer N the factor
// (omega + lambda t)^N is sign(omega+lambda t)^N e^{N ln|omega+lambda t|};
// the max of the exponent over the principal region t > -omega/lambda sits
// at the positive root of t^2 + (omega/lambda) t - 1 = 0.
inline std::function<double(double)> fermion_integrand(const Integrand& ig, double& C) {
    const double N = ig.N, w = ig.omega, w0 = ig.omega0, lam = ig.lambda;
    const double r = w / lam;
    const double tstar = (-r + std::sqrt(r * r + 4.0)) / 2.0;
    C = -N * tstar * tstar / 2.0 + N * std::log(w + lam * tstar);
    const bool odd = std::fmod(N, 2.0) != 0.0;
    return [=](double t) {
        double u = w + lam * t;
        if (u == 0.0) return 0.0;
        double e = -N * t * t / 2.0 + N * std::log(std::fabs(u)) - C;
        double sgn = (u < 0.0 && odd) ? -1.0 : 1.0;
        return sgn * (w0 + lam * t) * std::exp(e);
    };
}

} // namespace detail

// Returns (value, error estimate) with err_est <= rel_tol * |value| on
// success; a failed budget raises QuadratureError carrying the best
// estimate and the tolerance actually reached.
inline QuadResult integrate(const Integrand& ig, double rel_tol,
                            QuadScheme scheme = QuadScheme::double_exponential) {
    if (!(rel_tol >= 1e-13 && rel_tol <= 1e-4))
        throw std::domain_error("integrate: rel_tol must lie in [1e-13, 1e-4]");

    double C = 0.0;
    std::function<double(double)> f;
    double lower = 0.0, upper = 0.0;
    bool whole_line = false;
    switch (ig.kind) {
    case IntegrandKind::gamma_form:
        f = detail::gamma_integrand(ig.N, C);
        break;
    case IntegrandKind::fermion_form:
        f = detail::fermion_integrand(ig, C);
        whole_line = true;
        break;
    case IntegrandKind::custom:
        f = ig.fn;
        lower = ig.lower;
        upper = ig.upper;
        whole_line = std::isinf(lower) && std::isinf(upper);
        break;
    }

    double value = 0.0, err = 0.0, l1 = 0.0;
    if (scheme == QuadScheme::double_exponential) {
        if (whole_line) {
            boost::math::quadrature::sinh_sinh<double> q;
            value = q.integrate(f, rel_tol, &err, &l1);
        } else {
            boost::math::quadrature::exp_sinh<double> q;
            value = q.integrate(f, rel_tol, &err, &l1);
        }
    } else {
        using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
        double lo = whole_line ? -std::numeric_limits<double>::infinity()
                               : (ig.kind == IntegrandKind::custom ? lower : 0.0);
        double hi = (ig.kind == IntegrandKind::custom && !whole_line)
                        ? upper
                        : std::numeric_limits<double>::infinity();
        value = gk::integrate(f, lo, hi, 15, rel_tol, &err);
    }

    // err is an absolute estimate from either backend; judge convergence
    // against the integrand's scale (the L1 norm where available, else the
    // value itself) so cancellation-heavy integrands are not misjudged.
    double scale = std::exp(C);
    double magnitude = std::max(l1, std::fabs(value));
    QuadResult out{value * scale, err * scale};
    if (!(err <= 2.0 * rel_tol * magnitude))
        throw QuadratureError("integrate: tolerance not reached", out.value,
                              magnitude > 0.0 ? err / magnitude : err);
    return out;
}

} // namespace afm
