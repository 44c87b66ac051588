#pragma once

// Truncated power series with exact rational coefficients.  Just enough
// machinery (multiply, exp, log, binomial power) to re-expand a saddle
// point that is itself a 1/N series and compare the result coefficient by
// coefficient with the direct expansion.

#include <afm/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace afm {

// Coefficients c[0] + c[1] x + ... + c[order] x^order; everything beyond
// `order` is discarded.  All operands of a binary op must share the order.
class PowerSeries {
public:
    explicit PowerSeries(std::size_t order) : c_(order + 1) {}
    PowerSeries(std::size_t order, Rational constant) : c_(order + 1) { c_[0] = constant; }

    std::size_t order() const { return c_.size() - 1; }
    Rational& operator[](std::size_t i) { return c_.at(i); }
    const Rational& operator[](std::size_t i) const { return c_.at(i); }

    static PowerSeries x(std::size_t order) {
        PowerSeries s(order);
        if (order >= 1) s.c_[1] = Rational(1);
        return s;
    }

    PowerSeries operator+(const PowerSeries& o) const {
        check(o);
        PowerSeries r(order());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
        return r;
    }
    PowerSeries operator-(const PowerSeries& o) const {
        check(o);
        PowerSeries r(order());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
        return r;
    }
    PowerSeries operator*(const PowerSeries& o) const {
        check(o);
        PowerSeries r(order());
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; i + j < c_.size(); ++j)
                r.c_[i + j] += c_[i] * o.c_[j];
        return r;
    }
    PowerSeries operator*(const Rational& s) const {
        PowerSeries r(order());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
        return r;
    }

    // exp of a series with zero constant term: y' = s' y, solved by the
    // coefficient recurrence (n+1) y_{n+1} = sum_j (j+1) s_{j+1} y_{n-j}.
    PowerSeries exp() const {
        if (!c_[0].is_zero())
            throw std::domain_error("PowerSeries::exp: constant term must be 0");
        PowerSeries y(order());
        y.c_[0] = Rational(1);
        for (std::size_t n = 0; n < order(); ++n) {
            Rational acc(0);
            for (std::size_t j = 0; j <= n; ++j)
                acc += Rational(static_cast<long long>(j + 1)) * c_[j + 1] * y.c_[n - j];
            y.c_[n + 1] = acc / Rational(static_cast<long long>(n + 1));
        }
        return y;
    }

    // log of a series with constant term 1: y' = s'/s, i.e.
    // (n+1) y_{n+1} = (n+1) s_{n+1} - sum_{j<n+1... } s_j * (coeff of y' s).
    PowerSeries log() const {
        if (c_[0] != Rational(1))
            throw std::domain_error("PowerSeries::log: constant term must be 1");
        PowerSeries y(order());
        for (std::size_t n = 0; n < order(); ++n) {
            Rational acc = Rational(static_cast<long long>(n + 1)) * c_[n + 1];
            for (std::size_t j = 1; j <= n; ++j)
                acc -= Rational(static_cast<long long>(j)) * y.c_[j] * c_[n + 1 - j];
            y.c_[n + 1] = acc / Rational(static_cast<long long>(n + 1));
        }
        return y;
    }

    // s^alpha for series with constant term 1 and any rational alpha
    // (covers both the sqrt and the negative integer powers needed by the
    // saddle re-expansion):  y' s = alpha s' y.
    PowerSeries pow(const Rational& alpha) const {
        if (c_[0] != Rational(1))
            throw std::domain_error("PowerSeries::pow: constant term must be 1");
        PowerSeries y(order());
        y.c_[0] = Rational(1);
        for (std::size_t n = 0; n < order(); ++n) {
            // (n+1) y_{n+1} = sum_j [alpha (j+1) - (n-j)] s_{j+1} y_{n-j}
            Rational acc(0);
            for (std::size_t j = 0; j <= n; ++j)
                acc += (alpha * Rational(static_cast<long long>(j + 1))
                        - Rational(static_cast<long long>(n - j)))
                       * c_[j + 1] * y.c_[n - j];
            y.c_[n + 1] = acc / Rational(static_cast<long long>(n + 1));
        }
        return y;
    }

private:
    void check(const PowerSeries& o) const {
        if (o.order() != order())
            throw std::invalid_argument("PowerSeries: mismatched truncation orders");
    }
    std::vector<Rational> c_;
};

} // namespace afm
