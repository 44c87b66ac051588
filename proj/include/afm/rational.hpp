#pragma once

// Exact integer and rational arithmetic used throughout the coefficient
// pipeline.  Values are canonical on construction (reduced, positive
// denominator), so equality is plain value equality and golden-file
// comparisons need no extra normalization.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace afm {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(n) {}
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0)
            throw std::domain_error("Rational: zero denominator");
        // the backend insists on a positive denominator
        if (den < 0)
            v_ = boost::multiprecision::cpp_rational(-num, -den);
        else
            v_ = boost::multiprecision::cpp_rational(num, den);
    }
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

    Rational operator-() const { return Rational(rep{}, -v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.v_ == 0)
            throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    // Integer power; negative exponents invert (zero base rejected).
    Rational pow(long long e) const {
        if (e < 0) {
            if (v_ == 0)
                throw std::domain_error("Rational: 0 to a negative power");
            return Rational(denominator(), numerator()).pow(-e);
        }
        Rational base = *this, out(1);
        while (e) {
            if (e & 1) out *= base;
            base *= base;
            e >>= 1;
        }
        return out;
    }

    double to_double() const { return v_.convert_to<double>(); }

    // Textual form "p/q" (no spaces); integers render without "/1".
    std::string str() const {
        std::string s = numerator().str();
        if (denominator() != 1)
            s += "/" + denominator().str();
        return s;
    }

    static Rational parse(std::string_view text) {
        auto slash = text.find('/');
        if (slash == std::string_view::npos)
            return Rational(BigInt(std::string(text)));
        return Rational(BigInt(std::string(text.substr(0, slash))),
                        BigInt(std::string(text.substr(slash + 1))));
    }

private:
    struct rep {};
    Rational(rep, boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
    boost::multiprecision::cpp_rational v_;
};

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

// n!! = n(n-2)(n-4)...; empty products (-1)!! = 0!! = 1.
inline BigInt double_factorial(long long n) {
    if (n < -1)
        throw std::domain_error("double_factorial: n < -1");
    BigInt r = 1;
    for (long long i = n; i > 1; i -= 2) r *= i;
    return r;
}

// k! / (q_1! q_2! ... q_p!) for q summing to k.
inline BigInt multinomial(unsigned k, const std::vector<unsigned>& qs) {
    BigInt num = factorial(k);
    for (unsigned q : qs) num /= factorial(q);
    return num;
}

} // namespace afm
