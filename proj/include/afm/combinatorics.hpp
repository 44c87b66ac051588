#pragma once

// Constrained-multiset enumeration and the exact loop-coefficient family
// T(L,k|s).  A multiset collects k vertex orders n_1..n_k (written as
// distinct values A with multiplicities Q), and
//
//   T(L,k|s) = (-1)^k (2(L+k)-1)!!  Sum over multisets of
//              prod_alpha 1 / ((A_alpha+3)^{Q_alpha} Q_alpha!)
//
// where the multisets satisfy sum Q = k and sum Q*A == s (exact mode) or
// <= s (at-most mode).  n_of_L sums T(L,k|2L-k) over k and gives the
// Stirling-series coefficients directly.

#include <afm/rational.hpp>

#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace afm {

enum class SumMode { exact, at_most };

// A multiset of k nonnegative integers, stored as (value, multiplicity)
// pairs with strictly increasing values.
struct ConstrainedMultiset {
    std::vector<std::pair<int, int>> parts; // (A, Q), A strictly increasing, Q >= 1

    int sum_q() const {
        int s = 0;
        for (auto& [a, q] : parts) s += q;
        return s;
    }
    int sum_qa() const {
        int s = 0;
        for (auto& [a, q] : parts) s += a * q;
        return s;
    }
    bool operator==(const ConstrainedMultiset&) const = default;
};

namespace detail {

// Recursive descent over strictly increasing A.  Each level consumes one
// (A, Q) pair; remaining parts can only add >= A+1 per part, which the
// "A * k_left > s_left" check prunes early.
inline void enumerate_rec(int k, int s, SumMode mode, int lo,
                          ConstrainedMultiset& cur,
                          std::vector<ConstrainedMultiset>& out) {
    if (k == 0) {
        if (s == 0 || mode == SumMode::at_most) out.push_back(cur);
        return;
    }
    for (int a = lo; a * k <= s; ++a) {
        for (int q = 1; q <= k && a * q <= s; ++q) {
            cur.parts.emplace_back(a, q);
            enumerate_rec(k - q, s - a * q, mode, a + 1, cur, out);
            cur.parts.pop_back();
        }
    }
}

} // namespace detail

// All multisets with sum Q = k and sum Q*A == s (or <= s), each exactly
// once, ordered lexicographically by their A-sequence.
inline std::vector<ConstrainedMultiset>
enumerate_multisets(int k, int s, SumMode mode) {
    std::vector<ConstrainedMultiset> out;
    ConstrainedMultiset cur;
    detail::enumerate_rec(k, s, mode, 0, cur, out);
    return out;
}

// Exact T(L,k|s).  Memoized: every model re-queries the same handful of
// (L, k, s) triples.  Writes are serialized; reads happen under the same
// lock, so concurrent callers are safe.
inline Rational t_coefficient(int L, int k, int s, SumMode mode = SumMode::exact) {
    static std::map<std::tuple<int, int, int, SumMode>, Rational> memo;
    static std::mutex memo_mutex;

    std::lock_guard<std::mutex> lock(memo_mutex);
    auto key = std::make_tuple(L, k, s, mode);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    Rational total(0);
    for (const auto& ms : enumerate_multisets(k, s, mode)) {
        Rational term(1);
        for (auto& [a, q] : ms.parts)
            term /= Rational(boost::multiprecision::pow(BigInt(a + 3), q) * factorial(q));
        total += term;
    }
    Rational value = Rational((k % 2) ? -1 : 1)
                   * Rational(double_factorial(2 * (L + k) - 1)) * total;
    memo.emplace(key, value);
    return value;
}

// n(L) = sum_k T(L,k|2L-k).  The k = 0 term vanishes for L > 0 because an
// empty multiset cannot reach a positive sum.
inline Rational n_of_L(int L) {
    Rational total(0);
    for (int k = 0; k <= 2 * L; ++k)
        total += t_coefficient(L, k, 2 * L - k);
    return total;
}

// Identity checks: (a) the at-most and exact conditional sums agree after
// summing over k, and (b) T(L,K+1|2L-K-2) = -T(L,K|<=2L-K-2) for
// 1 <= K <= 2L-2.  Both hold exactly for every L; (b) is what makes (a)
// telescope.
struct IdentityReport {
    bool all_pass = true;
    std::vector<std::string> failures;
};

inline IdentityReport verify_sum_identities(int L_max) {
    IdentityReport rep;
    for (int L = 1; L <= L_max; ++L) {
        Rational eq(0), ineq(0);
        for (int k = 0; k <= 2 * L; ++k) {
            eq += t_coefficient(L, k, 2 * L - k);
            ineq += t_coefficient(L, k, 2 * L - k, SumMode::at_most);
        }
        if (eq != ineq) {
            rep.all_pass = false;
            std::ostringstream os;
            os << "L=" << L << ": equality-sum " << eq.str()
               << " != inequality-sum " << ineq.str();
            rep.failures.push_back(os.str());
        }
        for (int K = 1; K <= 2 * L - 2; ++K) {
            Rational lhs = t_coefficient(L, K + 1, 2 * L - K - 2);
            Rational rhs = -t_coefficient(L, K, 2 * L - K - 2, SumMode::at_most);
            if (lhs != rhs) {
                rep.all_pass = false;
                std::ostringstream os;
                os << "L=" << L << ", K=" << K << ": " << lhs.str()
                   << " != " << rhs.str();
                rep.failures.push_back(os.str());
            }
        }
    }
    return rep;
}

// CSV table of all T(L,k|2L-k), L ascending then k ascending.  Both the
// normalized column (T divided by (2(L+k)-1)!!) and the raw value are
// available; rows with k > 2L never appear.
enum class TTableColumns { raw, normalized, both };

inline void emit_t_table(std::ostream& os, int L_max,
                         TTableColumns cols = TTableColumns::both) {
    switch (cols) {
    case TTableColumns::raw:        os << "L,k,T\n"; break;
    case TTableColumns::normalized: os << "L,k,T_over_dfact\n"; break;
    case TTableColumns::both:       os << "L,k,T_over_dfact,T\n"; break;
    }
    for (int L = 0; L <= L_max; ++L)
        for (int k = 0; k <= 2 * L; ++k) {
            Rational t = t_coefficient(L, k, 2 * L - k);
            Rational norm = t / Rational(double_factorial(2 * (L + k) - 1));
            os << L << ',' << k;
            if (cols != TTableColumns::raw) os << ',' << norm.str();
            if (cols != TTableColumns::normalized) os << ',' << t.str();
            os << '\n';
        }
}

} // namespace afm
