#pragma once

// The N-species four-fermi model.  The Grassmann integral collapses to a
// closed-form partition function (exact ground truth); the auxiliary-field
// integral
//
//   Z = sqrt(N/2pi) int dt (omega0 + lambda t)
//                         exp[-N (t^2/2 - ln(omega + lambda t))]
//
// is then approximated two ways.  With the prefactor kept explicit, the
// gap equation Omega^2 - omega Omega - lambda^2 = 0 gives two saddles
// Omega0^(+-) and the loop sums use the coefficients T(L,k|2L-k) and
// T(L,k|2L-k-1).  With the prefactor absorbed, the gap equation becomes a
// cubic whose three roots are 1/N series Omega0 + Omega1/N + Omega2/N^2;
// the third root sits at the zero of the prefactor, Omega0 = -delta_omega,
// and is responsible for the weak-coupling blow-up when omega0 << omega.
// The absorbed-prefactor loop formulas below are assembled from the
// component expansions of the prefactor (P1, P2) and the vertex factor
// (L1, L2) in powers of 1/N, truncated per loop order.

#include <afm/combinatorics.hpp>
#include <afm/laplace.hpp>
#include <afm/rational.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace afm {

struct FermionParams {
    int N = 2;
    double omega = 1.0;
    double omega0 = 1.0;
    double lambda = 1.0;

    double delta_omega() const { return omega0 - omega; }
    void validate() const {
        if (N < 1 || !(omega > 0.0) || !(omega0 > 0.0) || !(lambda > 0.0))
            throw std::domain_error("FermionParams: N, omega, omega0, lambda must be positive");
    }
};

// Closed-form partition function from the Grassmann integral.
inline double exact_partition(const FermionParams& p) {
    p.validate();
    const double N = p.N, w = p.omega, w0 = p.omega0, lam = p.lambda;
    double total = 0.0;
    for (int r = 0; r <= p.N / 2; ++r) {
        // log-space for the factorial ratio and the powers: at large N the
        // two factors overflow/underflow separately but not combined
        double log_term = std::lgamma(N + 1.0) - std::lgamma(r + 1.0) -
                          std::lgamma(N - 2.0 * r + 1.0) +
                          (N - 2.0 * r - 1.0) * std::log(w) +
                          r * std::log(lam * lam / (2.0 * N));
        total += std::exp(log_term) * (w0 * w + lam * lam / N * (N - 2 * r));
    }
    return total;
}

// Same sum in exact rational arithmetic (for rational parameter values).
inline Rational exact_partition_rational(int N, const Rational& w, const Rational& w0,
                                         const Rational& lam) {
    Rational total(0);
    for (int r = 0; r <= N / 2; ++r) {
        Rational comb(factorial(static_cast<unsigned>(N)),
                      factorial(static_cast<unsigned>(r)) *
                          factorial(static_cast<unsigned>(N - 2 * r)));
        total += comb * (w0 * w + lam * lam * Rational(N - 2 * r, N)) *
                 w.pow(N - 2 * r - 1) * (lam * lam / Rational(2 * N)).pow(r);
    }
    return total;
}

// One root of the cubic gap equation as a 1/N series
// Omega = Omega0 + Omega1/N + Omega2/N^2 + ...
struct SaddleBranch {
    enum class Index { plus, minus, third } index;
    double Omega0 = 0.0;
    double Omega1 = 0.0;
    double Omega2 = 0.0;
    double A = 0.0;
    double B = 0.0;
    bool expandable = true; // false when B = 0 (colliding saddles)
};

inline const char* branch_name(SaddleBranch::Index i) {
    switch (i) {
    case SaddleBranch::Index::plus: return "plus";
    case SaddleBranch::Index::minus: return "minus";
    default: return "third";
    }
}

// Leading orders: Omega0 solves the quadratic (plus/minus) or sits at the
// prefactor zero (third); the corrections follow from
// Omega1 = lambda^2 Omega0 / B,  Omega2 = (lambda^2 Omega1 - Omega1^2 A)/B
// with A = 3 Omega0 - omega + delta_omega and
// B = 3 Omega0^2 - 2(omega - delta_omega) Omega0 - omega delta_omega - lambda^2.
inline std::vector<SaddleBranch> solve_branches(const FermionParams& p) {
    p.validate();
    const double w = p.omega, lam = p.lambda, dw = p.delta_omega();
    const double disc = std::sqrt(w * w + 4.0 * lam * lam);
    std::vector<SaddleBranch> out;
    const std::array<std::pair<SaddleBranch::Index, double>, 3> leading = {{
        {SaddleBranch::Index::plus, (w + disc) / 2.0},
        {SaddleBranch::Index::minus, (w - disc) / 2.0},
        {SaddleBranch::Index::third, -dw},
    }};
    for (auto [idx, O0] : leading) {
        SaddleBranch b;
        b.index = idx;
        b.Omega0 = O0;
        b.A = 3.0 * O0 - w + dw;
        b.B = 3.0 * O0 * O0 - 2.0 * (w - dw) * O0 - w * dw - lam * lam;
        if (b.B == 0.0) {
            b.expandable = false;
        } else {
            b.Omega1 = lam * lam * O0 / b.B;
            b.Omega2 = (lam * lam * b.Omega1 - b.Omega1 * b.Omega1 * b.A) / b.B;
        }
        out.push_back(b);
    }
    return out;
}

namespace detail {

// Strict sign: the loop formulas multiply by sign(Omega0) (and, on the
// third branch, sign(Omega1)); an exact zero only occurs in cases handled
// before this is called, so it is an error here.
inline double strict_sign(double x) {
    if (x == 0.0)
        throw std::domain_error("sign of exactly zero saddle quantity");
    return x > 0.0 ? 1.0 : -1.0;
}

inline double t_val(int L, int k, int s) {
    if (s < 0) return 0.0;
    return t_coefficient(L, k, s).to_double();
}

} // namespace detail

// Explicit-prefactor loop sum over the two quadratic saddles.  Any loop
// order is supported; the published tables go to l = 3.
inline double method1_z(const FermionParams& p, int l) {
    p.validate();
    if (l < 0) throw std::domain_error("method1_z: l must be >= 0");
    const double N = p.N, w = p.omega, lam = p.lambda, dw = p.delta_omega();
    const double disc = std::sqrt(w * w + 4.0 * lam * lam);
    double total = 0.0;
    for (double O : {(w + disc) / 2.0, (w - disc) / 2.0}) {
        const double gauss = std::exp(-N * (O - w) * (O - w) / (2.0 * lam * lam));
        if (l == 0) {
            total += gauss * std::pow(O, N) * (O + dw);
            continue;
        }
        const double D = O * O + lam * lam;
        double sum = 0.0;
        for (int L = 0; L < l; ++L)
            for (int k = 0; k <= 2 * L; ++k)
                sum += std::pow(lam * lam / D, L + k) / std::pow(N, L) *
                       ((O + dw) * detail::t_val(L, k, 2 * L - k) -
                        O * detail::t_val(L, k, 2 * L - k - 1));
        total += detail::strict_sign(O) * std::pow(O, N + 1) / std::sqrt(D) * gauss * sum;
    }
    return total;
}

// Engine route for one quadratic saddle: jet of f = (O-omega)^2/(2 lam^2)
// - ln O, g = O + delta_omega at Omega0.  Used by the tests to confirm the
// closed-form T-combination above against the generic machinery.
inline DerivativeJet<double> fermion_jet(const FermionParams& p, double Omega0, int L_max) {
    DerivativeJet<double> jet;
    const double lam = p.lambda, w = p.omega;
    jet.f0 = (Omega0 - w) * (Omega0 - w) / (2.0 * lam * lam) - std::log(std::fabs(Omega0));
    for (int n = 2; n <= 2 * L_max + 3; ++n) {
        double dln = ((n % 2) ? -1.0 : 1.0) *
                     Rational(factorial(static_cast<unsigned>(n - 1))).to_double() /
                     std::pow(Omega0, n); // d^n/dO^n of -ln O
        jet.f_derivs.push_back((n == 2 ? 1.0 / (lam * lam) : 0.0) + dln);
    }
    jet.g_derivs.push_back(Omega0 + p.delta_omega());
    jet.g_derivs.push_back(1.0);
    for (int m = 2; m <= 2 * L_max; ++m) jet.g_derivs.push_back(0.0);
    return jet;
}

// Absorbed-prefactor loop sum over all three branches, assembled from the
// component expansions; supported through l = 3 (the published truncation
// prescriptions stop there).
inline double method2_z(const FermionParams& p, int l) {
    p.validate();
    if (l < 0 || l > 3)
        throw std::domain_error("method2_z: supported loop orders are 0..3");
    const double N = p.N, w = p.omega, lam = p.lambda, dw = p.delta_omega();
    auto branches = solve_branches(p);
    double total = 0.0;

    for (int i = 0; i < 2; ++i) { // quadratic branches
        const SaddleBranch& b = branches[static_cast<std::size_t>(i)];
        if (!b.expandable)
            throw std::domain_error(std::string("method2_z: branch '") +
                                    branch_name(b.index) + "' is not expandable (B = 0)");
        const double O0 = b.Omega0, O1 = b.Omega1, O2 = b.Omega2;
        const double D = O0 * O0 + lam * lam;
        const double gauss = std::exp(-N * (O0 - w) * (O0 - w) / (2.0 * lam * lam));
        if (l == 0) {
            total += gauss * std::pow(O0, N) * (O0 + dw);
            continue;
        }
        const double Z1 = detail::strict_sign(O0) * gauss * std::pow(O0, N + 1) *
                          (O0 + dw) / std::sqrt(D);
        if (l == 1) {
            total += Z1;
            continue;
        }
        const double L1 = -3.0 * std::pow(lam, 4) / (4.0 * D * D) +
                          5.0 * std::pow(lam, 6) / (6.0 * D * D * D);
        if (l == 2) {
            // 1/N part of the prefactor expansion with Omega2 dropped,
            // plus the leading vertex factor.
            const double P1L1 = -(O1 * O1) / (2.0 * lam * lam) -
                                0.5 * (O1 / O0) * (O1 / O0) +
                                lam * lam / D *
                                    (O1 / O0 - 0.5 * std::pow(O0 / (O0 + dw), 2)) +
                                O1 / (O0 + dw) + L1;
            total += Z1 * (1.0 + P1L1 / N);
            continue;
        }
        // l == 3: full 1/N and 1/N^2 components.
        const double F11 = -((O1 * O1) + 2.0 * (O0 - w) * O2) / (2.0 * lam * lam);
        const double F21 = F11 * F11 / 2.0 - O1 * O2 / (lam * lam);
        const double F12 = O2 / O0 - 0.5 * (O1 / O0) * (O1 / O0);
        const double F22 = F12 * F12 / 2.0 - O1 * O2 / (O0 * O0) +
                           std::pow(O1 / O0, 3) / 3.0;
        const double F13 =
            lam * lam / D * (O1 / O0 - 0.5 * std::pow(O0 / (O0 + dw), 2));
        const double F23 = 1.5 * F13 * F13 +
                           lam * lam / D *
                               (O2 / O0 + O0 * O0 * O1 / std::pow(O0 + dw, 3) -
                                1.5 * (O1 / O0) * (O1 / O0));
        const double P1 = F11 + F12 + F13 + O1 / (O0 + dw);
        const double P2 = F21 + F22 + F23 + O2 / (O0 + dw) + F11 * F12 +
                          F11 * F13 + F12 * F13 +
                          O1 / (O0 + dw) * (F11 + F12 + F13);
        const double F04 = std::pow(O0 + dw, 2) * D;
        const double F14 = 2.0 * O1 / (O0 + dw) + 2.0 * O0 * O1 / D +
                           lam * lam * O0 * O0 / (std::pow(O0 + dw, 2) * D);
        auto R0 = [&](int M) { return std::pow(O0 + dw, M - 2) / D; };
        auto R1 = [&](int M) {
            return std::pow(O0 / (O0 + dw), M) + (M - 2) * O1 / (O0 + dw) -
                   2.0 * O0 * O1 / D -
                   lam * lam * O0 * O0 / (std::pow(O0 + dw, 2) * D);
        };
        const double L2 = -2.5 * std::pow(lam, 6) / std::pow(D, 3) +
                          (329.0 / 32.0) * std::pow(lam, 8) / std::pow(D, 4) -
                          (105.0 / 8.0) * std::pow(lam, 10) / std::pow(D, 5) +
                          (385.0 / 72.0) * std::pow(lam, 12) / std::pow(D, 6) -
                          L1 * F14 - 0.75 * std::pow(lam, 4) * R0(4) * R1(4) / F04 +
                          (5.0 / 3.0) * std::pow(lam, 6) * R0(3) * R0(3) * R1(3) / F04;
        total += Z1 * (1.0 + (P1 + L1) / N + (P2 + L2 + P1 * L1) / (N * N));
    }

    // Third branch: first contributes at 2-loop; identically zero when
    // delta_omega = 0 (the saddle sits exactly on the prefactor zero).
    if (l >= 2 && dw != 0.0) {
        const SaddleBranch& b = branches[2];
        if (!b.expandable)
            throw std::domain_error("method2_z: branch 'third' is not expandable (B = 0)");
        const double O0 = b.Omega0, O1 = b.Omega1, O2 = b.Omega2;
        if (O1 != 0.0) {
            const double pre = detail::strict_sign(O1) *
                               std::exp(-N * (O0 - w) * (O0 - w) / (2.0 * lam * lam)) *
                               std::pow(O0, N) * O1 * O1 /
                               (std::exp(1.0) * std::sqrt(N) * lam);
            if (l == 2) {
                total += pre / N * (13.0 / 12.0);
            } else {
                const double F11 = -((O1 * O1) + 2.0 * (O0 - w) * O2) / (2.0 * lam * lam);
                const double F12 = O2 / O0 - 0.5 * (O1 / O0) * (O1 / O0);
                // On this branch the (Omega + delta_omega) factor itself
                // vanishes at leading order, so its expansion differs:
                const double F13 = O2 / O1 - O1 * O1 / (2.0 * lam * lam) -
                                   0.5 * (O1 / O0) * (O1 / O0);
                const double P23 = F11 + F12 + F13 + O2 / O1;
                total += pre * (313.0 / 288.0 / N +
                                (-13.0 / 12.0 *
                                     ((O1 / O0) * (O1 / O0) + O1 * O1 / (lam * lam)) +
                                 313.0 / 288.0 * P23) /
                                    (N * N));
            }
        }
    }
    return total;
}

// Fully degenerate companion model (prefactor identically 1): same saddle
// structure, only the first T-combination survives.  lambda_eff absorbs
// the sqrt(3/2) coupling redefinition of that model.
inline double ks_model_z(int N, double omega, double lambda_eff, int l) {
    if (N < 1 || !(omega > 0.0) || !(lambda_eff > 0.0) || l < 0)
        throw std::domain_error("ks_model_z: invalid arguments");
    const double w = omega, lam = lambda_eff;
    const double disc = std::sqrt(w * w + 4.0 * lam * lam);
    double total = 0.0;
    for (double O : {(w + disc) / 2.0, (w - disc) / 2.0}) {
        const double gauss = std::exp(-N * (O - w) * (O - w) / (2.0 * lam * lam));
        if (l == 0) {
            total += gauss * std::pow(O, N);
            continue;
        }
        const double D = O * O + lam * lam;
        double sum = 0.0;
        for (int L = 0; L < l; ++L)
            for (int k = 0; k <= 2 * L; ++k)
                sum += std::pow(lam * lam / D, L + k) / std::pow(double(N), L) *
                       detail::t_val(L, k, 2 * L - k);
        total += detail::strict_sign(O) * std::pow(O, N + 1) / std::sqrt(D) * gauss * sum;
    }
    return total;
}

// Table emitters -------------------------------------------------------

struct FermionTableOptions {
    int N = 2;
    double omega = 1.0;
    std::vector<double> omega0_list{1e2, 1.0, 1e-2};
    std::vector<double> lambda_grid{1e-3, 1e-2, 1e-1, 1.0, 10.0};
    int loops = 3;
    bool absorbed_prefactor = false; // false: explicit-prefactor method
    int precision = 6;
};

// Blocks by omega0, rows by lambda; per loop order a value column and a
// ratio-to-exact column, preceded by the exact value.
inline void emit_fermion_table(std::ostream& os, const FermionTableOptions& opt) {
    os << "omega0,lambda,exact";
    for (int l = 0; l <= opt.loops; ++l) {
        if (l == 0) os << ",tree,tree_ratio";
        else os << ',' << l << "loop," << l << "loop_ratio";
    }
    os << '\n';
    char buf[64];
    for (double w0 : opt.omega0_list) {
        for (double lam : opt.lambda_grid) {
            FermionParams p{opt.N, opt.omega, w0, lam};
            double exact = exact_partition(p);
            std::snprintf(buf, sizeof buf, "%.*g,%.*g,%.*g", opt.precision, w0,
                          opt.precision, lam, opt.precision, exact);
            os << buf;
            for (int l = 0; l <= opt.loops; ++l) {
                double z = opt.absorbed_prefactor ? method2_z(p, l) : method1_z(p, l);
                std::snprintf(buf, sizeof buf, ",%.*g,%.*g", opt.precision, z,
                              opt.precision, z / exact);
                os << buf;
            }
            os << '\n';
        }
    }
}

// Degenerate-model table at fixed N; the exact reference is the
// closed-form partition function of the two-species model at omega0 =
// omega with the coupling mapped back by lambda = lambda_eff / sqrt(3/2).
inline void emit_ks_table(std::ostream& os, int N, double omega,
                          const std::vector<double>& lambda_grid, int loops,
                          int precision) {
    os << "lambda_eff,exact";
    for (int l = 0; l <= loops; ++l) {
        if (l == 0) os << ",tree,tree_ratio";
        else os << ',' << l << "loop," << l << "loop_ratio";
    }
    os << '\n';
    char buf[64];
    for (double lam : lambda_grid) {
        double lam_eff = std::sqrt(1.5) * lam;
        double exact = exact_partition({2, omega, omega, lam});
        std::snprintf(buf, sizeof buf, "%.*g,%.*g", precision, lam_eff, precision, exact);
        os << buf;
        for (int l = 0; l <= loops; ++l) {
            double z = ks_model_z(N, omega, lam_eff, l);
            std::snprintf(buf, sizeof buf, ",%.*g,%.*g", precision, z, precision,
                          z / exact);
            os << buf;
        }
        os << '\n';
    }
}

// Third-branch 3-loop contribution sampled on a lambda grid, one column
// per omega0.
inline void emit_figure2(std::ostream& os, const std::vector<double>& omega0_list,
                         const std::vector<double>& lambda_grid, int precision,
                         int N = 2, double omega = 1.0);

// Third-branch contribution at 3-loop, isolated.
inline double third_branch_z3(const FermionParams& p) {
    p.validate();
    const double dw = p.delta_omega();
    if (dw == 0.0) return 0.0;
    const double N = p.N, w = p.omega, lam = p.lambda;
    auto branches = solve_branches(p);
    const SaddleBranch& b = branches[2];
    if (!b.expandable)
        throw std::domain_error("third_branch_z3: branch 'third' is not expandable (B = 0)");
    const double O0 = b.Omega0, O1 = b.Omega1, O2 = b.Omega2;
    if (O1 == 0.0) return 0.0;
    const double pre = detail::strict_sign(O1) *
                       std::exp(-N * (O0 - w) * (O0 - w) / (2.0 * lam * lam)) *
                       std::pow(O0, N) * O1 * O1 / (std::exp(1.0) * std::sqrt(N) * lam);
    const double F11 = -((O1 * O1) + 2.0 * (O0 - w) * O2) / (2.0 * lam * lam);
    const double F12 = O2 / O0 - 0.5 * (O1 / O0) * (O1 / O0);
    const double F13 = O2 / O1 - O1 * O1 / (2.0 * lam * lam) -
                       0.5 * (O1 / O0) * (O1 / O0);
    const double P23 = F11 + F12 + F13 + O2 / O1;
    return pre * (313.0 / 288.0 / N +
                  (-13.0 / 12.0 * ((O1 / O0) * (O1 / O0) + O1 * O1 / (lam * lam)) +
                   313.0 / 288.0 * P23) /
                      (N * N));
}

inline void emit_figure2(std::ostream& os, const std::vector<double>& omega0_list,
                         const std::vector<double>& lambda_grid, int precision,
                         int N, double omega) {
    os << "lambda";
    char buf[64];
    for (double w0 : omega0_list) {
        std::snprintf(buf, sizeof buf, ",z3_omega0_%.*g", precision, w0);
        os << buf;
    }
    os << '\n';
    for (double lam : lambda_grid) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, lam);
        os << buf;
        for (double w0 : omega0_list) {
            double z3 = (w0 == omega) ? 0.0
                                      : third_branch_z3({N, omega, w0, lam});
            std::snprintf(buf, sizeof buf, ",%.*g", precision, z3);
            os << buf;
        }
        os << '\n';
    }
}

// Per-(omega0) sweep of the third-branch 3-loop term.
inline std::vector<std::vector<double>>
figure2_data(const std::vector<double>& omega0_list,
             const std::vector<double>& lambda_grid, int N = 2, double omega = 1.0) {
    std::vector<std::vector<double>> out;
    for (double w0 : omega0_list) {
        std::vector<double> col;
        for (double lam : lambda_grid)
            col.push_back(w0 == omega ? 0.0 : third_branch_z3({N, omega, w0, lam}));
        out.push_back(std::move(col));
    }
    return out;
}

} // namespace afm
