#pragma once

#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include "cmvp/errors.hpp"
#include "cmvp/recurrences.hpp"

namespace cmvp {

/// Christoffel transform of a monic family at theta.
///
/// A[n] = P_{n+1}(theta)/P_n(theta) and C[n] = u_n / A[n-1] for n = 0..n_max+1.
/// `transformed` holds the family (P_{n+1} - A_n P_n)/(x - theta) for
/// n = 0..n_max.
template <typename Scalar = double>
struct ChristoffelData {
    Scalar theta{};
    long n_max = 0;
    std::vector<Scalar> A;
    std::vector<Scalar> C;
    MonicThreeTerm<Scalar> transformed;
};

template <typename Scalar>
ChristoffelData<Scalar> christoffel(const MonicThreeTerm<Scalar>& src, Scalar theta, long n_max) {
    if (n_max < 0) throw DomainError("n_max must be >= 0");
    ChristoffelData<Scalar> out;
    out.theta = theta;
    out.n_max = n_max;
    out.A.reserve(static_cast<std::size_t>(n_max) + 2);
    out.C.reserve(static_cast<std::size_t>(n_max) + 2);
    for (long n = 0; n <= n_max + 1; ++n) {
        if (n == 0) {
            out.C.push_back(Scalar(0));
        } else {
            const Scalar prev = out.A.back();
            if (prev == Scalar(0)) {
                throw PoleError("theta is a zero of P_" + std::to_string(n) + "; Christoffel transform undefined", n);
            }
            out.C.push_back(src.u(n) / prev);
        }
        out.A.push_back(theta - src.b(n) - out.C.back());
    }
    std::vector<Scalar> tb, tu;
    for (long n = 0; n <= n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        tb.push_back(theta - out.A[i] - out.C[i + 1]);
        tu.push_back(out.C[i] * out.A[i]);
    }
    out.transformed = MonicThreeTerm<Scalar>::from_tables(std::move(tb), std::move(tu));
    return out;
}

/// Source coefficients recovered from (A, C): b_n = theta - A_n - C_n, u_n = C_n A_{n-1}.
template <typename Scalar>
MonicThreeTerm<Scalar> geronimus(const ChristoffelData<Scalar>& d) {
    std::vector<Scalar> b, u;
    for (long n = 0; n <= d.n_max + 1; ++n) {
        const auto i = static_cast<std::size_t>(n);
        b.push_back(d.theta - d.A[i] - d.C[i]);
        u.push_back(n == 0 ? Scalar(0) : d.C[i] * d.A[i - 1]);
    }
    return MonicThreeTerm<Scalar>::from_tables(std::move(b), std::move(u));
}

/// P_n(x) = Pt_n(x) - C_n Pt_{n-1}(x), for n <= n_max.
template <typename Scalar, typename X>
X geronimus_eval(const ChristoffelData<Scalar>& d, long n, const X& x) {
    if (n < 0 || n > d.n_max) throw DomainError("degree outside the transformed range");
    if (n == 0) return X(1);
    const auto vals = eval_monic_all(d.transformed, n, x);
    return vals[static_cast<std::size_t>(n)] - d.C[static_cast<std::size_t>(n)] * vals[static_cast<std::size_t>(n - 1)];
}

/// Symmetric Christoffel transform at +-theta (weight times theta^2 - x^2).
/// With sigma_n = S_{n+1}(theta)/S_n(theta): w_n = (theta - sigma_n) sigma_{n+1}.
template <typename Scalar>
SymmetricThreeTerm<Scalar> symmetric_christoffel(const SymmetricThreeTerm<Scalar>& src, long n_max,
                                                 Scalar theta = Scalar(2)) {
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    std::vector<Scalar> sigma{theta};
    for (long n = 1; n <= n_max + 1; ++n) {
        if (sigma.back() == Scalar(0)) {
            throw PoleError("theta is a zero of S_" + std::to_string(n), n);
        }
        sigma.push_back(theta - src.v(n) / sigma.back());
    }
    std::vector<Scalar> w{Scalar(0)};
    for (long n = 1; n <= n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        w.push_back((theta - sigma[i]) * sigma[i + 1]);
    }
    return SymmetricThreeTerm<Scalar>::from_table(std::move(w));
}

/// Q_n^-: b_n -> -b_n, same u_n.
template <typename Scalar>
MonicThreeTerm<Scalar> adjacent_companion(const ReflectionSequence<Scalar>& a) {
    return MonicThreeTerm<Scalar>([a](long n) { return a(n - 1) - a(n); },
                                  [a](long n) {
                                      const Scalar p = a(n - 1);
                                      return Scalar(1) - p * p;
                                  });
}

/// b_n -> g b_n, u_n -> g^2 u_n; the new monic family is g^n p_n(x/g).
template <typename Scalar>
MonicThreeTerm<Scalar> scale_map(const MonicThreeTerm<Scalar>& src, Scalar g) {
    if (g == Scalar(0)) throw DomainError("scale factor must be nonzero");
    return MonicThreeTerm<Scalar>([src, g](long n) { return g * src.b(n); },
                                  [src, g](long n) { return g * g * src.u(n); });
}

template <typename Scalar>
SymmetricThreeTerm<Scalar> scale_map(const SymmetricThreeTerm<Scalar>& src, Scalar g) {
    if (g == Scalar(0)) throw DomainError("scale factor must be nonzero");
    return SymmetricThreeTerm<Scalar>([src, g](long n) { return g * g * src.v(n); });
}

enum class ReductionBranch { theta_minus, theta_plus };  // theta = lambda - 1, lambda + 1

/// Christoffel transform of the pencil family at theta = lambda -+ 1 in
/// closed form, checked against the generic transform.
///
/// The transformed diagonal is (-1)^n (d1 lambda + d0) and
/// u~_n = lambda u*_n with u* independent of lambda.
template <typename Scalar = double>
struct LambdaReduction {
    ReductionBranch branch{};
    Scalar lambda{};
    ChristoffelData<Scalar> data;
    int d0 = 0;
    int d1 = 0;
    std::vector<Scalar> u_star;
    Scalar max_deviation{};  // from the generic transform
};

namespace detail {

template <typename Scalar>
bool close(const Scalar& x, const Scalar& y, double tol) {
    using std::abs;
    const Scalar scale = Scalar(1) + abs(y);
    return abs(x - y) <= Scalar(tol) * scale;
}

}  // namespace detail

template <typename Scalar>
LambdaReduction<Scalar> lambda_reduction(const ReflectionSequence<Scalar>& a, Scalar lambda, ReductionBranch branch,
                                         long n_max, double tol = 1e-10) {
    if (!(lambda > Scalar(0))) throw DomainError("lambda reduction needs lambda > 0");
    if (n_max < 0) throw DomainError("n_max must be >= 0");
    const bool minus = branch == ReductionBranch::theta_minus;
    const Scalar theta = minus ? lambda - Scalar(1) : lambda + Scalar(1);

    LambdaReduction<Scalar> out;
    out.branch = branch;
    out.lambda = lambda;
    out.d1 = 1;
    out.d0 = minus ? 1 : -1;
    out.data.theta = theta;
    out.data.n_max = n_max;
    for (long n = 0; n <= n_max + 1; ++n) {
        const bool even = n % 2 == 0;
        const Scalar an = a(n), ap = a(n - 1);
        if (minus) {
            out.data.A.push_back(even ? Scalar(-1) - an : lambda * (Scalar(1) - an));
            out.data.C.push_back(even ? lambda * (Scalar(1) + ap) : ap - Scalar(1));
        } else {
            out.data.A.push_back(even ? Scalar(1) - an : lambda * (Scalar(1) - an));
            out.data.C.push_back(even ? lambda * (Scalar(1) + ap) : Scalar(1) + ap);
        }
    }
    std::vector<Scalar> tb, tu;
    for (long n = 0; n <= n_max; ++n) {
        const Scalar sgn = n % 2 == 0 ? Scalar(1) : Scalar(-1);
        const Scalar an = a(n), ap = a(n - 1);
        tb.push_back(sgn * (lambda + Scalar(out.d0)));
        const Scalar us = minus ? -(Scalar(1) + sgn * an) * (Scalar(1) + sgn * ap) : (Scalar(1) + ap) * (Scalar(1) - an);
        out.u_star.push_back(n == 0 ? Scalar(0) : us);
        tu.push_back(lambda * out.u_star.back());
    }
    out.data.transformed = MonicThreeTerm<Scalar>::from_tables(tb, tu);

    // The generic ratio recursion amplifies rounding when theta sits inside the
    // spectrum, so floating inputs are cross-checked in extended precision.
    using Check = std::conditional_t<std::is_floating_point_v<Scalar>, long double, Scalar>;
    const ReflectionSequence<Check> ac([a](long n) { return static_cast<Check>(a(n)); });
    const auto generic = christoffel(pencil_recurrence(ac, static_cast<Check>(lambda)), static_cast<Check>(theta), n_max);
    using std::abs;
    Scalar worst(0);
    auto track = [&](const Scalar& xs, const Check& y, const char* what, long n) {
        const Check x = static_cast<Check>(xs);
        const Check dev = abs(x - y) / (Check(1) + abs(y));
        if (dev > static_cast<Check>(worst)) worst = static_cast<Scalar>(dev);
        if (!detail::close(x, y, tol)) {
            throw ConsistencyError(std::string("closed-form ") + what + "_" + std::to_string(n) +
                                   " disagrees with the generic Christoffel transform");
        }
    };
    for (long n = 0; n <= n_max + 1; ++n) {
        const auto i = static_cast<std::size_t>(n);
        track(out.data.A[i], generic.A[i], "A", n);
        track(out.data.C[i], generic.C[i], "C", n);
    }
    for (long n = 0; n <= n_max; ++n) {
        track(tb[static_cast<std::size_t>(n)], generic.transformed.b(n), "b", n);
        track(tu[static_cast<std::size_t>(n)], generic.transformed.u(n), "u", n);
    }
    out.max_deviation = worst;
    return out;
}

/// Splitting of a family with diagonal (-1)^n chi into the pair (P, Pt) with
/// S_{2n}(x) = P_n(x^2 + shift) and S_{2n+1}(x) = (x - chi) Pt_n(x^2 + shift).
template <typename Scalar = double>
struct ChiharaSplit {
    Scalar chi{};
    Scalar alpha_shift{};
    Scalar theta{};  // chi^2 + alpha_shift
    long n_max = 0;
    std::vector<Scalar> A;  // A_n = -v_{2n+1}
    std::vector<Scalar> C;  // C_n = -v_{2n}
    MonicThreeTerm<Scalar> P;
    MonicThreeTerm<Scalar> P_tilde;
    std::vector<std::string> warnings;
};

template <typename Scalar>
ChiharaSplit<Scalar> chihara_split(const MonicThreeTerm<Scalar>& sym, Scalar chi, Scalar alpha_shift, long n_max) {
    if (n_max < 0) throw DomainError("n_max must be >= 0");
    ChiharaSplit<Scalar> out;
    out.chi = chi;
    out.alpha_shift = alpha_shift;
    out.theta = chi * chi + alpha_shift;
    out.n_max = n_max;
    using std::abs;
    for (long n = 0; n <= 2 * n_max + 2; ++n) {
        const Scalar expected = n % 2 == 0 ? chi : -chi;
        if (abs(sym.b(n) - expected) > Scalar(1e-12) * (Scalar(1) + abs(chi))) {
            throw DomainError("diagonal entry b_" + std::to_string(n) + " is not (-1)^n chi");
        }
    }
    for (long n = 0; n <= n_max + 1; ++n) {
        out.C.push_back(-sym.u(2 * n));
        out.A.push_back(-sym.u(2 * n + 1));
    }
    std::vector<Scalar> pb, pu, tb, tu;
    for (long n = 0; n <= n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        pb.push_back(out.theta - out.A[i] - out.C[i]);
        pu.push_back(n == 0 ? Scalar(0) : out.C[i] * out.A[i - 1]);
        tb.push_back(out.theta - out.A[i] - out.C[i + 1]);
        tu.push_back(out.C[i] * out.A[i]);
        if (n >= 1 && !(out.C[i] > Scalar(0))) {
            out.warnings.push_back("C_" + std::to_string(n) + " <= 0: P is not positive definite");
        }
        if (!(out.A[i] > Scalar(0))) {
            out.warnings.push_back("A_" + std::to_string(n) + " <= 0: Pt is not positive definite");
        }
    }
    out.P = MonicThreeTerm<Scalar>::from_tables(std::move(pb), std::move(pu));
    out.P_tilde = MonicThreeTerm<Scalar>::from_tables(std::move(tb), std::move(tu));
    return out;
}

/// Inverse bookkeeping: b_n = (-1)^n chi, v_{2n} = -C_n, v_{2n+1} = -A_n.
template <typename Scalar>
MonicThreeTerm<Scalar> chihara_compose(const ChiharaSplit<Scalar>& s) {
    std::vector<Scalar> b, u;
    for (long n = 0; n <= 2 * s.n_max + 3; ++n) {
        b.push_back(n % 2 == 0 ? s.chi : -s.chi);
        const auto half = static_cast<std::size_t>(n / 2);
        u.push_back(n == 0 ? Scalar(0) : (n % 2 == 0 ? -s.C[half] : -s.A[half]));
    }
    return MonicThreeTerm<Scalar>::from_tables(std::move(b), std::move(u));
}

/// Parameters of the big -1 Jacobi identification.
///
/// From (xi, eta, lambda): alpha = 2 xi + 1, beta = 2 eta + 1,
/// c = (1 - lambda)/(1 + lambda), g = -(1 + lambda). The pencil family
/// rescaled by 1/g and then reflected x -> p x + q (p = -1, q = 0) is the
/// monic big -1 Jacobi family orthogonal for w(alpha, beta, c).
template <typename Scalar = double>
struct BigM1Parameters {
    Scalar xi{}, eta{}, lambda{};
    Scalar alpha{}, beta{}, c{}, g{};
    Scalar reported_c{};  // (lambda - 1)/(lambda + 1), for comparison only
    Scalar affine_p{-1};
    Scalar affine_q{0};
    long n_max = 0;
    std::vector<Scalar> A_prime, C_prime;  // A_n/g, C_n/g at theta = lambda - 1
    std::vector<Scalar> b_star, u_star;    // (theta - A_n - C_n)/g, C_n A_{n-1}/g^2
    MonicThreeTerm<Scalar> mapped;         // b = p b* + q, u = p^2 u*
};

template <typename Scalar>
BigM1Parameters<Scalar> big_m1_parameters(Scalar xi, Scalar eta, Scalar lambda, long n_max) {
    if (!(lambda > Scalar(0))) throw DomainError("big -1 identification needs lambda > 0");
    const auto a = jacobi_opuc_reflections(xi, eta);
    const auto red = lambda_reduction(a, lambda, ReductionBranch::theta_minus, n_max);

    BigM1Parameters<Scalar> out;
    out.xi = xi;
    out.eta = eta;
    out.lambda = lambda;
    out.alpha = Scalar(2) * xi + Scalar(1);
    out.beta = Scalar(2) * eta + Scalar(1);
    out.c = (Scalar(1) - lambda) / (Scalar(1) + lambda);
    out.reported_c = (lambda - Scalar(1)) / (lambda + Scalar(1));
    out.g = -(Scalar(1) + lambda);
    out.n_max = n_max;
    const Scalar theta = red.data.theta;
    const Scalar g = out.g;
    std::vector<Scalar> mb, mu;
    for (long n = 0; n <= n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        out.A_prime.push_back(red.data.A[i] / g);
        out.C_prime.push_back(red.data.C[i] / g);
        out.b_star.push_back((theta - red.data.A[i] - red.data.C[i]) / g);
        out.u_star.push_back(n == 0 ? Scalar(0) : red.data.C[i] * red.data.A[i - 1] / (g * g));
        mb.push_back(out.affine_p * out.b_star.back() + out.affine_q);
        mu.push_back(out.affine_p * out.affine_p * out.u_star.back());
    }
    out.mapped = MonicThreeTerm<Scalar>::from_tables(std::move(mb), std::move(mu));
    return out;
}

}  // namespace cmvp
