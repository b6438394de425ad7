#pragma once
// Reference computations used only by tests. Each one is written from the
// defining formulas, not from the library code it checks.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "cmvp/cmv.hpp"

namespace oracle {

inline Eigen::MatrixXd dense(const cmvp::BandedSymmetricMatrix<double>& m) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.dim(), m.dim());
    for (long i = 0; i < m.dim(); ++i) {
        for (long j = 0; j < m.dim(); ++j) out(i, j) = m(i, j);
    }
    return out;
}

// Theta_k = [[a_k, r_k], [r_k, -a_k]] placed at rows (k, k+1).
inline void place_block(Eigen::MatrixXd& m, long k, double a) {
    const double r = std::sqrt(1.0 - a * a);
    m(k, k) = a;
    m(k, k + 1) = r;
    m(k + 1, k) = r;
    m(k + 1, k + 1) = -a;
}

/// L = Theta_0 + Theta_2 + ..., M = 1 + Theta_1 + Theta_3 + ... + trailing a_{d-1}.
inline Eigen::MatrixXd dense_L(const std::vector<double>& a, long d) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(d, d);
    for (long k = 0; k + 1 < d; k += 2) place_block(L, k, a[static_cast<std::size_t>(k)]);
    return L;
}

inline Eigen::MatrixXd dense_M(const std::vector<double>& a, long d) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
    M(0, 0) = 1.0;
    for (long k = 1; k + 1 < d; k += 2) place_block(M, k, a[static_cast<std::size_t>(k)]);
    M(d - 1, d - 1) = a[static_cast<std::size_t>(d - 1)];
    return M;
}

inline double max_abs_top_rows(const Eigen::MatrixXd& x, long rows) { return x.topRows(rows).cwiseAbs().maxCoeff(); }

/// Deterministic values in (-0.9, 0.9).
inline std::vector<double> random_reflections(std::uint64_t seed, long count) {
    std::vector<double> out;
    std::uint64_t s = seed;
    for (long i = 0; i < count; ++i) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        const double unit = static_cast<double>(s >> 11) / 9007199254740992.0;
        out.push_back(1.8 * unit - 0.9);
    }
    return out;
}

/// Monic three-term value in long double.
inline long double monic_ld(const std::function<long double(long)>& b, const std::function<long double(long)>& u,
                            long n, long double x) {
    long double prev = 0, cur = 1;
    for (long k = 0; k < n; ++k) {
        const long double next = (x - b(k)) * cur - (k == 0 ? 0.0L : u(k)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Jacobi reflection formula in long double.
inline long double jacobi_a(long double xi, long double eta, long n) {
    if (n == -1) return -1;
    const long double den = n + xi + eta + 2;
    return n % 2 == 0 ? (eta - xi) / den : -(1 + xi + eta) / den;
}

/// Eigenvalues of [[p, q], [q, s]].
inline std::pair<double, double> eig2(double p, double q, double s) {
    const double mid = 0.5 * (p + s);
    const double rad = std::sqrt(0.25 * (p - s) * (p - s) + q * q);
    return {mid - rad, mid + rad};
}

/// Nested relation m = -1/(z - 1/(z + lambda^2 m)) iterated from -1/z.
inline std::complex<double> m_per_iterated(std::complex<double> z, double lambda, int iterations = 20000) {
    std::complex<double> m = -1.0 / z;
    for (int i = 0; i < iterations; ++i) {
        const std::complex<double> next = -1.0 / (z - 1.0 / (z + lambda * lambda * m));
        if (std::abs(next - m) < 1e-16 * std::abs(m)) return next;
        m = next;
    }
    return m;
}

/// Monic Chebyshev values at x = 2 cos(tau).
inline double first_kind_monic(long n, double tau) { return n == 0 ? 1.0 : 2.0 * std::cos(n * tau); }
inline double third_kind_monic(long n, double tau) { return std::cos((n + 0.5) * tau) / std::cos(0.5 * tau); }
inline double fourth_kind_monic(long n, double tau) { return std::sin((n + 0.5) * tau) / std::sin(0.5 * tau); }

/// Composite Gauss-Legendre with the substitution x = lo + (hi-lo) s^k to
/// soften algebraic endpoint behaviour at lo.
inline double graded_integral(const std::function<double(double)>& f, double lo, double hi, int grade = 4,
                              int panels = 400) {
    static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                 0.9061798459386640};
    static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                                 0.2369268850561891};
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double s0 = static_cast<double>(p) / panels, s1 = static_cast<double>(p + 1) / panels;
        for (int i = 0; i < 5; ++i) {
            const double s = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * gx[i];
            const double jac = (hi - lo) * grade * std::pow(s, grade - 1);
            sum += 0.5 * (s1 - s0) * gw[i] * jac * f(lo + (hi - lo) * std::pow(s, grade));
        }
    }
    return sum;
}

}  // namespace oracle
