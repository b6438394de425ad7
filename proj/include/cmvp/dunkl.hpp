#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cmath>
#include <vector>

#include "cmvp/errors.hpp"
#include "cmvp/maps.hpp"
#include "cmvp/recurrences.hpp"

namespace cmvp {

// Expression templates off: generic code relies on auto and lambda return deduction.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// Dense coefficient vector, coeffs[k] multiplies x^k. Trailing zeros are
/// trimmed so the zero polynomial has no coefficients.
template <typename T>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(int constant) : Polynomial(T(constant)) {}
    Polynomial(const T& constant) : coeffs_{constant} { trim(); }
    explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Polynomial x() { return Polynomial(std::vector<T>{T(0), T(1)}); }

    const std::vector<T>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }  // -1 for zero
    T coeff(long k) const {
        return k >= 0 && k < static_cast<long>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(k)] : T(0);
    }

    template <typename X>
    X operator()(const X& x) const {
        X acc = X(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + X(*it);
        return acc;
    }

    Polynomial derivative() const {
        std::vector<T> out;
        for (std::size_t k = 1; k < coeffs_.size(); ++k) out.push_back(T(static_cast<long>(k)) * coeffs_[k]);
        return Polynomial(std::move(out));
    }

    /// p(-x)
    Polynomial reflect() const {
        auto out = coeffs_;
        for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
        return Polynomial(std::move(out));
    }

    /// Exact quotient by x^2; throws when x^2 does not divide p.
    Polynomial divide_by_x_squared() const {
        if (coeff(0) != T(0) || coeff(1) != T(0)) {
            throw DomainError("operator image not polynomial: remainder after division by x^2 is nonzero");
        }
        if (coeffs_.size() <= 2) return Polynomial();
        return Polynomial(std::vector<T>(coeffs_.begin() + 2, coeffs_.end()));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<T> out(std::max(a.coeffs_.size(), b.coeffs_.size()), T(0));
        for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
        for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
        return Polynomial(std::move(out));
    }
    friend Polynomial operator-(const Polynomial& a) {
        auto out = a.coeffs_;
        for (auto& c : out) c = -c;
        return Polynomial(std::move(out));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Polynomial(std::move(out));
    }
    friend Polynomial operator*(const T& s, const Polynomial& p) { return Polynomial(s) * p; }
    friend Polynomial operator-(const Polynomial& p, const T& s) { return p - Polynomial(s); }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
    }

    std::vector<T> coeffs_;
};

/// L p = g0(x) (p(-x) - p(x)) + g1(x) d/dx[p(-x)] with
/// g0 = ((alpha+beta+1) x^2 + (c alpha - beta) x + c)/x^2, g1 = 2(x-1)(x+c)/x.
/// d/dx[p(-x)] = -p'(-x). The numerator is formed first and divided by x^2 exactly.
template <typename T>
Polynomial<T> apply_dunkl(const T& alpha, const T& beta, const T& c, const Polynomial<T>& p) {
    const auto x = Polynomial<T>::x();
    const Polynomial<T> q0(std::vector<T>{c, c * alpha - beta, alpha + beta + T(1)});
    const Polynomial<T> q1 = T(2) * x * (x - T(1)) * (x + Polynomial<T>(c));
    const Polynomial<T> numerator = q0 * (p.reflect() - p) - q1 * p.derivative().reflect();
    return numerator.divide_by_x_squared();
}

/// 2n for even n, -2(alpha + beta + n + 1) for odd n.
template <typename T>
T dunkl_eigenvalue(long n, const T& alpha, const T& beta) {
    if (n < 0) throw DomainError("degree must be >= 0");
    if (n % 2 == 0) return T(2 * n);
    return T(-2) * (alpha + beta + T(n + 1));
}

/// Monic polynomial p_n of a recurrence in coefficient form.
template <typename T>
Polynomial<T> monic_polynomial(const MonicThreeTerm<T>& rec, long n) {
    return eval_monic(rec, n, Polynomial<T>::x());
}

/// Monic big -1 Jacobi polynomial of degree n built from the Jacobi OPUC
/// pencil: xi = (alpha-1)/2, eta = (beta-1)/2, lambda = (1-c)/(1+c), then
/// the argument map of big_m1_parameters.
template <typename T>
Polynomial<T> big_m1_polynomial(const T& alpha, const T& beta, const T& c, long n) {
    if (!(c > T(-1)) || !(c < T(1))) throw DomainError("big -1 Jacobi polynomials need -1 < c < 1");
    const T xi = (alpha - T(1)) / T(2);
    const T eta = (beta - T(1)) / T(2);
    const T lambda = (T(1) - c) / (T(1) + c);
    const auto params = big_m1_parameters(xi, eta, lambda, std::max(n, 1L));
    return monic_polynomial(params.mapped, n);
}

template <typename T>
struct EigenResidual {
    long n = 0;
    T eigenvalue{};
    T max_residual{};  // max |coefficient| of L p - lambda_n p
    bool exact_zero = false;
};

template <typename T>
EigenResidual<T> residual_of(const Polynomial<T>& image, const Polynomial<T>& p, const T& eigenvalue, long n) {
    using std::abs;
    const Polynomial<T> r = image - eigenvalue * p;
    EigenResidual<T> out;
    out.n = n;
    out.eigenvalue = eigenvalue;
    out.exact_zero = r.is_zero();
    for (const auto& coef : r.coeffs()) {
        const T a = abs(coef);
        if (a > out.max_residual) out.max_residual = a;
    }
    return out;
}

template <typename T>
EigenResidual<T> verify_eigenfunction(const T& alpha, const T& beta, const T& c, long n) {
    const auto p = big_m1_polynomial(alpha, beta, c, n);
    return residual_of(apply_dunkl(alpha, beta, c, p), p, dunkl_eigenvalue(n, alpha, beta), n);
}

/// Third-kind V_n and fourth-kind W_n on [-1, 1] (x = cos tau), leading coefficient 2^n.
template <typename T>
Polynomial<T> chebyshev_V(long n) {
    const auto x = Polynomial<T>::x();
    Polynomial<T> prev(1), cur = T(2) * x - T(1);
    if (n == 0) return prev;
    for (long k = 1; k < n; ++k) {
        Polynomial<T> next = T(2) * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

template <typename T>
Polynomial<T> chebyshev_W(long n) {
    const auto x = Polynomial<T>::x();
    Polynomial<T> prev(1), cur = T(2) * x + Polynomial<T>(T(1));
    if (n == 0) return prev;
    for (long k = 1; k < n; ++k) {
        Polynomial<T> next = T(2) * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// 2(x - s) d/dx[p(-x)] + p(-x) - (-1)^n (2n + 1) p(x); s = 1 for V_n, s = -1 for W_n.
template <typename T>
Polynomial<T> chebyshev_dunkl_residual(const Polynomial<T>& p, long n, int s) {
    const auto x = Polynomial<T>::x();
    const Polynomial<T> d_reflected = -p.derivative().reflect();
    const T sign = n % 2 == 0 ? T(1) : T(-1);
    return T(2) * (x - T(s)) * d_reflected + p.reflect() - sign * T(2 * n + 1) * p;
}

}  // namespace cmvp
