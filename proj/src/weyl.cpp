#include "cmvp/weyl.hpp"

#include <cmath>
#include <numbers>

#include "cmvp/errors.hpp"

namespace cmvp {

namespace {

constexpr double kEdgeGuard = 1e-12;

void check_lambda(double lambda) {
    if (!(lambda > 0.0)) throw DomainError("periodic pencil needs lambda > 0");
}

// Both roots of lambda^2 z m^2 + (z^2 - 1 + lambda^2) m + z = 0.
std::pair<Complex, Complex> roots(Complex z, double lambda) {
    const Complex A = lambda * lambda * z;
    const Complex B = z * z - 1.0 + lambda * lambda;
    const Complex C = z;
    const Complex s = std::sqrt(B * B - 4.0 * A * C);
    const Complex q = -0.5 * (std::real(std::conj(B) * s) >= 0.0 ? B + s : B - s);
    return {q / A, C / q};
}

Complex herglotz_root(Complex z, double lambda) {
    const auto [m1, m2] = roots(z, lambda);
    return std::imag(m1) > std::imag(m2) ? m1 : m2;
}

}  // namespace

std::array<Interval, 2> essential_spectrum_periodic(double lambda) {
    if (lambda < 0.0) throw DomainError("essential spectrum needs lambda >= 0");
    const double lo = std::abs(lambda - 1.0), hi = lambda + 1.0;
    return {Interval{-hi, -lo}, Interval{lo, hi}};
}

Complex m_per(Complex z, double lambda) {
    check_lambda(lambda);
    const auto bands = essential_spectrum_periodic(lambda);
    for (const auto& b : bands) {
        for (double edge : {b.lo, b.hi}) {
            if (std::abs(z - edge) < kEdgeGuard) {
                throw DomainError("z is within 1e-12 of the band edge " + detail::to_text(edge) +
                                  "; the Weyl function branch is ambiguous there");
            }
        }
    }
    if (std::imag(z) > 0.0) return herglotz_root(z, lambda);
    if (std::imag(z) < 0.0) return std::conj(herglotz_root(std::conj(z), lambda));
    const double x = std::real(z);
    for (const auto& b : bands) {
        if (x > b.lo && x < b.hi) throw DomainError("real z inside the essential spectrum");
    }
    // Real point in a gap: the root continued from z + i0.
    const auto [m1, m2] = roots(z, lambda);
    const Complex ref = herglotz_root(Complex(x, 1e-8 * (1.0 + std::abs(x))), lambda);
    return std::abs(m1 - ref) < std::abs(m2 - ref) ? Complex(std::real(m1), 0.0) : Complex(std::real(m2), 0.0);
}

Complex m_full(Complex z, double lambda) {
    const Complex m = m_per(z, lambda);
    return m / (1.0 + lambda * m);
}

double stieltjes_perron_density(double lambda, double t) {
    check_lambda(lambda);
    const double lo = std::abs(lambda - 1.0), hi = lambda + 1.0;
    const double at = std::abs(t);
    if (!(at > lo && at < hi)) throw DomainError("t = " + detail::to_text(t) + " is not inside a band");
    // sqrt(4 lambda^2 - (t^2 - lambda^2 - 1)^2) / (2 pi lambda |1 - (t - lambda)^2|), factored.
    const double num = std::sqrt(std::abs((t + hi) * (t + lambda - 1.0)));
    const double den = std::sqrt(std::abs((hi - t) * (t - lambda + 1.0)));
    return num / (den * 2.0 * std::numbers::pi * lambda);
}

double boundary_density(double lambda, double t, double eps) {
    return std::imag(m_full(Complex(t, eps), lambda)) / std::numbers::pi;
}

double periodic_density_alternate(double lambda, double t) {
    check_lambda(lambda);
    const double lo = std::abs(lambda - 1.0), hi = lambda + 1.0;
    const double at = std::abs(t);
    if (!(at >= lo && at <= hi)) throw DomainError("t = " + detail::to_text(t) + " is not inside a band");
    const double q = t * t - lambda * lambda - 1.0;
    const double num = std::sqrt(std::max(0.0, 4.0 * lambda * lambda - q * q));
    const double den = lambda * (t * t - 2.0 * lambda * lambda * t + lambda * lambda - 1.0);
    return t > 0 ? num / (-den) : num / den;
}

}  // namespace cmvp
