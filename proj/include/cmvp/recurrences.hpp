#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cmvp/errors.hpp"
#include "cmvp/sequence.hpp"

namespace cmvp {

namespace detail {

template <typename S>
std::string to_text(const S& v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace detail

/// Real reflection parameters a_n, n >= 0, with a_{-1} = -1 built in.
///
/// |a_n| < 1 is checked the first time a_n is queried; a violation throws
/// DomainError naming the index.
template <typename Scalar = double>
class ReflectionSequence {
public:
    using Generator = std::function<Scalar(long)>;

    ReflectionSequence() : ReflectionSequence([](long) { return Scalar(0); }) {}

    explicit ReflectionSequence(Generator gen)
        : values_([g = std::move(gen)](long n) {
              Scalar v = g(n);
              using std::abs;
              if (!(abs(v) < Scalar(1))) {
                  throw DomainError("reflection parameter a_" + std::to_string(n) + " = " + detail::to_text(v) +
                                    " violates |a_n| < 1");
              }
              return v;
          }) {}

    static ReflectionSequence zero() { return ReflectionSequence(); }

    static ReflectionSequence from_values(std::vector<Scalar> values) {
        auto table = std::make_shared<const std::vector<Scalar>>(std::move(values));
        return ReflectionSequence([table](long n) {
            if (n >= static_cast<long>(table->size())) {
                throw std::out_of_range("reflection table has no entry " + std::to_string(n));
            }
            return (*table)[static_cast<std::size_t>(n)];
        });
    }

    Scalar operator()(long n) const {
        if (n == -1) return Scalar(-1);
        if (n < -1) throw DomainError("reflection index " + std::to_string(n) + " below -1");
        return values_(n);
    }

    /// r_n = sqrt(1 - a_n^2); r_{-1} = 0.
    Scalar r(long n) const {
        using std::sqrt;
        const Scalar a = (*this)(n);
        return sqrt(Scalar(1) - a * a);
    }

private:
    LazySequence<Scalar> values_;
};

/// Monic recurrence p_{n+1} = (x - b_n) p_n - u_n p_{n-1}, u_0 = 0.
template <typename Scalar = double>
class MonicThreeTerm {
public:
    using Generator = std::function<Scalar(long)>;

    MonicThreeTerm() : MonicThreeTerm([](long) { return Scalar(0); }, [](long) { return Scalar(1); }) {}

    MonicThreeTerm(Generator b, Generator u)
        : b_(std::move(b)), u_([g = std::move(u)](long n) { return n == 0 ? Scalar(0) : g(n); }) {}

    static MonicThreeTerm from_tables(std::vector<Scalar> b, std::vector<Scalar> u) {
        auto bt = LazySequence<Scalar>::from_values(std::move(b));
        auto ut = LazySequence<Scalar>::from_values(std::move(u));
        return MonicThreeTerm([bt](long n) { return bt(n); }, [ut](long n) { return ut(n); });
    }

    Scalar b(long n) const { return b_(n); }
    Scalar u(long n) const { return u_(n); }

    /// First n in [1, n_max] with u_n <= 0, if any.
    std::optional<long> first_nonpositive(long n_max) const {
        for (long n = 1; n <= n_max; ++n) {
            if (!(u(n) > Scalar(0))) return n;
        }
        return std::nullopt;
    }

private:
    LazySequence<Scalar> b_;
    LazySequence<Scalar> u_;
};

/// Symmetric recurrence S_{n+1} = x S_n - v_n S_{n-1}, v_0 = 0.
template <typename Scalar = double>
class SymmetricThreeTerm {
public:
    using Generator = std::function<Scalar(long)>;

    SymmetricThreeTerm() : SymmetricThreeTerm([](long) { return Scalar(1); }) {}

    explicit SymmetricThreeTerm(Generator v)
        : v_([g = std::move(v)](long n) { return n == 0 ? Scalar(0) : g(n); }) {}

    static SymmetricThreeTerm from_table(std::vector<Scalar> v) {
        auto vt = LazySequence<Scalar>::from_values(std::move(v));
        return SymmetricThreeTerm([vt](long n) { return vt(n); });
    }

    Scalar v(long n) const { return v_(n); }

    std::optional<long> first_nonpositive(long n_max) const {
        for (long n = 1; n <= n_max; ++n) {
            if (!(v(n) > Scalar(0))) return n;
        }
        return std::nullopt;
    }

    /// The same family viewed as a monic recurrence with b = 0, u = v.
    MonicThreeTerm<Scalar> as_monic() const {
        auto vs = v_;
        return MonicThreeTerm<Scalar>([](long) { return Scalar(0); }, [vs](long n) { return vs(n); });
    }

private:
    LazySequence<Scalar> v_;
};

/// A point on the unit circle stored by its angle phi in [0, 2pi).
template <typename Scalar = double>
class CirclePoint {
public:
    explicit CirclePoint(Scalar phi) {
        using std::fmod;
        const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
        phi_ = fmod(phi, two_pi);
        if (phi_ < Scalar(0)) phi_ += two_pi;
    }

    Scalar phi() const noexcept { return phi_; }
    std::complex<Scalar> z() const { return std::polar(Scalar(1), phi_); }
    std::complex<Scalar> sqrt_z() const { return std::polar(Scalar(1), phi_ / Scalar(2)); }

    /// x = z^{1/2} + z^{-1/2}
    Scalar x() const {
        using std::cos;
        return Scalar(2) * cos(phi_ / Scalar(2));
    }

private:
    Scalar phi_;
};

template <typename Scalar>
ReflectionSequence<Scalar> jacobi_opuc_reflections(Scalar xi, Scalar eta) {
    if (!(xi > Scalar(-1)) || !(eta > Scalar(-1))) {
        throw DomainError("Jacobi reflection parameters need xi > -1 and eta > -1 (got xi = " + detail::to_text(xi) +
                          ", eta = " + detail::to_text(eta) + ")");
    }
    return ReflectionSequence<Scalar>([xi, eta](long n) {
        const Scalar den = Scalar(n) + xi + eta + Scalar(2);
        if (n % 2 == 0) return (eta - xi) / den;
        return -(Scalar(1) + xi + eta) / den;
    });
}

/// Coefficients of Q_n(x; lambda), the characteristic polynomials of K(lambda).
template <typename Scalar>
MonicThreeTerm<Scalar> pencil_recurrence(const ReflectionSequence<Scalar>& a, Scalar lambda) {
    return MonicThreeTerm<Scalar>(
        [a, lambda](long n) { return n % 2 == 0 ? a(n) - lambda * a(n - 1) : lambda * a(n) - a(n - 1); },
        [a, lambda](long n) {
            const Scalar p = a(n - 1);
            const Scalar r2 = Scalar(1) - p * p;
            return n % 2 == 0 ? lambda * lambda * r2 : r2;
        });
}

template <typename Scalar>
MonicThreeTerm<Scalar> sdg_recurrence(const ReflectionSequence<Scalar>& a) {
    return MonicThreeTerm<Scalar>([a](long n) { return a(n) - a(n - 1); },
                                  [a](long n) {
                                      const Scalar p = a(n - 1);
                                      return Scalar(1) - p * p;
                                  });
}

template <typename Scalar>
SymmetricThreeTerm<Scalar> dg_symmetric_recurrence(const ReflectionSequence<Scalar>& a) {
    return SymmetricThreeTerm<Scalar>([a](long n) { return (Scalar(1) + a(n - 1)) * (Scalar(1) - a(n - 2)); });
}

template <typename Scalar>
SymmetricThreeTerm<Scalar> companion_symmetric_recurrence(const ReflectionSequence<Scalar>& a) {
    return SymmetricThreeTerm<Scalar>([a](long n) { return (Scalar(1) + a(n - 1)) * (Scalar(1) - a(n)); });
}

/// p_n(x) by forward recurrence. X may be real, complex or any ring type
/// closed under X*X, X-Scalar and Scalar*X.
template <typename Scalar, typename X>
X eval_monic(const MonicThreeTerm<Scalar>& rec, long n, const X& x) {
    if (n < 0) throw DomainError("polynomial degree must be >= 0");
    X prev = X(0);
    X cur = X(1);
    for (long k = 0; k < n; ++k) {
        X next = (x - rec.b(k)) * cur - rec.u(k) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// p_0(x), ..., p_n(x).
template <typename Scalar, typename X>
std::vector<X> eval_monic_all(const MonicThreeTerm<Scalar>& rec, long n, const X& x) {
    if (n < 0) throw DomainError("polynomial degree must be >= 0");
    std::vector<X> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.push_back(X(1));
    X prev = X(0);
    for (long k = 0; k < n; ++k) {
        X next = (x - rec.b(k)) * out.back() - rec.u(k) * prev;
        prev = out.back();
        out.push_back(std::move(next));
    }
    return out;
}

template <typename Scalar, typename X>
X eval_symmetric(const SymmetricThreeTerm<Scalar>& rec, long n, const X& x) {
    if (n < 0) throw DomainError("polynomial degree must be >= 0");
    X prev = X(0);
    X cur = X(1);
    for (long k = 0; k < n; ++k) {
        X next = x * cur - rec.v(k) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// (Phi_n(z), Phi_n^*(z)) by the Szego recursion.
template <typename Scalar>
std::pair<std::complex<Scalar>, std::complex<Scalar>> szego_eval(const ReflectionSequence<Scalar>& a, long n,
                                                                 const CirclePoint<Scalar>& point) {
    if (n < 0) throw DomainError("polynomial degree must be >= 0");
    using C = std::complex<Scalar>;
    const C z = point.z();
    C phi(1), star(1);
    for (long k = 0; k < n; ++k) {
        const Scalar ak = a(k);
        const C next = z * phi - ak * star;
        star = star - ak * z * phi;
        phi = next;
    }
    return {phi, star};
}

/// a_n = sign(n) * sqrt(1 - u_{n+1}).
template <typename Scalar>
ReflectionSequence<Scalar> reflections_from_u(std::function<Scalar(long)> u, std::function<int(long)> signs) {
    return ReflectionSequence<Scalar>([u = std::move(u), signs = std::move(signs)](long n) {
        using std::sqrt;
        const Scalar un = u(n + 1);
        if (!(un > Scalar(0)) || un > Scalar(1)) {
            throw DomainError("u_" + std::to_string(n + 1) + " = " + detail::to_text(un) + " outside (0, 1]");
        }
        const Scalar mag = sqrt(Scalar(1) - un);
        return signs(n) < 0 ? -mag : mag;
    });
}

enum class ChebyshevKind { first, third, fourth };

/// Trigonometric closed forms at x = 2cos(tau):
/// first 2cos(n tau) (1 at n = 0), third cos((n+1/2)tau)/cos(tau/2),
/// fourth sin((n+1/2)tau)/sin(tau/2).
inline double chebyshev_closed_form(ChebyshevKind kind, long n, double tau) {
    if (n < 0) throw DomainError("polynomial degree must be >= 0");
    const double h = static_cast<double>(n) + 0.5;
    switch (kind) {
        case ChebyshevKind::first:
            return n == 0 ? 1.0 : 2.0 * std::cos(static_cast<double>(n) * tau);
        case ChebyshevKind::third: {
            const double d = std::cos(tau / 2.0);
            if (std::abs(d) < 1e-14) throw PoleError("cos(tau/2) vanishes in the third-kind closed form", n);
            return std::cos(h * tau) / d;
        }
        case ChebyshevKind::fourth: {
            const double d = std::sin(tau / 2.0);
            if (std::abs(d) < 1e-14) throw PoleError("sin(tau/2) vanishes in the fourth-kind closed form", n);
            return std::sin(h * tau) / d;
        }
    }
    throw DomainError("unknown Chebyshev kind");
}

}  // namespace cmvp
