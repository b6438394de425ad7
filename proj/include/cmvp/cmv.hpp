#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cmvp/errors.hpp"
#include "cmvp/recurrences.hpp"

namespace cmvp {

/// Symmetric band matrix; band(k)(i) holds entry (i, i+k) = (i+k, i).
template <typename Scalar = double>
class BandedSymmetricMatrix {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    BandedSymmetricMatrix(long dim, long bandwidth) : dim_(dim), bands_() {
        if (dim < 1) throw DomainError("matrix dimension must be positive");
        if (bandwidth < 0) throw DomainError("bandwidth must be non-negative");
        for (long k = 0; k <= bandwidth; ++k) {
            bands_.push_back(Vector::Zero(std::max<long>(dim - k, 0)));
        }
    }

    long dim() const noexcept { return dim_; }
    long bandwidth() const noexcept { return static_cast<long>(bands_.size()) - 1; }

    const Vector& band(long k) const { return bands_.at(static_cast<std::size_t>(k)); }
    Vector& band(long k) { return bands_.at(static_cast<std::size_t>(k)); }
    const Vector& diagonal() const { return band(0); }

    Scalar operator()(long i, long j) const {
        const long lo = std::min(i, j);
        const long k = std::abs(i - j);
        if (k > bandwidth()) return Scalar(0);
        return bands_[static_cast<std::size_t>(k)](lo);
    }

    void set(long i, long j, Scalar value) {
        const long k = std::abs(i - j);
        if (k > bandwidth()) throw DomainError("entry outside the band");
        bands_[static_cast<std::size_t>(k)](std::min(i, j)) = value;
    }

    /// Copy with at least the requested bandwidth.
    BandedSymmetricMatrix widened(long bandwidth) const {
        BandedSymmetricMatrix out(dim_, std::max(bandwidth, this->bandwidth()));
        for (long k = 0; k <= this->bandwidth(); ++k) out.band(k) = band(k);
        return out;
    }

private:
    long dim_;
    std::vector<Vector> bands_;
};

/// Truncation to dim = 2 * n_blocks so no 2x2 block of L is cut.
struct TruncationSpec {
    long n_blocks;

    explicit TruncationSpec(long blocks) : n_blocks(blocks) {
        if (blocks < 1) throw DomainError("truncation needs at least one block");
    }

    static TruncationSpec from_dim(long dim) {
        if (dim < 2 || dim % 2 != 0) {
            throw DomainError("truncation dimension must be even and >= 2 (got " + std::to_string(dim) + ")");
        }
        return TruncationSpec(dim / 2);
    }

    long dim() const noexcept { return 2 * n_blocks; }
};

template <typename Scalar>
BandedSymmetricMatrix<Scalar> build_L(const ReflectionSequence<Scalar>& a, const TruncationSpec& t) {
    BandedSymmetricMatrix<Scalar> L(t.dim(), 1);
    for (long k = 0; k < t.n_blocks; ++k) {
        const long i = 2 * k;
        L.band(0)(i) = a(i);
        L.band(0)(i + 1) = -a(i);
        L.band(1)(i) = a.r(i);
    }
    return L;
}

/// Leading 1x1 block (1), full blocks, then a trailing 1x1 entry a_{dim-1}.
template <typename Scalar>
BandedSymmetricMatrix<Scalar> build_M(const ReflectionSequence<Scalar>& a, const TruncationSpec& t) {
    const long d = t.dim();
    BandedSymmetricMatrix<Scalar> M(d, 1);
    M.band(0)(0) = Scalar(1);
    for (long k = 0; 2 * k + 2 <= d - 1; ++k) {
        const long i = 2 * k + 1;
        M.band(0)(i) = a(i);
        M.band(0)(i + 1) = -a(i);
        M.band(1)(i) = a.r(i);
    }
    M.band(0)(d - 1) = a(d - 1);
    return M;
}

template <typename Scalar>
BandedSymmetricMatrix<Scalar> build_J(const ReflectionSequence<Scalar>& a, const TruncationSpec& t) {
    const long d = t.dim();
    BandedSymmetricMatrix<Scalar> J(d, 1);
    for (long n = 0; n < d; ++n) {
        J.band(0)(n) = a(n) - a(n - 1);
        if (n + 1 < d) J.band(1)(n) = a.r(n);
    }
    return J;
}

/// K(lambda) = L + lambda M.
template <typename Scalar>
BandedSymmetricMatrix<Scalar> build_K(const ReflectionSequence<Scalar>& a, Scalar lambda, const TruncationSpec& t) {
    const long d = t.dim();
    const auto rec = pencil_recurrence(a, lambda);
    BandedSymmetricMatrix<Scalar> K(d, 1);
    for (long n = 0; n < d; ++n) {
        K.band(0)(n) = rec.b(n);
        if (n + 1 < d) K.band(1)(n) = n % 2 == 0 ? a.r(n) : lambda * a.r(n);
    }
    return K;
}

/// H = LM + ML from its closed-form five-diagonal entries.
template <typename Scalar>
BandedSymmetricMatrix<Scalar> build_H(const ReflectionSequence<Scalar>& a, const TruncationSpec& t) {
    const long d = t.dim();
    BandedSymmetricMatrix<Scalar> H(d, 2);
    for (long n = 0; n < d; ++n) {
        H.band(0)(n) = Scalar(-2) * a(n) * a(n - 1);
        if (n + 1 < d) H.band(1)(n) = a.r(n) * (a(n + 1) - a(n - 1));
        if (n + 2 < d) H.band(2)(n) = a.r(n) * a.r(n + 1);
    }
    return H;
}

template <typename Scalar>
BandedSymmetricMatrix<Scalar> identity(long dim) {
    BandedSymmetricMatrix<Scalar> I(dim, 0);
    I.band(0).setOnes();
    return I;
}

/// alpha A + beta B
template <typename Scalar>
BandedSymmetricMatrix<Scalar> combine(Scalar alpha, const BandedSymmetricMatrix<Scalar>& A, Scalar beta,
                                      const BandedSymmetricMatrix<Scalar>& B) {
    if (A.dim() != B.dim()) throw DomainError("dimension mismatch");
    const long bw = std::max(A.bandwidth(), B.bandwidth());
    BandedSymmetricMatrix<Scalar> out(A.dim(), bw);
    for (long k = 0; k <= A.bandwidth(); ++k) out.band(k) += alpha * A.band(k);
    for (long k = 0; k <= B.bandwidth(); ++k) out.band(k) += beta * B.band(k);
    return out;
}

template <typename Scalar>
BandedSymmetricMatrix<Scalar> operator+(const BandedSymmetricMatrix<Scalar>& A,
                                        const BandedSymmetricMatrix<Scalar>& B) {
    return combine(Scalar(1), A, Scalar(1), B);
}

template <typename Scalar>
BandedSymmetricMatrix<Scalar> operator-(const BandedSymmetricMatrix<Scalar>& A,
                                        const BandedSymmetricMatrix<Scalar>& B) {
    return combine(Scalar(1), A, Scalar(-1), B);
}

template <typename Scalar>
BandedSymmetricMatrix<Scalar> operator*(Scalar s, const BandedSymmetricMatrix<Scalar>& A) {
    BandedSymmetricMatrix<Scalar> out = A;
    for (long k = 0; k <= A.bandwidth(); ++k) out.band(k) *= s;
    return out;
}

/// AB + BA, which is symmetric whenever A and B are.
template <typename Scalar>
BandedSymmetricMatrix<Scalar> anticommutator(const BandedSymmetricMatrix<Scalar>& A,
                                             const BandedSymmetricMatrix<Scalar>& B) {
    if (A.dim() != B.dim()) throw DomainError("dimension mismatch");
    const long d = A.dim();
    const long wa = A.bandwidth(), wb = B.bandwidth();
    const long bw = std::min(wa + wb, d - 1);
    BandedSymmetricMatrix<Scalar> out(d, bw);
    for (long i = 0; i < d; ++i) {
        for (long j = i; j <= std::min(i + bw, d - 1); ++j) {
            Scalar s(0);
            const long w = std::max(wa, wb);
            const long k0 = std::max(0L, j - w);
            const long k1 = std::min(d - 1, i + w);
            for (long k = k0; k <= k1; ++k) s += A(i, k) * B(k, j) + B(i, k) * A(k, j);
            out.set(i, j, s);
        }
    }
    return out;
}

template <typename Scalar>
BandedSymmetricMatrix<Scalar> square(const BandedSymmetricMatrix<Scalar>& A) {
    return Scalar(0.5) * anticommutator(A, A);
}

/// max |X(i, j)| over rows 0..rows-1.
template <typename Scalar>
Scalar max_abs_rows(const BandedSymmetricMatrix<Scalar>& X, long rows) {
    using std::abs;
    Scalar m(0);
    const long d = X.dim();
    for (long i = 0; i < std::min(rows, d); ++i) {
        for (long j = std::max(0L, i - X.bandwidth()); j <= std::min(d - 1, i + X.bandwidth()); ++j) {
            const Scalar v = abs(X(i, j));
            if (v > m) m = v;
        }
    }
    return m;
}

template <typename Scalar = double>
struct IdentityReport {
    long dim = 0;
    long rows = 0;  // rows checked: 0..rows-1
    Scalar lambda{};
    Scalar L_squared{};   // L^2 - I
    Scalar M_squared{};   // M^2 - I
    Scalar H_vs_LM{};     // H - (LM + ML)
    Scalar H_vs_J{};      // H - (J^2 - 2I)
    Scalar K_vs_H{};      // K^2 - ((1 + lambda^2) I + lambda H)

    Scalar worst() const {
        using std::max;
        return max(max(max(L_squared, M_squared), max(H_vs_LM, H_vs_J)), K_vs_H);
    }
};

/// Residuals restricted to rows unaffected by truncation (0..dim-3).
template <typename Scalar>
IdentityReport<Scalar> verify_identities(const ReflectionSequence<Scalar>& a, Scalar lambda, const TruncationSpec& t) {
    const long d = t.dim();
    const auto L = build_L(a, t);
    const auto M = build_M(a, t);
    const auto J = build_J(a, t);
    const auto K = build_K(a, lambda, t);
    const auto H = build_H(a, t);
    const auto I = identity<Scalar>(d);

    IdentityReport<Scalar> rep;
    rep.dim = d;
    rep.rows = std::max(d - 2, 0L);
    rep.lambda = lambda;
    rep.L_squared = max_abs_rows(square(L) - I, rep.rows);
    rep.M_squared = max_abs_rows(square(M) - I, rep.rows);
    rep.H_vs_LM = max_abs_rows(H - anticommutator(L, M), rep.rows);
    rep.H_vs_J = max_abs_rows(H - (square(J) - Scalar(2) * I), rep.rows);
    rep.K_vs_H = max_abs_rows(square(K) - (combine(Scalar(1) + lambda * lambda, I, lambda, H)), rep.rows);
    return rep;
}

/// Ascending eigenvalues of a symmetric tridiagonal matrix.
template <typename Scalar>
std::vector<Scalar> tridiagonal_eigenvalues(const BandedSymmetricMatrix<Scalar>& m) {
    if (m.bandwidth() > 1) throw DomainError("tridiagonal_eigenvalues needs bandwidth <= 1");
    const long d = m.dim();
    if (d == 1) return {m.diagonal()(0)};
    using Vector = typename BandedSymmetricMatrix<Scalar>::Vector;
    const Vector diag = m.diagonal();
    const Vector sub = m.bandwidth() == 1 ? Vector(m.band(1)) : Vector(Vector::Zero(d - 1));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("tridiagonal eigenvalue iteration did not converge (dim " + std::to_string(d) + ")",
                               0.0, 0.0);
    }
    std::vector<Scalar> out(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cmvp
