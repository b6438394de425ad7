#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmvp/dunkl.hpp"
#include "cmvp/errors.hpp"
#include "cmvp/maps.hpp"
#include "oracles.hpp"

using namespace cmvp;

namespace {

ReflectionSequence<double> random_a(std::uint64_t seed) {
    return ReflectionSequence<double>::from_values(oracle::random_reflections(seed, 80));
}

double rel(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

}  // namespace

TEST_CASE("christoffel ratios equal P_{n+1}(theta)/P_n(theta)") {
    const auto a = random_a(4);
    const auto src = sdg_recurrence(a);
    const double theta = -2.7;
    const auto d = christoffel(src, theta, 20);
    for (long n = 0; n <= 20; ++n) {
        const double ratio = eval_monic(src, n + 1, theta) / eval_monic(src, n, theta);
        CHECK(rel(d.A[n], ratio) < 1e-12);
    }
    CHECK(d.C[0] == 0.0);
    // The transformed family is (P_{n+1} - A_n P_n)/(x - theta).
    for (long n = 0; n <= 15; ++n) {
        for (double x : {-1.5, 0.2, 1.9}) {
            const double direct = (eval_monic(src, n + 1, x) - d.A[n] * eval_monic(src, n, x)) / (x - theta);
            CHECK(rel(eval_monic(d.transformed, n, x), direct) < 1e-10);
        }
    }
}

TEST_CASE("christoffel of the dg family at -2") {
    const auto zero = ReflectionSequence<double>::zero();
    const auto d0 = christoffel(dg_symmetric_recurrence(zero).as_monic(), -2.0, 10);
    CHECK(d0.A[0] == doctest::Approx(-2.0));
    for (long n = 1; n <= 10; ++n) CHECK(d0.A[n] == doctest::Approx(-1.0));

    const auto a = random_a(8);
    const auto d = christoffel(dg_symmetric_recurrence(a).as_monic(), -2.0, 20);
    const auto sdg = sdg_recurrence(a);
    for (long n = 0; n <= 20; ++n) {
        CHECK(d.A[n] == doctest::Approx(a(n - 1) - 1.0).epsilon(1e-12));
        CHECK(d.transformed.b(n) == doctest::Approx(sdg.b(n)).epsilon(1e-12).scale(1.0));
        CHECK(d.transformed.u(n) == doctest::Approx(sdg.u(n)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("christoffel at a zero of P_n is a pole") {
    // P_1(x) = x - b_0 vanishes at b_0.
    const auto src = sdg_recurrence(ReflectionSequence<double>::zero());
    CHECK_THROWS_AS(christoffel(src, 1.0, 5), PoleError);
}

TEST_CASE("geronimus undoes christoffel") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto src = pencil_recurrence(random_a(seed), 1.8);
        const auto d = christoffel(src, -3.5, 20);
        const auto back = geronimus(d);
        for (long n = 0; n <= 20; ++n) {
            CHECK(rel(back.b(n), src.b(n)) < 1e-12);
            CHECK(rel(back.u(n), src.u(n)) < 1e-12);
            for (double x : {-2.0, 0.4, 2.2}) {
                CHECK(rel(geronimus_eval(d, n, x), eval_monic(src, n, x)) < 1e-10);
            }
        }
    }
}

TEST_CASE("symmetric christoffel gives the companion family") {
    const auto zero = symmetric_christoffel(dg_symmetric_recurrence(ReflectionSequence<double>::zero()), 12);
    for (long n = 1; n <= 12; ++n) CHECK(zero.v(n) == doctest::Approx(1.0));

    const auto a = random_a(12);
    const auto w = symmetric_christoffel(dg_symmetric_recurrence(a), 20);
    const auto comp = companion_symmetric_recurrence(a);
    for (long n = 1; n <= 20; ++n) CHECK(rel(w.v(n), comp.v(n)) < 1e-10);
}

TEST_CASE("adjacent companion is the reflected family") {
    const auto a = random_a(6);
    const auto q = sdg_recurrence(a);
    const auto qm = adjacent_companion(a);
    for (long n = 0; n <= 15; ++n) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        for (double x : {-1.3, 0.1, 1.6}) CHECK(rel(eval_monic(qm, n, x), sign * eval_monic(q, n, -x)) < 1e-12);
    }
}

TEST_CASE("scale map") {
    const auto src = pencil_recurrence(random_a(2), 0.6);
    const auto same = scale_map(src, 1.0);
    const auto flip = scale_map(scale_map(src, -1.0), -1.0);
    for (long n = 0; n <= 10; ++n) {
        CHECK(same.b(n) == src.b(n));
        CHECK(same.u(n) == src.u(n));
        CHECK(scale_map(src, -1.0).b(n) == -src.b(n));
        CHECK(flip.b(n) == src.b(n));
        CHECK(flip.u(n) == src.u(n));
    }
    for (double g : {-1.3, 0.5, 2.0}) {
        const auto s = scale_map(src, g);
        for (long n = 0; n <= 12; ++n) {
            for (double x : {-0.7, 0.3, 1.1}) {
                CHECK(rel(eval_monic(s, n, x), std::pow(g, n) * eval_monic(src, n, x / g)) < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(scale_map(src, 0.0), DomainError);
}

TEST_CASE("lambda reduction closed forms") {
    for (std::uint64_t seed : {1u, 5u, 9u}) {
        const auto a = random_a(seed);
        for (double lambda : {0.5, 1.0, 2.0, 4.5}) {
            for (auto branch : {ReductionBranch::theta_minus, ReductionBranch::theta_plus}) {
                const auto red = lambda_reduction(a, lambda, branch, 30, 1e-12);
                CHECK(red.max_deviation < 1e-12);
                for (long n = 0; n <= 30; ++n) {
                    const double sign = n % 2 == 0 ? 1.0 : -1.0;
                    const double expected = branch == ReductionBranch::theta_minus ? sign * (lambda + 1.0)
                                                                                    : sign * (lambda - 1.0);
                    CHECK(red.data.transformed.b(n) == doctest::Approx(expected));
                }
            }
        }
    }
    // Small lambda: the generic ratio recursion itself loses digits, the closed form does not.
    for (std::uint64_t seed : {1u, 5u, 9u}) {
        for (auto branch : {ReductionBranch::theta_minus, ReductionBranch::theta_plus}) {
            CHECK(lambda_reduction(random_a(seed), 0.3, branch, 30).max_deviation < 1e-10);
        }
    }
    CHECK_THROWS_AS(lambda_reduction(random_a(1), -1.0, ReductionBranch::theta_minus, 5), DomainError);
}

TEST_CASE("scaled reduction has constant |diagonal| and lambda-free u") {
    const auto a = jacobi_opuc_reflections(0.3, 0.7);
    for (auto branch : {ReductionBranch::theta_minus, ReductionBranch::theta_plus}) {
        std::vector<double> first_u;
        for (double lambda : {0.5, 2.0, 3.0}) {
            const auto red = lambda_reduction(a, lambda, branch, 20);
            const auto s = scale_map(red.data.transformed, 1.0 / std::sqrt(lambda));
            const double chi = red.d1 * std::sqrt(lambda) + red.d0 / std::sqrt(lambda);
            for (long n = 0; n <= 20; ++n) {
                const double sign = n % 2 == 0 ? 1.0 : -1.0;
                CHECK(std::abs(s.b(n) - sign * chi) < 1e-12);
                if (first_u.size() <= static_cast<std::size_t>(n)) {
                    first_u.push_back(s.u(n));
                } else {
                    CHECK(std::abs(s.u(n) - first_u[n]) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("chihara split and compose") {
    using R = Rational;
    const auto a = jacobi_opuc_reflections(R(1, 3), R(1, 5));
    const R lambda(4);
    const auto red = lambda_reduction(a, lambda, ReductionBranch::theta_minus, 30, 0.0);
    // sqrt(lambda) = 2 keeps everything rational.
    const auto sym = scale_map(red.data.transformed, R(1, 2));
    const R chi = R(red.d1) * 2 + R(red.d0, 2);
    const R shift(1, 3);
    const auto split = chihara_split(sym, chi, shift, 12);
    CHECK(split.theta == chi * chi + shift);

    const auto back = chihara_compose(split);
    for (long n = 0; n <= 24; ++n) {
        CHECK(back.b(n) == sym.b(n));
        CHECK(back.u(n) == sym.u(n));
    }
    const auto x = Polynomial<R>::x();
    const auto y = x * x + Polynomial<R>(shift);
    for (long n = 0; n <= 10; ++n) {
        CHECK(monic_polynomial(sym, 2 * n) == eval_monic(split.P, n, y));
        CHECK(monic_polynomial(sym, 2 * n + 1) == (x - chi) * eval_monic(split.P_tilde, n, y));
    }
    CHECK_THROWS_AS(chihara_split(sym, chi + R(1), shift, 4), DomainError);
}

TEST_CASE("big -1 parameters") {
    const auto p = big_m1_parameters(0.0, 0.0, 3.0, 15);
    CHECK(p.reported_c == doctest::Approx(0.5));
    CHECK(p.c == doctest::Approx(-0.5));
    CHECK(p.g == doctest::Approx(-4.0));
    CHECK(p.A_prime[0] == doctest::Approx(0.25));
    CHECK(p.alpha == 1.0);
    CHECK(p.beta == 1.0);
    CHECK(p.affine_p == -1.0);
    CHECK(p.affine_q == 0.0);

    CHECK(big_m1_parameters(0.3, 0.1, 1.0, 5).c == 0.0);
    const auto cheb = big_m1_parameters(-0.5, -0.5, 2.0, 5);
    CHECK(cheb.alpha == 0.0);
    CHECK(cheb.beta == 0.0);

    for (long n = 0; n <= 15; ++n) {
        CHECK(p.mapped.b(n) == doctest::Approx(-p.b_star[n]));
        CHECK(p.mapped.u(n) == doctest::Approx(p.u_star[n]));
    }
    CHECK_THROWS_AS(big_m1_parameters(0.0, 0.0, 0.0, 5), DomainError);
}
