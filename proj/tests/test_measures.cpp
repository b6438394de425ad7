#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cmvp/errors.hpp"
#include "cmvp/maps.hpp"
#include "cmvp/measures.hpp"
#include "oracles.hpp"

using namespace cmvp;

namespace {

double coefficient_gap(const MonicThreeTerm<double>& x, const MonicThreeTerm<double>& y, long n_max) {
    double worst = 0.0;
    for (long n = 0; n <= n_max; ++n) {
        worst = std::max(worst, std::abs(x.b(n) - y.b(n)) / std::max(1.0, std::abs(y.b(n))));
        worst = std::max(worst, std::abs(x.u(n) - y.u(n)) / std::max(1.0, std::abs(y.u(n))));
    }
    return worst;
}

}  // namespace

TEST_CASE("measure validation") {
    CHECK_THROWS_AS(Measure("bad", {{1.0, 0.0}}, [](double) { return 1.0; }, {}), DomainError);
    CHECK_THROWS_AS(Measure("bad", {{0.0, 1.0}, {-2.0, -1.0}}, [](double) { return 1.0; }, {}), DomainError);
    CHECK_THROWS_AS(Measure("bad", {{0.0, 1.0}}, [](double) { return 1.0; }, {{0.0, -1.0}}), DomainError);
    CHECK_THROWS_AS(big_m1_weight(1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(integrate(chebyshev_first_weight(), [](double) { return 1.0; }, 1e-14), DomainError);
    CHECK_THROWS_AS(stieltjes_recurrence(chebyshev_first_weight(), kStieltjesMaxDegree + 1), DomainError);

    // Points at the same location merge; zero exponents vanish.
    const Measure m("merge", {{-1.0, 1.0}}, [](double) { return 1.0; }, {{0.0, 0.5}, {0.0, 0.5}, {1.0, 0.0}});
    REQUIRE(m.singularities().size() == 1);
    CHECK(m.singularities()[0].exponent == 1.0);
    CHECK(m.density(2.0) == 0.0);
}

TEST_CASE("arcsine and third-kind integrals") {
    CHECK(integrate(chebyshev_first_weight(), [](double) { return 1.0; }) ==
          doctest::Approx(std::numbers::pi).epsilon(1e-12));
    const auto w3 = gen_gegenbauer_weight(-0.5, -0.5, GegenbauerVariant::sdg);
    const double m0 = integrate(w3, [](double) { return 1.0; });
    const double m1 = integrate(w3, [](double x) { return x; });
    CHECK(m0 == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
    CHECK(m1 / m0 == doctest::Approx(1.0).epsilon(1e-12));

    const auto sym = gen_gegenbauer_weight(0.4, 0.25);
    CHECK(std::abs(integrate(sym, [](double x) { return x * x * x + std::sin(x); })) < 1e-12);
}

TEST_CASE("quadrature against a graded Gauss-Legendre oracle") {
    // (1 - x)^{1/2}(1 + x)^{1.3} on [-1, 1] is smooth enough for the graded oracle on each half.
    const Measure m("test", {{-1.0, 1.0}}, [](double x) { return std::exp(x); }, {{-1.0, 1.3}, {1.0, 0.5}});
    auto f = [](double x) { return std::exp(x) * std::pow(1 + x, 1.3) * std::sqrt(1 - x) * std::cos(x); };
    const double ref = oracle::graded_integral(f, -1.0, 0.0) +
                       oracle::graded_integral([&](double s) { return f(-s); }, -1.0, 0.0);
    CHECK(integrate(m, [](double x) { return std::cos(x); }) == doctest::Approx(ref).epsilon(1e-9));

    const auto big = big_m1_weight(1.0, 1.0, 0.5);
    auto wb = [](double x) { return big_m1_density_formula(1.0, 1.0, 0.5, x); };
    const double big_ref = oracle::graded_integral(wb, 0.5, 1.0) +
                           oracle::graded_integral([&](double s) { return wb(-s); }, 0.5, 1.0);
    CHECK(integrate(big, [](double) { return 1.0; }) == doctest::Approx(big_ref).epsilon(1e-9));
}

TEST_CASE("big -1 weight matches its pointwise formula") {
    for (double c : {-0.4, 0.0, 0.3}) {
        const auto w = big_m1_weight(2.0, 0.5, c);
        for (double x : {-0.95, -0.7, 0.6, 0.85}) {
            if (!w.in_support(x)) continue;
            CHECK(w.density(x) == doctest::Approx(big_m1_density_formula(2.0, 0.5, c, x)).epsilon(1e-13));
            CHECK(w.density(x) > 0.0);
        }
    }
}

TEST_CASE("stieltjes procedure on Chebyshev weights") {
    const auto first = stieltjes_recurrence(chebyshev_first_weight(), 20);
    CHECK(std::abs(first.u(1) - 2.0) < 1e-12);
    for (long n = 0; n <= 20; ++n) {
        CHECK(std::abs(first.b(n)) < 1e-12);
        if (n >= 2) CHECK(std::abs(first.u(n) - 1.0) < 1e-12);
    }
    const auto third = stieltjes_recurrence(gen_gegenbauer_weight(-0.5, -0.5, GegenbauerVariant::sdg), 20);
    CHECK(coefficient_gap(third, sdg_recurrence(ReflectionSequence<double>::zero()), 20) < 1e-11);
}

TEST_CASE("generalized Gegenbauer weights carry the dg, sdg and companion families") {
    for (auto [xi, eta] : {std::pair{0.0, 0.0}, std::pair{1.0, 0.5}, std::pair{-0.25, 0.75}}) {
        const auto a = jacobi_opuc_reflections(xi, eta);
        const auto plain = stieltjes_recurrence(gen_gegenbauer_weight(xi, eta), 20);
        CHECK(coefficient_gap(plain, dg_symmetric_recurrence(a).as_monic(), 20) < 1e-9);
        const auto circle = stieltjes_recurrence(dg_from_circle_weight(xi, eta), 20);
        CHECK(coefficient_gap(circle, plain, 20) < 1e-9);
        const auto sdg = gen_gegenbauer_weight(xi, eta, GegenbauerVariant::sdg);
        CHECK(gram_off_diagonal(sdg, sdg_recurrence(a), 12) < 1e-7);
        const auto adj = gen_gegenbauer_weight(xi, eta, GegenbauerVariant::adjacent);
        CHECK(gram_off_diagonal(adj, adjacent_companion(a), 12) < 1e-7);
        const auto comp = gen_gegenbauer_weight(xi, eta, GegenbauerVariant::companion);
        CHECK(gram_off_diagonal(comp, companion_symmetric_recurrence(a).as_monic(), 12) < 1e-7);
        CHECK(gram(sdg, sdg_recurrence(a), sdg_recurrence(a), 4, 4) > 0.0);
    }
}

TEST_CASE("weight times (x - theta) carries the Christoffel family") {
    const auto w = gen_gegenbauer_weight(0.3, 0.2);
    const auto src = stieltjes_recurrence(w, 17);
    for (double theta : {-2.0, -2.5, 3.0}) {
        const auto shifted = stieltjes_recurrence(christoffel_weight(w, theta), 15);
        const auto d = christoffel(src, theta, 15);
        CHECK(coefficient_gap(shifted, d.transformed, 15) < 1e-7);
    }
}

TEST_CASE("normalization invariance and scaling covariance") {
    const auto w = big_m1_weight(2.0, 3.0, -0.25);
    const auto base = stieltjes_recurrence(w, 15);
    CHECK(coefficient_gap(stieltjes_recurrence(w.scaled(3.7), 15), base, 15) < 1e-10);
    for (double g : {-1.5, 0.5, 2.0}) {
        CHECK(coefficient_gap(stieltjes_recurrence(rescale(w, g), 15), scale_map(base, g), 15) < 1e-8);
    }
    const auto sym = stieltjes_recurrence(gen_gegenbauer_weight(1.5, -0.3), 20);
    for (long n = 0; n <= 20; ++n) CHECK(std::abs(sym.b(n)) < 1e-9);
}

TEST_CASE("periodic weight") {
    for (double lambda : {0.5, 2.0, 3.0}) {
        const auto w = periodic_weight(lambda);
        CHECK(integrate(w, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-10));
        const auto rec = stieltjes_recurrence(w, 20);
        CHECK(coefficient_gap(rec, pencil_recurrence(ReflectionSequence<double>::zero(), lambda), 20) < 1e-8);
    }
    const auto at1 = stieltjes_recurrence(periodic_weight(1.0), 20);
    CHECK(coefficient_gap(at1, sdg_recurrence(ReflectionSequence<double>::zero()), 20) < 1e-10);
}

TEST_CASE("the alternate periodic density is not the spectral weight") {
    // It has a pole inside a band at lambda = 0.5 and the wrong shape at lambda = 2.
    CHECK_THROWS(stieltjes_recurrence(periodic_alternate_weight(0.5), 20));
    bool disagrees = false;
    try {
        const auto rec = stieltjes_recurrence(periodic_alternate_weight(2.0), 20);
        disagrees = coefficient_gap(rec, pencil_recurrence(ReflectionSequence<double>::zero(), 2.0), 20) > 1e-3;
    } catch (const Error&) {
        disagrees = true;
    }
    CHECK(disagrees);
}

TEST_CASE("named weights") {
    WeightParams p;
    p.alpha = 1.0;
    p.beta = 2.0;
    p.c = 0.25;
    CHECK(named_weight(WeightFamily::big_m1, p).density(0.6) == doctest::Approx(big_m1_density_formula(1, 2, 0.25, 0.6)));
    CHECK(named_weight(WeightFamily::little_m1, p).support().size() == 1);
    p.lambda = 2.0;
    CHECK(named_weight(WeightFamily::periodic, p).support().size() == 2);
}

TEST_CASE("discretized rules are deterministic") {
    const auto w = periodic_weight(2.0);
    const auto r1 = discretize(w, 6), r2 = discretize(w, 6);
    CHECK(r1.x == r2.x);
    CHECK(r1.w == r2.w);
}
