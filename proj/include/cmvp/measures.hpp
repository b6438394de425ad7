#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cmvp/recurrences.hpp"

namespace cmvp {

struct Interval {
    double lo;
    double hi;
};

/// Algebraic factor |x - point|^exponent.
struct Singularity {
    double point;
    double exponent;
};

/// Absolutely continuous measure h(x) * prod |x - s|^gamma dx on one
/// interval or on two disjoint (possibly touching) intervals.
///
/// The declared singular factors are evaluated by the quadrature engine from
/// exact endpoint distances, so h should be smooth and free of them.
class Measure {
public:
    Measure(std::string name, std::vector<Interval> support, std::function<double(double)> smooth,
            std::vector<Singularity> singular);

    const std::string& name() const noexcept { return name_; }
    const std::vector<Interval>& support() const noexcept { return support_; }
    const std::vector<Singularity>& singularities() const noexcept { return singular_; }

    double smooth(double x) const { return smooth_(x); }
    double density(double x) const;
    bool in_support(double x) const;

    /// Breakpoints: the pieces integrated separately, with interior
    /// singular points promoted to piece ends.
    std::vector<Interval> pieces() const;

    /// h(x) prod |x - s|^gamma with the distance to lo/hi given exactly.
    double density_on_piece(const Interval& piece, double x, double d_lo, double d_hi) const;

    /// The same density multiplied by a positive constant.
    Measure scaled(double factor) const;

private:
    std::string name_;
    std::vector<Interval> support_;
    std::function<double(double)> smooth_;
    std::vector<Singularity> singular_;
};

enum class GegenbauerVariant { plain, sdg, adjacent, companion };  // times 1, (x+2), (2-x), (4-x^2)

/// (4 - x^2)^xi |x|^{2 eta + 1} on [-2, 2], times the variant factor.
Measure gen_gegenbauer_weight(double xi, double eta, GegenbauerVariant variant = GegenbauerVariant::plain);
/// (4 - x^2)^{-1/2} on [-2, 2].
Measure chebyshev_first_weight();
/// rho(theta)/sin(theta/2), x = 2cos(theta/2), for the Jacobi circle weight
/// rho = (1 - cos theta)^{xi+1/2} (1 + cos theta)^{eta+1/2}.
Measure dg_from_circle_weight(double xi, double eta);
/// sign(x)(x+1)(x-c)(1-x^2)^{(alpha-1)/2}(x^2-c^2)^{(beta-1)/2} on
/// [-1,-|c|] u [|c|,1], -1 < c < 1.
Measure big_m1_weight(double alpha, double beta, double c);
Measure little_m1_weight(double alpha, double beta);
/// Spectral density of K(lambda) with a = 0, normalized to total mass 1.
Measure periodic_weight(double lambda);
/// The alternate two-branch formula with denominator t^2 - 2 lambda^2 t + lambda^2 - 1.
Measure periodic_alternate_weight(double lambda);

/// Pointwise formula of the big -1 weight, for cross-checks.
double big_m1_density_formula(double alpha, double beta, double c, double x);

enum class WeightFamily { gen_gegenbauer, chebyshev_first, dg_from_circle, big_m1, little_m1, periodic, periodic_alternate };

struct WeightParams {
    double xi = 0, eta = 0;
    double alpha = 0, beta = 0, c = 0;
    double lambda = 1;
    GegenbauerVariant variant = GegenbauerVariant::plain;
};

Measure named_weight(WeightFamily family, const WeightParams& params);

/// Density x -> w(x/g) on g * support (g != 0).
Measure rescale(const Measure& m, double g);

/// |x - theta| w(x) for theta outside the interior of the support hull.
Measure christoffel_weight(const Measure& m, double theta);

/// Nodes and weights (density included) of a tanh-sinh rule.
struct QuadratureRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Tanh-sinh rule with step 2^{-level} on every piece.
QuadratureRule discretize(const Measure& m, int level);

/// Integral of f dm to relative tolerance tol (relative to the integral of |f| dm).
double integrate(const Measure& m, const std::function<double(double)>& f, double tol = 1e-12);

/// Integral of p_n q_k dm.
double gram(const Measure& m, const MonicThreeTerm<double>& p, const MonicThreeTerm<double>& q, long n, long k,
            double tol = 1e-12);

/// max over n != k <= n_max of |G_nk| / sqrt(G_nn G_kk) for one family.
double gram_off_diagonal(const Measure& m, const MonicThreeTerm<double>& p, long n_max, double tol = 1e-12);

/// Recurrence coefficients b_0..b_{n_max}, u_0..u_{n_max} of the monic
/// orthogonal family of m by the discretized Stieltjes procedure.
MonicThreeTerm<double> stieltjes_recurrence(const Measure& m, long n_max, double tol = 1e-12);

constexpr long kStieltjesMaxDegree = 30;

}  // namespace cmvp
