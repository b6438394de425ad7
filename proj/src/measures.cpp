#include "cmvp/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cmvp/errors.hpp"

namespace cmvp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTanhSinhSpan = 6.0;  // |t| <= 6 reaches distances ~1e-275
constexpr int kFirstLevel = 3;
constexpr int kLastLevel = 12;

std::vector<Singularity> merge_points(std::vector<Singularity> in) {
    std::sort(in.begin(), in.end(), [](const Singularity& a, const Singularity& b) { return a.point < b.point; });
    std::vector<Singularity> out;
    for (const auto& s : in) {
        if (!out.empty() && out.back().point == s.point) {
            out.back().exponent += s.exponent;
        } else {
            out.push_back(s);
        }
    }
    std::erase_if(out, [](const Singularity& s) { return s.exponent == 0.0; });
    return out;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

}  // namespace

Measure::Measure(std::string name, std::vector<Interval> support, std::function<double(double)> smooth,
                 std::vector<Singularity> singular)
    : name_(std::move(name)), support_(std::move(support)), smooth_(std::move(smooth)),
      singular_(merge_points(std::move(singular))) {
    require(support_.size() == 1 || support_.size() == 2, "measure support must be one or two intervals");
    for (const auto& iv : support_) require(iv.lo < iv.hi, "support interval must have lo < hi");
    if (support_.size() == 2) require(support_[0].hi <= support_[1].lo, "support intervals must be ordered");
    for (const auto& s : singular_) {
        require(s.exponent > -1.0, "singular exponent at " + detail::to_text(s.point) + " must exceed -1");
    }
}

bool Measure::in_support(double x) const {
    return std::any_of(support_.begin(), support_.end(), [x](const Interval& iv) { return iv.lo <= x && x <= iv.hi; });
}

double Measure::density(double x) const {
    if (!in_support(x)) return 0.0;
    double v = smooth_(x);
    for (const auto& s : singular_) v *= std::pow(std::abs(x - s.point), s.exponent);
    return v;
}

std::vector<Interval> Measure::pieces() const {
    std::vector<Interval> out;
    for (const auto& iv : support_) {
        double lo = iv.lo;
        for (const auto& s : singular_) {
            if (s.point > iv.lo && s.point < iv.hi) {
                out.push_back({lo, s.point});
                lo = s.point;
            }
        }
        out.push_back({lo, iv.hi});
    }
    return out;
}

double Measure::density_on_piece(const Interval& piece, double x, double d_lo, double d_hi) const {
    double v = smooth_(x);
    for (const auto& s : singular_) {
        double dist;
        if (s.point == piece.lo) {
            dist = d_lo;
        } else if (s.point == piece.hi) {
            dist = d_hi;
        } else {
            dist = std::abs(x - s.point);
        }
        v *= std::pow(dist, s.exponent);
    }
    return v;
}

Measure Measure::scaled(double factor) const {
    require(factor > 0.0, "measure scale factor must be positive");
    auto h = smooth_;
    return Measure(name_, support_, [h, factor](double x) { return factor * h(x); }, singular_);
}

Measure gen_gegenbauer_weight(double xi, double eta, GegenbauerVariant variant) {
    require(xi > -1.0 && eta > -1.0, "generalized Gegenbauer weight needs xi > -1 and eta > -1");
    const double left = xi + ((variant == GegenbauerVariant::sdg || variant == GegenbauerVariant::companion) ? 1 : 0);
    const double right =
        xi + ((variant == GegenbauerVariant::adjacent || variant == GegenbauerVariant::companion) ? 1 : 0);
    return Measure("gen_gegenbauer", {{-2.0, 2.0}}, [](double) { return 1.0; },
                   {{-2.0, left}, {2.0, right}, {0.0, 2.0 * eta + 1.0}});
}

Measure chebyshev_first_weight() { return gen_gegenbauer_weight(-0.5, -0.5); }

Measure dg_from_circle_weight(double xi, double eta) {
    require(xi > -1.0 && eta > -1.0, "circle Jacobi weight needs xi > -1 and eta > -1");
    // h = rho(theta)/sin(theta/2) / ((4-x^2)^xi |x|^{2eta+1}) is the constant 2^{-xi-eta};
    // it is evaluated as that ratio, falling back to the limit where the ratio is 0/0.
    const double limit = std::pow(2.0, -xi - eta);
    auto h = [xi, eta, limit](double x) {
        const double theta = 2.0 * std::acos(std::clamp(x / 2.0, -1.0, 1.0));
        const double s = std::sin(theta / 2.0);
        const double rho = std::pow(1.0 - std::cos(theta), xi + 0.5) * std::pow(1.0 + std::cos(theta), eta + 0.5);
        const double den = std::pow(4.0 - x * x, xi) * std::pow(std::abs(x), 2.0 * eta + 1.0);
        const double r = rho / s / den;
        return std::isfinite(r) && s > 1e-6 && std::abs(x) > 1e-6 ? r : limit;
    };
    return Measure("dg_from_circle", {{-2.0, 2.0}}, h, {{-2.0, xi}, {2.0, xi}, {0.0, 2.0 * eta + 1.0}});
}

double big_m1_density_formula(double alpha, double beta, double c, double x) {
    const double sgn = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
    return sgn * (x + 1.0) * (x - c) * std::pow(1.0 - x * x, (alpha - 1.0) / 2.0) *
           std::pow(x * x - c * c, (beta - 1.0) / 2.0);
}

Measure big_m1_weight(double alpha, double beta, double c) {
    require(alpha > -1.0 && beta > -1.0, "big -1 Jacobi weight needs alpha > -1 and beta > -1");
    require(c > -1.0 && c < 1.0, "big -1 Jacobi weight needs -1 < c < 1");
    const double ac = std::abs(c);
    std::vector<Singularity> sing{{-1.0, (alpha + 1.0) / 2.0},
                                  {1.0, (alpha - 1.0) / 2.0},
                                  {c, (beta + 1.0) / 2.0},
                                  {-c, (beta - 1.0) / 2.0}};
    if (c == 0.0) {
        return Measure("little_m1", {{-1.0, 1.0}}, [](double) { return 1.0; }, sing);
    }
    return Measure("big_m1", {{-1.0, -ac}, {ac, 1.0}}, [](double) { return 1.0; }, sing);
}

Measure little_m1_weight(double alpha, double beta) { return big_m1_weight(alpha, beta, 0.0); }

Measure periodic_weight(double lambda) {
    require(lambda > 0.0, "periodic weight needs lambda > 0");
    const double lo = std::abs(lambda - 1.0), hi = lambda + 1.0;
    const double h = 1.0 / (2.0 * kPi * lambda);
    return Measure("periodic", {{-hi, -lo}, {lo, hi}}, [h](double) { return h; },
                   {{-hi, 0.5}, {1.0 - lambda, 0.5}, {hi, -0.5}, {lambda - 1.0, -0.5}});
}

Measure periodic_alternate_weight(double lambda) {
    require(lambda > 0.0, "periodic weight needs lambda > 0");
    const double lo = std::abs(lambda - 1.0), hi = lambda + 1.0;
    auto h = [lambda](double t) {
        const double s = t > 0 ? -1.0 : 1.0;
        return 1.0 / (s * lambda * (t * t - 2.0 * lambda * lambda * t + lambda * lambda - 1.0));
    };
    return Measure("periodic_alternate", {{-hi, -lo}, {lo, hi}}, h,
                   {{-hi, 0.5}, {-lo, 0.5}, {lo, 0.5}, {hi, 0.5}});
}

Measure named_weight(WeightFamily family, const WeightParams& p) {
    switch (family) {
        case WeightFamily::gen_gegenbauer:
            return gen_gegenbauer_weight(p.xi, p.eta, p.variant);
        case WeightFamily::chebyshev_first:
            return chebyshev_first_weight();
        case WeightFamily::dg_from_circle:
            return dg_from_circle_weight(p.xi, p.eta);
        case WeightFamily::big_m1:
            return big_m1_weight(p.alpha, p.beta, p.c);
        case WeightFamily::little_m1:
            return little_m1_weight(p.alpha, p.beta);
        case WeightFamily::periodic:
            return periodic_weight(p.lambda);
        case WeightFamily::periodic_alternate:
            return periodic_alternate_weight(p.lambda);
    }
    throw DomainError("unknown weight family");
}

Measure rescale(const Measure& m, double g) {
    require(g != 0.0, "rescale factor must be nonzero");
    std::vector<Interval> support;
    for (const auto& iv : m.support()) {
        support.push_back(g > 0 ? Interval{g * iv.lo, g * iv.hi} : Interval{g * iv.hi, g * iv.lo});
    }
    std::sort(support.begin(), support.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Singularity> sing;
    double total = 0.0;
    for (const auto& s : m.singularities()) {
        sing.push_back({g * s.point, s.exponent});
        total += s.exponent;
    }
    const double factor = std::pow(std::abs(g), -total);
    Measure base = m;
    return Measure(m.name(), support, [base, g, factor](double x) { return factor * base.smooth(x / g); }, sing);
}

Measure christoffel_weight(const Measure& m, double theta) {
    const double lo = m.support().front().lo, hi = m.support().back().hi;
    require(theta <= lo || theta >= hi, "Christoffel point must lie outside the support");
    auto sing = m.singularities();
    sing.push_back({theta, 1.0});
    Measure base = m;
    return Measure(m.name(), m.support(), [base](double x) { return base.smooth(x); }, sing);
}

QuadratureRule discretize(const Measure& m, int level) {
    const double h = std::ldexp(1.0, -level);
    const long K = static_cast<long>(std::ceil(kTanhSinhSpan / h));
    QuadratureRule rule;
    for (const auto& piece : m.pieces()) {
        const double hw = 0.5 * (piece.hi - piece.lo);
        for (long k = -K; k <= K; ++k) {
            const double t = static_cast<double>(k) * h;
            const double u = 0.5 * kPi * std::sinh(t);
            const double e = std::exp(-2.0 * std::abs(u));
            const double near = 2.0 * hw * e / (1.0 + e);
            const double far = 2.0 * hw / (1.0 + e);
            const double d_lo = u >= 0 ? far : near;
            const double d_hi = u >= 0 ? near : far;
            if (!(d_lo > 0.0) || !(d_hi > 0.0)) continue;
            const double x = u >= 0 ? piece.hi - d_hi : piece.lo + d_lo;
            const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
            const double jac = h * hw * 0.5 * kPi * std::cosh(t) * sech2;
            if (jac == 0.0) continue;
            const double w = jac * m.density_on_piece(piece, x, d_lo, d_hi);
            if (w == 0.0) continue;
            rule.x.push_back(x);
            rule.w.push_back(w);
        }
    }
    return rule;
}

double integrate(const Measure& m, const std::function<double(double)>& f, double tol) {
    if (!(tol >= 1e-13)) throw DomainError("integration tolerance must be >= 1e-13");
    double prev = 0.0, err = INFINITY;
    for (int level = kFirstLevel; level <= kLastLevel; ++level) {
        const auto rule = discretize(m, level);
        double sum = 0.0, mag = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double v = rule.w[i] * f(rule.x[i]);
            sum += v;
            mag += std::abs(v);
        }
        if (!std::isfinite(sum)) {
            throw ConvergenceError("integrand is not finite on " + m.name(), sum, INFINITY);
        }
        if (level > kFirstLevel) {
            err = std::abs(sum - prev);
            if (err <= tol * std::max(mag, 1e-300)) return sum;
        }
        prev = sum;
    }
    throw ConvergenceError("quadrature did not converge on " + m.name(), prev, err);
}

double gram(const Measure& m, const MonicThreeTerm<double>& p, const MonicThreeTerm<double>& q, long n, long k,
            double tol) {
    return integrate(m, [&](double x) { return eval_monic(p, n, x) * eval_monic(q, k, x); }, tol);
}

namespace {

std::vector<double> gram_matrix(const QuadratureRule& rule, const MonicThreeTerm<double>& p, long n_max) {
    const auto N = static_cast<std::size_t>(n_max) + 1;
    std::vector<double> G(N * N, 0.0);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const auto vals = eval_monic_all(p, n_max, rule.x[i]);
        for (std::size_t a = 0; a < N; ++a) {
            for (std::size_t b = a; b < N; ++b) G[a * N + b] += rule.w[i] * vals[a] * vals[b];
        }
    }
    for (std::size_t a = 0; a < N; ++a) {
        for (std::size_t b = 0; b < a; ++b) G[a * N + b] = G[b * N + a];
    }
    return G;
}

}  // namespace

double gram_off_diagonal(const Measure& m, const MonicThreeTerm<double>& p, long n_max, double tol) {
    const auto N = static_cast<std::size_t>(n_max) + 1;
    std::vector<double> prev;
    double change = INFINITY;
    for (int level = kFirstLevel; level <= kLastLevel; ++level) {
        const auto G = gram_matrix(discretize(m, level), p, n_max);
        for (std::size_t a = 0; a < N; ++a) {
            if (!(G[a * N + a] > 0.0)) {
                throw InstabilityError("Gram diagonal not positive at degree " + std::to_string(a),
                                       static_cast<long>(a));
            }
        }
        if (!prev.empty()) {
            change = 0.0;
            for (std::size_t a = 0; a < N; ++a) {
                for (std::size_t b = 0; b < N; ++b) {
                    const double s = std::sqrt(G[a * N + a] * G[b * N + b]);
                    change = std::max(change, std::abs(G[a * N + b] - prev[a * N + b]) / s);
                }
            }
            if (change <= tol) {
                double worst = 0.0;
                for (std::size_t a = 0; a < N; ++a) {
                    for (std::size_t b = 0; b < N; ++b) {
                        if (a != b) worst = std::max(worst, std::abs(G[a * N + b]) / std::sqrt(G[a * N + a] * G[b * N + b]));
                    }
                }
                return worst;
            }
        }
        prev = G;
    }
    throw ConvergenceError("Gram matrix did not converge on " + m.name(), 0.0, change);
}

namespace {

void discrete_stieltjes(const QuadratureRule& rule, long n_max, std::vector<double>& b, std::vector<double>& u) {
    const std::size_t M = rule.x.size();
    double m0 = 0.0;
    for (double w : rule.w) m0 += w;
    if (!(m0 > 0.0) || !std::isfinite(m0)) throw InstabilityError("measure has non-positive total mass", 0);
    std::vector<double> q(M, 1.0 / std::sqrt(m0)), q_prev(M, 0.0), r(M);
    b.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    u.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (long n = 0; n <= n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        double bn = 0.0;
        for (std::size_t j = 0; j < M; ++j) bn += rule.w[j] * rule.x[j] * q[j] * q[j];
        b[i] = bn;
        if (n == n_max) break;
        const double su = std::sqrt(u[i]);
        double nrm = 0.0;
        for (std::size_t j = 0; j < M; ++j) {
            r[j] = (rule.x[j] - bn) * q[j] - su * q_prev[j];
            nrm += rule.w[j] * r[j] * r[j];
        }
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            throw InstabilityError("Stieltjes norm lost positivity at degree " + std::to_string(n + 1), n + 1);
        }
        u[i + 1] = nrm;
        const double s = 1.0 / std::sqrt(nrm);
        for (std::size_t j = 0; j < M; ++j) {
            q_prev[j] = q[j];
            q[j] = r[j] * s;
        }
    }
}

}  // namespace

MonicThreeTerm<double> stieltjes_recurrence(const Measure& m, long n_max, double tol) {
    if (n_max < 0 || n_max > kStieltjesMaxDegree) {
        throw DomainError("Stieltjes procedure supports 0 <= n_max <= " + std::to_string(kStieltjesMaxDegree));
    }
    std::vector<double> pb, pu, b, u;
    double change = INFINITY;
    for (int level = kFirstLevel + 1; level <= kLastLevel; ++level) {
        discrete_stieltjes(discretize(m, level), n_max, b, u);
        if (!pb.empty()) {
            change = 0.0;
            for (std::size_t i = 0; i < b.size(); ++i) {
                change = std::max(change, std::abs(b[i] - pb[i]) / (1.0 + std::abs(b[i])));
                change = std::max(change, std::abs(u[i] - pu[i]) / (1.0 + std::abs(u[i])));
            }
            if (change <= tol) return MonicThreeTerm<double>::from_tables(b, u);
        }
        pb = b;
        pu = u;
    }
    throw ConvergenceError("Stieltjes procedure did not converge on " + m.name(), 0.0, change);
}

}  // namespace cmvp
