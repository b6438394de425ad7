#pragma once

#include <array>
#include <complex>

#include "cmvp/measures.hpp"

namespace cmvp {

using Complex = std::complex<double>;

/// [-lambda-1, -|lambda-1|] and [|lambda-1|, lambda+1].
std::array<Interval, 2> essential_spectrum_periodic(double lambda);

/// Weyl function <(K_per - z)^{-1} e_0, e_0> of the a = 0 pencil with the
/// corner entry removed. Branch: the Herglotz root (Im m > 0 for Im z > 0),
/// which is the one behaving like -1/z at infinity.
Complex m_per(Complex z, double lambda);

/// m = m_per / (1 + lambda m_per), the Weyl function of K(lambda).
Complex m_full(Complex z, double lambda);

/// Density of the spectral measure of K(lambda), a = 0, at t inside a band.
double stieltjes_perron_density(double lambda, double t);

/// (1/pi) Im m_full(t + i eps).
double boundary_density(double lambda, double t, double eps = 1e-7);

/// The alternate two-branch formula, unnormalized; may be negative or singular.
double periodic_density_alternate(double lambda, double t);

struct WeylPoint {
    Complex z;
    double lambda;
    Complex value;
};

}  // namespace cmvp
