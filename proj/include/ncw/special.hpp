// special.hpp
// Scalar special functions and Gauss-Legendre nodes. Everything here is
// self-contained; no external math libraries.

#pragma once

#include <vector>

namespace ncw {

inline constexpr double kEulerGamma = 0.57721566490153286061;

// Logarithmic derivative of the Gamma function, x > 0.
// Recurrence shift to x >= 8, then the Bernoulli asymptotic series;
// absolute error below 1e-13 over the positive axis.
double digamma(double x);

// ln(n!) for n >= 0.
double log_factorial(int n);

// Laguerre polynomial L_m(x), three-term recurrence.
double laguerre(int m, double x);

// Legendre polynomial P_n(x), three-term recurrence (any real x; the
// library uses it at x = cosh r >= 1).
double legendre(int n, double x);

// Gauss-Legendre quadrature on [a, b]: n nodes and weights, Newton on P_n.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n, double a, double b);

}  // namespace ncw
