// gaussian.hpp
// First/second quadrature moments, the thermal occupation of a state's
// Gaussian counterpart, the Gaussian closed-form Wehrl entropy, and quantum
// relative entropy.
//
// Quadratures: x = (a + a')/sqrt(2), p = (a - a')/(i sqrt(2)); vacuum
// covariance is I/2 and det(cov) >= 1/4 for physical states.

#pragma once

#include <array>

#include "ncw/fock.hpp"

namespace ncw {

struct GaussianMoments {
    std::array<double, 2> mean{0.0, 0.0};                  // <x>, <p>
    std::array<std::array<double, 2>, 2> cov{{{0.0, 0.0},  // symmetrized
                                              {0.0, 0.0}}};

    double det() const {
        return cov[0][0] * cov[1][1] - cov[0][1] * cov[1][0];
    }
    // Largest covariance eigenvalue; sets the phase-space extent of Q.
    double max_variance() const;
};

GaussianMoments moments(const FockVector& s);
GaussianMoments moments(const DensityOperator& s);

// Thermal occupation of the displaced-squeezed-thermal decomposition of the
// Gaussian counterpart: nbar = sqrt(det cov) - 1/2, clamped at 0 from below.
// out_clamp, when non-null, receives the clamped magnitude.
double counterpart_thermal_occupation(const GaussianMoments& g,
                                      double* out_clamp = nullptr);

// Closed-form Wehrl entropy of the Gaussian state with these moments:
// H_w = 1 + (1/2) ln det(cov + I/2). Equals 1 for vacuum, 1 + ln(1+nbar)
// for thermal, 1 + ln cosh r for squeezed vacuum.
double gaussian_wehrl(const GaussianMoments& g);

// Quantum relative entropy S(rho||sigma) = Tr rho (ln rho - ln sigma) via
// eigendecomposition, eigenvalue floor 1e-12. Returns +infinity when rho has
// support outside sigma's.
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

}  // namespace ncw
