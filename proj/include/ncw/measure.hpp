// measure.hpp
// The Wehrl-entropic nonclassicality measure N_w.
//
// Pure states are referenced against coherent states (minimum Wehrl entropy,
// exactly 1 in this library's convention):   N_w = H_w - 1.
// Mixed states are referenced against the thermal state of their Gaussian
// counterpart:   N_w = |H_w - 1 - ln(1 + nbar)|  with
// nbar = sqrt(det cov) - 1/2.
//
// Dispatch between the branches is by purity; the branch taken is part of
// the result, because the two references do not agree even for pure inputs.

#pragma once

#include "ncw/fock.hpp"
#include "ncw/quad.hpp"

namespace ncw {

enum class Branch { pure, mixed };

struct NcDiagnostics {
    double tail_mass = 0.0;          // of the input state
    double convergence_delta = 0.0;  // quadrature refinement spread
    double neg_q_clamp = 0.0;        // largest negative Q rounded up to 0
    double value_clamp = 0.0;        // amount a tiny negative value was clamped
    double nbar_clamp = 0.0;         // amount the reference nbar was clamped
};

struct NcResult {
    double wehrl = 0.0;              // H_w, nats
    double reference_entropy = 0.0;  // H_w of the classical reference
    double value = 0.0;              // N_w >= 0, nats
    Branch branch = Branch::pure;
    double nbar_ref = 0.0;           // mixed branch only (0 otherwise)
    NcDiagnostics diagnostics;
};

struct NcOptions {
    // Tr rho^2 above 1 - purity_tol takes the pure branch.
    double purity_tol = 1e-9;
};

NcResult nc_pure(const FockVector& psi, const QuadratureRule& rule);
NcResult nc_mixed(const DensityOperator& rho, const QuadratureRule& rule);
NcResult nc(const State& s, const QuadratureRule& rule, const NcOptions& opt = {});

// Closed forms from the measure's analytic reductions.
double closed_form_fock(int m);                              // m + ln m! - m psi(m+1)
double closed_form_squeezed(double r);                       // ln cosh r
double closed_form_pats(int m);                              // |ln(m+1) - m - ln m! + m psi(m+1)|
double closed_form_squeezed_thermal(double nbar, double r);  // |.5 ln(mu^2(1+2n)+n^2) - ln(1+n)|

}  // namespace ncw
