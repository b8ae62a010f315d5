// quad.hpp
// Phase-space quadrature: a polar rule (Gauss-Legendre radial nodes times a
// uniform periodic angular grid) and the Wehrl entropy
//   H_w = -Integral Q ln(pi Q) d^2alpha      (natural log)
// with the pi inside the logarithm so coherent states sit exactly at
// H_w = 1, reproducing the thermal closed form 1 + ln(1+nbar).

#pragma once

#include <vector>

#include "ncw/fock.hpp"

namespace ncw {

struct QuadratureRule {
    // Fine grid. radial_weights already contain the polar Jacobian factor r;
    // each node's full weight is radial_weights[i] * (2 pi / angular_count).
    std::vector<double> radial_nodes;
    std::vector<double> radial_weights;
    int angular_count = 0;
    double r_max = 0.0;
    double tol = 1e-6;

    // Independently built companion at roughly half resolution; the spread
    // between the two is the refinement (convergence) estimate.
    std::vector<double> coarse_nodes;
    std::vector<double> coarse_weights;
    int coarse_angular_count = 0;

    std::size_t node_count() const {
        return radial_nodes.size() * static_cast<std::size_t>(angular_count);
    }
    double node_weight(std::size_t radial_index) const {
        return radial_weights[radial_index] * (2.0 * M_PI / angular_count);
    }
};

// energy_scale: the largest mean photon number (isotropic-equivalent; use
// max(<n>, V_max - 1/2) for anisotropic states) the rule must cover.
// The radius covers Gaussian tails down to ~tol/100 and the construction
// verifies the vacuum normalization at tol/10.
QuadratureRule build_rule(double energy_scale, double tol);

// Rule sized from a state's own second moments.
QuadratureRule rule_for_state(const FockVector& s, double tol);
QuadratureRule rule_for_state(const DensityOperator& s, double tol);
QuadratureRule rule_for_state(const State& s, double tol);

struct WehrlResult {
    double value = 0.0;             // H_w on the fine grid, nats
    double refinement_delta = 0.0;  // |fine - coarse|
    double neg_q_clamp = 0.0;       // most negative raw Q clamped to 0
};

// Throws non-convergence when the refinement delta exceeds rule.tol.
WehrlResult wehrl_entropy(const FockVector& s, const QuadratureRule& rule);
WehrlResult wehrl_entropy(const DensityOperator& s, const QuadratureRule& rule);

}  // namespace ncw
