// husimi.hpp
// Husimi Q distribution Q(alpha) = <alpha|rho|alpha>/pi evaluated at points
// and on polar grids. Everything is computed from the Fock representation;
// the Gaussian closed form exists only in tests as an oracle.

#pragma once

#include <vector>

#include "ncw/fock.hpp"
#include "ncw/quad.hpp"

namespace ncw {

// Overlap row v_n = <alpha|n> = e^{-|alpha|^2/2} conj(alpha)^n / sqrt(n!),
// built by a multiplicative recurrence whose running value never overflows.
std::vector<cx> coherent_row(cx alpha, int dim);

// Q at a single phase-space point; round-off below zero is clamped to 0.
double q_value(const FockVector& s, cx alpha);
double q_value(const DensityOperator& s, cx alpha);

struct QGridDiag {
    // Most negative raw Q before clamping (0 when none); values below
    // -1e-12 indicate truncation damage.
    double min_raw = 0.0;
    bool truncation_damage() const { return min_raw < -1e-12; }
};

// Q at every node of the rule's fine grid, ring-major: index i*Na + j for
// radial node i and angle j = 0..Na-1 (phi_j = 2 pi j / Na). Deterministic
// ordering and summation independent of any execution schedule.
std::vector<double> q_grid(const FockVector& s, const QuadratureRule& rule,
                           QGridDiag* diag = nullptr);
std::vector<double> q_grid(const DensityOperator& s, const QuadratureRule& rule,
                           QGridDiag* diag = nullptr);

namespace detail {
// Ring evaluator shared by q_grid and the quadrature engine.
std::vector<double> q_on_polar(const FockVector& s, const std::vector<double>& radii,
                               int na, QGridDiag* diag);
std::vector<double> q_on_polar(const DensityOperator& s, const std::vector<double>& radii,
                               int na, QGridDiag* diag);
}  // namespace detail

}  // namespace ncw
