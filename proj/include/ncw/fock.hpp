// fock.hpp
// Single-mode states in a truncated Fock basis |0..N-1> and the constructors
// for the state families the library works with: coherent, number, squeezed,
// photon-added, cat, thermal and squeezed-thermal states.
//
// Conventions, fixed once for the whole library:
//   squeeze operator   S(z) = exp((z a'^2 - z* a^2)/2), z = r e^{i theta}
//   displacement       D(b) = exp(b a' - b* a)
// With these, S'(z) a S(z) = a cosh r + a' e^{i theta} sinh r, so at theta=0
// the p quadrature is squeezed and x is stretched.
//
// Every factory normalizes its output, computes the tail mass
// sum_{n >= N-4} (population at n), and refuses to construct (throwing
// dimension-too-small) when that mass exceeds tail_tol.

#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "ncw/error.hpp"
#include "ncw/linalg.hpp"

namespace ncw {

inline constexpr double kDefaultTailTol = 1e-10;
inline constexpr int kDefaultDim = 64;

enum class Parity { even, odd };

struct SqueezeParam {
    double r = 0.0;      // squeezing strength, >= 0 (r <= 3 supported)
    double theta = 0.0;  // squeezing angle, reduced to [0, 2pi)

    SqueezeParam() = default;
    SqueezeParam(double r_, double theta_);
};

class FockVector {
public:
    // Normalizes, computes tail mass, enforces the tail bound.
    static FockVector from_amplitudes(std::vector<cx> amps,
                                      double tail_tol = kDefaultTailTol);

    int dim() const { return static_cast<int>(amp_.size()); }
    const std::vector<cx>& amplitudes() const { return amp_; }
    cx amplitude(int n) const { return amp_[static_cast<size_t>(n)]; }

    double tail_mass() const { return tail_mass_; }
    // |1 - norm before normalization|; how much the construction had to fix.
    double renorm_delta() const { return renorm_delta_; }

private:
    FockVector() = default;
    std::vector<cx> amp_;
    double tail_mass_ = 0.0;
    double renorm_delta_ = 0.0;
};

class DensityOperator {
public:
    // Symmetrizes to exact Hermiticity, renormalizes the trace, validates
    // (real non-negative diagonal, Cauchy-Schwarz on off-diagonals, tail).
    static DensityOperator from_matrix(std::vector<cx> m, int dim,
                                       double tail_tol = kDefaultTailTol);

    int dim() const { return dim_; }
    const std::vector<cx>& matrix() const { return m_; }
    cx at(int i, int j) const { return m_[static_cast<size_t>(i) * dim_ + j]; }

    double tail_mass() const { return tail_mass_; }
    double hermitize_delta() const { return hermitize_delta_; }
    double trace_renorm() const { return trace_renorm_; }

private:
    DensityOperator() = default;
    std::vector<cx> m_;
    int dim_ = 0;
    double tail_mass_ = 0.0;
    double hermitize_delta_ = 0.0;
    double trace_renorm_ = 0.0;
};

// Either kind of state; what the expression evaluator and the measure
// dispatch on.
using State = std::variant<FockVector, DensityOperator>;

// ---- pure-state constructors ----

FockVector coherent(cx beta, int dim, double tail_tol = kDefaultTailTol);
FockVector fock(int m, int dim);
FockVector squeezed_coherent(const SqueezeParam& sq, cx alpha, int dim,
                             double tail_tol = kDefaultTailTol);
FockVector squeezed_number(const SqueezeParam& sq, int m, int dim,
                           double tail_tol = kDefaultTailTol);
FockVector photon_added_squeezed_vacuum(const SqueezeParam& sq, int m, int dim,
                                        double tail_tol = kDefaultTailTol);
FockVector cat_state(double big_r, Parity parity, int dim,
                     double tail_tol = kDefaultTailTol);

// ---- mixed-state constructors ----

DensityOperator thermal(double nbar, int dim, double tail_tol = kDefaultTailTol);
DensityOperator squeezed_thermal(double nbar, const SqueezeParam& sq, int dim,
                                 double tail_tol = kDefaultTailTol);

// ---- transforms (same kind in, same kind out) ----

// a'^m followed by renormalization. out_norm_factor, when non-null, receives
// the squared-norm gain before renormalization (for a'^m |psi>:
// sum |c_n|^2 (n+m)!/n!; for density operators the trace gain).
FockVector add_photons(const FockVector& s, int m,
                       double tail_tol = kDefaultTailTol,
                       double* out_norm_factor = nullptr);
DensityOperator add_photons(const DensityOperator& s, int m,
                            double tail_tol = kDefaultTailTol,
                            double* out_norm_factor = nullptr);

FockVector displace(const FockVector& s, cx beta,
                    double tail_tol = kDefaultTailTol);
DensityOperator displace(const DensityOperator& s, cx beta,
                         double tail_tol = kDefaultTailTol);

FockVector apply_squeeze(const FockVector& s, const SqueezeParam& sq,
                         double tail_tol = kDefaultTailTol);
DensityOperator apply_squeeze(const DensityOperator& s, const SqueezeParam& sq,
                              double tail_tol = kDefaultTailTol);

// Phase-space rotation by phi: c_n -> e^{-i n phi} c_n, so the Husimi
// function rotates as Q'(alpha) = Q(e^{i phi} alpha). Exactly norm-preserving.
FockVector rotate(const FockVector& s, double phi);
DensityOperator rotate(const DensityOperator& s, double phi);

// ---- scalar queries ----

double purity(const DensityOperator& rho);  // Tr rho^2
double mean_photon(const FockVector& s);
double mean_photon(const DensityOperator& s);

DensityOperator to_density(const FockVector& s);

// ---- operator matrices (row-major dim x dim) ----

// Exact truncated matrix elements <m|S(z)|n>. Columns are generated by
// recurrence and refused past Fock index 120, where double precision can
// no longer hold them; apply_squeeze and squeezed_number inherit the cap
// through the columns they request. squeezed_thermal does not (it has its
// own exact construction).
std::vector<cx> squeeze_matrix(const SqueezeParam& sq, int dim);
// Exact truncated matrix elements <m|D(beta)|n>.
std::vector<cx> displacement_matrix(cx beta, int dim);

}  // namespace ncw
