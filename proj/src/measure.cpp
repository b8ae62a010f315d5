#include "ncw/measure.hpp"

#include <cmath>

#include "ncw/gaussian.hpp"
#include "ncw/special.hpp"

namespace ncw {

NcResult nc_pure(const FockVector& psi, const QuadratureRule& rule) {
    const WehrlResult w = wehrl_entropy(psi, rule);
    NcResult res;
    res.branch = Branch::pure;
    res.wehrl = w.value;
    res.reference_entropy = 1.0;
    res.value = w.value - 1.0;
    if (res.value < 0.0) {
        res.diagnostics.value_clamp = -res.value;
        res.value = 0.0;
    }
    res.diagnostics.tail_mass = psi.tail_mass();
    res.diagnostics.convergence_delta = w.refinement_delta;
    res.diagnostics.neg_q_clamp = w.neg_q_clamp;
    return res;
}

namespace {

// Pure branch applied to a density operator that is a projector to within
// purity_tol (the dispatch case).
NcResult nc_pure_density(const DensityOperator& rho, const QuadratureRule& rule) {
    const WehrlResult w = wehrl_entropy(rho, rule);
    NcResult res;
    res.branch = Branch::pure;
    res.wehrl = w.value;
    res.reference_entropy = 1.0;
    res.value = w.value - 1.0;
    if (res.value < 0.0) {
        res.diagnostics.value_clamp = -res.value;
        res.value = 0.0;
    }
    res.diagnostics.tail_mass = rho.tail_mass();
    res.diagnostics.convergence_delta = w.refinement_delta;
    res.diagnostics.neg_q_clamp = w.neg_q_clamp;
    return res;
}

}  // namespace

NcResult nc_mixed(const DensityOperator& rho, const QuadratureRule& rule) {
    NcResult res;
    res.branch = Branch::mixed;

    double clamp = 0.0;
    const GaussianMoments g = moments(rho);
    res.nbar_ref = counterpart_thermal_occupation(g, &clamp);
    res.reference_entropy = 1.0 + std::log1p(res.nbar_ref);

    const WehrlResult w = wehrl_entropy(rho, rule);
    res.wehrl = w.value;
    res.value = std::abs(w.value - res.reference_entropy);

    res.diagnostics.tail_mass = rho.tail_mass();
    res.diagnostics.convergence_delta = w.refinement_delta;
    res.diagnostics.neg_q_clamp = w.neg_q_clamp;
    res.diagnostics.nbar_clamp = clamp;
    return res;
}

NcResult nc(const State& s, const QuadratureRule& rule, const NcOptions& opt) {
    if (std::holds_alternative<FockVector>(s))
        return nc_pure(std::get<FockVector>(s), rule);
    const DensityOperator& rho = std::get<DensityOperator>(s);
    if (purity(rho) > 1.0 - opt.purity_tol) return nc_pure_density(rho, rule);
    return nc_mixed(rho, rule);
}

double closed_form_fock(int m) {
    if (m < 0) throw Error(errc::invalid_parameter, "photon number must be >= 0");
    return m + log_factorial(m) - m * digamma(m + 1.0);
}

double closed_form_squeezed(double r) {
    if (!std::isfinite(r) || r < 0.0)
        throw Error(errc::invalid_parameter, "squeeze strength must be >= 0");
    return std::log(std::cosh(r));
}

double closed_form_pats(int m) {
    if (m < 1) throw Error(errc::invalid_parameter, "photon-added thermal needs m >= 1");
    return std::abs(std::log(m + 1.0) - m - log_factorial(m) + m * digamma(m + 1.0));
}

double closed_form_squeezed_thermal(double nbar, double r) {
    if (!std::isfinite(nbar) || nbar < 0.0)
        throw Error(errc::invalid_parameter, "thermal occupation must be >= 0");
    if (!std::isfinite(r) || r < 0.0)
        throw Error(errc::invalid_parameter, "squeeze strength must be >= 0");
    const double mu = std::cosh(r);
    return std::abs(0.5 * std::log(mu * mu * (1.0 + 2.0 * nbar) + nbar * nbar) -
                    std::log1p(nbar));
}

}  // namespace ncw
