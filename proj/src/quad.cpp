#include "ncw/quad.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "ncw/gaussian.hpp"
#include "ncw/husimi.hpp"
#include "ncw/special.hpp"

namespace ncw {

namespace {

void fill_radial(int nr, double r_max, std::vector<double>& nodes,
                 std::vector<double>& weights) {
    const GaussLegendre gl = gauss_legendre(nr, 0.0, r_max);
    nodes = gl.nodes;
    weights.resize(nr);
    for (int i = 0; i < nr; ++i) weights[i] = gl.weights[i] * gl.nodes[i];
}

// Vacuum normalization: 2 * sum w_i e^{-r_i^2} must be 1.
double vacuum_self_test(const std::vector<double>& nodes,
                        const std::vector<double>& weights) {
    double acc = 0.0, comp = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) {
        const double term = 2.0 * weights[i] * std::exp(-nodes[i] * nodes[i]);
        const double y = term - comp;
        const double s = acc + y;
        comp = (s - acc) - y;
        acc = s;
    }
    return acc;
}

}  // namespace

QuadratureRule build_rule(double energy_scale, double tol) {
    if (!std::isfinite(energy_scale) || energy_scale < 0.0)
        throw Error(errc::invalid_parameter, "energy scale must be finite and >= 0");
    if (!(tol > 0.0) || tol > 0.1)
        throw Error(errc::invalid_parameter, "tolerance must be in (0, 0.1]");

    QuadratureRule rule;
    rule.tol = tol;

    // Radius covering Gaussian Q tails down to ~tol/100 at the isotropic
    // scale sigma^2 = (E+1)/2; the +2 keeps small states generously inside.
    const double sigma = std::sqrt(0.5 * (energy_scale + 1.0));
    const double k = std::sqrt(2.0 * std::log(100.0 / tol));
    rule.r_max = k * sigma + 2.0;

    // Radial density covers the vacuum-width (0.7) features any state can
    // carry, far from the origin included; the floor keeps the documented
    // 200 x 256 starting resolution for small states.
    int nr = std::max(200, static_cast<int>(std::ceil(18.0 * rule.r_max)));
    rule.angular_count = rule.r_max <= 16.0 ? 256 : 512;

    for (int attempt = 0;; ++attempt) {
        fill_radial(nr, rule.r_max, rule.radial_nodes, rule.radial_weights);
        const double norm = vacuum_self_test(rule.radial_nodes, rule.radial_weights);
        if (std::abs(norm - 1.0) <= tol / 10.0) break;
        if (attempt >= 3)
            throw Error(errc::internal_check,
                        "vacuum self-test failed to converge while building rule");
        nr *= 2;
    }

    // The companion must itself be accurate to ~tol for the refinement
    // spread to certify convergence rather than its own resolution. It keeps
    // the fine angular grid: states whose Q has an interior zero make the
    // entropy integrand only C^1 there, and the resulting slow angular
    // component is common to both grids and cancels from the spread.
    rule.coarse_angular_count = rule.angular_count;
    fill_radial(std::max(64, (4 * nr) / 5), rule.r_max, rule.coarse_nodes,
                rule.coarse_weights);
    return rule;
}

namespace {

double isotropic_scale(double nmean, const GaussianMoments& g) {
    return std::max({nmean, g.max_variance() - 0.5, 0.0});
}

}  // namespace

QuadratureRule rule_for_state(const FockVector& s, double tol) {
    return build_rule(isotropic_scale(mean_photon(s), moments(s)), tol);
}

QuadratureRule rule_for_state(const DensityOperator& s, double tol) {
    return build_rule(isotropic_scale(mean_photon(s), moments(s)), tol);
}

QuadratureRule rule_for_state(const State& s, double tol) {
    return std::visit([&](const auto& st) { return rule_for_state(st, tol); }, s);
}

namespace {

// -sum w Q ln(pi Q), fixed-order compensated summation.
double entropy_sum(const std::vector<double>& q, const std::vector<double>& rweights,
                   int na) {
    const double aw = 2.0 * M_PI / na;
    double acc = 0.0, comp = 0.0;
    for (size_t i = 0; i < rweights.size(); ++i) {
        const double w = rweights[i] * aw;
        const double* ring = &q[i * static_cast<size_t>(na)];
        for (int j = 0; j < na; ++j) {
            const double qv = ring[j];
            if (qv < 1e-300) continue;  // 0 ln 0 := 0
            const double term = -w * qv * std::log(M_PI * qv);
            const double y = term - comp;
            const double s = acc + y;
            comp = (s - acc) - y;
            acc = s;
        }
    }
    return acc;
}

template <typename StateT>
WehrlResult wehrl_impl(const StateT& s, const QuadratureRule& rule) {
    QGridDiag diag;
    const std::vector<double> qf =
        detail::q_on_polar(s, rule.radial_nodes, rule.angular_count, &diag);
    const double fine = entropy_sum(qf, rule.radial_weights, rule.angular_count);

    const std::vector<double> qc =
        detail::q_on_polar(s, rule.coarse_nodes, rule.coarse_angular_count, nullptr);
    const double coarse = entropy_sum(qc, rule.coarse_weights, rule.coarse_angular_count);

    WehrlResult res;
    res.value = fine;
    res.refinement_delta = std::abs(fine - coarse);
    res.neg_q_clamp = diag.min_raw < 0.0 ? -diag.min_raw : 0.0;
    if (res.refinement_delta > rule.tol) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "refinement delta %.3g exceeds tolerance %.3g",
                      res.refinement_delta, rule.tol);
        throw Error(errc::non_convergence, msg);
    }
    return res;
}

}  // namespace

WehrlResult wehrl_entropy(const FockVector& s, const QuadratureRule& rule) {
    return wehrl_impl(s, rule);
}

WehrlResult wehrl_entropy(const DensityOperator& s, const QuadratureRule& rule) {
    return wehrl_impl(s, rule);
}

}  // namespace ncw
