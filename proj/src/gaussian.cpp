#include "ncw/gaussian.hpp"

#include <cmath>
#include <limits>

#include "ncw/linalg.hpp"

namespace ncw {

namespace {

constexpr double kUncertaintySlack = 1e-9;
constexpr double kEigenFloor = 1e-12;

struct RawMoments {
    cx a;        // <a>
    cx a2;       // <a^2>
    double n;    // <a'a>
};

GaussianMoments assemble(const RawMoments& r) {
    GaussianMoments g;
    g.mean[0] = M_SQRT2 * r.a.real();
    g.mean[1] = M_SQRT2 * r.a.imag();
    const double vx = r.a2.real() + r.n + 0.5 - g.mean[0] * g.mean[0];
    const double vp = -r.a2.real() + r.n + 0.5 - g.mean[1] * g.mean[1];
    const double vxp = r.a2.imag() - g.mean[0] * g.mean[1];
    g.cov[0][0] = vx;
    g.cov[0][1] = vxp;
    g.cov[1][0] = vxp;
    g.cov[1][1] = vp;

    if (g.cov[0][0] < 0.0 || g.cov[1][1] < 0.0 ||
        g.det() < 0.25 - kUncertaintySlack)
        throw Error(errc::uncertainty_violation,
                    "moments violate the uncertainty bound; raise the truncation dim");
    return g;
}

}  // namespace

double GaussianMoments::max_variance() const {
    const double h = 0.5 * (cov[0][0] + cov[1][1]);
    const double d = 0.5 * (cov[0][0] - cov[1][1]);
    return h + std::sqrt(d * d + cov[0][1] * cov[0][1]);
}

GaussianMoments moments(const FockVector& s) {
    RawMoments r{cx(0.0, 0.0), cx(0.0, 0.0), 0.0};
    const int n = s.dim();
    for (int k = 0; k + 1 < n; ++k)
        r.a += std::conj(s.amplitude(k)) * std::sqrt(k + 1.0) * s.amplitude(k + 1);
    for (int k = 0; k + 2 < n; ++k)
        r.a2 += std::conj(s.amplitude(k)) *
                std::sqrt((k + 1.0) * (k + 2.0)) * s.amplitude(k + 2);
    for (int k = 0; k < n; ++k) r.n += k * std::norm(s.amplitude(k));
    return assemble(r);
}

GaussianMoments moments(const DensityOperator& s) {
    RawMoments r{cx(0.0, 0.0), cx(0.0, 0.0), 0.0};
    const int n = s.dim();
    for (int m = 1; m < n; ++m)
        r.a += std::sqrt(static_cast<double>(m)) * s.at(m, m - 1);
    for (int m = 2; m < n; ++m)
        r.a2 += std::sqrt(m * (m - 1.0)) * s.at(m, m - 2);
    for (int m = 0; m < n; ++m) r.n += m * s.at(m, m).real();
    return assemble(r);
}

double counterpart_thermal_occupation(const GaussianMoments& g, double* out_clamp) {
    const double det = g.det();
    if (det < 0.25 - kUncertaintySlack)
        throw Error(errc::uncertainty_violation, "invalid moments: det cov < 1/4");
    double nbar = std::sqrt(det) - 0.5;
    double clamp = 0.0;
    if (nbar < 0.0) {
        clamp = -nbar;
        nbar = 0.0;
    }
    if (out_clamp) *out_clamp = clamp;
    return nbar;
}

double gaussian_wehrl(const GaussianMoments& g) {
    const double a = g.cov[0][0] + 0.5;
    const double b = g.cov[1][1] + 0.5;
    const double c = g.cov[0][1];
    return 1.0 + 0.5 * std::log(a * b - c * c);
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim())
        throw Error(errc::invalid_parameter, "relative entropy needs equal dims");
    const int n = rho.dim();

    const EigenSystem er = eigh(rho.matrix(), n);
    const EigenSystem es = eigh(sigma.matrix(), n);

    // Tr rho ln rho; eigenvalues at or below the floor contribute nothing
    // (their share is bounded by floor*|ln floor|).
    double tr_rho_ln_rho = 0.0;
    for (double lam : er.values)
        if (lam > kEigenFloor) tr_rho_ln_rho += lam * std::log(lam);

    // Tr rho ln sigma expanded in sigma's eigenbasis. Reference eigenvalues
    // below the floor enter as ln(floor); rho-mass sitting on such directions
    // beyond a sliver means rho's support leaves sigma's, which is infinite.
    double tr_rho_ln_sigma = 0.0;
    double floored_mass = 0.0;
    for (int k = 0; k < n; ++k) {
        const cx* v = &es.vectors[static_cast<size_t>(k) * n];
        // <v| rho |v>
        cx acc(0.0, 0.0);
        for (int i = 0; i < n; ++i) {
            cx row(0.0, 0.0);
            const cx* r = &rho.matrix()[static_cast<size_t>(i) * n];
            for (int j = 0; j < n; ++j) row += r[j] * v[j];
            acc += std::conj(v[i]) * row;
        }
        const double w = std::max(0.0, acc.real());
        if (es.values[k] <= kEigenFloor) floored_mass += w;
        tr_rho_ln_sigma += w * std::log(std::max(es.values[k], kEigenFloor));
    }

    if (floored_mass > 1e-3)
        return std::numeric_limits<double>::infinity();
    return tr_rho_ln_rho - tr_rho_ln_sigma;
}

}  // namespace ncw
