#include "ncw/husimi.hpp"

#include <algorithm>
#include <cmath>

namespace ncw {

namespace {

// R_n(r) = e^{-r^2/2} r^n / sqrt(n!); every running value stays <= 1.
std::vector<double> radial_profile(double r, int dim) {
    std::vector<double> prof(dim, 0.0);
    double v = std::exp(-0.5 * r * r);
    for (int n = 0; n < dim; ++n) {
        prof[n] = v;
        v *= r / std::sqrt(n + 1.0);
    }
    return prof;
}

// Contiguous index window where the profile is numerically alive.
void profile_window(const std::vector<double>& prof, int& lo, int& hi) {
    const int n = static_cast<int>(prof.size());
    lo = 0;
    while (lo < n && prof[lo] < 1e-250) ++lo;
    hi = n;
    while (hi > lo && prof[hi - 1] < 1e-250) --hi;
}

}  // namespace

std::vector<cx> coherent_row(cx alpha, int dim) {
    std::vector<cx> v(dim, cx(0.0, 0.0));
    const cx ac = std::conj(alpha);
    cx val = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < dim; ++n) {
        v[n] = val;
        val *= ac / std::sqrt(n + 1.0);
    }
    return v;
}

double q_value(const FockVector& s, cx alpha) {
    const std::vector<cx> v = coherent_row(alpha, s.dim());
    cx overlap(0.0, 0.0);
    for (int n = 0; n < s.dim(); ++n) overlap += v[n] * s.amplitude(n);
    return std::norm(overlap) / M_PI;
}

double q_value(const DensityOperator& s, cx alpha) {
    const int n = s.dim();
    const std::vector<cx> v = coherent_row(alpha, n);
    cx acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const cx* row = &s.matrix()[static_cast<size_t>(i) * n];
        cx inner(0.0, 0.0);
        for (int j = 0; j < n; ++j) inner += row[j] * std::conj(v[j]);
        acc += v[i] * inner;
    }
    return std::max(0.0, acc.real()) / M_PI;
}

namespace detail {

std::vector<double> q_on_polar(const FockVector& s, const std::vector<double>& radii,
                               int na, QGridDiag* diag) {
    const int dim = s.dim();
    const size_t nr = radii.size();
    std::vector<double> out(nr * na, 0.0);
    if (diag) diag->min_raw = 0.0;

    std::vector<cx> z(na);
    for (int j = 0; j < na; ++j) z[j] = std::polar(1.0, -2.0 * M_PI * j / na);

    std::vector<cx> coef(dim);
    for (size_t i = 0; i < nr; ++i) {
        const std::vector<double> prof = radial_profile(radii[i], dim);
        int lo, hi;
        profile_window(prof, lo, hi);
        double* ring = &out[i * na];
        if (lo >= hi) continue;
        for (int n = lo; n < hi; ++n) coef[n] = s.amplitude(n) * prof[n];
        for (int j = 0; j < na; ++j) {
            // Horner in z = e^{-i phi}; the dropped overall phase z^lo
            // does not affect |f|^2.
            cx f = coef[hi - 1];
            for (int n = hi - 2; n >= lo; --n) f = f * z[j] + coef[n];
            ring[j] = std::norm(f) / M_PI;
        }
    }
    return out;
}

std::vector<double> q_on_polar(const DensityOperator& s, const std::vector<double>& radii,
                               int na, QGridDiag* diag) {
    const int dim = s.dim();
    const size_t nr = radii.size();
    std::vector<double> out(nr * na, 0.0);
    double min_raw = 0.0;

    std::vector<cx> z(na);
    for (int j = 0; j < na; ++j) z[j] = std::polar(1.0, -2.0 * M_PI * j / na);

    // Diagonals that are exactly zero (parity-definite and diagonal states)
    // never enter the angular sums.
    std::vector<char> live(dim, 0);
    for (int d = 0; d < dim; ++d) {
        for (int m = d; m < dim; ++m) {
            if (s.at(m, m - d) != cx(0.0, 0.0)) {
                live[d] = 1;
                break;
            }
        }
    }

    std::vector<cx> t(dim);
    for (size_t i = 0; i < nr; ++i) {
        const std::vector<double> prof = radial_profile(radii[i], dim);
        int lo, hi;
        profile_window(prof, lo, hi);
        double* ring = &out[i * na];
        if (lo >= hi) continue;

        // T_d = sum_m rho(m, m-d) R_m R_{m-d}; Q pi = T_0 + 2 Re sum T_d z^d.
        const int dmax = hi - 1 - lo;
        for (int d = 0; d <= dmax; ++d) {
            if (!live[d]) {
                t[d] = cx(0.0, 0.0);
                continue;
            }
            cx acc(0.0, 0.0);
            for (int m = lo + d; m < hi; ++m)
                acc += s.at(m, m - d) * (prof[m] * prof[m - d]);
            t[d] = acc;
        }
        const double t0 = t[0].real();
        for (int j = 0; j < na; ++j) {
            cx w = z[j];
            double acc = 0.0;
            for (int d = 1; d <= dmax; ++d) {
                const cx& td = t[d];
                if (td.real() != 0.0 || td.imag() != 0.0)
                    acc += td.real() * w.real() - td.imag() * w.imag();
                w *= z[j];
            }
            const double raw = (t0 + 2.0 * acc) / M_PI;
            min_raw = std::min(min_raw, raw);
            ring[j] = std::max(0.0, raw);
        }
    }
    if (diag) diag->min_raw = min_raw;
    return out;
}

}  // namespace detail

std::vector<double> q_grid(const FockVector& s, const QuadratureRule& rule,
                           QGridDiag* diag) {
    return detail::q_on_polar(s, rule.radial_nodes, rule.angular_count, diag);
}

std::vector<double> q_grid(const DensityOperator& s, const QuadratureRule& rule,
                           QGridDiag* diag) {
    return detail::q_on_polar(s, rule.radial_nodes, rule.angular_count, diag);
}

}  // namespace ncw
