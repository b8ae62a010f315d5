#include "ncw/special.hpp"

#include <cmath>
#include <stdexcept>

#include "ncw/error.hpp"

namespace ncw {

const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_parameter: return "invalid-parameter";
        case errc::dimension_too_small: return "dimension-too-small";
        case errc::index_out_of_range: return "index-out-of-range";
        case errc::r_too_large: return "r-too-large";
        case errc::degenerate_input: return "degenerate-input";
        case errc::uncertainty_violation: return "uncertainty-violation";
        case errc::support_mismatch: return "support-mismatch";
        case errc::non_convergence: return "non-convergence";
        case errc::syntax_error: return "syntax-error";
        case errc::eval_error: return "eval-error";
        case errc::internal_check: return "internal-check";
    }
    return "unknown";
}

double digamma(double x) {
    if (!(x > 0.0))
        throw Error(errc::invalid_parameter, "digamma: argument must be > 0");

    double acc = 0.0;
    while (x < 8.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }

    // psi(x) ~ ln x - 1/(2x) - sum B_{2k}/(2k x^{2k})
    const double z = 1.0 / (x * x);
    static const double bern[] = {
        1.0 / 12.0,   -1.0 / 120.0,    1.0 / 252.0,  -1.0 / 240.0,
        1.0 / 132.0,  -691.0 / 32760.0, 1.0 / 12.0,
    };
    double series = 0.0;
    double zp = z;
    for (double c : bern) {
        series += c * zp;
        zp *= z;
    }
    return acc + std::log(x) - 0.5 / x - series;
}

double log_factorial(int n) {
    if (n < 0)
        throw Error(errc::invalid_parameter, "log_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double laguerre(int m, double x) {
    if (m < 0)
        throw Error(errc::invalid_parameter, "laguerre: negative order");
    if (m == 0) return 1.0;
    double lm1 = 1.0;        // L_0
    double lm = 1.0 - x;     // L_1
    for (int k = 1; k < m; ++k) {
        // (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}
        double next = ((2.0 * k + 1.0 - x) * lm - k * lm1) / (k + 1.0);
        lm1 = lm;
        lm = next;
    }
    return lm;
}

double legendre(int n, double x) {
    if (n < 0)
        throw Error(errc::invalid_parameter, "legendre: negative order");
    if (n == 0) return 1.0;
    double pm1 = 1.0;  // P_0
    double pm = x;     // P_1
    for (int k = 1; k < n; ++k) {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        double next = ((2.0 * k + 1.0) * x * pm - k * pm1) / (k + 1.0);
        pm1 = pm;
        pm = next;
    }
    return pm;
}

namespace {

// P_n(x) and its derivative, for the Newton iteration.
void legendre_pair(int n, double x, double& p, double& dp) {
    double pm1 = 1.0, pm = x;
    for (int k = 1; k < n; ++k) {
        double next = ((2.0 * k + 1.0) * x * pm - k * pm1) / (k + 1.0);
        pm1 = pm;
        pm = next;
    }
    p = pm;
    dp = n * (x * pm - pm1) / (x * x - 1.0);
}

}  // namespace

GaussLegendre gauss_legendre(int n, double a, double b) {
    if (n < 1)
        throw Error(errc::invalid_parameter, "gauss_legendre: need n >= 1");
    if (!(b > a))
        throw Error(errc::invalid_parameter, "gauss_legendre: need b > a");

    GaussLegendre out;
    out.nodes.resize(n);
    out.weights.resize(n);

    const double shift = 0.5 * (b + a);
    const double scale = 0.5 * (b - a);

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p = 0.0, dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre_pair(n, x, p, dp);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre_pair(n, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.nodes[i] = shift - scale * x;
        out.weights[i] = scale * w;
        out.nodes[n - 1 - i] = shift + scale * x;
        out.weights[n - 1 - i] = scale * w;
    }
    return out;
}

}  // namespace ncw
