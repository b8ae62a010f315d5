#include "ncw/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ncw/error.hpp"

namespace ncw {

std::vector<cx> matmul(const std::vector<cx>& a, const std::vector<cx>& b, int n) {
    std::vector<cx> c(static_cast<size_t>(n) * n, cx(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cx aik = a[static_cast<size_t>(i) * n + k];
            if (aik == cx(0.0, 0.0)) continue;
            const cx* brow = &b[static_cast<size_t>(k) * n];
            cx* crow = &c[static_cast<size_t>(i) * n];
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

std::vector<cx> adjoint(const std::vector<cx>& a, int n) {
    std::vector<cx> t(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t[static_cast<size_t>(j) * n + i] = std::conj(a[static_cast<size_t>(i) * n + j]);
    return t;
}

std::vector<cx> matvec(const std::vector<cx>& a, const std::vector<cx>& x, int n) {
    std::vector<cx> y(n, cx(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        cx acc(0.0, 0.0);
        const cx* row = &a[static_cast<size_t>(i) * n];
        for (int j = 0; j < n; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

// Cyclic Jacobi with a phase reduction per pivot: rotate the (p,q) entry
// real with diag(1, e^{-i arg}) and then apply the classic real Givens
// rotation (Golub & Van Loan form). Adequate for the dimensions the library
// diagonalizes (relative entropy and test validation); not a LAPACK
// replacement.
EigenSystem eigh(std::vector<cx> a, int n) {
    EigenSystem es;
    es.n = n;
    es.values.assign(n, 0.0);
    es.vectors.assign(static_cast<size_t>(n) * n, cx(0.0, 0.0));

    std::vector<cx> v(static_cast<size_t>(n) * n, cx(0.0, 0.0));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

    auto at = [&](int i, int j) -> cx& { return a[static_cast<size_t>(i) * n + j]; };
    auto vat = [&](int i, int j) -> cx& { return v[static_cast<size_t>(i) * n + j]; };

    double norm2 = 0.0;
    for (const cx& z : a) norm2 += std::norm(z);
    const double off_tol2 = norm2 * 1e-30 + 1e-300;

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off2 = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off2 += 2.0 * std::norm(at(p, q));
        if (off2 <= off_tol2) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                cx apq = at(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;

                // Phase step: A <- D' A D with D = diag(1,...,e^{-i phi} at q).
                const cx ph = std::conj(apq) / mag;  // e^{-i phi}
                for (int k = 0; k < n; ++k) at(k, q) *= ph;
                for (int k = 0; k < n; ++k) at(q, k) *= std::conj(ph);
                for (int k = 0; k < n; ++k) vat(k, q) *= ph;

                // Now at(p,q) is real (= mag). Real Jacobi rotation.
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Columns p and q.
                for (int k = 0; k < n; ++k) {
                    const cx akp = at(k, p);
                    const cx akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                // Rows p and q.
                for (int k = 0; k < n; ++k) {
                    const cx apk = at(p, k);
                    const cx aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                // Accumulate eigenvectors.
                for (int k = 0; k < n; ++k) {
                    const cx vkp = vat(k, p);
                    const cx vkq = vat(k, q);
                    vat(k, p) = c * vkp - s * vkq;
                    vat(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = at(i, i).real();
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return diag[i] < diag[j]; });

    for (int k = 0; k < n; ++k) {
        es.values[k] = diag[order[k]];
        for (int i = 0; i < n; ++i)
            es.vectors[static_cast<size_t>(k) * n + i] =
                v[static_cast<size_t>(i) * n + order[k]];
    }
    return es;
}

}  // namespace ncw
