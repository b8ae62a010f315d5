#include <doctest.h>

#include <cmath>
#include <random>

#include "ncw/linalg.hpp"

using namespace ncw;

TEST_CASE("eigh on a known 2x2 Hermitian matrix") {
    // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
    std::vector<cx> a = {cx(2, 0), cx(0, 1), cx(0, -1), cx(2, 0)};
    const EigenSystem es = eigh(a, 2);
    CHECK(es.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(es.values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("eigh on a random Hermitian matrix reproduces A v = lambda v") {
    const int n = 40;
    std::mt19937 rng(42);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<cx> b(static_cast<size_t>(n) * n);
    for (cx& v : b) v = cx(dist(rng), dist(rng));
    std::vector<cx> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<size_t>(i) * n + j] =
                0.5 * (b[static_cast<size_t>(i) * n + j] +
                       std::conj(b[static_cast<size_t>(j) * n + i]));

    const EigenSystem es = eigh(a, n);

    // residuals
    for (int k = 0; k < n; ++k) {
        const cx* v = &es.vectors[static_cast<size_t>(k) * n];
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            cx av(0, 0);
            for (int j = 0; j < n; ++j) av += a[static_cast<size_t>(i) * n + j] * v[j];
            res = std::max(res, std::abs(av - es.values[k] * v[i]));
        }
        CHECK(res < 1e-10);
    }

    // orthonormality
    for (int k = 0; k < n; k += 7)
        for (int l = 0; l < n; l += 5) {
            cx dot(0, 0);
            for (int i = 0; i < n; ++i)
                dot += std::conj(es.vectors[static_cast<size_t>(k) * n + i]) *
                       es.vectors[static_cast<size_t>(l) * n + i];
            CHECK(std::abs(dot - (k == l ? cx(1, 0) : cx(0, 0))) < 1e-11);
        }

    // eigenvalues sum to the trace
    double tr = 0.0, sum = 0.0;
    for (int i = 0; i < n; ++i) tr += a[static_cast<size_t>(i) * n + i].real();
    for (double v : es.values) sum += v;
    CHECK(sum == doctest::Approx(tr).epsilon(1e-12));
}

TEST_CASE("matmul and adjoint") {
    std::vector<cx> a = {cx(1, 0), cx(0, 1), cx(2, 0), cx(0, 0)};
    std::vector<cx> b = {cx(0, 0), cx(1, 0), cx(1, 0), cx(0, 0)};
    const std::vector<cx> c = matmul(a, b, 2);
    CHECK(c[0] == cx(0, 1));
    CHECK(c[1] == cx(1, 0));
    CHECK(c[2] == cx(0, 0));
    CHECK(c[3] == cx(2, 0));
    const std::vector<cx> at = adjoint(a, 2);
    CHECK(at[1] == cx(2, 0));
    CHECK(at[2] == cx(0, -1));
}
