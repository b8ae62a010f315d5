// linalg.hpp
// Dense complex matrix helpers sized for truncated Fock spaces: row-major
// storage, a cyclic-Jacobi Hermitian eigensolver, and small conveniences.

#pragma once

#include <complex>
#include <vector>

namespace ncw {

using cx = std::complex<double>;

// Row-major n x n product c = a * b.
std::vector<cx> matmul(const std::vector<cx>& a, const std::vector<cx>& b, int n);

// Conjugate transpose.
std::vector<cx> adjoint(const std::vector<cx>& a, int n);

// y = a * x for row-major a.
std::vector<cx> matvec(const std::vector<cx>& a, const std::vector<cx>& x, int n);

// Eigendecomposition of a Hermitian matrix. values ascending;
// vectors[k*n + i] is component i of the k-th eigenvector.
struct EigenSystem {
    std::vector<double> values;
    std::vector<cx> vectors;
    int n = 0;
};

EigenSystem eigh(std::vector<cx> a, int n);

}  // namespace ncw
