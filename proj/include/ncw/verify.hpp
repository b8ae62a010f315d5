// verify.hpp
// Self-check suite behind the CLI's `verify` command: closed-form oracle
// agreement, invariance properties, and the qualitative orderings of the
// state families. Each check is independent; failures (including
// construction and convergence errors) are reported, never thrown.

#pragma once

#include <string>
#include <vector>

namespace ncw {

struct VerifyOptions {
    int dim = 0;        // 0 = choose per state (starting at 64); else forced
    double tol = 1e-6;  // quadrature tolerance
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opt);

}  // namespace ncw
