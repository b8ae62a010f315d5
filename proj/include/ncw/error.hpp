// error.hpp
// Error taxonomy shared by the whole library. Every fallible operation throws
// ncw::Error with a code from errc; the C API maps codes onto ncw_status.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncw {

enum class errc {
    invalid_parameter = 1,
    dimension_too_small,
    index_out_of_range,
    r_too_large,
    degenerate_input,
    uncertainty_violation,
    support_mismatch,
    non_convergence,
    syntax_error,
    eval_error,
    internal_check,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

// Parse failure: byte offset of the offending token plus the token set the
// parser would have accepted there. No partial results are ever produced.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected,
               const std::string& msg)
        : Error(errc::syntax_error, msg),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

// Evaluation failure annotated with the source span of the token that
// produced the offending constructor call.
class EvalError : public Error {
public:
    EvalError(errc code, std::size_t begin, std::size_t end,
              const std::string& msg)
        : Error(code, msg), begin_(begin), end_(end) {}

    std::size_t begin() const { return begin_; }
    std::size_t end() const { return end_; }

private:
    std::size_t begin_;
    std::size_t end_;
};

}  // namespace ncw
