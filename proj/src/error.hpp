#pragma once

#include <stdexcept>
#include <string>

namespace qcf {

enum class ErrorCode {
    singular_input,
    no_convergence,
    not_an_eigenvalue,
    bad_shape,
    non_real_spectrum,
    not_idempotent,
    not_square_zero,
    derogatory,
    chain_failure,
    order_violation,
    shape_mismatch,
    not_block_diagonal,
    parse,
    invalid_argument,
    internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace qcf
