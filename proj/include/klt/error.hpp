#pragma once

#include <stdexcept>
#include <string>

namespace klt {

enum class errc {
    not_prime,
    reducible_modulus,
    field_too_large,
    division_by_zero,
    zero_argument,
    budget_exceeded,
    zero_point,
    already_normalized,
    deligne_violation,
    size_mismatch,
    size_limit,
    singular_matrix,
    zero_constant_term,
    degree_check_failed,
    out_of_domain,
    out_of_range,
    too_few_samples,
    bad_prime,
    insufficient_data,
    overflow,
    invalid_argument,
    io_error,
};

const char* errc_name(errc code);

/// Library-wide exception carrying a machine-readable code (used by the CLI
/// to emit {"error": code, "message": ...}).
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace klt
