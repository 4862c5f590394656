#include "klt/error.hpp"

namespace klt {

const char* errc_name(errc code) {
    switch (code) {
        case errc::not_prime: return "NotPrime";
        case errc::reducible_modulus: return "ReducibleModulus";
        case errc::field_too_large: return "FieldTooLarge";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::zero_argument: return "ZeroArgument";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::zero_point: return "ZeroPoint";
        case errc::already_normalized: return "AlreadyNormalized";
        case errc::deligne_violation: return "DeligneViolation";
        case errc::size_mismatch: return "SizeMismatch";
        case errc::size_limit: return "SizeLimit";
        case errc::singular_matrix: return "SingularMatrix";
        case errc::zero_constant_term: return "ZeroConstantTerm";
        case errc::degree_check_failed: return "DegreeCheckFailed";
        case errc::out_of_domain: return "OutOfDomain";
        case errc::out_of_range: return "OutOfRange";
        case errc::too_few_samples: return "TooFewSamples";
        case errc::bad_prime: return "BadPrime";
        case errc::insufficient_data: return "InsufficientData";
        case errc::overflow: return "Overflow";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::io_error: return "IoError";
    }
    return "Unknown";
}

} // namespace klt
