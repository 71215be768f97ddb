//
// seqr/errors.hpp
//
// Error vocabulary shared by all modules. Every failure mode callers are
// expected to handle has a named type; anything else is a plain logic error.
//

#ifndef SEQR_ERRORS_HPP
#define SEQR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace seqr {

// Caller passed parameters outside the documented domain (bad sizes, f <= 1,
// k > min(d, n), n not a multiple of b, ...).
struct InvalidSpec : std::invalid_argument {
    explicit InvalidSpec(const std::string& msg) : std::invalid_argument(msg) {}
};

// Two operands whose shapes must agree do not.
struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& msg) : std::invalid_argument(msg) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& msg) : std::out_of_range(msg) {}
};

// Input is structurally unusable (zero matrix where rank is required, empty
// column set, ...).
struct DegenerateInput : std::runtime_error {
    explicit DegenerateInput(const std::string& msg) : std::runtime_error(msg) {}
};

// A leading block that must be invertible is numerically singular.
struct SingularBlock : std::runtime_error {
    explicit SingularBlock(const std::string& msg) : std::runtime_error(msg) {}
};

// An iteration hit its hard cap without satisfying its exit condition.
struct TerminationFailure : std::runtime_error {
    explicit TerminationFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// Support-union selection produced no columns.
struct EmptySupport : std::runtime_error {
    explicit EmptySupport(const std::string& msg) : std::runtime_error(msg) {}
};

// Panel factorization met an exactly singular pivot block.
struct SingularPanel : std::runtime_error {
    explicit SingularPanel(const std::string& msg) : std::runtime_error(msg) {}
};

// An exhaustive search was asked to enumerate more subsets than the cap.
struct CombinatorialBlowup : std::runtime_error {
    explicit CombinatorialBlowup(const std::string& msg) : std::runtime_error(msg) {}
};

// I/O format violations (bad magic, truncated payload, unparsable cell).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace seqr

#endif // SEQR_ERRORS_HPP
