#ifndef ZH_ERRORS_HPP
#define ZH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zh {

/// Input outside the mathematical domain of an operation.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Exact arithmetic produced something that cannot happen for consistent
/// inputs (fractional point-count coefficient, Hasse bound violation, ...).
/// Signals a bug or corrupted input data, never a tolerance issue.
struct inconsistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// An enumeration budget or iteration cap was exceeded.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation hit a zero denominator.
struct pole_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace zh

#endif
