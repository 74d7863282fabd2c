#pragma once

#include <stdexcept>
#include <string>

namespace fsgl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingEdge : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct InsufficientEigenpairs : Error { using Error::Error; };
// Raised when 1 - step * q <= 0, i.e. the rank-one determinant factor would be nonpositive.
struct StepTooLarge : Error { using Error::Error; };
struct InvalidBudget : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };
struct InvalidDof : Error { using Error::Error; };
struct ZeroReference : Error { using Error::Error; };
// Malformed input files or inconsistent dimensions.
struct DataError : Error { using Error::Error; };

} // namespace fsgl
