#pragma once

#include <stdexcept>
#include <string>

namespace isc {

// Raised when a belief update is conditioned on an observation whose
// predicted probability underflows (model/data mismatch).
struct ImpossibleObservation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct EmptyBasePoints : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TreeTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedGrid : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace isc
