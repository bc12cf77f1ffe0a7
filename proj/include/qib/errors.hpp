#pragma once

#include <stdexcept>
#include <string>

namespace qib {

// Base of everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape/alphabet mismatches and exceeded size caps.
struct DimensionError : Error {
    using Error::Error;
};

// A stated numerical precondition is violated (rank deficiency, residual
// above tolerance, invalid distribution, ...).  The message names the
// precondition.
struct NumericalError : Error {
    using Error::Error;
};

// An iterative solver exhausted its budget with the gap above tolerance.
struct ConvergenceError : NumericalError {
    using NumericalError::NumericalError;
};

// Model-file syntax problem; carries a 1-based line number.
struct ParseError : Error {
    ParseError(std::size_t line_number, const std::string& what)
        : Error("line " + std::to_string(line_number) + ": " + what),
          line(line_number) {}
    std::size_t line;
};

}  // namespace qib
