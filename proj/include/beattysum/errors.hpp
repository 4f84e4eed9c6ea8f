#pragma once

#include <stdexcept>
#include <string>

namespace bsum {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (surd grammar, decimal literals, function ids).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A value outside the mathematical domain of an operation (alpha <= 1,
/// zero divisor, mismatched radicands, inadmissible smoothing width, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A comparison or floor fell inside the certified error bound of a
/// FixedReal; the library refuses to guess.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

/// Requested size exceeds a documented table or index limit.
class CapacityExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace bsum
