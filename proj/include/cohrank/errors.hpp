#pragma once

#include <stdexcept>
#include <string>

namespace cohrank {

// Base class for all library errors so callers can catch one type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Canonicalization removed every term (exact cancellation).
class EmptyStateError : public Error {
public:
    explicit EmptyStateError(const std::string& what) : Error(what) {}
};

// Norm vanished at rounding level, or a named state was requested in a
// parameter regime where it degenerates (odd cat with |alpha| ~ 0).
class DegenerateStateError : public Error {
public:
    explicit DegenerateStateError(const std::string& what) : Error(what) {}
};

// Mode counts or array shapes do not line up.
class ShapeMismatchError : public Error {
public:
    explicit ShapeMismatchError(const std::string& what) : Error(what) {}
};

// Matrix offered as a splitter is not unitary within tolerance.
class NonUnitaryError : public Error {
public:
    explicit NonUnitaryError(const std::string& what) : Error(what) {}
};

// Fock truncation too small for the requested accuracy.
class TruncationError : public Error {
public:
    explicit TruncationError(const std::string& what) : Error(what) {}
};

// Requested construction would drown in floating-point cancellation.
class ConditioningError : public Error {
public:
    explicit ConditioningError(const std::string& what) : Error(what) {}
};

// Malformed file, state spec, or flag value.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Rejection sampling failed to place points under the separation constraint.
class SamplingError : public Error {
public:
    explicit SamplingError(const std::string& what) : Error(what) {}
};

} // namespace cohrank
