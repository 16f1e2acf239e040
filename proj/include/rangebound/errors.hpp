#pragma once

#include <stdexcept>
#include <string>

#include "rangebound/types.hpp"

namespace rangebound {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A function argument violated its preconditions.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A measurement batch violated one of its invariants. Carries the
/// offending index (-1 when the failure is not tied to a single entry).
class InvalidBatch : public Error {
public:
    InvalidBatch(const std::string& msg, Index index) : Error(msg), index(index) {}
    Index index;
};

/// A scenario file or JSON document failed schema validation.
class InvalidScenario : public Error {
public:
    using Error::Error;
};

/// The localization set is empty: a conic program over it was infeasible.
class EmptyLocalizationSet : public Error {
public:
    using Error::Error;
};

/// The interior-point solver could not reach the requested accuracy.
class SolverFailure : public Error {
public:
    using Error::Error;
};

/// Directional probe started from a point outside the localization set.
class InfeasibleProbe : public Error {
public:
    using Error::Error;
};

/// Vertex enumeration refused: 2^m exceeds the configured cap.
class VertexBudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Linearization center coincides with an anchor.
class DegenerateCenter : public Error {
public:
    DegenerateCenter(const std::string& msg, Index anchor) : Error(msg), anchor(anchor) {}
    Index anchor;
};

/// Anchor geometry does not satisfy the rank condition an operation requires.
class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

/// Rejection sampler exhausted its proposal budget.
class SamplingBudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Operation only defined in the plane (plotting).
class DimensionUnsupported : public Error {
public:
    using Error::Error;
};

} // namespace rangebound
