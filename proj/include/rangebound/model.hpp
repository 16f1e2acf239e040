#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rangebound/errors.hpp"
#include "rangebound/types.hpp"

namespace rangebound {

enum class MeasurementKind { SquaredDistance, PlainDistance };
enum class ErrorMode { Absolute, Relative };

/// A batch of m range readings with per-reading interval error bounds.
/// Units: length^2 for squared-distance readings, length for plain ones;
/// relative-mode bounds are dimensionless.
struct MeasurementBatch {
    MeasurementKind kind = MeasurementKind::PlainDistance;
    ErrorMode error_mode = ErrorMode::Absolute;
    Vector values;
    Vector err_lo;
    Vector err_hi;

    Index size() const { return values.size(); }
    /// Throws InvalidBatch naming the offending index and invariant.
    void validate() const;
};

/// Problem input: anchor positions plus one measurement batch.
struct Scenario {
    Index dim = 0;
    std::vector<Vector> anchors;
    MeasurementBatch batch;
    std::optional<Vector> true_location; // benchmarking only

    Index num_anchors() const { return static_cast<Index>(anchors.size()); }
    /// Anchors stacked as columns, n x m.
    Matrix anchor_matrix() const;
    /// Throws on hard invariant violations; returns soft warnings
    /// (e.g. fewer anchors than dim+1).
    std::vector<std::string> validate() const;
};

/// Unified interval bounds on the squared distances: lo <= ||x - a_i||^2 <= hi.
struct BoundsVector {
    Vector lo;
    Vector hi;

    Index size() const { return lo.size(); }
    void validate() const;
};

/// Convert a measurement batch into squared-distance interval bounds.
/// Negative raw lower bounds (possible only when invariants are bypassed via
/// enforce_invariants=false) are clamped to zero with a recorded warning.
BoundsVector build_bounds(const MeasurementBatch& batch,
                          std::vector<std::string>* warnings = nullptr,
                          bool enforce_invariants = true);

/// Membership in the exact (nonconvex) feasible set: the intersection of the
/// m spherical shells. tol < 0 selects the default per-constraint tolerance
/// 1e-9 * (1 + hi_i).
bool membership_true(const Vector& x, const Scenario& scenario,
                     const BoundsVector& bounds, double tol = -1.0);

} // namespace rangebound
