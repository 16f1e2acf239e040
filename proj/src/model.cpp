#include "rangebound/model.hpp"

#include <cmath>

namespace rangebound {

void MeasurementBatch::validate() const {
    const Index m = values.size();
    if (err_lo.size() != m || err_hi.size() != m)
        throw InvalidBatch("error bound vectors must match the number of readings", -1);
    for (Index i = 0; i < m; ++i) {
        if (!(err_lo[i] <= err_hi[i]))
            throw InvalidBatch("err_lo > err_hi at index " + std::to_string(i), i);
        if (error_mode == ErrorMode::Relative && !(err_lo[i] > -1.0))
            throw InvalidBatch("relative err_lo must exceed -1 at index " + std::to_string(i), i);
        if (error_mode == ErrorMode::Absolute && !(values[i] >= err_hi[i]))
            throw InvalidBatch("reading below its upper error bound at index " + std::to_string(i), i);
        if (kind == MeasurementKind::SquaredDistance && error_mode == ErrorMode::Relative &&
            !(values[i] >= 0.0))
            throw InvalidBatch("squared readings must be nonnegative in relative mode, index " +
                                   std::to_string(i),
                               i);
    }
}

Matrix Scenario::anchor_matrix() const {
    Matrix a(dim, num_anchors());
    for (Index i = 0; i < num_anchors(); ++i) a.col(i) = anchors[i];
    return a;
}

std::vector<std::string> Scenario::validate() const {
    if (dim < 1) throw ArgumentError("scenario dimension must be positive");
    const Index m = num_anchors();
    if (m < 2) throw ArgumentError("at least two anchors are required");
    for (Index i = 0; i < m; ++i)
        if (anchors[i].size() != dim)
            throw ArgumentError("anchor " + std::to_string(i) + " has wrong dimension");
    if (batch.size() != m)
        throw InvalidBatch("number of readings must match number of anchors", -1);
    batch.validate();
    if (true_location && true_location->size() != dim)
        throw ArgumentError("true_location has wrong dimension");

    std::vector<std::string> warnings;
    if (m < dim + 1)
        warnings.push_back("fewer anchors than dim+1: localization set may be unbounded");
    return warnings;
}

void BoundsVector::validate() const {
    if (hi.size() != lo.size())
        throw ArgumentError("bounds vectors must have equal length");
    for (Index i = 0; i < lo.size(); ++i)
        if (!(0.0 <= lo[i] && lo[i] <= hi[i]))
            throw ArgumentError("bounds must satisfy 0 <= lo <= hi at index " +
                                std::to_string(i));
}

BoundsVector build_bounds(const MeasurementBatch& batch,
                          std::vector<std::string>* warnings, bool enforce_invariants) {
    if (enforce_invariants) batch.validate();
    const Index m = batch.size();
    BoundsVector b;
    b.lo.resize(m);
    b.hi.resize(m);
    for (Index i = 0; i < m; ++i) {
        const double v = batch.values[i];
        const double el = batch.err_lo[i];
        const double eh = batch.err_hi[i];
        double lo, hi;
        if (batch.kind == MeasurementKind::SquaredDistance) {
            if (batch.error_mode == ErrorMode::Absolute) {
                lo = v - eh;
                hi = v - el;
            } else {
                lo = v / (1.0 + eh);
                hi = v / (1.0 + el);
            }
        } else {
            double dlo, dhi;
            if (batch.error_mode == ErrorMode::Absolute) {
                dlo = v - eh;
                dhi = v - el;
            } else {
                dlo = v / (1.0 + eh);
                dhi = v / (1.0 + el);
            }
            lo = dlo * dlo;
            hi = dhi * dhi;
            if (dlo < 0.0) {
                // distance interval crosses or lies below zero; only possible
                // when validation was bypassed
                hi = std::max(lo, hi);
                lo = dhi >= 0.0 ? 0.0 : dhi * dhi;
                if (warnings)
                    warnings->push_back("distance interval clamped at index " +
                                        std::to_string(i));
            }
        }
        if (lo < 0.0) {
            if (warnings)
                warnings->push_back("lower bound clamped to 0 at index " + std::to_string(i));
            lo = 0.0;
        }
        if (hi < 0.0) {
            if (warnings)
                warnings->push_back("upper bound clamped to 0 at index " + std::to_string(i));
            hi = 0.0;
        }
        b.lo[i] = lo;
        b.hi[i] = hi;
    }
    return b;
}

bool membership_true(const Vector& x, const Scenario& scenario,
                     const BoundsVector& bounds, double tol) {
    const Index m = scenario.num_anchors();
    for (Index i = 0; i < m; ++i) {
        const double d2 = (x - scenario.anchors[i]).squaredNorm();
        const double t = tol >= 0.0 ? tol : 1e-9 * (1.0 + bounds.hi[i]);
        if (d2 < bounds.lo[i] - t || d2 > bounds.hi[i] + t) return false;
    }
    return true;
}

} // namespace rangebound
