#pragma once

// Internal: operations on the symmetric cone K = R+^l x Q^q1 x ... x S+^s1 x ...
// Vectors in K-space stack the nonnegative orthant part, the second-order cone
// blocks, and the PSD blocks in scaled-vec (svec) form: lower triangle stored
// column-major with off-diagonal entries multiplied by sqrt(2), so the plain
// Euclidean dot product equals the Frobenius inner product.

#include <vector>

#include "rangebound/types.hpp"

namespace rangebound::conic::detail {

struct ConeDims {
    Index lin = 0;              // nonnegative orthant size
    std::vector<Index> soc;     // second-order cone dimensions
    std::vector<Index> psd;     // PSD block orders (matrix side)

    Index vec_len() const;      // total stacked length (svec for PSD)
    Index degree() const;       // barrier degree: lin + #soc + sum(psd)
};

inline Index svec_len(Index order) { return order * (order + 1) / 2; }

// Dense symmetric matrix <-> svec segment.
void svec_pack(const Matrix& m, Eigen::Ref<Vector> out);
Matrix svec_unpack(const Eigen::Ref<const Vector>& v, Index order);

// Nesterov-Todd scaling, one parameter set per block family.
struct Scaling {
    Vector d;                       // 'l': W = diag(d)
    struct SocScaling {
        double beta = 1.0;
        Vector v;                   // unit hyperbolic norm vector
    };
    std::vector<SocScaling> soc;
    struct PsdScaling {
        Matrix r;                   // W u = svec(r' mat(u) r)
        Matrix rti;                 // rti = r^{-T}
    };
    std::vector<PsdScaling> psd;
    bool identity = true;           // fresh scaling acts as the identity
};

// Computes W and lambda = W^{-T} s = W z from a strictly interior pair.
// Returns false when a block is numerically outside the cone.
bool compute_scaling(const ConeDims& dims, const Vector& s, const Vector& z,
                     Scaling& w, Vector& lambda);

// In-place x := W x / W' x / W^{-1} x / W^{-T} x.
void apply_scaling(const ConeDims& dims, const Scaling& w, Vector& x,
                   bool transpose, bool inverse);

// Jordan-algebra helpers. lambda arguments refer to the scaled point, whose
// PSD blocks are diagonal (only svec diagonal positions are read).
Vector jordan_identity(const ConeDims& dims);
Vector lambda_square(const ConeDims& dims, const Vector& lambda);
// x := lambda o\ x  (inverse of v -> lambda o v)
void jordan_solve(const ConeDims& dims, const Vector& lambda, Vector& x);
// General product a o b (used for the Mehrotra correction).
Vector jordan_product(const ConeDims& dims, const Vector& a, const Vector& b);
// x := H(lambda^{-1/2}) x, mapping the scaled iterate to the identity frame.
void lambda_halfinv_scale(const ConeDims& dims, const Vector& lambda, Vector& x);

// min { t : u + t e  in K }; negative when u is strictly interior.
double max_step(const ConeDims& dims, const Vector& u);

} // namespace rangebound::conic::detail
