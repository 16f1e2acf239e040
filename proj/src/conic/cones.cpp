#include "cones.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace rangebound::conic::detail {

namespace {
const double kSqrt2 = std::sqrt(2.0);

// sqrt(u0^2 - ||u1||^2) for a SOC block; negative argument reported as -1.
double hyperbolic_norm(const Eigen::Ref<const Vector>& u) {
    const double a2 = u[0] * u[0] - u.tail(u.size() - 1).squaredNorm();
    if (a2 <= 0.0) return -1.0;
    return std::sqrt(a2);
}
} // namespace

Index ConeDims::vec_len() const {
    Index n = lin;
    for (Index q : soc) n += q;
    for (Index s : psd) n += svec_len(s);
    return n;
}

Index ConeDims::degree() const {
    Index d = lin + static_cast<Index>(soc.size());
    for (Index s : psd) d += s;
    return d;
}

void svec_pack(const Matrix& m, Eigen::Ref<Vector> out) {
    const Index k = m.rows();
    Index pos = 0;
    for (Index j = 0; j < k; ++j) {
        out[pos++] = m(j, j);
        for (Index i = j + 1; i < k; ++i) out[pos++] = kSqrt2 * 0.5 * (m(i, j) + m(j, i));
    }
}

Matrix svec_unpack(const Eigen::Ref<const Vector>& v, Index order) {
    Matrix m(order, order);
    Index pos = 0;
    for (Index j = 0; j < order; ++j) {
        m(j, j) = v[pos++];
        for (Index i = j + 1; i < order; ++i) {
            m(i, j) = v[pos] / kSqrt2;
            m(j, i) = m(i, j);
            ++pos;
        }
    }
    return m;
}

bool compute_scaling(const ConeDims& dims, const Vector& s, const Vector& z,
                     Scaling& w, Vector& lambda) {
    lambda.resize(dims.vec_len());
    w.identity = false;
    Index ind = 0;

    // 'l': W = diag(sqrt(s./z)), lambda = sqrt(s.*z)
    w.d.resize(dims.lin);
    for (Index i = 0; i < dims.lin; ++i) {
        if (s[i] <= 0.0 || z[i] <= 0.0) return false;
        w.d[i] = std::sqrt(s[i] / z[i]);
        lambda[i] = std::sqrt(s[i] * z[i]);
    }
    ind += dims.lin;

    // 'q': hyperbolic Householder scaling W = beta * (2 v v' - J)
    w.soc.assign(dims.soc.size(), {});
    for (size_t k = 0; k < dims.soc.size(); ++k) {
        const Index m = dims.soc[k];
        auto sk = s.segment(ind, m);
        auto zk = z.segment(ind, m);
        const double aa = hyperbolic_norm(sk);
        const double bb = hyperbolic_norm(zk);
        if (aa <= 0.0 || bb <= 0.0) return false;

        auto& sc = w.soc[k];
        sc.beta = std::sqrt(aa / bb);
        const double cc = std::sqrt((sk.dot(zk) / (aa * bb) + 1.0) / 2.0);

        // v' = (s/a + J z/b) / (2c), then v = (v' + e)/sqrt(2(v0'+1))
        Vector v = -zk / bb;
        v[0] = -v[0];
        v += sk / aa;
        v /= 2.0 * cc;
        v[0] += 1.0;
        v /= std::sqrt(2.0 * v[0]);
        sc.v = v;

        const double dd = 2.0 * cc + sk[0] / aa + zk[0] / bb;
        auto lk = lambda.segment(ind, m);
        lk[0] = cc;
        lk.tail(m - 1) = ((cc + zk[0] / bb) / dd / aa) * sk.tail(m - 1) +
                         ((cc + sk[0] / aa) / dd / bb) * zk.tail(m - 1);
        lk *= std::sqrt(aa * bb);
        ind += m;
    }

    // 's': r from Cholesky factors and the SVD of Lz' Ls.
    w.psd.assign(dims.psd.size(), {});
    for (size_t k = 0; k < dims.psd.size(); ++k) {
        const Index m = dims.psd[k];
        const Matrix sk = svec_unpack(s.segment(ind, svec_len(m)), m);
        const Matrix zk = svec_unpack(z.segment(ind, svec_len(m)), m);
        Eigen::LLT<Matrix> ls(sk), lz(zk);
        if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
        const Matrix Ls = ls.matrixL();
        const Matrix Lz = lz.matrixL();
        Eigen::JacobiSVD<Matrix> svd(Lz.transpose() * Ls,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Vector sig = svd.singularValues();
        if (sig.minCoeff() <= 0.0) return false;
        const Vector sqrt_sig = sig.cwiseSqrt();

        auto& ps = w.psd[k];
        // r = Lz^{-T} U diag(sqrt(sig)); rti = Lz U diag(1/sqrt(sig))
        ps.r = Lz.transpose().triangularView<Eigen::Upper>().solve(Matrix(svd.matrixU()));
        ps.rti = Lz * svd.matrixU();
        for (Index j = 0; j < m; ++j) {
            ps.r.col(j) *= sqrt_sig[j];
            ps.rti.col(j) /= sqrt_sig[j];
        }

        auto lk = lambda.segment(ind, svec_len(m));
        lk.setZero();
        Index pos = 0;
        for (Index j = 0; j < m; ++j) {
            lk[pos] = sig[j];
            pos += m - j;
        }
        ind += svec_len(m);
    }
    return true;
}

void apply_scaling(const ConeDims& dims, const Scaling& w, Vector& x,
                   bool transpose, bool inverse) {
    if (w.identity) return;
    Index ind = 0;

    // 'l': symmetric diagonal
    if (dims.lin > 0) {
        if (inverse)
            x.head(dims.lin).array() /= w.d.array();
        else
            x.head(dims.lin).array() *= w.d.array();
    }
    ind += dims.lin;

    // 'q': W and W' coincide; inverse is (1/beta)(2 (Jv)(Jv)' - J)
    for (size_t k = 0; k < dims.soc.size(); ++k) {
        const Index m = dims.soc[k];
        auto xk = x.segment(ind, m);
        const Vector& v = w.soc[k].v;
        if (!inverse) {
            const double vx = v.dot(xk);
            Vector jx = -xk;
            jx[0] = xk[0];
            xk = w.soc[k].beta * (2.0 * vx * v - jx);
        } else {
            Vector jv = -v;
            jv[0] = v[0];
            const double jvx = jv.dot(xk);
            Vector jx = -xk;
            jx[0] = xk[0];
            xk = (1.0 / w.soc[k].beta) * (2.0 * jvx * jv - jx);
        }
        ind += m;
    }

    // 's': conjugation by r (or rti)
    for (size_t k = 0; k < dims.psd.size(); ++k) {
        const Index m = dims.psd[k];
        auto xk = x.segment(ind, svec_len(m));
        const Matrix mx = svec_unpack(xk, m);
        const Matrix& r = inverse ? w.psd[k].rti : w.psd[k].r;
        Matrix out;
        if (!transpose)
            out = inverse ? Matrix(r * mx * r.transpose())
                          : Matrix(r.transpose() * mx * r);
        else
            out = inverse ? Matrix(r.transpose() * mx * r)
                          : Matrix(r * mx * r.transpose());
        svec_pack(out, xk);
        ind += svec_len(m);
    }
}

Vector jordan_identity(const ConeDims& dims) {
    Vector e = Vector::Zero(dims.vec_len());
    Index ind = 0;
    e.head(dims.lin).setOnes();
    ind += dims.lin;
    for (Index m : dims.soc) {
        e[ind] = 1.0;
        ind += m;
    }
    for (Index m : dims.psd) {
        Index pos = ind;
        for (Index j = 0; j < m; ++j) {
            e[pos] = 1.0;
            pos += m - j;
        }
        ind += svec_len(m);
    }
    return e;
}

Vector lambda_square(const ConeDims& dims, const Vector& lambda) {
    Vector out = Vector::Zero(dims.vec_len());
    Index ind = 0;
    out.head(dims.lin) = lambda.head(dims.lin).cwiseProduct(lambda.head(dims.lin));
    ind += dims.lin;
    for (Index m : dims.soc) {
        auto lk = lambda.segment(ind, m);
        out[ind] = lk.squaredNorm();
        out.segment(ind + 1, m - 1) = 2.0 * lk[0] * lk.tail(m - 1);
        ind += m;
    }
    for (Index m : dims.psd) {
        Index pos = ind;
        for (Index j = 0; j < m; ++j) {
            out[pos] = lambda[pos] * lambda[pos];
            pos += m - j;
        }
        ind += svec_len(m);
    }
    return out;
}

void jordan_solve(const ConeDims& dims, const Vector& lambda, Vector& x) {
    Index ind = 0;
    x.head(dims.lin).array() /= lambda.head(dims.lin).array();
    ind += dims.lin;
    for (Index m : dims.soc) {
        auto lk = lambda.segment(ind, m);
        auto xk = x.segment(ind, m);
        const double a = lk[0] * lk[0] - lk.tail(m - 1).squaredNorm();
        const double cc = xk[0];
        const double dd = lk.tail(m - 1).dot(xk.tail(m - 1));
        xk[0] = cc * lk[0] - dd;
        xk.tail(m - 1) *= a / lk[0];
        xk.tail(m - 1) += (dd / lk[0] - cc) * lk.tail(m - 1);
        xk /= a;
        ind += m;
    }
    for (Index m : dims.psd) {
        // diagonal lambda: entry (i,j) divided by (lambda_i + lambda_j)/2
        Vector diag(m);
        Index pos = ind;
        for (Index j = 0; j < m; ++j) {
            diag[j] = lambda[pos];
            pos += m - j;
        }
        pos = ind;
        for (Index j = 0; j < m; ++j) {
            x[pos] /= diag[j];
            ++pos;
            for (Index i = j + 1; i < m; ++i) {
                x[pos] /= 0.5 * (diag[i] + diag[j]);
                ++pos;
            }
        }
        ind += svec_len(m);
    }
}

Vector jordan_product(const ConeDims& dims, const Vector& a, const Vector& b) {
    Vector out(dims.vec_len());
    Index ind = 0;
    out.head(dims.lin) = a.head(dims.lin).cwiseProduct(b.head(dims.lin));
    ind += dims.lin;
    for (Index m : dims.soc) {
        auto ak = a.segment(ind, m);
        auto bk = b.segment(ind, m);
        out[ind] = ak.dot(bk);
        out.segment(ind + 1, m - 1) = ak[0] * bk.tail(m - 1) + bk[0] * ak.tail(m - 1);
        ind += m;
    }
    for (Index m : dims.psd) {
        const Matrix ma = svec_unpack(a.segment(ind, svec_len(m)), m);
        const Matrix mb = svec_unpack(b.segment(ind, svec_len(m)), m);
        const Matrix prod = 0.5 * (ma * mb + mb * ma);
        svec_pack(prod, out.segment(ind, svec_len(m)));
        ind += svec_len(m);
    }
    return out;
}

void lambda_halfinv_scale(const ConeDims& dims, const Vector& lambda, Vector& x) {
    Index ind = 0;
    x.head(dims.lin).array() /= lambda.head(dims.lin).array();
    ind += dims.lin;
    for (Index m : dims.soc) {
        auto lk = lambda.segment(ind, m);
        auto xk = x.segment(ind, m);
        const double a = hyperbolic_norm(lk);
        const double lx = (lk[0] * xk[0] - lk.tail(m - 1).dot(xk.tail(m - 1))) / a;
        const double x0 = xk[0];
        xk[0] = lx;
        const double c = -(lx + x0) / (lk[0] / a + 1.0) / a;
        xk.tail(m - 1) += c * lk.tail(m - 1);
        xk /= a;
        ind += m;
    }
    for (Index m : dims.psd) {
        Vector diag(m);
        Index pos = ind;
        for (Index j = 0; j < m; ++j) {
            diag[j] = lambda[pos];
            pos += m - j;
        }
        pos = ind;
        for (Index j = 0; j < m; ++j) {
            for (Index i = j; i < m; ++i) {
                x[pos] /= std::sqrt(diag[i] * diag[j]);
                ++pos;
            }
        }
        ind += svec_len(m);
    }
}

double max_step(const ConeDims& dims, const Vector& u) {
    double t = -std::numeric_limits<double>::infinity();
    Index ind = 0;
    if (dims.lin > 0) t = std::max(t, -u.head(dims.lin).minCoeff());
    ind += dims.lin;
    for (Index m : dims.soc) {
        t = std::max(t, u.segment(ind + 1, m - 1).norm() - u[ind]);
        ind += m;
    }
    for (Index m : dims.psd) {
        const Matrix mu = svec_unpack(u.segment(ind, svec_len(m)), m);
        Eigen::SelfAdjointEigenSolver<Matrix> es(mu, Eigen::EigenvaluesOnly);
        t = std::max(t, -es.eigenvalues().minCoeff());
        ind += svec_len(m);
    }
    if (!std::isfinite(t)) t = 0.0;
    return t;
}

} // namespace rangebound::conic::detail
