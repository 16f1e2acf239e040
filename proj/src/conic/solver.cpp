#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <Eigen/LU>

#include "cones.hpp"
#include "rangebound/conic/program.hpp"

namespace rangebound::conic {

namespace detail {
namespace {

// min c'x  s.t.  A x = b,  G x + s = h,  s in K
struct StandardForm {
    Vector c;
    Matrix G;
    Vector h;
    Matrix A;
    Vector b;
    ConeDims dims;
};

StandardForm lower(const ConeProgram& p) {
    const Index n = p.num_vars();
    StandardForm sf;
    sf.c = p.objective().size() ? p.objective() : Vector::Zero(n);
    if (p.sense() == Sense::Maximize) sf.c = -sf.c;

    Index eq_rows = 0;
    for (const auto& e : p.equalities()) eq_rows += e.rhs.size();
    sf.A.resize(eq_rows, n);
    sf.b.resize(eq_rows);
    Index r = 0;
    for (const auto& e : p.equalities()) {
        sf.A.middleRows(r, e.rhs.size()) = e.coeffs;
        sf.b.segment(r, e.rhs.size()) = e.rhs;
        r += e.rhs.size();
    }

    Index lin_rows = 0;
    for (const auto& li : p.inequalities()) lin_rows += li.rhs.size();
    Index cone_rows = lin_rows;
    for (const auto& soc : p.socs()) cone_rows += soc.F.rows() + 1;
    for (const auto& psd : p.psds()) cone_rows += svec_len(psd.constant.rows());

    sf.G = Matrix::Zero(cone_rows, n);
    sf.h = Vector::Zero(cone_rows);
    sf.dims.lin = lin_rows;
    r = 0;
    for (const auto& li : p.inequalities()) {
        sf.G.middleRows(r, li.rhs.size()) = li.coeffs;
        sf.h.segment(r, li.rhs.size()) = li.rhs;
        r += li.rhs.size();
    }
    for (const auto& soc : p.socs()) {
        const Index m = soc.F.rows() + 1;
        sf.dims.soc.push_back(m);
        sf.G.row(r) = -soc.f.transpose();
        sf.h[r] = soc.h0;
        sf.G.middleRows(r + 1, m - 1) = -soc.F;
        sf.h.segment(r + 1, m - 1) = soc.g;
        r += m;
    }
    for (const auto& psd : p.psds()) {
        const Index k = psd.constant.rows();
        const Index len = svec_len(k);
        sf.dims.psd.push_back(k);
        for (Index j = 0; j < n; ++j) {
            if (psd.coeffs[j].size() == 0) continue;
            Vector col(len);
            svec_pack(psd.coeffs[j], col);
            sf.G.col(j).segment(r, len) = -col;
        }
        svec_pack(psd.constant, sf.h.segment(r, len));
        r += len;
    }
    return sf;
}

// Ruiz-style equilibration. Rows of a cone block share one scale factor so
// the scaled block stays in the same cone.
struct Equilibration {
    Vector row_g;  // per-row scale applied to G, h
    Vector row_a;  // per-row scale applied to A, b
    Vector col;    // per-column scale; x = col .* x_scaled
};

Equilibration equilibrate(StandardForm& sf) {
    const Index M = sf.G.rows(), N = sf.G.cols(), P = sf.A.rows();
    Equilibration eq{Vector::Ones(M), Vector::Ones(P), Vector::Ones(N)};

    // (block start, block length) for cone-uniform row scaling
    std::vector<std::pair<Index, Index>> blocks;
    for (Index i = 0; i < sf.dims.lin; ++i) blocks.emplace_back(i, 1);
    Index ind = sf.dims.lin;
    for (Index q : sf.dims.soc) {
        blocks.emplace_back(ind, q);
        ind += q;
    }
    for (Index s : sf.dims.psd) {
        blocks.emplace_back(ind, svec_len(s));
        ind += svec_len(s);
    }

    for (int sweep = 0; sweep < 4; ++sweep) {
        for (const auto& [start, len] : blocks) {
            double m = sf.G.middleRows(start, len).cwiseAbs().maxCoeff();
            if (m <= 0.0) continue;
            const double f = 1.0 / std::sqrt(m);
            sf.G.middleRows(start, len) *= f;
            sf.h.segment(start, len) *= f;
            eq.row_g.segment(start, len) *= f;
        }
        for (Index i = 0; i < P; ++i) {
            double m = sf.A.row(i).cwiseAbs().maxCoeff();
            if (m <= 0.0) continue;
            const double f = 1.0 / std::sqrt(m);
            sf.A.row(i) *= f;
            sf.b[i] *= f;
            eq.row_a[i] *= f;
        }
        for (Index j = 0; j < N; ++j) {
            double m = sf.G.col(j).cwiseAbs().maxCoeff();
            if (P > 0) m = std::max(m, sf.A.col(j).cwiseAbs().maxCoeff());
            if (m <= 0.0) continue;
            const double f = 1.0 / std::sqrt(m);
            sf.G.col(j) *= f;
            if (P > 0) sf.A.col(j) *= f;
            eq.col[j] *= f;
        }
    }
    // objective on the scaled variables, normalized to O(1)
    sf.c = sf.c.cwiseProduct(eq.col);
    const double cn = sf.c.cwiseAbs().maxCoeff();
    if (cn > 1.0) sf.c /= cn;
    return eq;
}

// Reduced KKT solver for
//   [ 0   A'  G'   ] [ux]   [bx]
//   [ A   0   0    ] [uy] = [by]
//   [ G   0  -W'W  ] [uz]   [bz]
// via elimination of uz and an LU factorization of the quasi-definite core.
class KktSolver {
public:
    KktSolver(const StandardForm& sf) : sf_(sf) {}

    bool factor(const Scaling& w) {
        w_ = &w;
        const Index N = sf_.G.cols(), P = sf_.A.rows();
        gs_ = sf_.G;
        for (Index j = 0; j < N; ++j) {
            Vector col = gs_.col(j);
            apply_scaling(sf_.dims, w, col, true, true); // W^{-T} g_j
            gs_.col(j) = col;
        }
        Matrix K = Matrix::Zero(N + P, N + P);
        K.topLeftCorner(N, N) = gs_.transpose() * gs_;
        const double reg = 1e-12 * (1.0 + K.topLeftCorner(N, N).trace() / double(N));
        K.topLeftCorner(N, N).diagonal().array() += reg;
        if (P > 0) {
            K.topRightCorner(N, P) = sf_.A.transpose();
            K.bottomLeftCorner(P, N) = sf_.A;
            K.bottomRightCorner(P, P).diagonal().array() -= reg;
        }
        lu_.compute(K);
        return lu_.rcond() > 1e-100; // reject exact singularity only
    }

    void solve(const Vector& bx, const Vector& by, const Vector& bz,
               Vector& ux, Vector& uy, Vector& uz, int refine = 1) const {
        solve_once(bx, by, bz, ux, uy, uz);
        for (int it = 0; it < refine; ++it) {
            // exact residuals of the 3x3 system
            Vector wz = uz;
            apply_scaling(sf_.dims, *w_, wz, false, false);
            apply_scaling(sf_.dims, *w_, wz, true, false); // W'W uz
            Vector e1 = bx - (sf_.A.transpose() * uy + sf_.G.transpose() * uz);
            Vector e2 = by - sf_.A * ux;
            Vector e3 = bz - (sf_.G * ux - wz);
            Vector cx, cy, cz;
            solve_once(e1, e2, e3, cx, cy, cz);
            ux += cx;
            uy += cy;
            uz += cz;
        }
    }

private:
    void solve_once(const Vector& bx, const Vector& by, const Vector& bz,
                    Vector& ux, Vector& uy, Vector& uz) const {
        const Index N = sf_.G.cols(), P = sf_.A.rows();
        Vector t = bz;
        apply_scaling(sf_.dims, *w_, t, true, true); // W^{-T} bz
        Vector rhs(N + P);
        rhs.head(N) = bx + gs_.transpose() * t;
        if (P > 0) rhs.tail(P) = by;
        Vector sol = lu_.solve(rhs);
        ux = sol.head(N);
        uy = sol.tail(P);
        uz = gs_ * ux - t;
        apply_scaling(sf_.dims, *w_, uz, false, true); // W^{-1} (.)
    }

    const StandardForm& sf_;
    const Scaling* w_ = nullptr;
    Matrix gs_;
    Eigen::PartialPivLU<Matrix> lu_;
};

struct RawResult {
    SolveStatus status = SolveStatus::NumericalFailure;
    Vector x;
    int iterations = 0;
};

RawResult conelp(const StandardForm& sf, const SolverOptions& opt, const Vector* warm) {
    const Index N = sf.G.cols(), P = sf.A.rows();
    const ConeDims& dims = sf.dims;
    const Index M = dims.vec_len();
    const double deg = double(dims.degree());
    RawResult out;

    const double resx0 = std::max(1.0, sf.c.norm());
    const double resy0 = std::max(1.0, sf.b.norm());
    const double resz0 = std::max(1.0, sf.h.norm());

    Scaling w;
    w.identity = true;
    KktSolver kkt(sf);
    if (!kkt.factor(w)) return out;

    // Initial point: least-norm primal/dual solves with identity scaling,
    // then shift s and z into the interior of the cone.
    Vector x, y, z, s, tmp;
    {
        Vector ux, uy, uz;
        kkt.solve(Vector::Zero(N), sf.b, sf.h, ux, uy, uz);
        x = ux;
        if (warm && warm->size() == N) x = *warm;
        s = -(sf.G * x - sf.h); // h - Gx
        const double ts = max_step(dims, s);
        if (ts >= -1e-8 * std::max(s.norm(), 1.0))
            s += (1.0 + ts) * jordan_identity(dims);

        kkt.solve(-sf.c, Vector::Zero(P), Vector::Zero(M), ux, uy, uz);
        y = uy;
        z = uz;
        const double tz = max_step(dims, z);
        if (tz >= -1e-8 * std::max(z.norm(), 1.0))
            z += (1.0 + tz) * jordan_identity(dims);
    }
    double tau = 1.0, kappa = 1.0;

    Vector lambda(M);
    const Vector e = jordan_identity(dims);

    if (opt.verbose)
        std::printf("%4s %12s %12s %9s %9s %9s %9s\n", "it", "pcost", "dcost", "gap",
                    "pres", "dres", "k/t");

    for (int iter = 0; iter <= opt.max_iters; ++iter) {
        // residuals of the self-dual embedding
        const Vector hresx = sf.A.transpose() * y + sf.G.transpose() * z;
        const Vector rx = hresx + sf.c * tau;
        const Vector ry = sf.A * x - sf.b * tau;
        const Vector rz = sf.G * x + s - sf.h * tau;
        const double cx = sf.c.dot(x), by = sf.b.dot(y), hz = sf.h.dot(z);
        const double rtau = kappa + cx + by + hz;

        const double gap = s.dot(z);
        const double mu = (gap + tau * kappa) / (deg + 1.0);

        const double pcost = cx / tau;
        const double dcost = -(by + hz) / tau;
        const double gap_d = gap / (tau * tau);
        double relgap = std::numeric_limits<double>::infinity();
        if (pcost < 0.0)
            relgap = gap_d / (-pcost);
        else if (dcost > 0.0)
            relgap = gap_d / dcost;
        const double pres = std::max(ry.norm() / resy0, rz.norm() / resz0) / tau;
        const double dres = rx.norm() / resx0 / tau;

        if (opt.verbose)
            std::printf("%4d %12.4e %12.4e %9.2e %9.2e %9.2e %9.2e\n", iter, pcost, dcost,
                        gap_d, pres, dres, kappa / tau);

        if (!std::isfinite(mu) || !std::isfinite(pres) || !std::isfinite(dres)) return out;

        if (pres <= opt.feastol && dres <= opt.feastol &&
            (gap_d <= opt.abstol || relgap <= opt.reltol)) {
            out.status = SolveStatus::Optimal;
            out.x = x / tau;
            out.iterations = iter;
            return out;
        }
        const double infres_p = -(by + hz); // certificate normalizations
        if (infres_p > 0.0 && hresx.norm() / resx0 / infres_p <= opt.feastol) {
            out.status = SolveStatus::Infeasible;
            out.iterations = iter;
            return out;
        }
        if (cx < 0.0) {
            const double dnorm =
                std::max((sf.A * x).norm() / resy0, (sf.G * x + s).norm() / resz0);
            if (dnorm / (-cx) <= opt.feastol) {
                out.status = SolveStatus::Unbounded;
                out.iterations = iter;
                return out;
            }
        }
        if (iter == opt.max_iters) return out;

        if (!compute_scaling(dims, s, z, w, lambda)) return out;
        if (!kkt.factor(w)) return out;

        // constant second solve shared by predictor and corrector
        Vector x1, y1, z1;
        kkt.solve(-sf.c, sf.b, sf.h, x1, y1, z1);
        Vector wz1 = z1;
        apply_scaling(dims, w, wz1, false, false);
        const double dtau_den = kappa / tau + (-sf.c.dot(x1) - sf.b.dot(y1) - sf.h.dot(z1));

        const Vector lmbda_sq = lambda_square(dims, lambda);

        Vector ds_aff_scaled, dz_aff_scaled;
        double dtau_aff = 0.0, dkappa_aff = 0.0;
        double sigma = 0.0;
        Vector dx, dy, dz, ds;
        double dtau = 0.0, dkappa = 0.0;

        for (int pass = 0; pass < 2; ++pass) {
            const bool affine = (pass == 0);
            const double eta = affine ? 1.0 : 1.0 - sigma;
            Vector bs;
            double bkappa;
            if (affine) {
                bs = -lmbda_sq;
                bkappa = -tau * kappa;
            } else {
                bs = sigma * mu * e - lmbda_sq -
                     jordan_product(dims, ds_aff_scaled, dz_aff_scaled);
                bkappa = sigma * mu - tau * kappa - dtau_aff * dkappa_aff;
            }
            Vector bs_t = bs;
            jordan_solve(dims, lambda, bs_t); // lambda o\ bs
            Vector wbs = bs_t;
            apply_scaling(dims, w, wbs, true, false); // W' (lambda o\ bs)

            Vector x0, y0, z0;
            kkt.solve(-eta * rx, -eta * ry, -eta * rz - wbs, x0, y0, z0);

            dtau = (eta * rtau + bkappa / tau + sf.c.dot(x0) + sf.b.dot(y0) +
                    sf.h.dot(z0)) /
                   dtau_den;
            dx = x0 + dtau * x1;
            dy = y0 + dtau * y1;
            dz = z0 + dtau * z1;
            Vector wdz = dz;
            apply_scaling(dims, w, wdz, false, false); // W dz
            // ds = W'(bs_t - W dz)
            ds = bs_t - wdz;
            apply_scaling(dims, w, ds, true, false);
            dkappa = (bkappa - kappa * dtau) / tau;

            // step length in the scaled frame
            Vector dsc = ds;
            apply_scaling(dims, w, dsc, true, true); // W^{-T} ds
            Vector dzc = wdz;                        // W dz
            Vector s_hat = dsc, z_hat = dzc;
            lambda_halfinv_scale(dims, lambda, s_hat);
            lambda_halfinv_scale(dims, lambda, z_hat);
            double t = std::max(max_step(dims, s_hat), max_step(dims, z_hat));
            if (dtau < 0.0) t = std::max(t, -dtau / tau);
            if (dkappa < 0.0) t = std::max(t, -dkappa / kappa);

            if (affine) {
                const double alpha = (t <= 0.0) ? 1.0 : std::min(1.0, 1.0 / t);
                sigma = std::pow(1.0 - alpha, 3);
                ds_aff_scaled = dsc;
                dz_aff_scaled = dzc;
                dtau_aff = dtau;
                dkappa_aff = dkappa;
            } else {
                double alpha = (t <= 0.0) ? 1.0 : std::min(1.0, 0.99 / t);
                // back off if the updated pair would leave the cone
                bool ok = false;
                for (int bt = 0; bt < 30 && !ok; ++bt) {
                    Vector s_new = s + alpha * ds;
                    Vector z_new = z + alpha * dz;
                    Scaling w_try;
                    Vector lambda_try;
                    if (compute_scaling(dims, s_new, z_new, w_try, lambda_try)) {
                        s = std::move(s_new);
                        z = std::move(z_new);
                        ok = true;
                    } else {
                        alpha *= 0.5;
                    }
                }
                if (!ok) return out;
                x += alpha * dx;
                y += alpha * dy;
                tau += alpha * dtau;
                kappa += alpha * dkappa;
                if (tau <= 0.0 || kappa <= 0.0) return out;
            }
        }
    }
    return out;
}

} // namespace
} // namespace detail

const char* to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

Solution solve(const ConeProgram& program, const SolverOptions& options,
               const Vector* warm_start) {
    using namespace detail;
    const auto t0 = std::chrono::steady_clock::now();

    StandardForm sf = lower(program);
    if (sf.G.rows() == 0)
        throw ArgumentError("cone program has no cone constraints");
    Equilibration eq = equilibrate(sf);

    Vector warm_scaled;
    const Vector* warm = nullptr;
    if (warm_start && warm_start->size() == program.num_vars()) {
        warm_scaled = warm_start->cwiseQuotient(eq.col);
        warm = &warm_scaled;
    }

    RawResult raw = conelp(sf, options, warm);

    Solution sol;
    sol.status = raw.status;
    sol.iterations = raw.iterations;
    if (raw.status == SolveStatus::Optimal) {
        sol.primal = raw.x.cwiseProduct(eq.col);
        sol.objective_value =
            program.objective().size() ? program.objective().dot(sol.primal) : 0.0;
    }
    sol.solve_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sol;
}

} // namespace rangebound::conic
