#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include "rangebound/errors.hpp"
#include "rangebound/types.hpp"

namespace rangebound::conic {

enum class Sense { Minimize, Maximize };

/// coeffs * v == rhs
struct LinearEquality {
    Matrix coeffs;
    Vector rhs;
};

/// coeffs * v <= rhs (elementwise)
struct LinearInequality {
    Matrix coeffs;
    Vector rhs;
};

/// ||F v + g||_2 <= f' v + h0
struct SecondOrderCone {
    Matrix F;
    Vector g;
    Vector f;
    double h0 = 0.0;
};

/// constant + sum_j v_j * coeffs[j]  is positive semidefinite.
/// Every matrix must be symmetric of the same order.
struct PsdCone {
    std::vector<Matrix> coeffs; // one (possibly zero) matrix per variable
    Matrix constant;
};

/// A conic program over a single decision vector v in R^num_vars,
/// assembled block by block. Immutable once handed to solve().
class ConeProgram {
public:
    explicit ConeProgram(Index num_vars);

    void minimize(Vector objective);
    void maximize(Vector objective);

    void add_equality(Matrix coeffs, Vector rhs);
    void add_inequality(Matrix coeffs, Vector rhs);
    void add_inequality(const Vector& row, double upper_bound);
    void add_soc(Matrix F, Vector g, Vector f, double h0);
    /// Convenience: ||F v + g|| <= bound with constant right-hand side.
    void add_soc(Matrix F, Vector g, double bound);
    void add_psd(std::vector<Matrix> coeffs, Matrix constant);

    Index num_vars() const { return num_vars_; }
    Sense sense() const { return sense_; }
    const Vector& objective() const { return objective_; }
    const std::vector<LinearEquality>& equalities() const { return equalities_; }
    const std::vector<LinearInequality>& inequalities() const { return inequalities_; }
    const std::vector<SecondOrderCone>& socs() const { return socs_; }
    const std::vector<PsdCone>& psds() const { return psds_; }

    /// Text dump for offline cross-checking; grammar documented in README.
    void dump(std::ostream& os) const;

private:
    Index num_vars_;
    Sense sense_ = Sense::Minimize;
    Vector objective_;
    std::vector<LinearEquality> equalities_;
    std::vector<LinearInequality> inequalities_;
    std::vector<SecondOrderCone> socs_;
    std::vector<PsdCone> psds_;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

struct SolverOptions {
    double feastol = 1e-8;
    double abstol = 1e-8;  // absolute duality gap
    double reltol = 1e-8;  // relative duality gap
    int max_iters = 100;
    bool verbose = false;
};

struct Solution {
    SolveStatus status = SolveStatus::NumericalFailure;
    Vector primal; // present iff status == Optimal
    double objective_value = std::numeric_limits<double>::quiet_NaN();
    double solve_time = 0.0; // seconds
    int iterations = 0;
};

/// Solve a cone program with the built-in primal-dual interior-point method.
/// An optional warm-start hint seeds the initial primal iterate; it never
/// changes the optimal objective beyond the gap tolerance.
Solution solve(const ConeProgram& program, const SolverOptions& options = {},
               const Vector* warm_start = nullptr);

const char* to_string(SolveStatus status);

} // namespace rangebound::conic
