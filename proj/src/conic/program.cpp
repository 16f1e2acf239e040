#include "rangebound/conic/program.hpp"

#include <ostream>

namespace rangebound::conic {

namespace {
void check_symmetric(const Matrix& m, const char* what) {
    if (m.rows() != m.cols())
        throw ArgumentError(std::string(what) + ": matrix must be square");
    const double scale = 1.0 + m.cwiseAbs().maxCoeff();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw ArgumentError(std::string(what) + ": matrix must be symmetric");
}

void write_dense(std::ostream& os, const Matrix& m) {
    Index nnz = 0;
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (m(i, j) != 0.0) ++nnz;
    os << m.rows() << " " << m.cols() << " " << nnz << "\n";
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (m(i, j) != 0.0) os << i << " " << j << " " << m(i, j) << "\n";
}

void write_vector(std::ostream& os, const Vector& v) {
    os << v.size();
    for (Index i = 0; i < v.size(); ++i) os << " " << v[i];
    os << "\n";
}
} // namespace

ConeProgram::ConeProgram(Index num_vars) : num_vars_(num_vars) {
    if (num_vars < 1) throw ArgumentError("cone program needs at least one variable");
}

void ConeProgram::minimize(Vector objective) {
    if (objective.size() != num_vars_)
        throw ArgumentError("objective dimension mismatch");
    sense_ = Sense::Minimize;
    objective_ = std::move(objective);
}

void ConeProgram::maximize(Vector objective) {
    if (objective.size() != num_vars_)
        throw ArgumentError("objective dimension mismatch");
    sense_ = Sense::Maximize;
    objective_ = std::move(objective);
}

void ConeProgram::add_equality(Matrix coeffs, Vector rhs) {
    if (coeffs.cols() != num_vars_ || coeffs.rows() != rhs.size())
        throw ArgumentError("equality block dimension mismatch");
    equalities_.push_back({std::move(coeffs), std::move(rhs)});
}

void ConeProgram::add_inequality(Matrix coeffs, Vector rhs) {
    if (coeffs.cols() != num_vars_ || coeffs.rows() != rhs.size())
        throw ArgumentError("inequality block dimension mismatch");
    inequalities_.push_back({std::move(coeffs), std::move(rhs)});
}

void ConeProgram::add_inequality(const Vector& row, double upper_bound) {
    if (row.size() != num_vars_)
        throw ArgumentError("inequality row dimension mismatch");
    Matrix coeffs(1, num_vars_);
    coeffs.row(0) = row.transpose();
    Vector rhs(1);
    rhs[0] = upper_bound;
    inequalities_.push_back({std::move(coeffs), std::move(rhs)});
}

void ConeProgram::add_soc(Matrix F, Vector g, Vector f, double h0) {
    if (F.cols() != num_vars_ || F.rows() != g.size() || f.size() != num_vars_)
        throw ArgumentError("second-order cone block dimension mismatch");
    socs_.push_back({std::move(F), std::move(g), std::move(f), h0});
}

void ConeProgram::add_soc(Matrix F, Vector g, double bound) {
    add_soc(std::move(F), std::move(g), Vector::Zero(num_vars_), bound);
}

void ConeProgram::add_psd(std::vector<Matrix> coeffs, Matrix constant) {
    if (static_cast<Index>(coeffs.size()) != num_vars_)
        throw ArgumentError("PSD block needs one coefficient matrix per variable");
    check_symmetric(constant, "PSD constant");
    for (const auto& m : coeffs) {
        if (m.size() == 0) continue; // zero coefficient
        check_symmetric(m, "PSD coefficient");
        if (m.rows() != constant.rows())
            throw ArgumentError("PSD block order mismatch");
    }
    psds_.push_back({std::move(coeffs), std::move(constant)});
}

void ConeProgram::dump(std::ostream& os) const {
    os.precision(17);
    os << "rangebound-conic 1\n";
    os << "problem " << num_vars_ << " "
       << (sense_ == Sense::Minimize ? "min" : "max") << "\n";
    os << "objective ";
    write_vector(os, objective_.size() ? objective_ : Vector::Zero(num_vars_));
    for (const auto& e : equalities_) {
        os << "equality\n";
        write_dense(os, e.coeffs);
        os << "rhs ";
        write_vector(os, e.rhs);
    }
    for (const auto& li : inequalities_) {
        os << "inequality\n";
        write_dense(os, li.coeffs);
        os << "rhs ";
        write_vector(os, li.rhs);
    }
    for (const auto& soc : socs_) {
        os << "soc\n";
        write_dense(os, soc.F);
        os << "g ";
        write_vector(os, soc.g);
        os << "f ";
        write_vector(os, soc.f);
        os << "h0 " << soc.h0 << "\n";
    }
    for (const auto& psd : psds_) {
        os << "psd " << psd.constant.rows() << "\n";
        os << "constant\n";
        write_dense(os, psd.constant);
        for (Index j = 0; j < num_vars_; ++j) {
            if (psd.coeffs[j].size() == 0 ||
                psd.coeffs[j].cwiseAbs().maxCoeff() == 0.0)
                continue;
            os << "coeff " << j << "\n";
            write_dense(os, psd.coeffs[j]);
        }
    }
    os << "end\n";
}

} // namespace rangebound::conic
