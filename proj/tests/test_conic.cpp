#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "rangebound/conic/program.hpp"

using namespace rangebound;
using namespace rangebound::conic;

namespace {
Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Index>(v.size()));
    Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}
} // namespace

TEST_CASE("one-dimensional LP: minimize x subject to x >= 3") {
    ConeProgram p(1);
    p.minimize(vec({1.0}));
    p.add_inequality(vec({-1.0}), -3.0); // -x <= -3
    Solution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective_value == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(s.primal[0] == doctest::Approx(3.0).epsilon(1e-7));
}

TEST_CASE("largest ball centered in the unit ball") {
    // maximize r s.t. ||(c1,c2)|| + r <= 1, r >= 0; optimum r=1, c=0
    ConeProgram p(3);
    p.maximize(vec({0.0, 0.0, 1.0}));
    Matrix F = Matrix::Zero(2, 3);
    F(0, 0) = 1.0;
    F(1, 1) = 1.0;
    p.add_soc(F, Vector::Zero(2), vec({0.0, 0.0, -1.0}), 1.0);
    p.add_inequality(vec({0.0, 0.0, -1.0}), 0.0);
    Solution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective_value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.primal.head(2).norm() < 1e-5);
}

TEST_CASE("PSD box: maximize trace(W) with 0 <= W <= I") {
    // vars: w00, w10, w11 of symmetric 2x2 W
    ConeProgram p(3);
    p.maximize(vec({1.0, 0.0, 1.0}));
    Matrix s00 = Matrix::Zero(2, 2), s10 = Matrix::Zero(2, 2), s11 = Matrix::Zero(2, 2);
    s00(0, 0) = 1.0;
    s10(1, 0) = s10(0, 1) = 1.0;
    s11(1, 1) = 1.0;
    p.add_psd({s00, s10, s11}, Matrix::Zero(2, 2)); // W >= 0
    p.add_psd({-s00, -s10, -s11}, Matrix::Identity(2, 2)); // I - W >= 0
    Solution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective_value == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(s.primal[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(s.primal[1] == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(s.primal[2] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("equality-constrained LP") {
    // minimize x1 + x2 s.t. x1 + 2 x2 = 1, x >= 0 -> x = (0, 0.5)
    ConeProgram p(2);
    p.minimize(vec({1.0, 1.0}));
    Matrix C(1, 2);
    C << 1.0, 2.0;
    p.add_equality(C, vec({1.0}));
    p.add_inequality(vec({-1.0, 0.0}), 0.0);
    p.add_inequality(vec({0.0, -1.0}), 0.0);
    Solution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective_value == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(s.primal[1] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("infeasible LP is reported as infeasible") {
    ConeProgram p(1);
    p.minimize(vec({1.0}));
    p.add_inequality(vec({1.0}), 0.0);  // x <= 0
    p.add_inequality(vec({-1.0}), -1.0); // x >= 1
    Solution s = solve(p);
    CHECK(s.status == SolveStatus::Infeasible);
}

TEST_CASE("unbounded LP is reported as unbounded") {
    ConeProgram p(1);
    p.minimize(vec({1.0}));
    p.add_inequality(vec({1.0}), 0.0); // x <= 0, objective unbounded below
    Solution s = solve(p);
    CHECK(s.status == SolveStatus::Unbounded);
}

TEST_CASE("mixed SOC and PSD constraints") {
    // minimize t s.t. ||(x-1, y-1)|| <= t, [[x, 0],[0, y]] <= 0.5 I
    // optimum: x = y = 0.5, t = sqrt(0.5)
    ConeProgram p(3); // x, y, t
    p.minimize(vec({0.0, 0.0, 1.0}));
    Matrix F = Matrix::Zero(2, 3);
    F(0, 0) = 1.0;
    F(1, 1) = 1.0;
    p.add_soc(F, vec({-1.0, -1.0}), vec({0.0, 0.0, 1.0}), 0.0);
    Matrix mx = Matrix::Zero(2, 2), my = Matrix::Zero(2, 2);
    mx(0, 0) = -1.0;
    my(1, 1) = -1.0;
    p.add_psd({mx, my, Matrix()}, 0.5 * Matrix::Identity(2, 2));
    Solution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective_value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
    CHECK(s.primal[0] == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("determinism: identical program solves to identical objective") {
    ConeProgram p(3);
    p.maximize(vec({0.3, -0.2, 1.0}));
    Matrix F = Matrix::Zero(2, 3);
    F(0, 0) = 2.0;
    F(1, 1) = 0.7;
    p.add_soc(F, vec({0.1, -0.4}), vec({0.0, 0.0, -1.0}), 2.0);
    p.add_inequality(vec({1.0, 1.0, 1.0}), 5.0);
    Solution a = solve(p);
    Solution b = solve(p);
    REQUIRE(a.status == SolveStatus::Optimal);
    REQUIRE(b.status == SolveStatus::Optimal);
    CHECK(a.objective_value == doctest::Approx(b.objective_value).epsilon(1e-12));
}

TEST_CASE("warm-start hint does not move the reported optimum") {
    ConeProgram p(2);
    p.minimize(vec({1.0, 2.0}));
    p.add_inequality(vec({-1.0, 0.0}), -1.0); // x1 >= 1
    p.add_inequality(vec({0.0, -1.0}), -2.0); // x2 >= 2
    Solution cold = solve(p);
    Vector hint = vec({3.0, 4.0}); // feasible point
    Solution warm = solve(p, {}, &hint);
    REQUIRE(cold.status == SolveStatus::Optimal);
    REQUIRE(warm.status == SolveStatus::Optimal);
    CHECK(std::abs(cold.objective_value - warm.objective_value) < 1e-7);
}

TEST_CASE("dump emits the documented text format") {
    ConeProgram p(2);
    p.minimize(vec({1.0, 0.0}));
    p.add_inequality(vec({1.0, 1.0}), 1.0);
    std::ostringstream os;
    p.dump(os);
    const std::string text = os.str();
    CHECK(text.find("rangebound-conic 1") == 0);
    CHECK(text.find("problem 2 min") != std::string::npos);
    CHECK(text.find("end") != std::string::npos);
}

TEST_CASE("builder validates dimensions") {
    ConeProgram p(2);
    CHECK_THROWS_AS(p.minimize(vec({1.0})), ArgumentError);
    CHECK_THROWS_AS(p.add_inequality(vec({1.0}), 0.0), ArgumentError);
    Matrix bad(2, 3);
    bad.setZero();
    CHECK_THROWS_AS(p.add_equality(bad, vec({0.0, 0.0})), ArgumentError);
}
