#include "doctest.h"

#include "gaudinlab/gaudin.hpp"
#include "gaudinlab/hfunction.hpp"
#include "gaudinlab/kp.hpp"
#include "gaudinlab/partitions.hpp"
#include "gaudinlab/tensor.hpp"

#include <array>
#include <vector>

using namespace gaudinlab;
using R = Rational;

namespace {

GaudinModel model22() { return GaudinModel(2, 2, {R(2), R(-1)}, {R(1, 3), R(-1, 2)}); }
GaudinModel model32() { return GaudinModel(3, 2, {R(1, 2), R(-1, 3), R(3)}, {R(1, 3), R(-1, 2)}); }
GaudinModel model21() { return GaudinModel(2, 1, {R(2), R(-1)}, {R(1, 3)}); }
GaudinModel model20() { return GaudinModel(2, 0, {R(2), R(-1)}, {}); }

const R X = R(7, 5);

// Scalar character value chi_lambda(h) at the twist, via the depth-0 engine.
R character_value(const GaudinModel& m, const Partition& lam) {
    auto f = HFunction<R>::from_y_polynomial(schur_in_y(lam));
    return f.evaluate(m.twist).op.at(0, 0);
}

bool zero_mat(const Mat<R>& a) { return a.nonzero_count() == 0; }

} // namespace

TEST_CASE("quantum Giambelli formula") {
    auto m = model22();
    for (const Partition& lam :
         {Partition{}, Partition{1}, Partition{2, 1}, Partition{2, 2}, Partition{3, 2, 1}}) {
        CheckResult r = check_giambelli(m, lam, X);
        CAPTURE(r.params);
        CHECK(r.pass);
        CHECK(r.residual_entries == 0);
        CHECK(r.residual_float == 0.0);
        CHECK(r.name == "giambelli");
        CHECK(r.elapsed >= 0.0);
    }
    CHECK(check_giambelli(model32(), Partition{2, 2}, X).pass);
    CHECK(check_giambelli(model21(), Partition{2, 2}, X).pass);
    // n = 0: the chain is empty and the formula reduces to the classical hook
    // determinant for scalar characters.
    CHECK(check_giambelli(model20(), Partition{2, 2}, X).pass);
}

TEST_CASE("one-row and one-column determinant formulas") {
    auto m = model22();
    for (const Partition& lam : {Partition{2}, Partition{1, 1}, Partition{2, 1}, Partition{2, 2}}) {
        CheckResult r = check_cbr(m, lam, X);
        CAPTURE(r.params);
        CHECK(r.pass);
        CHECK(r.residual_entries == 0);
    }
    CHECK(check_cbr(model32(), Partition{2, 1}, X).pass);
    CHECK(check_cbr(model21(), Partition{2, 1}, X).pass);
    CHECK_THROWS_AS(check_cbr(m, Partition{1}, m.sites[0]), std::invalid_argument);
}

TEST_CASE("leading x-coefficient is the scalar character") {
    auto m = model22();
    for (const Partition& lam : {Partition{1}, Partition{2}, Partition{2, 1}}) {
        Mat<QJet> j = t_operator<QJet>(m, lam, QJet::variable(m.n, X));
        Mat<R> top = j.map<R>([&m](const QJet& v) { return v[m.n]; });
        CHECK(top == character_value(m, lam) * Mat<R>::identity(m.dim()));
    }
}

TEST_CASE("bilinear Fay identities") {
    auto m = model22();
    TimeSpec t = TimeSpec::zero().set(1, R(1, 3)).set(2, R(-1, 7));
    std::array<R, 4> z{R(3), R(5, 2), R(-2), R(7, 3)};

    CheckResult r = check_fay(m, X, t, z);
    CAPTURE(r.params);
    CHECK(r.pass);
    CHECK(r.residual_entries == 0);

    TimeSpec t32 = TimeSpec::zero().set(1, R(1, 5));
    std::array<R, 4> z32{R(2), R(5, 2), R(-2), R(7, 3)};
    CHECK(check_fay(model32(), X, t32, z32).pass);

    // individual residuals at t = 0
    CHECK(zero_mat(residual_hir20(m, X, TimeSpec::zero(), z)));
    CHECK(zero_mat(residual_hir2(m, X, t, {z[0], z[1], z[2]})));
    CHECK(zero_mat(residual_hir3(m, X, t, z[0], z[1])));

    // sign-flipped hierarchy point
    CHECK(zero_mat(residual_hir3(m, X, t, z[0], z[1], true)));
    CHECK(zero_mat(residual_hir20(m, X, t, z, true)));

    // coincident points degenerate to 0 = 0 by antisymmetry
    CHECK(zero_mat(residual_hir2(m, X, t, {z[0], z[1], z[1]})));
    CHECK(zero_mat(residual_hir3(m, X, t, z[0], z[0])));

    CHECK_THROWS_AS(check_fay(m, X, t, {z[0], z[0], z[2], z[3]}), std::invalid_argument);
    CHECK_THROWS_AS(with_shifts(t, {R(0)}), std::invalid_argument);
}

TEST_CASE("four-point identity at a negative-weight background") {
    // At t = -[1/z0] - [1/z3] on a single site the identity carries the content
    // of the Q-operator exchange relation.
    auto m = model21();
    std::array<R, 4> z{R(3), R(5, 2), R(-2), R(7, 3)};
    TimeSpec t = TimeSpec::zero().shift(R(1) / z[0], -1).shift(R(1) / z[3], -1);
    CHECK(zero_mat(residual_hir20(m, X, t, z)));
    CHECK(zero_mat(residual_hir2(m, X, t, {z[1], z[2], z[3]})));
}

TEST_CASE("hook derivative matrix has rank one") {
    std::vector<int> ab{0, 1, 2};
    CheckResult r = check_rank1(model21(), X, ab, ab);
    CAPTURE(r.params);
    CHECK(r.pass);
    CHECK(check_rank1(model22(), X, {0, 1}, {0, 1}).pass);
    CHECK(check_rank1(model20(), X, ab, ab).pass);
    // the entries themselves are generically nonzero
    CHECK(hook_derivative_op(model21(), 0, 0, X).nonzero_count() > 0);
    CHECK(hook_derivative_op(model22(), 1, 1, X).nonzero_count() > 0);
}

TEST_CASE("multi-shift determinant formula") {
    auto m = model22();
    TimeSpec t = TimeSpec::zero().set(1, R(1, 3));
    CHECK(check_masterdet(m, X, t, {R(3)}).pass);
    CHECK(check_masterdet(m, X, t, {R(3), R(5, 2)}).pass);
    CheckResult r = check_masterdet(m, X, t, {R(3), R(5, 2), R(-2)});
    CAPTURE(r.params);
    CHECK(r.pass);
    CHECK(r.residual_entries == 0);
    CHECK(check_masterdet(model32(), X, TimeSpec::zero(), {R(2), R(-2)}).pass);
    CHECK_THROWS_AS(check_masterdet(m, X, t, {R(3), R(3)}), std::invalid_argument);
    CHECK_THROWS_AS(check_masterdet(m, X, t, {R(0)}), std::invalid_argument);
}

TEST_CASE("generalized Fay identities with a background shift set") {
    auto m = model22();
    TimeSpec t = TimeSpec::zero().set(2, R(1, 5));
    std::array<R, 4> z{R(3), R(5, 2), R(-2), R(7, 3)};
    CHECK(check_fay_general(m, X, t, {}, z).pass);
    CheckResult r = check_fay_general(m, X, t, {R(5)}, z);
    CAPTURE(r.params);
    CHECK(r.pass);
    CHECK(check_fay_general(m, X, t, {R(5), R(-3)}, z).pass);
    CHECK(zero_mat(residual_diff_fay(m, X, with_shifts(t, {R(5)}), z[1], z[2])));
    CHECK_THROWS_AS(check_fay_general(m, X, t, {z[1]}, z), std::invalid_argument);
}

TEST_CASE("Pluecker three-term relation") {
    for (const auto& m : {model22(), model32()}) {
        Mat<R> lhs = t_operator(m, Partition{2, 2}, X) * t_operator(m, Partition{}, X) -
                     t_operator(m, Partition{2, 1}, X) * t_operator(m, Partition{1}, X) +
                     t_operator(m, Partition{2}, X) * t_operator(m, Partition{1, 1}, X);
        CHECK(zero_mat(lhs));
    }
}
