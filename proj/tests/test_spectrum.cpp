#include "doctest.h"

#include "gaudinlab/gaudin.hpp"
#include "gaudinlab/spectrum.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace gaudinlab;
using R = Rational;

namespace {

GaudinModel model22() { return GaudinModel(2, 2, {R(2), R(-1)}, {R(0), R(1)}); }
GaudinModel model23() { return GaudinModel(2, 3, {R(2), R(-1)}, {R(0), R(1), R(5, 2)}); }
GaudinModel model32() { return GaudinModel(3, 2, {R(1, 2), R(-1, 3), R(3)}, {R(0), R(1)}); }

double sector_weighted_sum(const GaudinModel& m, const std::vector<long>& sector) {
    double s = 0;
    for (int a = 0; a < m.N; ++a) s += double(sector[size_t(a)]) * to_double(m.twist[size_t(a)]);
    return s;
}

void check_sum_rule(const GaudinModel& m, const std::vector<SpectrumTuple>& ts) {
    for (const auto& t : ts) {
        Cplx sum{0};
        for (const auto& h : t.H) sum += h;
        CHECK(std::abs(sum - Cplx(sector_weighted_sum(m, t.sector), 0)) < 1e-9);
        for (const auto& h : t.H) CHECK(std::abs(h.imag()) < 1e-8);
    }
}

} // namespace

TEST_CASE("direct diagonalization per sector") {
    GaudinModel one(2, 1, {R(2), R(-1)}, {R(1, 3)});
    auto ta = direct_spectrum(one, {1, 0});
    REQUIRE(ta.size() == 1);
    CHECK(std::abs(ta[0].H[0] - Cplx(2, 0)) < 1e-12);
    auto tb = direct_spectrum(one, {0, 1});
    REQUIRE(tb.size() == 1);
    CHECK(std::abs(tb[0].H[0] - Cplx(-1, 0)) < 1e-12);

    auto m = model22();
    auto ts = direct_spectrum(m, {1, 1});
    REQUIRE(ts.size() == 2);
    check_sum_rule(m, ts);
    // closed form: H_1 + H_2 = k_1 + k_2, H_1 H_2 = k_1 k_2 - 1/x_12^2
    for (const auto& t : ts) {
        CHECK(std::abs(t.H[0] * t.H[1] - Cplx(-3, 0)) < 1e-9);
        CHECK(t.residual < 1e-10);
    }

    // one-cluster product sector is 1-dimensional with explicit eigenvalues
    auto mj = model23();
    auto tj = direct_spectrum(mj, {3, 0});
    REQUIRE(tj.size() == 1);
    for (int i = 0; i < 3; ++i) {
        double expect = 2.0;
        for (int j = 0; j < 3; ++j)
            if (j != i) expect += 1.0 / to_double(mj.sites[size_t(i)] - mj.sites[size_t(j)]);
        CHECK(std::abs(tj[0].H[size_t(i)] - Cplx(expect, 0)) < 1e-10);
    }
    CHECK(tj[0].residual < 1e-10);
}

TEST_CASE("classical matching-sum solutions") {
    GaudinModel one(2, 1, {R(2), R(-1)}, {R(1, 3)});
    auto ta = classical_spectrum(one, {1, 0});
    REQUIRE(ta.size() == 1);
    CHECK(std::abs(ta[0].H[0] - Cplx(2, 0)) < 1e-12);

    auto m = model22();
    auto ts = classical_spectrum(m, {1, 1});
    REQUIRE(ts.size() == 2);
    double disc = std::sqrt(13.0);
    std::vector<double> expect{(1 + disc) / 2, (1 - disc) / 2};
    for (const auto& t : ts) {
        CHECK(t.residual < 1e-12);
        bool hit = false;
        for (double e : expect)
            if (std::abs(t.H[0] - Cplx(e, 0)) < 1e-9) hit = true;
        CHECK(hit);
        CHECK(std::abs(t.H[0] + t.H[1] - Cplx(1, 0)) < 1e-10);
    }

    // the one-cluster sector solution is the explicit shifted tuple
    auto mj = model23();
    auto tj = classical_spectrum(mj, {3, 0});
    REQUIRE(tj.size() == 1);
    for (int i = 0; i < 3; ++i) {
        double expect_i = 2.0;
        for (int j = 0; j < 3; ++j)
            if (j != i) expect_i += 1.0 / to_double(mj.sites[size_t(i)] - mj.sites[size_t(j)]);
        CHECK(std::abs(tj[0].H[size_t(i)] - Cplx(expect_i, 0)) < 1e-9);
    }

    // solution count equals the sector dimension for generic desk-scale data
    CHECK(classical_spectrum(mj, {2, 1}).size() == 3);
    CHECK(classical_spectrum(model32(), {1, 1, 0}).size() == 2);
    GaudinModel m24(2, 4, {R(2), R(-1)}, {R(0), R(1), R(5, 2), R(-3, 2)});
    CHECK(classical_spectrum(m24, {2, 2}).size() == 6);
}

TEST_CASE("matching the two pipelines") {
    auto m = model23();
    auto direct = direct_spectrum(m, {2, 1});
    auto classical = classical_spectrum(m, {2, 1});
    REQUIRE(direct.size() == 3);
    REQUIRE(classical.size() == 3);
    check_sum_rule(m, direct);

    MatchReport rep = match_spectra(direct, classical, 1e-9);
    CHECK(rep.ok);
    CHECK(rep.matched == 3);
    CHECK(rep.max_deviation < 1e-9);

    for (const auto& t : classical) CHECK(moment_defect(m, t) < 1e-8);
    for (const auto& t : direct) CHECK(moment_defect(m, t) < 1e-8);

    MatchReport self = match_spectra(direct, direct, 1e-14);
    CHECK(self.ok);
    CHECK(self.max_deviation == 0.0);

    auto bumped = classical;
    bumped[0].H[0] += 1e-3;
    MatchReport rb = match_spectra(direct, bumped, 1e-9);
    CHECK_FALSE(rb.ok);
    CHECK(rb.max_deviation > 1e-4);
    CHECK(rb.max_deviation < 1e-2);

    auto truncated = classical;
    truncated.pop_back();
    MatchReport rc = match_spectra(direct, truncated, 1e-9);
    CHECK_FALSE(rc.ok);
    CHECK(rc.message.find("cardinality") != std::string::npos);

    MatchReport rd = match_spectra({}, classical, 1e-9);
    CHECK_FALSE(rd.ok);

    // a second model through both pipelines
    auto m32 = model32();
    MatchReport r32 = match_spectra(direct_spectrum(m32, {1, 1, 0}), classical_spectrum(m32, {1, 1, 0}),
                                    1e-9);
    CHECK(r32.ok);
    CHECK(r32.matched == 2);
}

TEST_CASE("joint Jacobi fallback diagonalizes a commuting family") {
    // two symmetric matrices sharing an eigenbasis, mixed by a rotation
    Eigen::MatrixXd q(3, 3);
    double th = 0.7;
    q << std::cos(th), -std::sin(th), 0, std::sin(th), std::cos(th), 0, 0, 0, 1.0;
    Eigen::MatrixXd q2(3, 3);
    double ph = -0.4;
    q2 << 1.0, 0, 0, 0, std::cos(ph), -std::sin(ph), 0, std::sin(ph), std::cos(ph);
    Eigen::MatrixXd rot = q * q2;
    Eigen::Vector3d d1(1.0, 1.0, 3.0), d2(2.0, -1.0, 5.0); // degenerate in the first matrix
    std::vector<Eigen::MatrixXd> fam{rot * d1.asDiagonal() * rot.transpose(),
                                     rot * d2.asDiagonal() * rot.transpose()};
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(3, 3);
    detail::joint_jacobi(fam, v);
    double off = 0;
    for (const auto& a : fam)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                if (r != c) off = std::max(off, std::abs(a(r, c)));
    CHECK(off < 1e-10);
    std::vector<std::pair<double, double>> pairs, expected{{1, 2}, {1, -1}, {3, 5}};
    for (int i = 0; i < 3; ++i) pairs.push_back({fam[0](i, i), fam[1](i, i)});
    for (const auto& e : expected) {
        bool hit = false;
        for (const auto& p : pairs)
            if (std::abs(p.first - e.first) < 1e-9 && std::abs(p.second - e.second) < 1e-9) hit = true;
        CHECK(hit);
    }
}
