#pragma once

#include <array>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaudin.hpp"
#include "jet.hpp"
#include "partitions.hpp"
#include "rational.hpp"
#include "tensor.hpp"

namespace gaudinlab {

// Result of an exact operator-identity check. In exact mode the residual norm
// is the number of nonzero entries; the float norm is kept for reporting.
struct CheckResult {
    std::string name;
    std::string params;
    bool pass = false;
    long residual_entries = 0;
    double residual_float = 0;
    double elapsed = 0;
};

inline CheckResult make_result(std::string name, std::string params, const Mat<Rational>& resid) {
    CheckResult r;
    r.name = std::move(name);
    r.params = std::move(params);
    r.residual_entries = resid.nonzero_count();
    r.residual_float = max_abs(mat_to_double(resid));
    r.pass = (r.residual_entries == 0);
    return r;
}

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

// Determinant of a matrix of pairwise commuting operators, by cofactor expansion.
inline Mat<Rational> operator_det(const std::vector<std::vector<Mat<Rational>>>& a) {
    size_t n = a.size();
    if (n == 1) return a[0][0];
    long dim = a[0][0].rows();
    Mat<Rational> acc(dim, dim);
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Mat<Rational>>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<Mat<Rational>> row;
            for (size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[r][c]);
            minor.push_back(std::move(row));
        }
        Mat<Rational> term = a[0][j] * operator_det(minor);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

// --- time-spec helpers -------------------------------------------------------

// t + sum [z^{-1}] over the given z points.
inline TimeSpec with_shifts(TimeSpec t, const std::vector<Rational>& zs) {
    for (const auto& z : zs) {
        if (z == 0) throw std::invalid_argument("with_shifts: z = 0");
        t.shift(Rational(1) / z, 1);
    }
    return t;
}

inline TimeSpec negated(TimeSpec t) {
    for (auto& [k, v] : t.explicit_times) v = -v;
    for (auto& mp : t.miwa) mp.weight = -mp.weight;
    return t;
}

// Evaluated master T-operator (tagless part) and its x-derivative.
inline Mat<Rational> master_op(const GaudinModel& m, const Rational& x, const TimeSpec& t,
                               bool neg = false) {
    return master_t(m, x, neg ? negated(t) : t).op;
}
inline Mat<Rational> master_dx(const GaudinModel& m, const Rational& x, const TimeSpec& t,
                               bool neg = false) {
    Mat<QJet> j = master_t<QJet>(m, QJet::variable(1, x), neg ? negated(t) : t).op;
    return j.map<Rational>([](const QJet& v) { return v[1]; });
}
// x-derivatives 0..order of the master T-operator at x.
inline std::vector<Mat<Rational>> master_dx_list(const GaudinModel& m, const Rational& x,
                                                 const TimeSpec& t, int order, bool neg = false) {
    Mat<QJet> j = master_t<QJet>(m, QJet::variable(order, x), neg ? negated(t) : t).op;
    std::vector<Mat<Rational>> out;
    Rational fact = 1;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        Rational f = fact;
        out.push_back(j.map<Rational>([&f, k](const QJet& v) { return f * v[k]; }));
    }
    return out;
}

// --- bilinear Fay residuals --------------------------------------------------

inline void require_distinct(const std::vector<Rational>& zs) {
    for (size_t i = 0; i < zs.size(); ++i) {
        if (zs[i] == 0) throw std::invalid_argument("spectral point z = 0");
        for (size_t j = i + 1; j < zs.size(); ++j)
            if (zs[i] == zs[j]) throw std::invalid_argument("coincident spectral points");
    }
}

// 3-term Hirota equation in four points z0..z3.
inline Mat<Rational> residual_hir20(const GaudinModel& m, const Rational& x, const TimeSpec& t,
                                    const std::array<Rational, 4>& z, bool neg = false) {
    auto T2 = [&](int a, int b) { return master_op(m, x, with_shifts(t, {z[a], z[b]}), neg); };
    return (z[0] - z[1]) * (z[2] - z[3]) * (T2(0, 1) * T2(2, 3)) +
           (z[0] - z[2]) * (z[3] - z[1]) * (T2(0, 2) * T2(1, 3)) +
           (z[0] - z[3]) * (z[1] - z[2]) * (T2(0, 3) * T2(1, 2));
}

// The z0 -> infinity form in three points z1..z3.
inline Mat<Rational> residual_hir2(const GaudinModel& m, const Rational& x, const TimeSpec& t,
                                   const std::array<Rational, 3>& z, bool neg = false) {
    auto T1 = [&](int a) { return master_op(m, x, with_shifts(t, {z[a]}), neg); };
    auto T2 = [&](int a, int b) { return master_op(m, x, with_shifts(t, {z[a], z[b]}), neg); };
    return (z[1] - z[2]) * (T1(0) * T2(1, 2)) + (z[2] - z[0]) * (T1(1) * T2(0, 2)) +
           (z[0] - z[1]) * (T1(2) * T2(0, 1));
}

// Differential Fay identity in two points z1, z2.
inline Mat<Rational> residual_hir3(const GaudinModel& m, const Rational& x, const TimeSpec& t,
                                   const Rational& z1, const Rational& z2, bool neg = false) {
    Mat<Rational> t0 = master_op(m, x, t, neg);
    Mat<Rational> ta = master_op(m, x, with_shifts(t, {z1}), neg);
    Mat<Rational> tb = master_op(m, x, with_shifts(t, {z2}), neg);
    Mat<Rational> tab = master_op(m, x, with_shifts(t, {z1, z2}), neg);
    // under t -> -t the hierarchy time derivative is -d/dx of the flipped operator
    Rational s = neg ? -1 : 1;
    Mat<Rational> da = s * master_dx(m, x, with_shifts(t, {z1}), neg);
    Mat<Rational> db = s * master_dx(m, x, with_shifts(t, {z2}), neg);
    return tb * da - ta * db + (z1 - z2) * (t0 * tab - ta * tb);
}

// Differential Fay identity in the rearranged multi-shift form.
inline Mat<Rational> residual_diff_fay(const GaudinModel& m, const Rational& x, const TimeSpec& t,
                                       const Rational& z1, const Rational& z2, bool neg = false) {
    Rational w1 = Rational(1) / z1, w2 = Rational(1) / z2;
    Mat<Rational> t0 = master_op(m, x, t, neg);
    Mat<Rational> ta = master_op(m, x, with_shifts(t, {z1}), neg);
    Mat<Rational> tb = master_op(m, x, with_shifts(t, {z2}), neg);
    Mat<Rational> tab = master_op(m, x, with_shifts(t, {z1, z2}), neg);
    Rational s = neg ? -1 : 1;
    Mat<Rational> da = s * master_dx(m, x, with_shifts(t, {z1}), neg);
    Mat<Rational> db = s * master_dx(m, x, with_shifts(t, {z2}), neg);
    return (w1 - w2) * (t0 * tab) - (w1 * (ta * (tb - w2 * db)) - w2 * (tb * (ta - w1 * da)));
}

// --- checks ------------------------------------------------------------------

inline std::string rat_list(const std::vector<Rational>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
    return os.str();
}

// Number of diagonal boxes of lambda.
inline int diagonal_boxes(const Partition& lam) {
    int d = 0;
    while (lam.part(d + 1) >= d + 1) ++d;
    return d;
}

// Quantum Giambelli formula in the polynomial normalization.
inline CheckResult check_giambelli(const GaudinModel& m, const Partition& lam, const Rational& x) {
    Stopwatch sw;
    int d = diagonal_boxes(lam);
    Mat<Rational> resid(m.dim(), m.dim());
    if (d > 0) {
        Partition conj = conjugate(lam);
        std::vector<std::vector<Mat<Rational>>> hooks(d, std::vector<Mat<Rational>>(d));
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j)
                hooks[i - 1][j - 1] =
                    t_operator(m, hook_partition(lam.part(i) - i, conj.part(j) - j), x);
        Mat<Rational> lhs = t_operator(m, lam, x);
        Mat<Rational> empty = t_operator(m, Partition{}, x);
        for (int k = 1; k < d; ++k) lhs = lhs * empty;
        resid = lhs - operator_det(hooks);
    }
    std::ostringstream ps;
    ps << "lambda=" << lam.str() << ";x=" << to_string(x);
    CheckResult r = make_result("giambelli", ps.str(), resid);
    r.elapsed = sw.seconds();
    return r;
}

// Determinant formulas over one-row (row form) or one-column (dual form)
// T-operators with exact x-derivatives, in the rational normalization.
inline CheckResult check_cbr(const GaudinModel& m, const Partition& lam, const Rational& x) {
    Stopwatch sw;
    for (const auto& xi : m.sites)
        if (x == xi) throw std::invalid_argument("check_cbr: x at a site");

    Rational poly = 1;
    for (const auto& xi : m.sites) poly *= (x - xi);

    // derivative lists of the rationally normalized one-row / one-column operators
    auto norm_derivs = [&](const Partition& p, int order) {
        Mat<QJet> j = t_operator<QJet>(m, p, QJet::variable(order, x));
        QJet phi(Rational(1), order);
        for (const auto& xi : m.sites) phi *= QJet::variable(order, x - xi);
        QJet inv = phi.inverse();
        Mat<QJet> nj = j.map<QJet>([&inv](const QJet& v) { return v * inv; });
        std::vector<Mat<Rational>> out;
        Rational fact = 1;
        for (int k = 0; k <= order; ++k) {
            if (k > 0) fact *= k;
            Rational f = fact;
            out.push_back(nj.map<Rational>([&f, k](const QJet& v) { return f * v[k]; }));
        }
        return out;
    };

    int ell = int(lam.length());
    int width = int(lam.part(1));
    Partition conj = conjugate(lam);
    Mat<Rational> lhs = (Rational(1) / poly) * t_operator(m, lam, x);
    Mat<Rational> resid(m.dim(), m.dim());

    // row form
    {
        std::map<long, std::vector<Mat<Rational>>> derivs;
        auto get = [&](long s) -> const std::vector<Mat<Rational>>& {
            auto it = derivs.find(s);
            if (it == derivs.end()) {
                Partition p = (s == 0) ? Partition{} : Partition{s};
                it = derivs.emplace(s, norm_derivs(p, ell)).first;
            }
            return it->second;
        };
        std::vector<std::vector<Mat<Rational>>> e(
            ell, std::vector<Mat<Rational>>(ell, Mat<Rational>(m.dim(), m.dim())));
        for (int i = 1; i <= ell; ++i)
            for (int j = 1; j <= ell; ++j)
                for (int k = 0; k <= j - 1; ++k) {
                    long s = lam.part(i) - i + j - k;
                    if (s < 0) continue;
                    Rational c = Rational(binomial(j - 1, k)) * (k % 2 == 0 ? 1 : -1);
                    e[i - 1][j - 1] += c * get(s)[k];
                }
        resid += lhs - (ell == 0 ? Mat<Rational>::identity(m.dim()) : operator_det(e));
    }
    // dual form
    {
        std::map<long, std::vector<Mat<Rational>>> derivs;
        auto get = [&](long s) -> const std::vector<Mat<Rational>>& {
            auto it = derivs.find(s);
            if (it == derivs.end()) {
                std::vector<long> col(size_t(s), 1);
                it = derivs.emplace(s, norm_derivs(Partition(col), width)).first;
            }
            return it->second;
        };
        std::vector<std::vector<Mat<Rational>>> e(
            width, std::vector<Mat<Rational>>(width, Mat<Rational>(m.dim(), m.dim())));
        for (int i = 1; i <= width; ++i)
            for (int j = 1; j <= width; ++j)
                for (int k = 0; k <= j - 1; ++k) {
                    long s = conj.part(i) - i + j - k;
                    if (s < 0) continue;
                    Rational c = Rational(binomial(j - 1, k)) * (k % 2 == 0 ? 1 : -1);
                    e[i - 1][j - 1] += c * get(s)[k];
                }
        resid += lhs - (width == 0 ? Mat<Rational>::identity(m.dim()) : operator_det(e));
    }

    std::ostringstream ps;
    ps << "lambda=" << lam.str() << ";x=" << to_string(x);
    CheckResult r = make_result("cbr", ps.str(), resid);
    r.elapsed = sw.seconds();
    return r;
}

// All three bilinear Fay forms at the same base point.
inline CheckResult check_fay(const GaudinModel& m, const Rational& x, const TimeSpec& t,
                             const std::array<Rational, 4>& z) {
    Stopwatch sw;
    require_distinct({z[0], z[1], z[2], z[3]});
    Mat<Rational> resid = residual_hir20(m, x, t, z);
    resid += residual_hir2(m, x, t, {z[1], z[2], z[3]});
    resid += residual_hir3(m, x, t, z[1], z[2]);
    CheckResult r = make_result("fay", "z=" + rat_list({z[0], z[1], z[2], z[3]}) + ";x=" + to_string(x),
                                resid);
    r.elapsed = sw.seconds();
    return r;
}

// d_{n+1} T^{G,n} for the hook (alpha+1, 1^beta), with the extra derivative slot.
inline Mat<Rational> hook_derivative_op(const GaudinModel& m, int alpha, int beta, const Rational& x) {
    auto f = HFunction<Rational>::from_y_polynomial(schur_in_y(hook_partition(alpha, beta)));
    for (int i = 0; i < m.n; ++i) f = f.chain_step(x - m.sites[i]);
    return f.derive().evaluate(m.twist).op;
}

// All 2x2 minors of the hook matrix of extended derivatives vanish.
inline CheckResult check_rank1(const GaudinModel& m, const Rational& x, const std::vector<int>& alphas,
                               const std::vector<int>& betas) {
    Stopwatch sw;
    std::vector<std::vector<Mat<Rational>>> dt(alphas.size(), std::vector<Mat<Rational>>(betas.size()));
    for (size_t i = 0; i < alphas.size(); ++i)
        for (size_t j = 0; j < betas.size(); ++j) dt[i][j] = hook_derivative_op(m, alphas[i], betas[j], x);
    long dim = dt[0][0].rows();
    Mat<Rational> resid(dim, dim);
    for (size_t i1 = 0; i1 < alphas.size(); ++i1)
        for (size_t i2 = i1 + 1; i2 < alphas.size(); ++i2)
            for (size_t j1 = 0; j1 < betas.size(); ++j1)
                for (size_t j2 = j1 + 1; j2 < betas.size(); ++j2)
                    resid += dt[i1][j1] * dt[i2][j2] - dt[i1][j2] * dt[i2][j1];
    std::ostringstream ps;
    ps << "alphas=" << alphas.size() << ";betas=" << betas.size() << ";x=" << to_string(x);
    CheckResult r = make_result("rank1", ps.str(), resid);
    r.elapsed = sw.seconds();
    return r;
}

// Multi-shift determinant formula, in the multiplied-through form.
inline CheckResult check_masterdet(const GaudinModel& m, const Rational& x, const TimeSpec& t,
                                   const std::vector<Rational>& zs) {
    Stopwatch sw;
    require_distinct(zs);
    int mm = int(zs.size());

    Mat<Rational> lhs = master_op(m, x, with_shifts(t, zs));
    Mat<Rational> t0 = master_op(m, x, t);
    for (int k = 1; k < mm; ++k) lhs = lhs * t0;

    std::vector<std::vector<Rational>> vand(mm, std::vector<Rational>(mm));
    for (int k = 1; k <= mm; ++k)
        for (int j = 1; j <= mm; ++j) vand[k - 1][j - 1] = rat_pow(zs[k - 1], j - mm);
    Rational vd = det_small<Rational>(vand);
    lhs = vd * lhs;

    std::vector<std::vector<Mat<Rational>>> e(mm,
                                              std::vector<Mat<Rational>>(mm, Mat<Rational>(m.dim(), m.dim())));
    for (int k = 1; k <= mm; ++k) {
        auto derivs = master_dx_list(m, x, with_shifts(t, {zs[k - 1]}), mm - 1);
        for (int j = 1; j <= mm; ++j)
            for (int l = 0; l <= j - 1; ++l) {
                Rational c = Rational(binomial(j - 1, l)) * (l % 2 == 0 ? 1 : -1) *
                             rat_pow(zs[k - 1], j - mm - l);
                e[k - 1][j - 1] += c * derivs[l];
            }
    }
    Mat<Rational> resid = lhs - operator_det(e);
    CheckResult r = make_result("masterdet", "m=" + std::to_string(mm) + ";z=" + rat_list(zs), resid);
    r.elapsed = sw.seconds();
    return r;
}

// Generalized Fay identities with a background shift set I (given as z points).
inline CheckResult check_fay_general(const GaudinModel& m, const Rational& x, const TimeSpec& t,
                                     const std::vector<Rational>& background,
                                     const std::array<Rational, 4>& z) {
    Stopwatch sw;
    std::vector<Rational> all = background;
    all.insert(all.end(), z.begin(), z.end());
    require_distinct(all);
    TimeSpec base = with_shifts(t, background);
    Mat<Rational> resid = residual_hir20(m, x, base, z);
    resid += residual_hir2(m, x, base, {z[1], z[2], z[3]});
    resid += residual_diff_fay(m, x, base, z[1], z[2]);
    CheckResult r = make_result(
        "fay_general", "I=" + rat_list(background) + ";z=" + rat_list({z[0], z[1], z[2], z[3]}), resid);
    r.elapsed = sw.seconds();
    return r;
}

} // namespace gaudinlab
