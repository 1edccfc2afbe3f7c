#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "coderivative.hpp"
#include "hfunction.hpp"
#include "jet.hpp"
#include "partitions.hpp"
#include "rational.hpp"
#include "tensor.hpp"
#include "tpoly.hpp"

namespace gaudinlab {

// Twisted gl(N) Gaudin model on n sites: twist h = diag(k_1..k_N), pairwise
// distinct inhomogeneities x_1..x_n.
struct GaudinModel {
    int N = 0;
    int n = 0;
    std::vector<Rational> twist;
    std::vector<Rational> sites;

    GaudinModel(int N_, int n_, std::vector<Rational> twist_, std::vector<Rational> sites_)
        : N(N_), n(n_), twist(std::move(twist_)), sites(std::move(sites_)) {
        if (int(twist.size()) != N) throw std::invalid_argument("GaudinModel: twist size != N");
        if (int(sites.size()) != n) throw std::invalid_argument("GaudinModel: sites size != n");
        for (size_t i = 0; i < sites.size(); ++i)
            for (size_t j = i + 1; j < sites.size(); ++j)
                if (sites[i] == sites[j]) throw std::invalid_argument("GaudinModel: coincident sites");
    }

    long dim() const { return tensor_dim(N, n); }
};

// Point of the KP time hierarchy: a finite explicit part plus Miwa points, each
// multiplying the exponential part by det(1 - zeta h)^{-weight}.
struct MiwaPoint {
    Rational zeta;
    int weight = 0;
};
struct TimeSpec {
    std::map<int, Rational> explicit_times;
    std::vector<MiwaPoint> miwa;

    static TimeSpec zero() { return {}; }
    TimeSpec& set(int k, const Rational& v) {
        if (v == 0)
            explicit_times.erase(k);
        else
            explicit_times[k] = v;
        return *this;
    }
    TimeSpec& shift(const Rational& zeta, int weight) {
        miwa.push_back({zeta, weight});
        return *this;
    }
};

// M_a = sum_l e_aa^{(l)}, 1-based a.
inline Mat<Rational> weight_op(const GaudinModel& m, int a) {
    if (a < 1 || a > m.N) throw std::out_of_range("weight_op: index");
    Mat<Rational> out(m.dim(), m.dim());
    for (int l = 1; l <= m.n; ++l) out += elem<Rational>(l, a, a, m.N, m.n);
    return out;
}

// H_i = sum_a k_a e_aa^{(i)} + sum_{j != i} sum_ab e_ab^{(i)} e_ba^{(j)} / (x_i - x_j), 1-based i.
inline Mat<Rational> hamiltonian(const GaudinModel& m, int i) {
    if (i < 1 || i > m.n) throw std::out_of_range("hamiltonian: index");
    Mat<Rational> out(m.dim(), m.dim());
    for (int a = 1; a <= m.N; ++a) out += m.twist[a - 1] * elem<Rational>(i, a, a, m.N, m.n);
    for (int j = 1; j <= m.n; ++j) {
        if (j == i) continue;
        Rational inv = Rational(1) / (m.sites[i - 1] - m.sites[j - 1]);
        for (int a = 1; a <= m.N; ++a)
            for (int b = 1; b <= m.N; ++b)
                out += inv * (elem<Rational>(i, a, b, m.N, m.n) * elem<Rational>(j, b, a, m.N, m.n));
    }
    return out;
}

// H(x) = (1/2) tr h^2 + sum_i H_i/(x - x_i).
inline Mat<Rational> hamiltonian_generating(const GaudinModel& m, const Rational& x) {
    Rational tr2 = 0;
    for (const auto& k : m.twist) tr2 += k * k;
    Mat<Rational> out = (tr2 / 2) * Mat<Rational>::identity(m.dim());
    for (int i = 1; i <= m.n; ++i) {
        if (x == m.sites[i - 1]) throw std::invalid_argument("hamiltonian_generating: x at a site");
        out += (Rational(1) / (x - m.sites[i - 1])) * hamiltonian(m, i);
    }
    return out;
}

// (x - x_n + d_n) ... (x - x_1 + d_1) applied to f, then evaluated at the twist.
template <class S>
inline HEval<S> apply_chain(const GaudinModel& m, HFunction<S> f, const S& x) {
    for (int i = 0; i < m.n; ++i) f = f.chain_step(x - scalar_from_rational<S>(m.sites[i]));
    return f.evaluate(m.twist);
}

// T^G_lambda(x) in the polynomial normalization (degree n in x).
template <class S = Rational>
inline Mat<S> t_operator(const GaudinModel& m, const Partition& lam, const S& x) {
    auto f = HFunction<S>::from_y_polynomial(schur_in_y(lam));
    return apply_chain(m, f, x).op;
}

// Master T-operator T^G(x,t); the exponential tag of the explicit times is
// returned symbolically in HEval::times, Miwa factors are evaluated exactly.
template <class S = Rational>
inline HEval<S> master_t(const GaudinModel& m, const S& x, const TimeSpec& t) {
    HFunction<S> f = HFunction<S>::one();
    for (const auto& [k, v] : t.explicit_times)
        if (v != 0) f.times[k] = scalar_from_rational<S>(v);
    for (const auto& mp : t.miwa)
        if (mp.weight != 0) f.mul_det_factor(mp.zeta, mp.weight);
    return apply_chain(m, f, x);
}

// Master T-operator with symbolic times t_1..t_K, exponential tag expanded and
// multiplied in, truncated at weighted degree D.
inline Mat<TPoly> master_t_symbolic(const GaudinModel& m, const Rational& x, int K, int D) {
    HFunction<TPoly> f = HFunction<TPoly>::one();
    for (int k = 1; k <= K; ++k) f.times[k] = TPoly::variable(k, K, D);
    HEval<TPoly> e = apply_chain(m, f, scalar_from_rational<TPoly>(x));
    TPoly arg(K, D);
    for (int k = 1; k <= K; ++k) {
        Rational tau = 0;
        for (const auto& ka : m.twist) tau += rat_pow(ka, k);
        arg += tau * TPoly::variable(k, K, D);
    }
    TPoly tag = arg.exp_noconst();
    Mat<TPoly> out(e.op.rows(), e.op.cols());
    for (long r = 0; r < out.rows(); ++r)
        for (long c = 0; c < out.cols(); ++c) out.at(r, c) = e.op.at(r, c) * tag;
    return out;
}

// T^G_lambda(x) recovered from the master T-operator as s_lambda of the scaled
// time derivatives at t = 0.
inline Mat<Rational> schur_coefficient(const GaudinModel& m, const Partition& lam, const Rational& x) {
    int D = std::max<long>(1, lam.weight());
    Mat<TPoly> mt = master_t_symbolic(m, x, D, D);
    TPoly s = schur_in_y(lam);
    Mat<Rational> out(mt.rows(), mt.cols());
    for (const auto& [mono, c] : s.coeffs()) {
        Rational scale = c;
        for (size_t i = 0; i < mono.size(); ++i) {
            if (mono[i] == 0) continue;
            scale *= Rational(factorial(mono[i])) / rat_pow(Rational(long(i + 1)), mono[i]);
        }
        for (long r = 0; r < out.rows(); ++r)
            for (long c2 = 0; c2 < out.cols(); ++c2) out.at(r, c2) += scale * mt.at(r, c2).coeff(mono);
    }
    return out;
}

// (1 + eta D_n/(x - x_n)) ... (1 + eta D_1/(x - x_1)) applied to the seed
// polynomial in g, evaluated at g = exp(eta h) over eta-jets.
inline Mat<QJet> coderivative_chain(const GaudinModel& m, const MPoly& seed, const Rational& x, int order) {
    GPoly<QJet> g = GPoly<QJet>::from_entry_polynomial(seed, m.N, m.n);
    QJet eta = QJet::variable(order);
    for (int i = 0; i < m.n; ++i) {
        if (x == m.sites[i]) throw std::invalid_argument("coderivative_chain: x at a site");
        QJet w = eta * QJet(Rational(1) / (x - m.sites[i]), order);
        g = g + g.co_derive(i).scaled(w);
    }
    return g.evaluate_exp(m.twist, order);
}

// Spin-chain transfer matrix sT_lambda(x) over eta-jets, twist g = exp(eta h).
inline Mat<QJet> spin_t_operator(const GaudinModel& m, const Partition& lam, const Rational& x, int order) {
    return coderivative_chain(m, character_entry_poly(lam, m.N), x, order);
}

// Same chain on chi_lambda(g - 1); its eta^{|lambda|} coefficient is the Gaudin
// transfer matrix in the rational normalization.
inline Mat<QJet> talalaev_t(const GaudinModel& m, const Partition& lam, const Rational& x, int order) {
    return coderivative_chain(m, character_shift_entry_poly(lam, m.N), x, order);
}

} // namespace gaudinlab
