#pragma once

#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "hfunction.hpp"
#include "mpoly.hpp"
#include "rational.hpp"
#include "tensor.hpp"
#include "tpoly.hpp"

namespace gaudinlab {

// Brute-force oracle representation: polynomial in the N^2 entries of h with
// elementary-matrix slot coefficients, times integer powers of det(1 - c_j h)
// and the symbolic exponential tag. The derivative is the literal formal
// partial derivative sum_ab e_ab^{(new)} d/dh_{ba}. Independent of HFunction.
template <class S>
struct BTermT {
    S coeff{0};
    std::vector<std::pair<int, int>> slot; // e_{ab} per slot, 0-based
    EMono mono;                            // monomial in h entries
    std::map<int, long> dpow;              // j -> power of det(1 - c_j h)
};

template <class S>
class BrutePoly {
public:
    int N = 0;
    std::vector<Rational> res_points;
    std::map<int, S> times;
    int nslots = 0;
    std::vector<BTermT<S>> terms;

    explicit BrutePoly(int N_) : N(N_) {}

    static BrutePoly constant(int N_, const S& c) {
        BrutePoly f(N_);
        BTermT<S> t;
        t.coeff = c;
        f.terms.push_back(t);
        return f;
    }

    int declare_resolvent(const Rational& c) {
        for (size_t j = 0; j < res_points.size(); ++j)
            if (res_points[j] == c) return int(j);
        res_points.push_back(c);
        return int(res_points.size()) - 1;
    }
    // Multiplies by det(1 - c h)^{-e} (same orientation as HFunction::mul_det_factor).
    void mul_det_factor(const Rational& c, int e) {
        int j = declare_resolvent(c);
        for (auto& t : terms) {
            t.dpow[j] -= e;
            if (t.dpow[j] == 0) t.dpow.erase(j);
        }
    }

    // Seeds from a polynomial in y_k with y_k = (tr h^k)/k.
    static BrutePoly from_y_polynomial(const TPoly& p, int N_) {
        BrutePoly f(N_);
        for (const auto& [mono, c] : p.coeffs()) {
            MPoly prod = MPoly(1);
            Rational scale = c;
            for (size_t i = 0; i < mono.size(); ++i) {
                for (int rep = 0; rep < mono[i]; ++rep) prod = prod * trace_power_poly(N_, int(i + 1));
                if (mono[i] > 0) scale /= rat_pow(Rational(long(i + 1)), mono[i]);
            }
            for (const auto& [em, v] : prod.c) {
                BTermT<S> t;
                t.coeff = scalar_from_rational<S>(scale * v);
                t.mono = em;
                f.terms.push_back(t);
            }
        }
        f.canonicalize();
        return f;
    }

    BrutePoly derive() const {
        BrutePoly f(N);
        f.res_points = res_points;
        f.times = times;
        f.nslots = nslots + 1;

        auto add_with_mono = [&](const BTermT<S>& base, int a, int b, const MPoly& extra, const S& factor,
                                 const std::map<int, long>& dp) {
            for (const auto& [em, v] : extra.c) {
                BTermT<S> t;
                t.coeff = factor * scalar_from_rational<S>(v) * base.coeff;
                t.slot = base.slot;
                t.slot.emplace_back(a, b);
                t.mono = base.mono;
                for (const auto& [k, e] : em) t.mono[k] += e;
                t.dpow = dp;
                f.terms.push_back(t);
            }
        };

        for (const auto& t : terms) {
            // (a) monomial part: d/dh_{ba} of h_{pq}^e places e_{qp}
            for (const auto& [pq, e] : t.mono) {
                if (e == 0) continue;
                BTermT<S> nt;
                nt.coeff = scalar_from_rational<S>(Rational(e)) * t.coeff;
                nt.slot = t.slot;
                nt.slot.emplace_back(pq.second, pq.first);
                nt.mono = t.mono;
                if (--nt.mono[pq] == 0) nt.mono.erase(pq);
                nt.dpow = t.dpow;
                f.terms.push_back(nt);
            }
            // (b) determinant powers: d D_j^s / dh_{ba} = -s c_j D_j^{s-1} adj(1-c_j h)_{ab}
            for (const auto& [j, s] : t.dpow) {
                if (s == 0) continue;
                const auto& adj = adjugate(j);
                std::map<int, long> dp = t.dpow;
                if (--dp[j] == 0) dp.erase(j);
                S factor = scalar_from_rational<S>(Rational(-s) * res_points[j]);
                for (int a = 0; a < N; ++a)
                    for (int b = 0; b < N; ++b) add_with_mono(t, a, b, adj[a][b], factor, dp);
            }
            // (c) exponential tag: sum_k k t_k (h^{k-1})_{ab}
            for (const auto& [k, tk] : times) {
                const auto& hp = hpower(k - 1);
                S factor = scalar_from_rational<S>(Rational(k)) * tk;
                for (int a = 0; a < N; ++a)
                    for (int b = 0; b < N; ++b) add_with_mono(t, a, b, hp[a][b], factor, t.dpow);
            }
        }
        f.canonicalize();
        return f;
    }

    BrutePoly lifted() const {
        BrutePoly f = *this;
        f.nslots += 1;
        for (auto& t : f.terms) t.slot.emplace_back(-1, -1); // identity slot
        return f;
    }
    BrutePoly scaled(const S& s) const {
        BrutePoly f = *this;
        for (auto& t : f.terms) t.coeff = s * t.coeff;
        return f;
    }
    friend BrutePoly operator+(const BrutePoly& a, const BrutePoly& b) {
        if (a.N != b.N || a.res_points != b.res_points || a.nslots != b.nslots)
            throw std::invalid_argument("BrutePoly: incompatible sum");
        BrutePoly f = a;
        f.terms.insert(f.terms.end(), b.terms.begin(), b.terms.end());
        f.canonicalize();
        return f;
    }
    BrutePoly chain_step(const S& x_minus_xi) const { return lifted().scaled(x_minus_xi) + derive(); }

    HEval<S> evaluate(const std::vector<Rational>& kvals) const {
        long dim = tensor_dim(N, nslots);
        HEval<S> out{Mat<S>(dim, dim), times};
        std::vector<Rational> detvals;
        for (const auto& c : res_points) {
            Rational d = 1;
            for (const auto& ka : kvals) d *= (1 - c * ka);
            detvals.push_back(d);
        }
        for (const auto& t : terms) {
            Rational scal = 1;
            bool dead = false;
            for (const auto& [pq, e] : t.mono) {
                if (e == 0) continue;
                if (pq.first != pq.second) {
                    dead = true;
                    break;
                }
                scal *= rat_pow(kvals[pq.first], e);
            }
            if (dead) continue;
            for (const auto& [j, s] : t.dpow) {
                if (detvals[j] == 0 && s < 0) throw PoleError("BrutePoly: determinant pole at the twist");
                scal *= rat_pow(detvals[j], s);
            }
            if (scal == 0) continue;
            S coeff = scalar_from_rational<S>(scal) * t.coeff;
            // slots: explicit e_{ab} or identity; accumulate the tensor-product entry
            std::vector<int> rowst(nslots), colst(nslots), freeidx;
            for (int i = 0; i < nslots; ++i)
                if (t.slot[i].first < 0) freeidx.push_back(i);
            long freecount = 1;
            for (size_t i = 0; i < freeidx.size(); ++i) freecount *= N;
            for (long assign = 0; assign < freecount; ++assign) {
                long a = assign;
                for (int i = 0; i < nslots; ++i) {
                    if (t.slot[i].first >= 0) {
                        rowst[i] = t.slot[i].first;
                        colst[i] = t.slot[i].second;
                    }
                }
                for (int fi : freeidx) {
                    rowst[fi] = colst[fi] = int(a % N);
                    a /= N;
                }
                long r = 0, c = 0;
                for (int i = 0; i < nslots; ++i) {
                    r = r * N + rowst[i];
                    c = c * N + colst[i];
                }
                out.op.at(r, c) += coeff;
            }
        }
        return out;
    }

private:
    const std::vector<std::vector<MPoly>>& adjugate(int j) const {
        auto it = adj_cache_.find(j);
        if (it == adj_cache_.end()) it = adj_cache_.emplace(j, adjugate_one_minus(N, res_points[j])).first;
        return it->second;
    }
    const std::vector<std::vector<MPoly>>& hpower(int k) const {
        auto it = hpow_cache_.find(k);
        if (it == hpow_cache_.end()) it = hpow_cache_.emplace(k, matrix_power_poly(N, k)).first;
        return it->second;
    }

    void canonicalize() {
        std::map<std::tuple<std::vector<std::pair<int, int>>, EMono, std::map<int, long>>, S> acc;
        for (auto& t : terms) {
            auto key = std::make_tuple(t.slot, t.mono, t.dpow);
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(std::move(key), t.coeff);
            else
                it->second += t.coeff;
        }
        terms.clear();
        for (auto& [key, c] : acc) {
            if (c == S(0)) continue;
            BTermT<S> t;
            t.coeff = c;
            t.slot = std::get<0>(key);
            t.mono = std::get<1>(key);
            t.dpow = std::get<2>(key);
            terms.push_back(t);
        }
    }

    mutable std::map<int, std::vector<std::vector<MPoly>>> adj_cache_;
    mutable std::map<int, std::vector<std::vector<MPoly>>> hpow_cache_;
};

} // namespace gaudinlab
