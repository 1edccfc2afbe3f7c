#pragma once

#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "jet.hpp"
#include "mpoly.hpp"
#include "partitions.hpp"
#include "rational.hpp"
#include "tensor.hpp"

namespace gaudinlab {

// Polynomial in the entries of a group element g with elementary-matrix slot
// coefficients; closed under the (noncommutative) left co-derivative
//   D f(g) = sum_ab e_ab d/de f(e^{e e_ba} g)|_0 = sum_ab e_ab sum_d g_{ad} df/dg_{bd}.
template <class S>
struct CTerm {
    S coeff{0};
    std::vector<std::pair<int, int>> slot; // e_{ab} per slot; (-1,-1) = identity
    EMono mono;                            // monomial in g entries
};

template <class S>
class GPoly {
public:
    int N = 0;
    int nslots = 0;
    std::vector<CTerm<S>> terms;

    explicit GPoly(int N_, int nslots_ = 0) : N(N_), nslots(nslots_) {}

    static GPoly from_entry_polynomial(const MPoly& p, int N_, int nslots_, const S& scale = S(1)) {
        GPoly f(N_, nslots_);
        for (const auto& [em, v] : p.c) {
            CTerm<S> t;
            t.coeff = scale * scalar_from_rational<S>(v);
            t.slot.assign(nslots_, {-1, -1});
            t.mono = em;
            f.terms.push_back(t);
        }
        f.canonicalize();
        return f;
    }

    GPoly scaled(const S& s) const {
        GPoly f = *this;
        for (auto& t : f.terms) t.coeff = s * t.coeff;
        return f;
    }
    friend GPoly operator+(const GPoly& a, const GPoly& b) {
        if (a.N != b.N || a.nslots != b.nslots) throw std::invalid_argument("GPoly: incompatible sum");
        GPoly f = a;
        f.terms.insert(f.terms.end(), b.terms.begin(), b.terms.end());
        f.canonicalize();
        return f;
    }

    // The co-derivative D placed at slot i (0-based); the slot must be unoccupied.
    GPoly co_derive(int i) const {
        if (i < 0 || i >= nslots) throw std::out_of_range("GPoly: slot index");
        GPoly f(N, nslots);
        for (const auto& t : terms) {
            if (t.slot[i].first >= 0) throw std::invalid_argument("GPoly: slot already occupied");
            for (const auto& [pq, e] : t.mono) {
                if (e == 0) continue;
                // d/dg_{bd} with b = pq.first, d = pq.second; e_{ab} g_{ad}
                for (int a = 0; a < N; ++a) {
                    CTerm<S> nt;
                    nt.coeff = scalar_from_rational<S>(Rational(e)) * t.coeff;
                    nt.slot = t.slot;
                    nt.slot[i] = {a, pq.first};
                    nt.mono = t.mono;
                    if (--nt.mono[pq] == 0) nt.mono.erase(pq);
                    nt.mono[{a, pq.second}] += 1;
                    f.terms.push_back(nt);
                }
            }
        }
        f.canonicalize();
        return f;
    }

    // Evaluation at g = diag(exp(eta k_1), ..., exp(eta k_N)) over eta-jets.
    Mat<Jet<Rational>> evaluate_exp(const std::vector<Rational>& kvals, int order) const
        requires std::is_same_v<S, Jet<Rational>>
    {
        long dim = tensor_dim(N, nslots);
        Mat<S> out(dim, dim);
        for (const auto& t : terms) {
            Rational exponent = 0;
            bool dead = false;
            for (const auto& [pq, e] : t.mono) {
                if (e == 0) continue;
                if (pq.first != pq.second) {
                    dead = true;
                    break;
                }
                exponent += Rational(e) * kvals[pq.first];
            }
            if (dead) continue;
            S gval = (Jet<Rational>::variable(order) * Jet<Rational>(exponent, order)).exp_noconst();
            S coeff = gval * t.coeff;
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
                out.at(r, c) += coeff;
            }
        }
        return out;
    }

private:
    void canonicalize() {
        std::map<std::tuple<std::vector<std::pair<int, int>>, EMono>, S> acc;
        for (auto& t : terms) {
            auto key = std::make_tuple(t.slot, t.mono);
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(std::move(key), t.coeff);
            else
                it->second += t.coeff;
        }
        terms.clear();
        for (auto& [key, c] : acc) {
            if (c == S(0)) continue;
            CTerm<S> t;
            t.coeff = c;
            t.slot = std::get<0>(key);
            t.mono = std::get<1>(key);
            terms.push_back(t);
        }
    }
};

// chi_lambda(g) as a polynomial in the entries of g.
inline MPoly character_entry_poly(const Partition& lam, int N) {
    MPoly out;
    TPoly s = schur_in_y(lam);
    for (const auto& [mono, c] : s.coeffs()) {
        MPoly prod = MPoly(1);
        Rational scale = c;
        for (size_t i = 0; i < mono.size(); ++i) {
            for (int rep = 0; rep < mono[i]; ++rep) prod = prod * trace_power_poly(N, int(i + 1));
            if (mono[i] > 0) scale /= rat_pow(Rational(long(i + 1)), mono[i]);
        }
        out += scale * prod;
    }
    return out;
}

// chi_lambda(g - 1) expanded over characters of g via the shift coefficients.
inline MPoly character_shift_entry_poly(const Partition& lam, int N) {
    MPoly out;
    for (const auto& [mu, c] : char_shift_coeffs(lam, N)) out += c * character_entry_poly(mu, N);
    return out;
}

} // namespace gaudinlab
