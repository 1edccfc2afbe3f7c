#pragma once

#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "rational.hpp"
#include "tensor.hpp"
#include "tpoly.hpp"

namespace gaudinlab {

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Univariate monomial attached to one tensor slot: u^p * prod_j (1 - c_j u)^{-q_j},
// where u stands for h acting in that slot and the c_j are the declared resolvent points.
struct SlotMono {
    int upow = 0;
    std::vector<int> rpow;

    bool empty() const {
        if (upow != 0) return false;
        for (int q : rpow)
            if (q != 0) return false;
        return true;
    }
    SlotMono times(const SlotMono& o) const {
        SlotMono r = *this;
        r.upow += o.upow;
        if (r.rpow.size() < o.rpow.size()) r.rpow.resize(o.rpow.size(), 0);
        for (size_t j = 0; j < o.rpow.size(); ++j) r.rpow[j] += o.rpow[j];
        return r;
    }
    friend auto operator<=>(const SlotMono& a, const SlotMono& b) = default;
};

// One term of the closed function class:
//   coeff * prod_k (tr h^k)^{trp[k]} * P_sigma * prod_slots SlotMono(h^{(i)})
// with the HFunction-global exponential tag and determinant factors multiplied in.
template <class S>
struct HTerm {
    S coeff{0};
    std::map<int, int> trp;
    std::vector<int> sigma;
    std::vector<SlotMono> slots;
};

template <class S>
struct HEval {
    Mat<S> op;
    std::map<int, S> times; // residual symbolic factor exp(sum_k t_k tr h^k)
};

// A function of the N x N matrix variable h, closed under the matrix derivative d.
// Structure: sum of HTerms times a global factor
//   exp(sum_k t_k tr h^k) * prod_j det(1 - c_j h)^{-e_j}.
// The derivative d places its new matrix slot at index nslots and acts through
// exact first divided differences of the per-slot univariate monomials, plus the
// logarithmic derivative of the global factor in the new slot.
template <class S>
class HFunction {
public:
    std::vector<Rational> res_points;
    std::map<int, S> times;
    std::map<int, int> detfac;
    int nslots = 0;
    std::vector<HTerm<S>> terms;

    static HFunction constant(const S& c) {
        HFunction f;
        HTerm<S> t;
        t.coeff = c;
        f.terms.push_back(t);
        return f;
    }
    static HFunction one() { return constant(S(1)); }

    int declare_resolvent(const Rational& c) {
        for (size_t j = 0; j < res_points.size(); ++j)
            if (res_points[j] == c) return int(j);
        res_points.push_back(c);
        return int(res_points.size()) - 1;
    }
    // Multiplies the global factor by det(1 - c h)^{-e}.
    void mul_det_factor(const Rational& c, int e) {
        int j = declare_resolvent(c);
        detfac[j] += e;
        if (detfac[j] == 0) detfac.erase(j);
    }

    // Adds coeff * prod_k (tr h^k)^{m_k} (no slots); used to seed characters.
    void add_powersum_term(const S& coeff, const std::map<int, int>& trp) {
        HTerm<S> t;
        t.coeff = coeff;
        t.trp = trp;
        t.sigma.assign(nslots, 0);
        for (int i = 0; i < nslots; ++i) t.sigma[i] = i;
        t.slots.assign(nslots, SlotMono{});
        terms.push_back(t);
    }

    // Seeds from a polynomial in the variables y_k (weight-k grading) under the
    // substitution y_k = (tr h^k)/k, e.g. schur_in_y output.
    static HFunction from_y_polynomial(const TPoly& p) {
        HFunction f;
        for (const auto& [mono, c] : p.coeffs()) {
            Rational scale = c;
            std::map<int, int> trp;
            for (size_t i = 0; i < mono.size(); ++i) {
                if (mono[i] == 0) continue;
                trp[int(i + 1)] = mono[i];
                scale /= rat_pow(Rational(long(i + 1)), mono[i]);
            }
            f.add_powersum_term(scalar_from_rational<S>(scale), trp);
        }
        return f;
    }

    HFunction scaled(const S& s) const {
        HFunction f = *this;
        for (auto& t : f.terms) t.coeff = s * t.coeff;
        return f;
    }

    friend HFunction operator+(const HFunction& a, const HFunction& b) {
        if (a.res_points != b.res_points || a.detfac != b.detfac || a.nslots != b.nslots)
            throw std::invalid_argument("HFunction: sum requires identical global structure");
        for (const auto& [k, t] : a.times) {
            auto it = b.times.find(k);
            if (it == b.times.end() || !(it->second == t))
                throw std::invalid_argument("HFunction: sum requires identical exponential tags");
        }
        if (a.times.size() != b.times.size())
            throw std::invalid_argument("HFunction: sum requires identical exponential tags");
        HFunction f = a;
        f.terms.insert(f.terms.end(), b.terms.begin(), b.terms.end());
        f.canonicalize();
        return f;
    }

    // Same function viewed with one more (unoccupied) slot.
    HFunction lifted() const {
        HFunction f = *this;
        f.nslots += 1;
        for (auto& t : f.terms) {
            t.sigma.push_back(f.nslots - 1);
            t.slots.push_back(SlotMono{});
        }
        return f;
    }

    // The matrix derivative d, new slot at index nslots.
    HFunction derive() const {
        HFunction f;
        f.res_points = res_points;
        f.times = times;
        f.detfac = detfac;
        f.nslots = nslots + 1;
        const int m = nslots;
        for (const auto& t : terms) {
            std::vector<int> ext_sigma = t.sigma;
            ext_sigma.push_back(m);
            std::vector<SlotMono> ext_slots = t.slots;
            ext_slots.push_back(SlotMono{});

            // (A) divided differences of the occupied slots
            for (int i = 0; i < nslots; ++i) {
                if (t.slots[i].empty()) continue;
                for (const auto& [umono, vmono, factor] : divided_difference(t.slots[i])) {
                    HTerm<S> nt;
                    nt.coeff = scalar_from_rational<S>(factor) * t.coeff;
                    nt.trp = t.trp;
                    nt.sigma = compose_transposition(ext_sigma, i, m);
                    nt.slots = ext_slots;
                    nt.slots[i] = umono;
                    nt.slots[m] = vmono;
                    f.terms.push_back(nt);
                }
            }
            // (B) derivative of the power-sum prefactors: d (tr h^k) = k h^{k-1}
            for (const auto& [k, mult] : t.trp) {
                HTerm<S> nt;
                nt.coeff = scalar_from_rational<S>(Rational(k) * mult) * t.coeff;
                nt.trp = t.trp;
                if (--nt.trp[k] == 0) nt.trp.erase(k);
                nt.sigma = ext_sigma;
                nt.slots = ext_slots;
                nt.slots[m].upow = k - 1;
                f.terms.push_back(nt);
            }
            // (C) logarithmic derivative of the global factor in the new slot
            for (const auto& [k, tk] : times) {
                HTerm<S> nt;
                nt.coeff = scalar_from_rational<S>(Rational(k)) * tk * t.coeff;
                nt.trp = t.trp;
                nt.sigma = ext_sigma;
                nt.slots = ext_slots;
                nt.slots[m].upow = k - 1;
                f.terms.push_back(nt);
            }
            for (const auto& [j, e] : detfac) {
                HTerm<S> nt;
                nt.coeff = scalar_from_rational<S>(Rational(e) * res_points[j]) * t.coeff;
                nt.trp = t.trp;
                nt.sigma = ext_sigma;
                nt.slots = ext_slots;
                if (int(nt.slots[m].rpow.size()) <= j) nt.slots[m].rpow.resize(j + 1, 0);
                nt.slots[m].rpow[j] += 1;
                f.terms.push_back(nt);
            }
        }
        f.canonicalize();
        return f;
    }

    // One factor of the T-operator chain: f -> (x - x_i) f + d f.
    HFunction chain_step(const S& x_minus_xi) const {
        return lifted().scaled(x_minus_xi) + derive();
    }

    // Exact evaluation at h = diag(k_1..k_N); the exponential tag stays symbolic.
    HEval<S> evaluate(const std::vector<Rational>& kvals) const {
        long N = long(kvals.size());
        long dim = tensor_dim(N, nslots);
        HEval<S> out{Mat<S>(dim, dim), times};

        Rational detscalar = 1;
        for (const auto& [j, e] : detfac) {
            for (const auto& ka : kvals) {
                Rational base = 1 - res_points[j] * ka;
                if (base == 0) {
                    if (e > 0) throw PoleError("HFunction: determinant factor pole at the twist");
                    detscalar = 0;
                } else {
                    detscalar *= rat_pow(base, -e);
                }
            }
        }

        std::map<int, Rational> trvals;
        auto trval = [&](int k) {
            auto it = trvals.find(k);
            if (it != trvals.end()) return it->second;
            Rational s = 0;
            for (const auto& ka : kvals) s += rat_pow(ka, k);
            trvals[k] = s;
            return s;
        };
        auto slotval = [&](const SlotMono& sm, const Rational& u) {
            Rational v = rat_pow(u, sm.upow);
            for (size_t j = 0; j < sm.rpow.size(); ++j) {
                if (sm.rpow[j] == 0) continue;
                Rational base = 1 - res_points[j] * u;
                if (base == 0) throw PoleError("HFunction: resolvent pole at the twist");
                v *= rat_pow(base, -sm.rpow[j]);
            }
            return v;
        };

        std::vector<int> st(nslots), rs(nslots);
        for (const auto& t : terms) {
            Rational pre = detscalar;
            for (const auto& [k, mult] : t.trp) pre *= rat_pow(trval(k), mult);
            S scalar = scalar_from_rational<S>(pre) * t.coeff;
            for (long c = 0; c < dim; ++c) {
                long idx = c;
                for (long i = nslots - 1; i >= 0; --i) {
                    st[i] = int(idx % N);
                    idx /= N;
                }
                Rational dval = 1;
                for (int i = 0; i < nslots; ++i)
                    if (!t.slots[i].empty()) dval *= slotval(t.slots[i], kvals[st[i]]);
                if (dval == 0) continue;
                for (int j = 0; j < nslots; ++j) rs[j] = st[t.sigma[j]];
                long r = 0;
                for (int j = 0; j < nslots; ++j) r = r * N + rs[j];
                out.op.at(r, c) += scalar * scalar_from_rational<S>(dval);
            }
        }
        return out;
    }

private:
    // P_sigma P_{(i m)} = P_{sigma.then((i m))}
    static std::vector<int> compose_transposition(const std::vector<int>& sigma, int i, int m) {
        std::vector<int> r = sigma;
        for (auto& v : r) {
            if (v == i)
                v = m;
            else if (v == m)
                v = i;
        }
        return r;
    }

    // First divided difference (phi(u) - phi(v)) / (u - v) of the univariate
    // monomial phi, returned as a list of (u-part, v-part, rational factor).
    std::vector<std::tuple<SlotMono, SlotMono, Rational>> divided_difference(const SlotMono& phi) const {
        struct Factor {
            bool is_u;
            int j;
            int pow;
        };
        std::vector<Factor> fac;
        if (phi.upow > 0) fac.push_back({true, -1, phi.upow});
        for (size_t j = 0; j < phi.rpow.size(); ++j)
            if (phi.rpow[j] > 0) fac.push_back({false, int(j), phi.rpow[j]});

        std::vector<std::tuple<SlotMono, SlotMono, Rational>> out;
        size_t nr = res_points.size();
        auto mono_u = [&](const Factor& fc, int p) {
            SlotMono sm;
            sm.rpow.assign(nr, 0);
            if (fc.is_u)
                sm.upow = p;
            else
                sm.rpow[fc.j] = p;
            return sm;
        };
        for (size_t i = 0; i < fac.size(); ++i) {
            // earlier factors at v, later at u, dd of factor i
            SlotMono pre_v, post_u;
            pre_v.rpow.assign(nr, 0);
            post_u.rpow.assign(nr, 0);
            for (size_t a = 0; a < i; ++a) pre_v = pre_v.times(mono_u(fac[a], fac[a].pow));
            for (size_t a = i + 1; a < fac.size(); ++a) post_u = post_u.times(mono_u(fac[a], fac[a].pow));
            const Factor& fc = fac[i];
            if (fc.is_u) {
                // dd u^p = sum_{a+b=p-1} u^a v^b
                for (int a = 0; a + 1 <= fc.pow; ++a) {
                    int b = fc.pow - 1 - a;
                    out.emplace_back(post_u.times(mono_u(fc, a)), pre_v.times(mono_u(fc, b)), Rational(1));
                }
            } else {
                // dd r^q = c * sum_{a+b=q-1} r(u)^{a+1} r(v)^{b+1}
                for (int a = 0; a + 1 <= fc.pow; ++a) {
                    int b = fc.pow - 1 - a;
                    out.emplace_back(post_u.times(mono_u(fc, a + 1)), pre_v.times(mono_u(fc, b + 1)),
                                     res_points[fc.j]);
                }
            }
        }
        return out;
    }

    void canonicalize() {
        std::map<std::tuple<std::map<int, int>, std::vector<int>, std::vector<SlotMono>>, S> acc;
        for (auto& t : terms) {
            for (auto& sm : t.slots) sm.rpow.resize(res_points.size(), 0);
            auto key = std::make_tuple(t.trp, t.sigma, t.slots);
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(std::move(key), t.coeff);
            else
                it->second += t.coeff;
        }
        terms.clear();
        for (auto& [key, c] : acc) {
            if (c == S(0)) continue;
            HTerm<S> t;
            t.coeff = c;
            t.trp = std::get<0>(key);
            t.sigma = std::get<1>(key);
            t.slots = std::get<2>(key);
            terms.push_back(t);
        }
    }
};

} // namespace gaudinlab
