#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"
#include "tpoly.hpp"

namespace gaudinlab {

// A Young diagram: weakly decreasing positive parts; empty = the empty diagram.
struct Partition {
    std::vector<long> parts;

    Partition() = default;
    Partition(std::initializer_list<long> p) : parts(p) { normalize(); }
    explicit Partition(std::vector<long> p) : parts(std::move(p)) { normalize(); }

    void normalize() {
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
        for (size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0 || (i > 0 && parts[i] > parts[i - 1]))
                throw std::invalid_argument("Partition: parts must be weakly decreasing and positive");
        }
    }

    long weight() const {
        long w = 0;
        for (long p : parts) w += p;
        return w;
    }
    long length() const { return long(parts.size()); }
    long part(long i) const { return (i >= 1 && i <= length()) ? parts[i - 1] : 0; } // 1-based, 0 beyond

    bool contains(const Partition& mu) const {
        if (mu.length() > length()) return false;
        for (long i = 1; i <= mu.length(); ++i)
            if (mu.part(i) > part(i)) return false;
        return true;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts < b.parts; }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
        return s + ")";
    }
};

inline Partition conjugate(const Partition& lam) {
    std::vector<long> cols;
    long h = lam.part(1);
    for (long i = 1; i <= h; ++i) {
        long cnt = 0;
        for (long p : lam.parts)
            if (p >= i) ++cnt;
        cols.push_back(cnt);
    }
    return Partition(cols);
}

// Frobenius coordinates: alpha_i = lam_i - i, beta_i = lam'_i - i over the diagonal.
struct FrobeniusCoords {
    std::vector<long> alphas, betas;
    friend bool operator==(const FrobeniusCoords& a, const FrobeniusCoords& b) {
        return a.alphas == b.alphas && a.betas == b.betas;
    }
};

inline FrobeniusCoords frobenius(const Partition& lam) {
    FrobeniusCoords f;
    Partition conj = conjugate(lam);
    for (long i = 1; i <= lam.length(); ++i) {
        if (lam.part(i) - i < 0) break;
        f.alphas.push_back(lam.part(i) - i);
        f.betas.push_back(conj.part(i) - i);
    }
    return f;
}

inline Partition from_frobenius(const FrobeniusCoords& f) {
    long d = long(f.alphas.size());
    if (f.betas.size() != f.alphas.size()) throw std::invalid_argument("from_frobenius: length mismatch");
    long rows = d;
    for (long i = 0; i < d; ++i) rows = std::max(rows, f.betas[i] + i + 1);
    std::vector<long> parts(rows, 0);
    for (long i = 0; i < d; ++i) parts[i] = f.alphas[i] + i + 1;
    // column lengths below the diagonal
    for (long i = 0; i < d; ++i)
        for (long r = i + 1; r <= f.betas[i] + i; ++r) parts[r] = std::max(parts[r], i + 1);
    return Partition(parts);
}

// The hook diagram (alpha | beta) = (alpha+1, 1^beta).
inline Partition hook_partition(long alpha, long beta) {
    std::vector<long> p{alpha + 1};
    for (long i = 0; i < beta; ++i) p.push_back(1);
    return Partition(p);
}

// --- symmetric polynomials in KP times -------------------------------------

// h_0..h_maxk of the generating series exp(sum_k t_k z^k), over any scalar ring S
// that supports multiplication by exact rationals via scalar_from_rational.
template <class S>
inline std::vector<S> complete_sym_list(long maxk, const std::map<int, S>& times) {
    std::vector<S> h(maxk + 1, S(0));
    h[0] = S(1);
    for (long m = 1; m <= maxk; ++m) {
        S acc{0};
        for (const auto& [k, tk] : times) {
            if (k >= 1 && k <= m) acc += scalar_from_rational<S>(Rational(k)) * tk * h[m - k];
        }
        h[m] = scalar_from_rational<S>(Rational(1, m)) * acc;
    }
    return h;
}

template <class S>
inline S complete_sym(long k, const std::map<int, S>& times) {
    if (k < 0) return S(0);
    return complete_sym_list<S>(k, times)[k];
}

template <class S>
inline S elementary_sym(long k, const std::map<int, S>& times) {
    if (k < 0) return S(0);
    std::map<int, S> neg;
    for (const auto& [m, t] : times) neg[m] = -t;
    S v = complete_sym<S>(k, neg);
    return (k % 2 == 0) ? v : -v;
}

// Cofactor-expansion determinant for small ring-valued matrices.
template <class T>
inline T det_small(const std::vector<std::vector<T>>& a) {
    size_t n = a.size();
    if (n == 0) throw std::invalid_argument("det_small: empty");
    if (n == 1) return a[0][0];
    T acc = T(0) * a[0][0]; // zero of the right shape for non-default-zero types
    std::vector<std::vector<T>> minor(n - 1, std::vector<T>(n - 1, a[0][0]));
    for (size_t j = 0; j < n; ++j) {
        for (size_t r = 1; r < n; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c)
                if (c != j) minor[r - 1][cc++] = a[r][c];
        }
        T term = a[0][j] * det_small(minor);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

// Jacobi-Trudi determinant s_lambda = det[h_{lam_i - i + j}].
template <class S>
inline S schur(const Partition& lam, const std::map<int, S>& times) {
    long l = lam.length();
    if (l == 0) return S(1);
    auto h = complete_sym_list<S>(lam.part(1) + l, times);
    auto hk = [&](long k) -> S {
        if (k < 0) return S(0);
        return h[k];
    };
    std::vector<std::vector<S>> m(l, std::vector<S>(l, S(0)));
    for (long i = 1; i <= l; ++i)
        for (long j = 1; j <= l; ++j) m[i - 1][j - 1] = hk(lam.part(i) - i + j);
    return det_small(m);
}

// Dual Jacobi-Trudi determinant s_lambda = det[e_{lam'_i - i + j}].
template <class S>
inline S schur_dual(const Partition& lam, const std::map<int, S>& times) {
    Partition conj = conjugate(lam);
    long l = conj.length();
    if (l == 0) return S(1);
    std::vector<std::vector<S>> m(l, std::vector<S>(l, S(0)));
    for (long i = 1; i <= l; ++i)
        for (long j = 1; j <= l; ++j) m[i - 1][j - 1] = elementary_sym<S>(conj.part(i) - i + j, times);
    return det_small(m);
}

// Times built from eigenvalues: y_k = sum_a p_a^k / k.
inline std::map<int, Rational> times_from_eigenvalues(const std::vector<Rational>& p, long maxk) {
    std::map<int, Rational> t;
    for (long k = 1; k <= maxk; ++k) {
        Rational s = 0;
        for (const auto& pa : p) s += rat_pow(pa, k);
        t[int(k)] = s / k;
    }
    return t;
}

// GL(N) character at eigenvalues p (bialternant when distinct, Schur path otherwise).
inline Rational character(const Partition& lam, const std::vector<Rational>& p) {
    long N = long(p.size());
    if (lam.length() > N) return 0;
    bool distinct = true;
    for (long i = 0; i < N && distinct; ++i)
        for (long j = i + 1; j < N; ++j)
            if (p[i] == p[j]) { distinct = false; break; }
    if (distinct && N > 0) {
        std::vector<std::vector<Rational>> num(N, std::vector<Rational>(N)), den(N, std::vector<Rational>(N));
        for (long i = 0; i < N; ++i)
            for (long j = 0; j < N; ++j) {
                num[i][j] = rat_pow(p[i], lam.part(j + 1) + N - (j + 1));
                den[i][j] = rat_pow(p[i], N - (j + 1));
            }
        return det_small(num) / det_small(den);
    }
    return schur<Rational>(lam, times_from_eigenvalues(p, std::max<long>(1, lam.weight())));
}

// --- character shift coefficients ------------------------------------------

// All mu contained in lam (as diagrams), including the empty one.
inline std::vector<Partition> subdiagrams(const Partition& lam) {
    std::vector<Partition> out;
    std::vector<long> cur;
    auto rec = [&](auto&& self, long row) -> void {
        out.push_back(Partition(cur));
        if (row > lam.length()) return;
        long hi = std::min(lam.part(row), row > 1 ? cur[row - 2] : lam.part(1));
        for (long v = 1; v <= hi; ++v) {
            cur.push_back(v);
            self(self, row + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Coefficients c_{lam,mu} with chi_lam(g-1) = sum_mu c_{lam,mu} chi_mu(g):
// c_{lam,mu} = (-1)^{|lam|-|mu|} det_{NxN} [ binom(lam_i+N-i, mu_j+N-j) ].
inline std::map<Partition, Rational> char_shift_coeffs(const Partition& lam, long N) {
    if (lam.length() > N) throw std::invalid_argument("char_shift_coeffs: l(lambda) > N");
    std::map<Partition, Rational> out;
    for (const auto& mu : subdiagrams(lam)) {
        if (mu.length() > N) continue;
        std::vector<std::vector<Rational>> m(N, std::vector<Rational>(N));
        for (long i = 1; i <= N; ++i)
            for (long j = 1; j <= N; ++j)
                m[i - 1][j - 1] = Rational(binomial(lam.part(i) + N - i, mu.part(j) + N - j));
        Rational c = det_small(m);
        if ((lam.weight() - mu.weight()) % 2 != 0) c = -c;
        if (c != 0) out[mu] = c;
    }
    return out;
}

// Hook-character shift: chi_{(a|b)}(g-1) expanded over hook characters of g plus
// a scalar part; coefficients factor into binomials in a', b'.
struct HookShift {
    std::map<std::pair<long, long>, Rational> hooks; // (a',b') -> coefficient
    Rational constant;                               // coefficient of 1
};

inline HookShift hook_char_shift(long a, long b, long N) {
    HookShift out;
    out.constant = 0;
    for (long ap = 0; ap <= a; ++ap)
        for (long bp = 0; bp <= b; ++bp) {
            Rational c = Rational(binomial(N + a, N + ap)) * Rational(binomial(N - bp - 1, N - b - 1));
            if ((a - ap + b - bp) % 2 != 0) c = -c;
            if (c != 0) out.hooks[{ap, bp}] = c;
        }
    for (long j = 0; j <= b; ++j) {
        Rational c = Rational(binomial(N + a + b - j, N - 1)) * Rational(binomial(N, j));
        if ((a + 1 - j) % 2 != 0) c = -c;
        out.constant += c;
    }
    return out;
}

// --- partition enumeration ---------------------------------------------------

inline void partitions_of_rec(long w, long maxpart, std::vector<long>& cur, std::vector<Partition>& out) {
    if (w == 0) {
        out.push_back(Partition(cur));
        return;
    }
    for (long p = std::min(w, maxpart); p >= 1; --p) {
        cur.push_back(p);
        partitions_of_rec(w - p, p, cur, out);
        cur.pop_back();
    }
}

inline std::vector<Partition> partitions_of(long w) {
    std::vector<Partition> out;
    std::vector<long> cur;
    partitions_of_rec(w, w, cur, out);
    return out;
}

inline std::vector<Partition> partitions_up_to(long w) {
    std::vector<Partition> out;
    for (long k = 0; k <= w; ++k) {
        auto pk = partitions_of(k);
        out.insert(out.end(), pk.begin(), pk.end());
    }
    return out;
}

// s_lambda expressed in the variables y_k (weight k), so that the character of a
// matrix with power sums p_k is obtained by substituting y_k = p_k / k.
inline TPoly schur_in_y(const Partition& lam) {
    int K = std::max<long>(1, lam.weight());
    std::map<int, TPoly> times;
    for (int k = 1; k <= K; ++k) times[k] = TPoly::variable(k, K, K);
    return schur<TPoly>(lam, times);
}

} // namespace gaudinlab
