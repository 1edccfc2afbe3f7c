#pragma once

#include <map>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace gaudinlab {

// Multivariate polynomial over the rationals in the entries of an N x N matrix
// variable; monomial = map (row,col) -> exponent (0-based indices).
using EMono = std::map<std::pair<int, int>, int>;

struct MPoly {
    std::map<EMono, Rational> c;

    MPoly() = default;
    MPoly(int v) {
        if (v != 0) c[EMono{}] = v;
    }
    explicit MPoly(const Rational& v) {
        if (v != 0) c[EMono{}] = v;
    }
    static MPoly entry(int a, int b) {
        MPoly p;
        p.c[EMono{{{a, b}, 1}}] = 1;
        return p;
    }

    bool is_zero() const { return c.empty(); }

    friend MPoly operator+(const MPoly& x, const MPoly& y) {
        MPoly r = x;
        for (const auto& [m, v] : y.c) {
            auto& slot = r.c[m];
            slot += v;
            if (slot == 0) r.c.erase(m);
        }
        return r;
    }
    friend MPoly operator-(const MPoly& x, const MPoly& y) { return x + (-y); }
    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [m, v] : r.c) v = -v;
        return r;
    }
    friend MPoly operator*(const MPoly& x, const MPoly& y) {
        MPoly r;
        for (const auto& [mx, vx] : x.c)
            for (const auto& [my, vy] : y.c) {
                EMono m = mx;
                for (const auto& [k, e] : my) m[k] += e;
                auto& slot = r.c[m];
                slot += vx * vy;
                if (slot == 0) r.c.erase(m);
            }
        return r;
    }
    friend MPoly operator*(const Rational& s, const MPoly& x) {
        MPoly r;
        if (s == 0) return r;
        r = x;
        for (auto& [m, v] : r.c) v *= s;
        return r;
    }
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    friend bool operator==(const MPoly& x, const MPoly& y) { return x.c == y.c; }

    // Evaluation at a diagonal matrix diag(k_1..k_N): off-diagonal entries vanish.
    Rational eval_diagonal(const std::vector<Rational>& kvals) const {
        Rational out = 0;
        for (const auto& [m, v] : c) {
            Rational term = v;
            bool dead = false;
            for (const auto& [idx, e] : m) {
                if (e == 0) continue;
                if (idx.first != idx.second) {
                    dead = true;
                    break;
                }
                term *= rat_pow(kvals[idx.first], e);
            }
            if (!dead) out += term;
        }
        return out;
    }
};

// tr M^k as a polynomial in the entries of M.
inline MPoly trace_power_poly(int N, int k) {
    // entries of M^k symbolically
    std::vector<std::vector<MPoly>> pw(N, std::vector<MPoly>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) pw[a][b] = (k == 0) ? MPoly(a == b ? 1 : 0) : MPoly::entry(a, b);
    for (int step = 1; step < k; ++step) {
        std::vector<std::vector<MPoly>> nx(N, std::vector<MPoly>(N));
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                for (int m = 0; m < N; ++m) nx[a][b] += pw[a][m] * MPoly::entry(m, b);
        pw = nx;
    }
    MPoly tr;
    for (int a = 0; a < N; ++a) tr += pw[a][a];
    return tr;
}

// Entries of M^k as polynomials.
inline std::vector<std::vector<MPoly>> matrix_power_poly(int N, int k) {
    std::vector<std::vector<MPoly>> pw(N, std::vector<MPoly>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) pw[a][b] = MPoly(a == b ? 1 : 0);
    for (int step = 0; step < k; ++step) {
        std::vector<std::vector<MPoly>> nx(N, std::vector<MPoly>(N));
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                for (int m = 0; m < N; ++m) nx[a][b] += pw[a][m] * MPoly::entry(m, b);
        pw = nx;
    }
    return pw;
}

inline MPoly det_poly(const std::vector<std::vector<MPoly>>& m) {
    int n = int(m.size());
    if (n == 1) return m[0][0];
    MPoly acc;
    for (int j = 0; j < n; ++j) {
        std::vector<std::vector<MPoly>> minor(n - 1, std::vector<MPoly>(n - 1));
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c)
                if (c != j) minor[r - 1][cc++] = m[r][c];
        }
        MPoly term = m[0][j] * det_poly(minor);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

// adjugate of the symbolic matrix 1 - c*M: adj(A)_{ab} = (-1)^{a+b} det(A with row b, col a removed).
inline std::vector<std::vector<MPoly>> adjugate_one_minus(int N, const Rational& cpt) {
    std::vector<std::vector<MPoly>> A(N, std::vector<MPoly>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) A[a][b] = MPoly(a == b ? 1 : 0) - cpt * MPoly::entry(a, b);
    std::vector<std::vector<MPoly>> adj(N, std::vector<MPoly>(N));
    if (N == 1) {
        adj[0][0] = MPoly(1);
        return adj;
    }
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            std::vector<std::vector<MPoly>> minor;
            for (int r = 0; r < N; ++r) {
                if (r == b) continue;
                std::vector<MPoly> row;
                for (int c = 0; c < N; ++c) {
                    if (c == a) continue;
                    row.push_back(A[r][c]);
                }
                minor.push_back(row);
            }
            MPoly d = det_poly(minor);
            adj[a][b] = ((a + b) % 2 == 0) ? d : -d;
        }
    return adj;
}

inline std::vector<std::vector<MPoly>> one_minus_c_matrix(int N, const Rational& cpt) {
    std::vector<std::vector<MPoly>> A(N, std::vector<MPoly>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) A[a][b] = MPoly(a == b ? 1 : 0) - cpt * MPoly::entry(a, b);
    return A;
}

} // namespace gaudinlab
