#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace gaudinlab {

// Dense matrix over a scalar ring S (row-major).
template <class S>
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(long rows, long cols, const S& fill = S(0)) : r_(rows), c_(cols), a_(size_t(rows) * cols, fill) {}

    static Mat identity(long n) {
        Mat m(n, n);
        for (long i = 0; i < n; ++i) m.at(i, i) = S(1);
        return m;
    }

    long rows() const { return r_; }
    long cols() const { return c_; }
    S& at(long r, long c) { return a_[size_t(r) * c_ + c]; }
    const S& at(long r, long c) const { return a_[size_t(r) * c_ + c]; }

    friend Mat operator+(const Mat& x, const Mat& y) {
        x.check_same(y);
        Mat r = x;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        x.check_same(y);
        Mat r = x;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
        return r;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& v : r.a_) v = -v;
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.c_ != y.r_) throw std::invalid_argument("Mat: shape mismatch in product");
        Mat r(x.r_, y.c_);
        for (long i = 0; i < x.r_; ++i)
            for (long k = 0; k < x.c_; ++k) {
                const S& xv = x.at(i, k);
                if (xv == S(0)) continue;
                for (long j = 0; j < y.c_; ++j) r.at(i, j) += xv * y.at(k, j);
            }
        return r;
    }
    friend Mat operator*(const S& s, const Mat& x) {
        Mat r = x;
        for (auto& v : r.a_) v = s * v;
        return r;
    }
    friend Mat operator*(const Mat& x, const S& s) { return s * x; }

    Mat& operator+=(const Mat& o) { return *this = *this + o; }
    Mat& operator-=(const Mat& o) { return *this = *this - o; }

    friend bool operator==(const Mat& x, const Mat& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!(v == S(0))) return false;
        return true;
    }
    long nonzero_count() const {
        long n = 0;
        for (const auto& v : a_)
            if (!(v == S(0))) ++n;
        return n;
    }

    Mat transpose() const {
        Mat r(c_, r_);
        for (long i = 0; i < r_; ++i)
            for (long j = 0; j < c_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    template <class T, class F>
    Mat<T> map(F f) const {
        Mat<T> r(r_, c_);
        for (long i = 0; i < r_; ++i)
            for (long j = 0; j < c_; ++j) r.at(i, j) = f(at(i, j));
        return r;
    }

private:
    void check_same(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: shape mismatch");
    }
    long r_, c_;
    std::vector<S> a_;
};

template <class S>
inline Mat<S> commutator(const Mat<S>& a, const Mat<S>& b) { return a * b - b * a; }

template <class S>
inline Mat<double> mat_to_double(const Mat<S>& m) {
    return m.template map<double>([](const S& v) { return to_double(v); });
}

inline double max_abs(const Mat<double>& m) {
    double mx = 0;
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) mx = std::max(mx, std::abs(m.at(i, j)));
    return mx;
}

// Characteristic polynomial coefficients of an n x n matrix over a field,
// det(z - M) = z^n + c_1 z^{n-1} + ... + c_n, by the Faddeev-LeVerrier recursion.
template <class S>
inline std::vector<S> char_poly_coeffs(const Mat<S>& m) {
    long n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("char_poly_coeffs: square matrix required");
    std::vector<S> c(n + 1, S(0));
    c[0] = S(1);
    Mat<S> a = m, acc = m;
    for (long k = 1; k <= n; ++k) {
        if (k > 1) acc = m * a;
        S tr{0};
        for (long i = 0; i < n; ++i) tr += acc.at(i, i);
        c[k] = -tr * (S(1) / S(int(k)));
        if (k < n) {
            a = acc;
            for (long i = 0; i < n; ++i) a.at(i, i) += c[k];
        }
    }
    return c;
}

// --- permutations ------------------------------------------------------------

// sigma stored as images: sigma(i) = img[i], 0-based. Composition is
// left-to-right: (sigma.then(tau))(i) = tau(sigma(i)), so that the permutation
// operators below satisfy P_sigma P_tau = P_{sigma.then(tau)}.
struct Perm {
    std::vector<int> img;

    static Perm id(int n) {
        Perm p;
        p.img.resize(n);
        std::iota(p.img.begin(), p.img.end(), 0);
        return p;
    }
    static Perm transposition(int i, int j, int n) {
        Perm p = id(n);
        std::swap(p.img[i], p.img[j]);
        return p;
    }
    int n() const { return int(img.size()); }
    int operator()(int i) const { return img[i]; }

    Perm then(const Perm& tau) const {
        Perm r;
        r.img.resize(img.size());
        for (size_t i = 0; i < img.size(); ++i) r.img[i] = tau.img[img[i]];
        return r;
    }
    Perm inverse() const {
        Perm r;
        r.img.resize(img.size());
        for (size_t i = 0; i < img.size(); ++i) r.img[img[i]] = int(i);
        return r;
    }
    // Extends to m slots, fixing the new ones.
    Perm extended(int m) const {
        Perm r = id(m);
        for (size_t i = 0; i < img.size(); ++i) r.img[i] = img[i];
        return r;
    }
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(img.size(), false);
        for (size_t i = 0; i < img.size(); ++i) {
            if (seen[i]) continue;
            std::vector<int> c;
            int j = int(i);
            while (!seen[j]) {
                seen[j] = true;
                c.push_back(j);
                j = img[j];
            }
            out.push_back(c);
        }
        return out;
    }
    friend bool operator==(const Perm& a, const Perm& b) { return a.img == b.img; }
    friend bool operator<(const Perm& a, const Perm& b) { return a.img < b.img; }
};

inline std::vector<Perm> all_perms(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    std::vector<Perm> out;
    do {
        Perm p;
        p.img = v;
        out.push_back(p);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

// --- tensor-product operators on (C^N)^{tensor n} ---------------------------

inline long tensor_dim(long N, long n) {
    long d = 1;
    for (long i = 0; i < n; ++i) d *= N;
    return d;
}

// Basis state <-> index: lexicographic with site 1 most significant.
inline std::vector<int> decode_state(long idx, long N, long n) {
    std::vector<int> s(n);
    for (long i = n - 1; i >= 0; --i) {
        s[i] = int(idx % N);
        idx /= N;
    }
    return s;
}
inline long encode_state(const std::vector<int>& s, long N) {
    long idx = 0;
    for (int a : s) idx = idx * N + a;
    return idx;
}

// e_{ab} acting at site i (1-based site, 1-based a,b).
template <class S>
inline Mat<S> elem(long i, long a, long b, long N, long n) {
    if (i < 1 || i > n || a < 1 || a > N || b < 1 || b > N) throw std::out_of_range("elem: index out of range");
    long d = tensor_dim(N, n);
    Mat<S> m(d, d);
    for (long c = 0; c < d; ++c) {
        auto st = decode_state(c, N, n);
        if (st[i - 1] != b - 1) continue;
        st[i - 1] = int(a - 1);
        m.at(encode_state(st, N), c) = S(1);
    }
    return m;
}

// P_sigma with (P_sigma v)_j = v_{sigma(j)}: for a basis state c, the image has
// site-j index c_{sigma(j)}.
template <class S>
inline Mat<S> perm_op(const Perm& sigma, long N) {
    long n = sigma.n();
    long d = tensor_dim(N, n);
    Mat<S> m(d, d);
    for (long c = 0; c < d; ++c) {
        auto st = decode_state(c, N, n);
        std::vector<int> rs(n);
        for (long j = 0; j < n; ++j) rs[j] = st[sigma(int(j))];
        m.at(encode_state(rs, N), c) = S(1);
    }
    return m;
}

// Sector of states whose site-index content is m = (m_1..m_N).
inline std::vector<long> sector_basis(const std::vector<long>& m, long N, long n) {
    if (long(m.size()) != N) throw std::invalid_argument("sector_basis: label size != N");
    long tot = 0;
    for (long v : m) {
        if (v < 0) throw std::invalid_argument("sector_basis: negative multiplicity");
        tot += v;
    }
    if (tot != n) throw std::invalid_argument("sector_basis: multiplicities must sum to n");
    std::vector<long> out;
    long d = tensor_dim(N, n);
    for (long c = 0; c < d; ++c) {
        auto st = decode_state(c, N, n);
        std::vector<long> cnt(N, 0);
        for (int a : st) ++cnt[a];
        if (cnt == m) out.push_back(c);
    }
    return out;
}

template <class S>
inline Mat<S> sector_projector(const std::vector<long>& m, long N, long n) {
    long d = tensor_dim(N, n);
    Mat<S> p(d, d);
    for (long c : sector_basis(m, N, n)) p.at(c, c) = S(1);
    return p;
}

// All sector labels (compositions of n into N nonnegative parts).
inline std::vector<std::vector<long>> all_sectors(long N, long n) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(N, 0);
    auto rec = [&](auto&& self, long a, long rem) -> void {
        if (a == N - 1) {
            cur[a] = rem;
            out.push_back(cur);
            return;
        }
        for (long v = 0; v <= rem; ++v) {
            cur[a] = v;
            self(self, a + 1, rem - v);
        }
    };
    rec(rec, 0, n);
    return out;
}

} // namespace gaudinlab
