#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace gaudinlab {

// Multivariate polynomial in variables v_1..v_K over the rationals, truncated at
// weighted total degree D, where variable v_k carries weight k. This matches the
// grading of KP times (deg t_k = k), so Schur polynomials are homogeneous.
class TPoly {
public:
    using Mono = std::vector<int>; // exponent of v_k at index k-1

    TPoly() : K_(0), D_(0) {}
    TPoly(int K, int D) : K_(K), D_(D) {}
    TPoly(int K, int D, const Rational& c) : K_(K), D_(D) {
        if (c != 0) c_[Mono(K, 0)] = c;
    }
    explicit TPoly(const Rational& c) : K_(0), D_(0) {
        if (c != 0) c_[Mono{}] = c;
    }
    TPoly(int c) : TPoly(Rational(c)) {}

    static TPoly variable(int k, int K, int D) {
        TPoly p(K, D);
        if (k < 1 || k > K) throw std::out_of_range("TPoly: variable index");
        if (k <= D) {
            Mono m(K, 0);
            m[k - 1] = 1;
            p.c_[m] = 1;
        }
        return p;
    }

    int vars() const { return K_; }
    int degree_cap() const { return D_; }

    static int weight(const Mono& m) {
        int w = 0;
        for (size_t i = 0; i < m.size(); ++i) w += int(i + 1) * m[i];
        return w;
    }

    Rational coeff(const Mono& m) const {
        Mono key = m;
        key.resize(std::max<size_t>(K_, m.size()), 0);
        for (size_t i = K_; i < key.size(); ++i)
            if (key[i] != 0) return 0;
        key.resize(K_, 0);
        auto it = c_.find(key);
        return it == c_.end() ? Rational(0) : it->second;
    }
    const std::map<Mono, Rational>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }

    friend TPoly operator+(const TPoly& a, const TPoly& b) {
        TPoly r = TPoly::widen(a, b);
        for (const auto& [m, c] : TPoly::widen(b, a).c_) {
            auto& slot = r.c_[m];
            slot += c;
            if (slot == 0) r.c_.erase(m);
        }
        return r;
    }
    friend TPoly operator-(const TPoly& a, const TPoly& b) { return a + (-b); }
    TPoly operator-() const {
        TPoly r = *this;
        for (auto& [m, c] : r.c_) c = -c;
        return r;
    }
    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        TPoly wa = TPoly::widen(a, b), wb = TPoly::widen(b, a);
        TPoly r(wa.K_, wa.D_);
        for (const auto& [ma, ca] : wa.c_) {
            int wma = weight(ma);
            for (const auto& [mb, cb] : wb.c_) {
                if (wma + weight(mb) > r.D_) continue;
                Mono m = ma;
                for (int i = 0; i < r.K_; ++i) m[i] += mb[i];
                auto& slot = r.c_[m];
                slot += ca * cb;
                if (slot == 0) r.c_.erase(m);
            }
        }
        return r;
    }
    friend TPoly operator*(const Rational& s, const TPoly& a) {
        if (s == 0) return TPoly(a.K_, a.D_);
        TPoly r = a;
        for (auto& [m, c] : r.c_) c *= s;
        return r;
    }
    friend TPoly operator*(const TPoly& a, const Rational& s) { return s * a; }
    friend TPoly operator/(const TPoly& a, const Rational& s) { return (Rational(1) / s) * a; }

    TPoly& operator+=(const TPoly& o) { return *this = *this + o; }
    TPoly& operator-=(const TPoly& o) { return *this = *this - o; }
    TPoly& operator*=(const TPoly& o) { return *this = *this * o; }

    friend bool operator==(const TPoly& a, const TPoly& b) { return (a - b).is_zero(); }
    friend bool operator!=(const TPoly& a, const TPoly& b) { return !(a == b); }

    // exp of a polynomial with zero constant term, truncated at the cap.
    TPoly exp_noconst() const {
        if (coeff(Mono(K_, 0)) != 0) throw std::domain_error("TPoly: exp requires zero constant term");
        TPoly r(K_, D_, 1), pw(K_, D_, 1);
        Rational fact = 1;
        for (int k = 1; k <= D_; ++k) {
            pw = pw * (*this);
            if (pw.is_zero()) break;
            fact *= k;
            r += pw / fact;
        }
        return r;
    }

private:
    // Returns a copy of a with (K, D) merged so both operands agree: K = max,
    // D = max (smaller-cap operands are exact polynomials in this codebase).
    static TPoly widen(const TPoly& a, const TPoly& b) {
        int K = std::max(a.K_, b.K_), D = std::max(a.D_, b.D_);
        TPoly r(K, D);
        for (const auto& [m, c] : a.c_) {
            Mono key = m;
            key.resize(K, 0);
            if (weight(key) <= D) r.c_[key] = c;
        }
        return r;
    }

    int K_, D_;
    std::map<Mono, Rational> c_;
};

template <>
inline TPoly scalar_from_rational<TPoly>(const Rational& r) { return TPoly(r); }

} // namespace gaudinlab
