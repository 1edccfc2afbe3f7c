#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace gaudinlab {

// Truncated power series ("jet") in one formal variable over a scalar ring S.
// A jet of order m stores coefficients 0..m; jets of lower order are treated as
// exact polynomials (zero tail), so binary operations extend to the larger order.
// Genuinely truncated data must therefore enter at the full working order,
// which the formal-variable constructors below enforce.
template <class S>
class Jet {
public:
    Jet() : c_(1, S(0)) {}
    Jet(int value) : c_(1, S(value)) {}
    explicit Jet(const S& value, int order = 0) : c_(order + 1, S(0)) { c_[0] = value; }
    Jet(const S& value, const S& slope, int order) : c_(order + 1, S(0)) {
        c_[0] = value;
        if (order >= 1) c_[1] = slope;
    }
    static Jet variable(int order, const S& base = S(0)) { return Jet(base, S(1), order); }
    static Jet from_coeffs(std::vector<S> coeffs) {
        Jet j;
        j.c_ = std::move(coeffs);
        if (j.c_.empty()) j.c_.push_back(S(0));
        return j;
    }

    int order() const { return int(c_.size()) - 1; }
    const S& operator[](int k) const {
        static const S zero{0};
        return (k >= 0 && k < int(c_.size())) ? c_[k] : zero;
    }
    S& coeff(int k) { return c_.at(k); }

    friend Jet operator+(const Jet& a, const Jet& b) {
        int m = std::max(a.order(), b.order());
        Jet r;
        r.c_.assign(m + 1, S(0));
        for (int k = 0; k <= m; ++k) r.c_[k] = a[k] + b[k];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        int m = std::max(a.order(), b.order());
        Jet r;
        r.c_.assign(m + 1, S(0));
        for (int k = 0; k <= m; ++k) r.c_[k] = a[k] - b[k];
        return r;
    }
    Jet operator-() const {
        Jet r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        int m = std::max(a.order(), b.order());
        Jet r;
        r.c_.assign(m + 1, S(0));
        for (int i = 0; i <= std::min(m, a.order()); ++i) {
            if (a.c_[i] == S(0)) continue;
            for (int j = 0; i + j <= m && j <= b.order(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    friend Jet operator*(const S& s, const Jet& a) {
        Jet r = a;
        for (auto& x : r.c_) x = s * x;
        return r;
    }
    friend Jet operator*(const Jet& a, const S& s) { return s * a; }

    Jet inverse() const {
        if (c_[0] == S(0)) throw std::domain_error("Jet: inverse of a jet with zero constant term");
        int m = order();
        Jet r;
        r.c_.assign(m + 1, S(0));
        S inv0 = S(1) / c_[0];
        r.c_[0] = inv0;
        for (int k = 1; k <= m; ++k) {
            S acc{0};
            for (int j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
            r.c_[k] = -inv0 * acc;
        }
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * b.inverse(); }

    Jet& operator+=(const Jet& o) { return *this = *this + o; }
    Jet& operator-=(const Jet& o) { return *this = *this - o; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    friend bool operator==(const Jet& a, const Jet& b) {
        int m = std::max(a.order(), b.order());
        for (int k = 0; k <= m; ++k)
            if (a[k] != b[k]) return false;
        return true;
    }
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != S(0)) return false;
        return true;
    }

    // exp of a jet whose constant term is zero.
    Jet exp_noconst() const {
        if (c_[0] != S(0)) throw std::domain_error("Jet: exp requires zero constant term");
        int m = order();
        Jet r(S(1), m), pw(S(1), m);
        S fact{1};
        for (int k = 1; k <= m; ++k) {
            pw = pw * (*this);
            fact *= S(k);
            for (int j = 0; j <= m; ++j) r.c_[j] += pw[j] / fact;
        }
        return r;
    }

private:
    std::vector<S> c_;
};

using QJet = Jet<Rational>;

template <class S>
inline Jet<S> jet_pow(const Jet<S>& a, long e) {
    if (e < 0) return jet_pow(a.inverse(), -e);
    Jet<S> acc(S(1), a.order()), base = a;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

template <>
inline QJet scalar_from_rational<QJet>(const Rational& r) { return QJet(r); }

} // namespace gaudinlab
