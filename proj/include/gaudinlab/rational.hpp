#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gaudinlab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(double r) { return r; }

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "p", "p/q" or a plain decimal like "-0.25" into an exact rational.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("cannot parse rational: '" + s + "'"); };
    std::string str = s;
    if (str.empty()) bad();
    auto slash = str.find('/');
    try {
        if (slash != std::string::npos) {
            Integer p(str.substr(0, slash));
            Integer q(str.substr(slash + 1));
            if (q == 0) bad();
            return Rational(p, q);
        }
        auto dot = str.find('.');
        if (dot == std::string::npos) return Rational(Integer(str));
        std::string head = str.substr(0, dot), tail = str.substr(dot + 1);
        bool neg = !head.empty() && head[0] == '-';
        if (neg || (!head.empty() && head[0] == '+')) head = head.substr(1);
        if (head.empty()) head = "0";
        if (tail.empty()) tail = "0";
        Integer scale = 1;
        for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
        Rational v = Rational(Integer(head)) + Rational(Integer(tail), scale);
        return neg ? -v : v;
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rational(0);
}

// r^e with integer (possibly negative) exponent.
inline Rational rat_pow(const Rational& r, long e) {
    if (e < 0) {
        if (r == 0) throw std::domain_error("rat_pow: 0 to a negative power");
        return 1 / rat_pow(r, -e);
    }
    Rational acc = 1, base = r;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

inline Integer factorial(long n) {
    Integer f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

// binomial(n,k) with the convention that out-of-range arguments give 0:
// zero for k < 0 or k > n (n >= 0 in all uses).
inline Integer binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    Integer b = 1;
    for (long i = 1; i <= k; ++i) {
        b *= (n - k + i);
        b /= i;
    }
    return b;
}

// Conversion of exact scalars into a target scalar ring.
template <class S>
inline S scalar_from_rational(const Rational& r) { return S(r); }

template <>
inline double scalar_from_rational<double>(const Rational& r) { return to_double(r); }

template <>
inline Rational scalar_from_rational<Rational>(const Rational& r) { return r; }

} // namespace gaudinlab
