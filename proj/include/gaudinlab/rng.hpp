#pragma once

#include <cstdint>
#include <vector>

#include "rational.hpp"

namespace gaudinlab {

// Deterministic splitmix64 stream; all artifact randomness flows from one seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, m)
    std::uint64_t below(std::uint64_t m) { return next_u64() % m; }

    // Small random rational p/q with p in [-pmax, pmax], q in [1, qmax].
    Rational rational(long pmax = 9, long qmax = 4) {
        long p = long(below(2 * pmax + 1)) - pmax;
        long q = long(below(qmax)) + 1;
        return Rational(p, q);
    }
    Rational nonzero_rational(long pmax = 9, long qmax = 4) {
        for (;;) {
            Rational r = rational(pmax, qmax);
            if (r != 0) return r;
        }
    }
    // Pairwise distinct rationals.
    std::vector<Rational> distinct_rationals(long count, long pmax = 9, long qmax = 4) {
        std::vector<Rational> out;
        while (long(out.size()) < count) {
            Rational r = rational(pmax, qmax);
            bool dup = false;
            for (const auto& v : out)
                if (v == r) dup = true;
            if (!dup) out.push_back(r);
        }
        return out;
    }
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

} // namespace gaudinlab
