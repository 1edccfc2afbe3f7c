#pragma once

#include <vector>

#include "hfunction.hpp"
#include "rational.hpp"
#include "tensor.hpp"

namespace gaudinlab {

// d^n applied to prod_k w(z_k)^{alpha_k}, w(z) = det(1 - z h)^{-1}, evaluated at
// h = diag(kvals), through the closed cycle-sum formula: sum over S_n of P_sigma
// times, per cycle c, sum_k alpha_k prod_{i in c} z_k/(1 - h^{(i)} z_k).
inline Mat<Rational> cycle_sum(const std::vector<Rational>& alphas, const std::vector<Rational>& zpoints,
                               int n, const std::vector<Rational>& kvals) {
    if (alphas.size() != zpoints.size()) throw std::invalid_argument("cycle_sum: weight/point mismatch");
    long N = long(kvals.size());
    long dim = tensor_dim(N, n);
    Mat<Rational> out(dim, dim);

    // resolvent table r[k][a] = z_k / (1 - k_a z_k)
    std::vector<std::vector<Rational>> r(zpoints.size(), std::vector<Rational>(N));
    for (size_t k = 0; k < zpoints.size(); ++k)
        for (long a = 0; a < N; ++a) {
            Rational base = 1 - kvals[a] * zpoints[k];
            if (base == 0) throw PoleError("cycle_sum: resolvent pole at the twist");
            r[k][a] = zpoints[k] / base;
        }

    for (const auto& sigma : all_perms(n)) {
        auto cyc = sigma.cycles();
        Mat<Rational> p = perm_op<Rational>(sigma, N);
        for (long c = 0; c < dim; ++c) {
            auto st = decode_state(c, N, n);
            Rational w = 1;
            for (const auto& cy : cyc) {
                Rational cycsum = 0;
                for (size_t k = 0; k < zpoints.size(); ++k) {
                    Rational prod = alphas[k];
                    for (int i : cy) prod *= r[k][st[i]];
                    cycsum += prod;
                }
                w *= cycsum;
            }
            if (w == 0) continue;
            for (long rr = 0; rr < dim; ++rr)
                if (p.at(rr, c) != 0) out.at(rr, c) += p.at(rr, c) * w;
        }
    }

    Rational scal = 1;
    for (size_t k = 0; k < zpoints.size(); ++k)
        for (long a = 0; a < N; ++a) {
            Rational base = 1 - zpoints[k] * kvals[a];
            long e = alphas[k].convert_to<long>();
            if (base == 0 && e > 0) throw PoleError("cycle_sum: w(z) pole at the twist");
            scal *= rat_pow(base, -e);
        }
    return scal * out;
}

// Q(z,zeta) = (z - zeta)^{-1} d^n (w(z)/w(zeta)) at h = diag(kvals), via the
// iterated-derivative engine.
inline Mat<Rational> q_operator(const Rational& z, const Rational& zeta, int n,
                                const std::vector<Rational>& kvals) {
    if (z == zeta) throw std::invalid_argument("q_operator: z = zeta");
    HFunction<Rational> f = HFunction<Rational>::one();
    f.mul_det_factor(z, 1);
    f.mul_det_factor(zeta, -1);
    for (int i = 0; i < n; ++i) f = f.derive();
    return (Rational(1) / (z - zeta)) * f.evaluate(kvals).op;
}

// Q(z,zeta) through the cycle-sum path (independent of the derivative engine).
inline Mat<Rational> q_operator_cycle(const Rational& z, const Rational& zeta, int n,
                                      const std::vector<Rational>& kvals) {
    if (z == zeta) throw std::invalid_argument("q_operator_cycle: z = zeta");
    return (Rational(1) / (z - zeta)) * cycle_sum({Rational(1), Rational(-1)}, {z, zeta}, n, kvals);
}

// d^n E(z,zeta) with E = ((w(z)/w(zeta)) - 1)/(z - zeta); for n >= 1 the constant drops.
inline Mat<Rational> dE_operator(const Rational& z, const Rational& zeta, int n,
                                 const std::vector<Rational>& kvals) {
    Mat<Rational> q = cycle_sum({Rational(1), Rational(-1)}, {z, zeta}, n, kvals);
    if (n == 0) {
        long dim = q.rows();
        q = q - Mat<Rational>::identity(dim);
    }
    return (Rational(1) / (z - zeta)) * q;
}

} // namespace gaudinlab
