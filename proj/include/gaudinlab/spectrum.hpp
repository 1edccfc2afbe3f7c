#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "calogero.hpp"
#include "gaudin.hpp"
#include "tensor.hpp"

namespace gaudinlab {

using Cplx = std::complex<double>;

// Joint eigenvalue tuple (H_1(v), ..., H_n(v)) on a common eigenvector, with
// the residual of whichever pipeline produced it.
struct SpectrumTuple {
    std::vector<long> sector;
    std::vector<Cplx> H;
    std::string source; // "direct" | "classical"
    double residual = 0;
};

inline double tuple_distance(const SpectrumTuple& a, const SpectrumTuple& b) {
    double d = 0;
    for (size_t i = 0; i < a.H.size(); ++i) d = std::max(d, std::abs(a.H[i] - b.H[i]));
    return d;
}

// --- direct simultaneous diagonalization -------------------------------------

namespace detail {

// One cyclic sweep set of Jacobi rotations simultaneously reducing the
// off-diagonal mass of a commuting family of real symmetric matrices.
inline void joint_jacobi(std::vector<Eigen::MatrixXd>& mats, Eigen::MatrixXd& V, int sweeps = 50,
                         double tol = 1e-13) {
    long d = mats[0].rows();
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double off = 0;
        for (const auto& a : mats)
            for (long p = 0; p < d; ++p)
                for (long q = p + 1; q < d; ++q) off += a(p, q) * a(p, q);
        if (off < tol * tol) return;
        for (long p = 0; p < d; ++p)
            for (long q = p + 1; q < d; ++q) {
                // closed-form angle maximizing the summed diagonal contrast
                Eigen::Matrix2d G = Eigen::Matrix2d::Zero();
                for (const auto& a : mats) {
                    Eigen::Vector2d g(a(p, p) - a(q, q), 2 * a(p, q));
                    G += g * g.transpose();
                }
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(G);
                Eigen::Vector2d v = es.eigenvectors().col(1);
                if (v(0) < 0) v = -v;
                double c = std::sqrt((v(0) + 1.0) / 2.0);
                double s = v(1) / (2.0 * c);
                double norm = std::sqrt(c * c + s * s);
                c /= norm;
                s /= norm;
                if (std::abs(s) < 1e-16) continue;
                // Eigen's (c,s) rotation is the transpose of the plane rotation by theta
                Eigen::JacobiRotation<double> rot(c, -s);
                for (auto& a : mats) {
                    a.applyOnTheLeft(p, q, rot.adjoint());
                    a.applyOnTheRight(p, q, rot);
                }
                V.applyOnTheRight(p, q, rot);
            }
    }
}

} // namespace detail

// Joint spectrum of the commuting H_1..H_n on a weight sector, by diagonalizing
// a random linear combination and reading off Rayleigh quotients.
inline std::vector<SpectrumTuple> direct_spectrum(const GaudinModel& m, const std::vector<long>& sector,
                                                  unsigned seed = 1) {
    std::vector<long> basis = sector_basis(sector, m.N, m.n);
    long d = long(basis.size());
    if (d == 0) return {};

    std::vector<Eigen::MatrixXd> hs;
    for (int i = 1; i <= m.n; ++i) {
        Mat<Rational> full = hamiltonian(m, i);
        Eigen::MatrixXd block(d, d);
        for (long r = 0; r < d; ++r)
            for (long c = 0; c < d; ++c) block(r, c) = to_double(full.at(basis[r], basis[c]));
        hs.push_back(block);
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd vecs;
    bool resolved = false;
    for (int attempt = 0; attempt < 5 && !resolved; ++attempt) {
        Eigen::MatrixXd comb = Eigen::MatrixXd::Zero(d, d);
        for (const auto& h : hs) comb += dist(rng) * h;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(comb);
        double gap = std::numeric_limits<double>::infinity();
        for (long k = 0; k + 1 < d; ++k)
            gap = std::min(gap, es.eigenvalues()(k + 1) - es.eigenvalues()(k));
        if (d > 1 && gap < 1e-8) continue;
        vecs = es.eigenvectors();
        resolved = true;
    }
    if (!resolved) {
        // fallback: simultaneous Jacobi diagonalization of the family
        std::vector<Eigen::MatrixXd> work = hs;
        vecs = Eigen::MatrixXd::Identity(d, d);
        detail::joint_jacobi(work, vecs);
    }

    std::vector<SpectrumTuple> out;
    for (long k = 0; k < d; ++k) {
        Eigen::VectorXd v = vecs.col(k);
        v.normalize();
        SpectrumTuple t;
        t.sector = sector;
        t.source = "direct";
        for (const auto& h : hs) {
            double lam = v.dot(h * v);
            t.H.push_back(Cplx(lam, 0));
            t.residual = std::max(t.residual, (h * v - lam * v).norm());
        }
        out.push_back(std::move(t));
    }
    return out;
}

// --- classical route ----------------------------------------------------------

// prod_a (z - k_a)^{m_a} coefficients, highest power first.
inline std::vector<double> sector_target_poly(const GaudinModel& m, const std::vector<long>& sector) {
    std::vector<double> rhs{1.0};
    for (int a = 0; a < m.N; ++a)
        for (long r = 0; r < sector[size_t(a)]; ++r) {
            std::vector<double> next(rhs.size() + 1, 0.0);
            for (size_t c = 0; c < rhs.size(); ++c) {
                next[c] += rhs[c];
                next[c + 1] -= rhs[c] * to_double(m.twist[size_t(a)]);
            }
            rhs = std::move(next);
        }
    return rhs;
}

namespace detail {

// Residual of the matching-sum system with the pair couplings scaled by g
// (sites divided by sqrt(g), so each x_ij^{-2} weight picks up a factor g).
inline std::vector<Cplx> classical_residual(const GaudinModel& m, const std::vector<double>& target,
                                            const std::vector<Cplx>& H, double g = 1.0) {
    double scale = 1.0 / std::sqrt(g);
    std::vector<Cplx> x, p;
    for (const auto& s : m.sites) x.push_back(Cplx(to_double(s) * scale, 0));
    for (const auto& h : H) p.push_back(-h);
    std::vector<Cplx> lhs = cm_char_poly(CMPhase<Cplx>(x, p));
    std::vector<Cplx> f;
    for (size_t c = 1; c < lhs.size(); ++c) f.push_back(lhs[c] - target[c]);
    return f;
}

inline double resid_norm(const std::vector<Cplx>& f) {
    double s = 0;
    for (const auto& v : f) s = std::max(s, std::abs(v));
    return s;
}

// multiset assignments a: sites -> colors with the prescribed color counts
inline void assignments_rec(std::vector<long> remaining, std::vector<int>& cur, size_t pos,
                            std::vector<std::vector<int>>& out) {
    if (pos == cur.size()) {
        out.push_back(cur);
        return;
    }
    for (size_t a = 0; a < remaining.size(); ++a) {
        if (remaining[a] == 0) continue;
        remaining[a] -= 1;
        cur[pos] = int(a);
        assignments_rec(remaining, cur, pos + 1, out);
        remaining[a] += 1;
    }
}

inline bool newton_polish(const GaudinModel& m, const std::vector<double>& target, std::vector<Cplx>& H,
                          double g, double tol, int max_iter) {
    std::vector<Cplx> f = classical_residual(m, target, H, g);
    double fn = resid_norm(f);
    if (fn < tol) return true;
    long n = m.n;
    for (int iter = 0; iter < max_iter; ++iter) {
        // central-difference Jacobian of the coefficient system
        Eigen::MatrixXcd J(n, n);
        double h = 1e-7;
        for (long l = 0; l < n; ++l) {
            auto hp = H, hm = H;
            hp[size_t(l)] += h;
            hm[size_t(l)] -= h;
            auto fp = classical_residual(m, target, hp, g);
            auto fm = classical_residual(m, target, hm, g);
            for (long r = 0; r < n; ++r) J(r, l) = (fp[size_t(r)] - fm[size_t(r)]) / (2 * h);
        }
        Eigen::VectorXcd fv(n);
        for (long r = 0; r < n; ++r) fv(r) = f[size_t(r)];
        Eigen::VectorXcd step = J.partialPivLu().solve(-fv);
        double damp = 1.0;
        std::vector<Cplx> best = H;
        double best_norm = fn;
        for (int half = 0; half < 30; ++half, damp /= 2) {
            auto trial = H;
            for (long l = 0; l < n; ++l) trial[size_t(l)] += damp * step(l);
            auto ft = classical_residual(m, target, trial, g);
            double tn = resid_norm(ft);
            if (tn < best_norm) {
                best = trial;
                best_norm = tn;
                break;
            }
        }
        if (best_norm >= fn) return false; // no progress
        H = best;
        f = classical_residual(m, target, H, g);
        fn = resid_norm(f);
        if (fn < tol) return true;
    }
    return false;
}

} // namespace detail

// The physical branch of the matching-sum system: each cluster assignment
// H_i = k_{a_i} solves the decoupled system exactly, and the spectrum is its
// analytic continuation as the pair couplings are switched on.  The system at
// full coupling has extra solutions (its Bezout count exceeds the sector
// dimension); continuation in the coupling keeps only the branch reached by
// the quantum spectrum.
inline std::vector<SpectrumTuple> classical_spectrum(const GaudinModel& m, const std::vector<long>& sector,
                                                     double newton_tol = 1e-12, int max_iter = 100,
                                                     double dedupe_tol = 1e-8) {
    std::vector<long> basis_check = sector_basis(sector, m.N, m.n); // validates the label
    (void)basis_check;
    std::vector<double> target = sector_target_poly(m, sector);

    std::vector<std::vector<int>> seeds;
    {
        std::vector<int> cur(size_t(m.n), 0);
        detail::assignments_rec(sector, cur, 0, seeds);
    }

    std::vector<SpectrumTuple> out;
    for (const auto& assign : seeds) {
        // assignments with repeated colors are branch points of the decoupled
        // system; the intra-cluster correction is exactly linear in sqrt(g)
        // and selects the physical sheet
        double g0 = 1e-4;
        std::vector<Cplx> H;
        for (size_t i = 0; i < assign.size(); ++i) {
            Cplx h(to_double(m.twist[size_t(assign[i])]), 0);
            for (size_t j = 0; j < assign.size(); ++j)
                if (j != i && assign[j] == assign[i])
                    h += std::sqrt(g0) / Cplx(to_double(m.sites[i] - m.sites[j]), 0);
            H.push_back(h);
        }

        // The branch is analytic in s = sqrt(g), and near the decoupled limit
        // the sheets above a repeated-color seed separate only like s, so the
        // continuation runs in s with steps proportional to the current s and
        // rejects jumps far beyond the branch slope: a large step can land
        // Newton in the basin of one of the extra (non-physical) solutions
        // even though it converges cleanly.
        const double step_cap = 1.0 / 128;
        double s = std::sqrt(g0);
        double step = std::min(step_cap, s / 2);
        bool converged = detail::newton_polish(m, target, H, g0, newton_tol, max_iter);
        while (converged && s < 1.0) {
            double sn = std::min(1.0, s + step);
            auto trial = H;
            bool ok = detail::newton_polish(m, target, trial, sn * sn, newton_tol, max_iter);
            if (ok) {
                double jump = 0;
                for (size_t l = 0; l < H.size(); ++l) jump = std::max(jump, std::abs(trial[l] - H[l]));
                ok = jump <= 20 * (sn - s);
            }
            if (ok) {
                H = trial;
                s = sn;
                step = std::min({step * 2, step_cap, s / 2});
            } else {
                step /= 2;
                if (step < 1e-10) {
                    converged = false; // logged as a skipped seed by the caller
                    break;
                }
            }
        }
        if (!converged) continue;

        SpectrumTuple t;
        t.sector = sector;
        t.H = H;
        t.source = "classical";
        t.residual = detail::resid_norm(detail::classical_residual(m, target, H));
        bool dup = false;
        for (const auto& prev : out)
            if (tuple_distance(prev, t) < dedupe_tol) dup = true;
        if (!dup) out.push_back(std::move(t));
    }
    return out;
}

// --- matching -----------------------------------------------------------------

struct MatchReport {
    bool ok = false;
    double max_deviation = 0;
    long matched = 0;
    std::string message;
};

// Optimal assignment between the two tuple lists, by exhaustive permutation.
inline MatchReport match_spectra(const std::vector<SpectrumTuple>& direct,
                                 const std::vector<SpectrumTuple>& classical, double tol) {
    MatchReport rep;
    if (direct.empty() || classical.empty()) {
        rep.message = "empty spectrum list";
        return rep;
    }
    if (direct.size() != classical.size()) {
        std::ostringstream os;
        os << "cardinality mismatch: " << direct.size() << " direct vs " << classical.size()
           << " classical";
        rep.message = os.str();
        return rep;
    }
    size_t d = direct.size();
    std::vector<size_t> perm(d);
    for (size_t i = 0; i < d; ++i) perm[i] = i;
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0;
        for (size_t i = 0; i < d; ++i)
            worst = std::max(worst, tuple_distance(direct[i], classical[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    rep.max_deviation = best;
    rep.matched = long(d);
    rep.ok = best <= tol;
    if (!rep.ok) rep.message = "deviation above tolerance";
    return rep;
}

// Moment conditions tr Y_0^j = sum_a m_a k_a^j for a tuple, max defect over j <= n.
inline double moment_defect(const GaudinModel& m, const SpectrumTuple& t) {
    std::vector<Cplx> sites, H;
    for (const auto& s : m.sites) sites.push_back(Cplx(to_double(s), 0));
    for (const auto& h : t.H) H.push_back(h);
    Mat<Cplx> y = lax_from_spectrum(sites, H);
    Mat<Cplx> yk = Mat<Cplx>::identity(m.n);
    double defect = 0;
    for (int j = 1; j <= m.n; ++j) {
        yk = yk * y;
        Cplx target{0};
        for (int a = 0; a < m.N; ++a)
            target += double(t.sector[size_t(a)]) * std::pow(Cplx(to_double(m.twist[size_t(a)]), 0), j);
        defect = std::max(defect, std::abs(mat_trace(yk) - target));
    }
    return defect;
}

} // namespace gaudinlab
