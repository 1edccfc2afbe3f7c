#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "kp.hpp"
#include "rational.hpp"
#include "tensor.hpp"

namespace gaudinlab {

// Phase-space point of the rational Calogero-Moser model with n particles.
template <class S>
struct CMPhase {
    std::vector<S> x;
    std::vector<S> p;

    CMPhase(std::vector<S> x_, std::vector<S> p_) : x(std::move(x_)), p(std::move(p_)) {
        if (x.size() != p.size()) throw std::invalid_argument("CMPhase: size mismatch");
        for (size_t i = 0; i < x.size(); ++i)
            for (size_t j = i + 1; j < x.size(); ++j)
                if (x[i] == x[j]) throw std::invalid_argument("CMPhase: coincident positions");
    }
    int n() const { return int(x.size()); }
};

template <class S>
struct LaxData {
    Mat<S> X, Y, T;
};

// Lax pair Y_{ik} = -p_i delta_{ik} - (1-delta_{ik})/(x_i-x_k) and the
// auxiliary matrix T, together with X = diag(x).
template <class S>
inline LaxData<S> lax(const CMPhase<S>& ph) {
    int n = ph.n();
    LaxData<S> d{Mat<S>(n, n), Mat<S>(n, n), Mat<S>(n, n)};
    for (int i = 0; i < n; ++i) {
        d.X.at(i, i) = ph.x[i];
        d.Y.at(i, i) = -ph.p[i];
        S diag{0};
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            S inv = S(1) / (ph.x[i] - ph.x[k]);
            d.Y.at(i, k) = -inv;
            d.T.at(i, k) = S(2) * inv * inv;
            diag += S(2) * inv * inv;
        }
        d.T.at(i, i) = -diag;
    }
    return d;
}

// Coefficients J_0..J_n of det(z - Y) = sum_k J_k z^{n-k}, by the matching sum
// sum_M prod_{(i,j) in M} x_ij^{-2} prod_{l not covered} (z + p_l).
template <class S>
inline std::vector<S> cm_char_poly(const CMPhase<S>& ph) {
    int n = ph.n();
    std::vector<S> total(n + 1, S(0));
    std::vector<int> partner(n, -1); // -1 free, -2 uncovered, else paired vertex
    // iterate matchings: the lowest free vertex is uncovered or paired upward
    auto rec = [&](auto&& self, int v, const S& weight) -> void {
        while (v < n && partner[v] != -1) ++v;
        if (v == n) {
            // prod over uncovered l of (z + p_l); poly[c] multiplies z^{deg-c}
            std::vector<S> poly{S(1)};
            for (int l = 0; l < n; ++l) {
                if (partner[l] != -2) continue;
                std::vector<S> next(poly.size() + 1, S(0));
                for (size_t c = 0; c < poly.size(); ++c) {
                    next[c] += poly[c];
                    next[c + 1] += poly[c] * ph.p[l];
                }
                poly = std::move(next);
            }
            size_t d = poly.size() - 1;
            for (size_t c = 0; c <= d; ++c) total[size_t(n) - d + c] += weight * poly[c];
            return;
        }
        partner[v] = -2;
        self(self, v + 1, weight);
        partner[v] = -1;
        for (int w = v + 1; w < n; ++w) {
            if (partner[w] != -1) continue;
            S inv = S(1) / (ph.x[v] - ph.x[w]);
            partner[v] = w;
            partner[w] = v;
            self(self, v + 1, weight * inv * inv);
            partner[v] = partner[w] = -1;
        }
    };
    rec(rec, 0, S(1));
    return total;
}

// det(z - M) coefficients c_0..c_n specialize the Faddeev-LeVerrier recursion;
// det(M) itself is (-1)^n times the constant coefficient.
template <class S>
inline S mat_det(const Mat<S>& m) {
    long n = m.rows();
    if (n == 0) return S(1);
    std::vector<S> c = char_poly_coeffs(m);
    S d = c[size_t(n)];
    return (n % 2 == 0) ? d : -d;
}

template <class S>
inline Mat<S> mat_inverse(const Mat<S>& m) {
    long n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("mat_inverse: square matrix required");
    Mat<S> a = m, inv = Mat<S>::identity(n);
    for (long col = 0; col < n; ++col) {
        long piv = -1;
        for (long r = col; r < n; ++r)
            if (!(a.at(r, col) == S(0))) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::invalid_argument("mat_inverse: singular matrix");
        if (piv != col)
            for (long c = 0; c < n; ++c) {
                std::swap(a.at(piv, c), a.at(col, c));
                std::swap(inv.at(piv, c), inv.at(col, c));
            }
        S d = S(1) / a.at(col, col);
        for (long c = 0; c < n; ++c) {
            a.at(col, c) = d * a.at(col, c);
            inv.at(col, c) = d * inv.at(col, c);
        }
        for (long r = 0; r < n; ++r) {
            if (r == col) continue;
            S f = a.at(r, col);
            if (f == S(0)) continue;
            for (long c = 0; c < n; ++c) {
                a.at(r, c) -= f * a.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

template <class S>
inline S mat_trace(const Mat<S>& m) {
    S t{0};
    for (long i = 0; i < m.rows(); ++i) t += m.at(i, i);
    return t;
}

template <class S>
inline Mat<S> mat_pow(const Mat<S>& m, int e) {
    Mat<S> r = Mat<S>::identity(m.rows());
    for (int i = 0; i < e; ++i) r = r * m;
    return r;
}

// --- hierarchy flows ---------------------------------------------------------

// Hamilton's equations for H_k = tr Y^k:
//   d x_i/d t_k = -k (Y^{k-1})_{ii},   d p_i/d t_k = -(k/2)[(T Y^{k-1})_{ii} - (Y^{k-1} T)_{ii}].
template <class S>
inline CMPhase<S> hamilton_rhs(const CMPhase<S>& ph, int k) {
    LaxData<S> d = lax(ph);
    Mat<S> yk = mat_pow(d.Y, k - 1);
    Mat<S> ty = d.T * yk, yt = yk * d.T;
    std::vector<S> dx(ph.x.size()), dp(ph.x.size());
    for (int i = 0; i < ph.n(); ++i) {
        dx[i] = S(-k) * yk.at(i, i);
        dp[i] = S(1) / S(2) * S(-k) * (ty.at(i, i) - yt.at(i, i));
    }
    CMPhase<S> out = ph;
    out.x = std::move(dx);
    out.p = std::move(dp);
    return out;
}

inline double min_separation(const std::vector<double>& x) {
    double m = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j) m = std::min(m, std::abs(x[i] - x[j]));
    return m;
}

// Integrate the t_k flow over [0, t_total]; the step is halved until the
// conserved quantities tr Y^j drift by less than `drift_tol` over the window.
inline CMPhase<double> flow(const CMPhase<double>& ph0, int k, double t_total, int steps = 256,
                            double drift_tol = 1e-10, double sep_guard = 1e-6) {
    int n = ph0.n();
    auto conserved = [&](const CMPhase<double>& ph) {
        LaxData<double> d = lax(ph);
        std::vector<double> h;
        Mat<double> acc = Mat<double>::identity(n);
        for (int j = 1; j <= n; ++j) {
            acc = acc * d.Y;
            h.push_back(mat_trace(acc));
        }
        return h;
    };
    auto rhs = [&](const std::vector<double>& s, std::vector<double>& dsdt, double) {
        std::vector<double> x(s.begin(), s.begin() + n), p(s.begin() + n, s.end());
        if (min_separation(x) < sep_guard)
            throw std::runtime_error("flow: particle collision (separation below guard)");
        CMPhase<double> d = hamilton_rhs(CMPhase<double>(x, p), k);
        for (int i = 0; i < n; ++i) {
            dsdt[i] = d.x[i];
            dsdt[n + i] = d.p[i];
        }
    };
    std::vector<double> h0 = conserved(ph0);
    for (int attempt = 0; attempt < 16; ++attempt, steps *= 2) {
        std::vector<double> s(2 * n);
        for (int i = 0; i < n; ++i) {
            s[i] = ph0.x[i];
            s[n + i] = ph0.p[i];
        }
        boost::numeric::odeint::runge_kutta_fehlberg78<std::vector<double>> stepper;
        double dt = t_total / steps;
        for (int step = 0; step < steps; ++step) stepper.do_step(rhs, s, step * dt, dt);
        CMPhase<double> out(std::vector<double>(s.begin(), s.begin() + n),
                            std::vector<double>(s.begin() + n, s.end()));
        std::vector<double> h1 = conserved(out);
        double drift = 0;
        for (int j = 0; j < n; ++j) drift = std::max(drift, std::abs(h1[j] - h0[j]));
        if (drift < drift_tol) return out;
    }
    throw std::runtime_error("flow: conserved-quantity drift did not reach tolerance");
}

// --- tau-function and Baker-Akhiezer data ------------------------------------

// Lax matrix built from quantum data: X_0 = diag(sites), diagonal of Y_0 the
// Hamiltonian eigenvalues H_i, off-diagonal (Y_0)_{ik} = 1/(x_k - x_i).
template <class S>
inline Mat<S> lax_from_spectrum(const std::vector<S>& sites, const std::vector<S>& H) {
    if (sites.size() != H.size()) throw std::invalid_argument("lax_from_spectrum: size mismatch");
    int n = int(sites.size());
    Mat<S> y(n, n);
    for (int i = 0; i < n; ++i) {
        y.at(i, i) = H[i];
        for (int j = 0; j < n; ++j)
            if (j != i) y.at(i, j) = S(1) / (sites[j] - sites[i]);
    }
    return y;
}

// det(x - X_0 + sum_k k t_k Y_0^{k-1}); the full tau-function carries an extra
// scalar factor exp(sum_k t_k tr h^k) shared with the master T-operator tag.
template <class S>
inline S tau_det(const S& x, const std::map<int, Rational>& times, const Mat<S>& X0,
                 const Mat<S>& Y0) {
    long n = X0.rows();
    Mat<S> m = x * Mat<S>::identity(n) - X0;
    for (const auto& [k, v] : times) {
        if (k < 1) throw std::invalid_argument("tau_det: time index");
        m += (scalar_from_rational<S>(v) * S(k)) * mat_pow(Y0, k - 1);
    }
    return mat_det(m);
}

// Rational prefactor z^{-N} det(z - h) of the stationary wave function.
template <class S>
inline S ba_prefactor(const S& z, const std::vector<Rational>& twist) {
    S out{1};
    for (const auto& k : twist) out = out * (S(1) - scalar_from_rational<S>(k) / z);
    return out;
}

// Rational parts of the stationary Baker-Akhiezer pair, each computed two ways:
// through the resolvent bilinear forms and through the determinant ratios.
template <class S>
struct BAData {
    S psi_red, psi_star_red; // 1 -+ 1^t (x-X)^{-1} (z-Y)^{-1} 1 forms
    S psi_alt, psi_star_alt; // det(x - X -+ (z-Y)^{-1}) / det(x - X) forms
};

template <class S>
inline BAData<S> ba_functions(const S& x, const S& z, const Mat<S>& X0, const Mat<S>& Y0) {
    long n = X0.rows();
    Mat<S> id = Mat<S>::identity(n);
    Mat<S> A = mat_inverse(x * id - X0);
    Mat<S> Rz = mat_inverse(z * id - Y0);
    S bilin_a{0}, bilin_b{0};
    Mat<S> AR = A * Rz, RA = Rz * A;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            bilin_a += AR.at(i, j);
            bilin_b += RA.at(i, j);
        }
    S dx = mat_det(x * id - X0);
    BAData<S> out;
    out.psi_red = S(1) - bilin_a;
    out.psi_star_red = S(1) + bilin_b;
    out.psi_alt = mat_det(x * id - X0 - Rz) / dx;
    out.psi_star_alt = mat_det(x * id - X0 + Rz) / dx;
    return out;
}

// res_inf(psi psi* z^m dz) from the z^{-1}-series of the resolvent: with
// a_j = 1^t A Y^j 1 and b_j = 1^t Y^j A 1, A = (x-X_0)^{-1}, the residue is
// b_m - a_m - sum_{j+l=m-1} a_j b_l.
template <class S>
inline S ba_residue(const S& x, const Mat<S>& X0, const Mat<S>& Y0, int m) {
    long n = X0.rows();
    Mat<S> A = mat_inverse(x * Mat<S>::identity(n) - X0);
    std::vector<S> a, b;
    Mat<S> yk = Mat<S>::identity(n);
    for (int j = 0; j <= m; ++j) {
        Mat<S> ay = A * yk, ya = yk * A;
        S sa{0}, sb{0};
        for (long r = 0; r < n; ++r)
            for (long c = 0; c < n; ++c) {
                sa += ay.at(r, c);
                sb += ya.at(r, c);
            }
        a.push_back(sa);
        b.push_back(sb);
        yk = yk * Y0;
    }
    S res = b[m] - a[m];
    for (int j = 0; j + 1 <= m; ++j) res -= a[j] * b[m - 1 - j];
    return res;
}

// d_{t_m} d_{t_1} log tau at t = 0, in closed form: -m tr(A Y_0^{m-1} A).
template <class S>
inline S tau_log_mixed(const S& x, const Mat<S>& X0, const Mat<S>& Y0, int m) {
    long n = X0.rows();
    Mat<S> A = mat_inverse(x * Mat<S>::identity(n) - X0);
    return S(-m) * mat_trace(A * mat_pow(Y0, m - 1) * A);
}

// --- spectral cross-checks ---------------------------------------------------

// det(z - Y_0) against prod_a (z - k_a)^{m_a}, coefficient by coefficient.
inline CheckResult lax_spectrum_check(const Mat<Rational>& Y0, const std::vector<Rational>& kvals,
                                      const std::vector<long>& mult) {
    Stopwatch sw;
    long n = Y0.rows();
    long total = 0;
    for (long m : mult) total += m;
    if (total != n) throw std::invalid_argument("lax_spectrum_check: multiplicities must sum to n");
    std::vector<Rational> lhs = char_poly_coeffs(Y0);
    std::vector<Rational> rhs{1};
    for (size_t a = 0; a < kvals.size(); ++a)
        for (long r = 0; r < mult[a]; ++r) {
            std::vector<Rational> next(rhs.size() + 1, Rational(0));
            for (size_t c = 0; c < rhs.size(); ++c) {
                next[c] += rhs[c];
                next[c + 1] -= rhs[c] * kvals[a];
            }
            rhs = std::move(next);
        }
    Mat<Rational> resid(1, n + 1);
    for (long c = 0; c <= n; ++c) resid.at(0, c) = lhs[size_t(c)] - rhs[size_t(c)];
    CheckResult r = make_result("lax_spectrum", "n=" + std::to_string(n), resid);
    r.elapsed = sw.seconds();
    return r;
}

inline double lax_spectrum_residual(const Mat<double>& Y0, const std::vector<double>& kvals,
                                    const std::vector<long>& mult) {
    long n = Y0.rows();
    std::vector<double> lhs = char_poly_coeffs(Y0);
    std::vector<double> rhs{1.0};
    for (size_t a = 0; a < kvals.size(); ++a)
        for (long r = 0; r < mult[a]; ++r) {
            std::vector<double> next(rhs.size() + 1, 0.0);
            for (size_t c = 0; c < rhs.size(); ++c) {
                next[c] += rhs[c];
                next[c + 1] -= rhs[c] * kvals[a];
            }
            rhs = std::move(next);
        }
    double mx = 0;
    for (long c = 0; c <= n; ++c) mx = std::max(mx, std::abs(lhs[size_t(c)] - rhs[size_t(c)]));
    return mx;
}

// --- zero dynamics -----------------------------------------------------------

struct ZeroTrajectory {
    std::vector<double> times;
    std::vector<std::vector<std::complex<double>>> roots; // one row per time
};

// Roots of tau over the t_2 flow: eigenvalues of X_0 - 2 t_2 Y_0, tracked by
// nearest-neighbor continuation.
inline ZeroTrajectory zero_dynamics(const Mat<double>& X0, const Mat<double>& Y0, double t_max,
                                    int steps, double sep_guard = 1e-6) {
    long n = X0.rows();
    Eigen::MatrixXd x0(n, n), y0(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            x0(i, j) = X0.at(i, j);
            y0(i, j) = Y0.at(i, j);
        }
    ZeroTrajectory tr;
    for (int s = 0; s <= steps; ++s) {
        double t2 = t_max * s / steps;
        Eigen::MatrixXd a = x0 - 2.0 * t2 * y0;
        Eigen::EigenSolver<Eigen::MatrixXd> es(a);
        std::vector<std::complex<double>> roots(es.eigenvalues().data(),
                                                es.eigenvalues().data() + n);
        for (size_t i = 0; i < roots.size(); ++i)
            for (size_t j = i + 1; j < roots.size(); ++j)
                if (std::abs(roots[i] - roots[j]) < sep_guard)
                    throw std::runtime_error("zero_dynamics: root collision in window");
        if (!tr.roots.empty()) {
            // continuation: match each previous root to its nearest new root
            const auto& prev = tr.roots.back();
            std::vector<std::complex<double>> ordered(roots.size());
            std::vector<bool> used(roots.size(), false);
            for (size_t i = 0; i < prev.size(); ++i) {
                size_t best = 0;
                double bd = std::numeric_limits<double>::infinity();
                for (size_t j = 0; j < roots.size(); ++j) {
                    if (used[j]) continue;
                    double d = std::abs(prev[i] - roots[j]);
                    if (d < bd) {
                        bd = d;
                        best = j;
                    }
                }
                used[best] = true;
                ordered[i] = roots[best];
            }
            roots = std::move(ordered);
        }
        tr.times.push_back(t2);
        tr.roots.push_back(std::move(roots));
    }
    return tr;
}

inline std::string trajectory_csv(const ZeroTrajectory& tr) {
    std::ostringstream os;
    os << "t";
    size_t nroots = tr.roots.empty() ? 0 : tr.roots[0].size();
    for (size_t i = 0; i < nroots; ++i)
        os << ",root" << (i + 1) << "_re,root" << (i + 1) << "_im";
    os << "\n";
    os.setf(std::ios::scientific);
    os.precision(16);
    for (size_t s = 0; s < tr.times.size(); ++s) {
        os << tr.times[s];
        for (const auto& rt : tr.roots[s]) os << "," << rt.real() << "," << rt.imag();
        os << "\n";
    }
    return os.str();
}

} // namespace gaudinlab
