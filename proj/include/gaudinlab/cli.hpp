#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "calogero.hpp"
#include "gaudin.hpp"
#include "kp.hpp"
#include "qoperator.hpp"
#include "rng.hpp"
#include "spectrum.hpp"

namespace gaudinlab {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

struct RunConfig {
    int N = 2, n = 2;
    std::vector<Rational> twist{Rational(2), Rational(-1)};
    std::vector<Rational> sites{Rational(0), Rational(1)};
    int K = 3, D = 4;
    double tol_match = 1e-9, tol_moment = 1e-8, tol_float = 1e-9, tol_dynamics = 1e-6;
    std::uint64_t seed = 1;
};

inline RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string line;
    long lineno = 0;
    auto fail = [&](const std::string& what) {
        throw ConfigError("config line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::string eq;
        if (!(ls >> eq) || eq != "=") fail("expected \"key = value...\"");
        std::vector<std::string> vals;
        for (std::string v; ls >> v;) vals.push_back(v);
        if (vals.empty()) fail("no value for key \"" + key + "\"");
        auto one = [&]() {
            if (vals.size() != 1) fail("key \"" + key + "\" takes a single value");
            return vals[0];
        };
        auto rats = [&]() {
            std::vector<Rational> out;
            for (const auto& v : vals) out.push_back(parse_rational(v));
            return out;
        };
        try {
            if (key == "N") cfg.N = std::stoi(one());
            else if (key == "n") cfg.n = std::stoi(one());
            else if (key == "twist") cfg.twist = rats();
            else if (key == "sites") cfg.sites = rats();
            else if (key == "K") cfg.K = std::stoi(one());
            else if (key == "D") cfg.D = std::stoi(one());
            else if (key == "seed") cfg.seed = std::stoull(one());
            else if (key == "tol_match") cfg.tol_match = std::stod(one());
            else if (key == "tol_moment") cfg.tol_moment = std::stod(one());
            else if (key == "tol_float") cfg.tol_float = std::stod(one());
            else if (key == "tol_dynamics") cfg.tol_dynamics = std::stod(one());
            else fail("unknown key \"" + key + "\"");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }
    if (cfg.tol_match <= 0 || cfg.tol_moment <= 0 || cfg.tol_float <= 0 || cfg.tol_dynamics <= 0)
        throw ConfigError("tolerances must be positive");
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file \"" + path + "\"");
    return parse_config(in);
}

inline GaudinModel make_model(const RunConfig& cfg) {
    try {
        return GaudinModel(cfg.N, cfg.n, cfg.twist, cfg.sites);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

inline json config_json(const RunConfig& cfg) {
    json j;
    j["N"] = cfg.N;
    j["n"] = cfg.n;
    for (const auto& k : cfg.twist) j["twist"].push_back(rational_str(k));
    for (const auto& x : cfg.sites) j["sites"].push_back(rational_str(x));
    j["K"] = cfg.K;
    j["D"] = cfg.D;
    j["seed"] = cfg.seed;
    j["tol_match"] = cfg.tol_match;
    j["tol_moment"] = cfg.tol_moment;
    j["tol_float"] = cfg.tol_float;
    j["tol_dynamics"] = cfg.tol_dynamics;
    return j;
}

namespace detail {

inline bool contains(const std::vector<Rational>& xs, const Rational& v) {
    for (const auto& x : xs)
        if (x == v) return true;
    return false;
}

inline std::vector<Rational> draw_avoiding(Rng& rng, long count, std::vector<Rational> avoid) {
    std::vector<Rational> out;
    while (long(out.size()) < count) {
        Rational r = rng.rational(9, 4);
        if (contains(avoid, r)) continue;
        avoid.push_back(r);
        out.push_back(r);
    }
    return out;
}

// values to keep spectral points away from: the exponential-part factors have
// poles at the twist eigenvalues and at zero
inline std::vector<Rational> miwa_poles(const GaudinModel& m) {
    std::vector<Rational> out{Rational(0)};
    for (const auto& k : m.twist) out.push_back(k);
    return out;
}

inline std::vector<Rational> resolvent_poles(const GaudinModel& m) {
    std::vector<Rational> out{Rational(0)};
    for (const auto& k : m.twist)
        if (k != 0) out.push_back(Rational(1) / k);
    return out;
}

inline std::string rat_param(const std::string& key, const Rational& v) {
    return key + "=" + rational_str(v);
}

inline void run_giambelli(const GaudinModel& m, Rng& rng, std::vector<CheckResult>& out) {
    Rational x = draw_avoiding(rng, 1, m.sites)[0];
    for (const Partition& lam : {Partition{1}, Partition{2, 1}, Partition{3, 1}, Partition{2, 2},
                                 Partition{4, 2}, Partition{3, 2, 1}})
        out.push_back(check_giambelli(m, lam, x));
}

inline void run_cbr(const GaudinModel& m, Rng& rng, std::vector<CheckResult>& out) {
    Rational x = draw_avoiding(rng, 1, m.sites)[0];
    for (const Partition& lam :
         {Partition{1}, Partition{2}, Partition{1, 1}, Partition{2, 1}, Partition{2, 2}})
        out.push_back(check_cbr(m, lam, x));
}

inline void run_fay(const GaudinModel& m, Rng& rng, std::vector<CheckResult>& out) {
    Rational x = draw_avoiding(rng, 1, m.sites)[0];
    for (int rep = 0; rep < 3; ++rep) {
        auto pts = draw_avoiding(rng, 5, miwa_poles(m));
        TimeSpec t = TimeSpec::zero().set(1, rng.rational()).set(2, rng.rational()).shift(
            Rational(1) / pts[4], 1);
        std::array<Rational, 4> z{pts[0], pts[1], pts[2], pts[3]};
        out.push_back(check_fay(m, x, t, z));
    }
}

inline void run_fay_general(const GaudinModel& m, Rng& rng, std::vector<CheckResult>& out) {
    Rational x = draw_avoiding(rng, 1, m.sites)[0];
    for (int rep = 0; rep < 2; ++rep) {
        auto pts = draw_avoiding(rng, 5, miwa_poles(m));
        TimeSpec t = TimeSpec::zero().set(1, rng.rational());
        std::array<Rational, 4> z{pts[0], pts[1], pts[2], pts[3]};
        out.push_back(check_fay_general(m, x, t, {pts[4]}, z));
    }
}

inline void run_rank1(const GaudinModel& m, Rng& rng, std::vector<CheckResult>& out) {
    Rational x = draw_avoiding(rng, 1, m.sites)[0];
    out.push_back(check_rank1(m, x, {0, 1, 2}, {0, 1, 2}));
}

inline void run_masterdet(const GaudinModel& m, Rng& rng, std::vector<CheckResult>& out) {
    Rational x = draw_avoiding(rng, 1, m.sites)[0];
    for (int width = 2; width <= 3; ++width) {
        auto zs = draw_avoiding(rng, width, miwa_poles(m));
        TimeSpec t = TimeSpec::zero().set(1, rng.rational());
        out.push_back(check_masterdet(m, x, t, zs));
    }
}

inline void run_commute(const GaudinModel& m, Rng& rng, std::vector<CheckResult>& out) {
    std::vector<Partition> lams{Partition{1}, Partition{2}, Partition{1, 1}, Partition{2, 1}};
    for (int rep = 0; rep < 3; ++rep) {
        auto xs = draw_avoiding(rng, 2, m.sites);
        std::vector<Mat<Rational>> ops;
        for (const auto& lam : lams) ops.push_back(t_operator(m, lam, xs[0]));
        for (const auto& lam : lams) ops.push_back(t_operator(m, lam, xs[1]));
        Mat<Rational> resid(m.dim(), m.dim());
        for (size_t i = 0; i < ops.size(); ++i)
            for (size_t j = i + 1; j < ops.size(); ++j) resid += commutator(ops[i], ops[j]).map<Rational>(
                [](const Rational& v) { return v < 0 ? -v : v; });
        out.push_back(make_result("commute", rat_param("x", xs[0]) + "," + rat_param("x'", xs[1]), resid));
    }
}

inline void run_exchange(const GaudinModel& m, Rng& rng, std::vector<CheckResult>& out) {
    for (int rep = 0; rep < 3; ++rep) {
        auto pts = draw_avoiding(rng, 4, resolvent_poles(m));
        Mat<Rational> q11 = q_operator(pts[0], pts[1], m.n, m.twist);
        Mat<Rational> q22 = q_operator(pts[2], pts[3], m.n, m.twist);
        Mat<Rational> q21 = q_operator(pts[2], pts[1], m.n, m.twist);
        Mat<Rational> q12 = q_operator(pts[0], pts[3], m.n, m.twist);
        std::string params = rat_param("z1", pts[0]) + "," + rat_param("zeta1", pts[1]) + "," +
                             rat_param("z2", pts[2]) + "," + rat_param("zeta2", pts[3]);
        out.push_back(make_result("exchange", params, q11 * q22 - q21 * q12));
        out.push_back(make_result("exchange_cycle_path", params,
                                  q11 - q_operator_cycle(pts[0], pts[1], m.n, m.twist)));
    }
}

} // namespace detail

inline const std::vector<std::string>& verify_check_names() {
    static const std::vector<std::string> names{"giambelli", "cbr", "fay", "fay_general",
                                               "rank1",     "masterdet", "commute", "exchange"};
    return names;
}

inline json cmd_verify(const RunConfig& cfg, std::vector<std::string> selected = {},
                       bool float_mode = false) {
    GaudinModel m = make_model(cfg);
    if (selected.empty()) selected = verify_check_names();
    for (const auto& name : selected)
        if (std::find(verify_check_names().begin(), verify_check_names().end(), name) ==
            verify_check_names().end())
            throw ConfigError("unknown check \"" + name + "\"");

    Rng rng(cfg.seed);
    std::vector<CheckResult> results;
    for (const auto& name : selected) {
        if (name == "giambelli") detail::run_giambelli(m, rng, results);
        else if (name == "cbr") detail::run_cbr(m, rng, results);
        else if (name == "fay") detail::run_fay(m, rng, results);
        else if (name == "fay_general") detail::run_fay_general(m, rng, results);
        else if (name == "rank1") detail::run_rank1(m, rng, results);
        else if (name == "masterdet") detail::run_masterdet(m, rng, results);
        else if (name == "commute") detail::run_commute(m, rng, results);
        else if (name == "exchange") detail::run_exchange(m, rng, results);
    }

    json rep;
    rep["config"] = config_json(cfg);
    rep["mode"] = float_mode ? "float" : "exact";
    bool all_pass = true;
    for (const auto& r : results) {
        bool pass = float_mode ? (r.residual_float <= cfg.tol_float) : r.pass;
        all_pass = all_pass && pass;
        json e;
        e["name"] = r.name;
        e["params"] = r.params;
        e["pass"] = pass;
        e["residual_entries"] = r.residual_entries;
        e["residual_float"] = r.residual_float;
        rep["checks"].push_back(e);
    }
    rep["all_pass"] = all_pass;
    return rep;
}

inline std::vector<long> parse_sector(const RunConfig& cfg, const std::string& text) {
    std::vector<long> sector;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            sector.push_back(std::stol(tok));
        } catch (const std::exception&) {
            throw ConfigError("invalid sector entry \"" + tok + "\"");
        }
    }
    if (int(sector.size()) != cfg.N) throw ConfigError("sector needs exactly N entries");
    long total = 0;
    for (long v : sector) {
        if (v < 0) throw ConfigError("sector entries must be nonnegative");
        total += v;
    }
    if (total != cfg.n) throw ConfigError("sector entries must sum to n");
    return sector;
}

namespace detail {

inline bool tuple_less(const SpectrumTuple& a, const SpectrumTuple& b) {
    for (size_t i = 0; i < a.H.size(); ++i) {
        if (a.H[i].real() != b.H[i].real()) return a.H[i].real() < b.H[i].real();
        if (a.H[i].imag() != b.H[i].imag()) return a.H[i].imag() < b.H[i].imag();
    }
    return false;
}

inline json tuple_json(const SpectrumTuple& t) {
    json e;
    for (const auto& h : t.H) e["H"].push_back({h.real(), h.imag()});
    e["residual"] = t.residual;
    return e;
}

} // namespace detail

inline json cmd_spectrum(const RunConfig& cfg, const std::vector<long>& sector) {
    GaudinModel m = make_model(cfg);
    auto direct = direct_spectrum(m, sector, unsigned(cfg.seed));
    auto classical = classical_spectrum(m, sector);
    std::sort(direct.begin(), direct.end(), detail::tuple_less);
    std::sort(classical.begin(), classical.end(), detail::tuple_less);

    MatchReport match = match_spectra(direct, classical, cfg.tol_match);
    double moment = 0, imag = 0;
    for (const auto& t : direct) {
        moment = std::max(moment, moment_defect(m, t));
        for (const auto& h : t.H) imag = std::max(imag, std::abs(h.imag()));
    }
    for (const auto& t : classical) {
        moment = std::max(moment, moment_defect(m, t));
        for (const auto& h : t.H) imag = std::max(imag, std::abs(h.imag()));
    }

    json rep;
    rep["config"] = config_json(cfg);
    rep["sector"] = sector;
    long dimension = long(sector_basis(sector, m.N, m.n).size());
    rep["dimension"] = dimension;
    rep["direct"] = json::array();
    for (const auto& t : direct) rep["direct"].push_back(detail::tuple_json(t));
    rep["classical"] = json::array();
    for (const auto& t : classical) rep["classical"].push_back(detail::tuple_json(t));
    rep["match"] = {{"ok", match.ok},
                    {"max_deviation", match.max_deviation},
                    {"matched", match.matched},
                    {"message", match.message}};
    rep["moment_defect_max"] = moment;
    rep["max_imag"] = imag;
    rep["imag_flagged"] = imag > 1e-8;
    rep["pass"] = match.ok && long(direct.size()) == dimension && moment <= cfg.tol_moment;
    return rep;
}

struct DynamicsOutput {
    json summary;
    std::string trajectory_csv;
    std::string conservation_csv;
};

inline DynamicsOutput cmd_dynamics(const RunConfig& cfg, const std::vector<long>& sector, long state,
                                   double t_max, int steps) {
    GaudinModel m = make_model(cfg);
    auto tuples = direct_spectrum(m, sector, unsigned(cfg.seed));
    std::sort(tuples.begin(), tuples.end(), detail::tuple_less);
    if (state < 0 || state >= long(tuples.size()))
        throw ConfigError("eigenstate index out of range for the sector");
    const auto& tup = tuples[size_t(state)];
    for (const auto& h : tup.H)
        if (std::abs(h.imag()) > 1e-8)
            throw std::runtime_error("cmd_dynamics: complex eigenvalue tuple");

    std::vector<double> sites_d, H;
    for (const auto& s : m.sites) sites_d.push_back(to_double(s));
    for (const auto& h : tup.H) H.push_back(h.real());
    Mat<double> X0(m.n, m.n);
    for (int i = 0; i < m.n; ++i) X0.at(i, i) = sites_d[size_t(i)];
    Mat<double> Y0 = lax_from_spectrum(sites_d, H);

    json summary;
    summary["config"] = config_json(cfg);
    summary["sector"] = sector;
    summary["eigenstate"] = state;
    summary["H"] = H;
    summary["t_max"] = t_max;
    summary["steps"] = steps;

    DynamicsOutput out;
    if (t_max == 0.0 || steps <= 0) {
        ZeroTrajectory tr{{0.0}, {std::vector<std::complex<double>>(sites_d.begin(), sites_d.end())}};
        out.trajectory_csv = trajectory_csv(tr);
        std::ostringstream cs;
        cs << "t";
        for (int j = 1; j <= m.n; ++j) cs << ",trY" << j;
        cs << "\n";
        out.conservation_csv = cs.str();
        summary["rows"] = 1;
        summary["aborted"] = false;
        summary["max_deviation"] = 0.0;
        summary["pass"] = true;
        out.summary = summary;
        return out;
    }

    ZeroTrajectory tr;
    bool aborted = false;
    std::string diagnostic;
    int rows = steps;
    try {
        tr = zero_dynamics(X0, Y0, t_max, steps);
    } catch (const std::runtime_error& e) {
        aborted = true;
        diagnostic = e.what();
        for (rows = steps - 1; rows >= 1; --rows) {
            try {
                tr = zero_dynamics(X0, Y0, t_max * rows / steps, rows);
                break;
            } catch (const std::runtime_error&) {
            }
        }
        if (rows < 1) tr = ZeroTrajectory{{0.0}, {std::vector<std::complex<double>>(sites_d.begin(),
                                                                                    sites_d.end())}};
    }
    out.trajectory_csv = trajectory_csv(tr);

    // cross-check the tau roots against the integrated k=2 flow on a coarse grid
    CMPhase<double> ph0(sites_d, std::vector<double>(H.size()));
    for (size_t i = 0; i < H.size(); ++i) ph0.p[i] = -H[i];
    double deviation = 0;
    std::ostringstream cs;
    cs << "t";
    for (int j = 1; j <= m.n; ++j) cs << ",trY" << j;
    cs << "\n";
    cs.setf(std::ios::scientific);
    cs.precision(16);
    size_t grid = tr.times.size();
    size_t stride = std::max<size_t>(1, (grid - 1) / 8);
    std::vector<size_t> probe;
    for (size_t s = 0; s + 1 < grid; s += stride) probe.push_back(s);
    probe.push_back(grid - 1);
    try {
        for (size_t idx : probe) {
            CMPhase<double> fl = tr.times[idx] == 0.0 ? ph0 : flow(ph0, 2, tr.times[idx], 512);
            for (size_t i = 0; i < fl.x.size(); ++i) {
                double best = std::numeric_limits<double>::infinity();
                for (const auto& root : tr.roots[idx])
                    best = std::min(best, std::abs(root - std::complex<double>(fl.x[i], 0)));
                deviation = std::max(deviation, best);
            }
            LaxData<double> l = lax(fl);
            cs << tr.times[idx];
            Mat<double> yk = Mat<double>::identity(m.n);
            for (int j = 1; j <= m.n; ++j) {
                yk = yk * l.Y;
                cs << "," << mat_trace(yk);
            }
            cs << "\n";
        }
    } catch (const std::runtime_error& e) {
        aborted = true;
        if (diagnostic.empty()) diagnostic = e.what();
    }
    out.conservation_csv = cs.str();

    summary["rows"] = long(tr.times.size());
    summary["aborted"] = aborted;
    if (aborted) summary["diagnostic"] = diagnostic;
    summary["max_deviation"] = deviation;
    summary["pass"] = !aborted && deviation <= cfg.tol_dynamics;
    out.summary = summary;
    return out;
}

} // namespace gaudinlab
