// Command-line front end: configuration parsing, the reference fixture,
// verification commands, and JSON reports on stdout or --out.
//
// Exit codes: 0 success, 2 incidence failure, 3 numeric tolerance failure,
// 4 malformed input.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "itheta/errfn.hpp"
#include "itheta/fixtures.hpp"
#include "itheta/quadrature.hpp"
#include "itheta/theta.hpp"

using nlohmann::json;
using namespace itheta;

namespace {

constexpr const char* kVersion = "0.1.0";
unsigned g_jobs = 1;

struct RunConfig {
    int n = 0;
    std::vector<double> gram;
    Vec c1, c2, c1p, c2p;
    std::vector<double> lattice_basis;
    bool cosets_all = true;
    std::vector<Coset> coset_list;  // when not "all"
    TauPoint tau{0.0, 1.0};
    double qmax = 4.0;
    double tol_series = 1e-6, tol_quadrature = 1e-9, tol_special = 1e-12;
    uint64_t seed = 1;
    json echo;
};

Rational parse_rational(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<int64_t>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            return Rational(std::stoll(s.substr(0, slash)),
                            std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw input_error("cannot parse rational '" + s + "'");
        }
    }
    throw input_error("rationals must be integers or 'p/q' strings");
}

std::vector<double> parse_matrix(const json& j, int& n, const char* what) {
    if (!j.is_array() || j.empty())
        throw input_error(std::string(what) + " must be a nonempty array of rows");
    n = static_cast<int>(j.size());
    std::vector<double> m;
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw input_error(std::string(what) + " must be square");
        for (const auto& v : row) m.push_back(v.get<double>());
    }
    return m;
}

Vec parse_vec(const json& j, int n, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw input_error(std::string(what) + " must be a length-n array");
    Vec v;
    for (const auto& x : j) v.push_back(x.get<double>());
    return v;
}

RunConfig parse_config(const json& j) {
    RunConfig c;
    c.echo = j;
    try {
        c.gram = parse_matrix(j.at("gram"), c.n, "gram");
        const json& cc = j.at("c");
        c.c1 = parse_vec(cc.at("c1"), c.n, "c1");
        c.c2 = parse_vec(cc.at("c2"), c.n, "c2");
        c.c1p = parse_vec(cc.at("c1p"), c.n, "c1p");
        c.c2p = parse_vec(cc.at("c2p"), c.n, "c2p");
        if (j.contains("lattice_basis")) {
            int nb = 0;
            c.lattice_basis = parse_matrix(j.at("lattice_basis"), nb, "lattice_basis");
            if (nb != c.n) throw input_error("lattice_basis dimension mismatch");
        }
        if (j.contains("cosets") && j.at("cosets").is_array()) {
            c.cosets_all = false;
            for (const auto& row : j.at("cosets")) {
                Coset mu;
                for (const auto& r : row) mu.mu.push_back(parse_rational(r).mod1());
                if (static_cast<int>(mu.mu.size()) != c.n)
                    throw input_error("coset length mismatch");
                c.coset_list.push_back(std::move(mu));
            }
        }
        if (j.contains("tau")) {
            c.tau.u = j.at("tau").at("re").get<double>();
            c.tau.v = j.at("tau").at("im").get<double>();
            if (!(c.tau.v > 0)) throw input_error("tau.im must be positive");
        }
        if (j.contains("qmax")) c.qmax = j.at("qmax").get<double>();
        if (j.contains("tol")) {
            const json& t = j.at("tol");
            if (t.contains("series")) c.tol_series = t.at("series").get<double>();
            if (t.contains("quadrature"))
                c.tol_quadrature = t.at("quadrature").get<double>();
            if (t.contains("special")) c.tol_special = t.at("special").get<double>();
        }
        if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
    } catch (const json::exception& e) {
        throw input_error(std::string("config: ") + e.what());
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    json j;
    try {
        if (path == "-") {
            std::cin >> j;
        } else {
            std::ifstream in(path);
            if (!in) throw input_error("cannot open config file '" + path + "'");
            in >> j;
        }
    } catch (const json::exception& e) {
        throw input_error(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

FrameConfig frame_config(const RunConfig& c) {
    return FrameConfig(InnerProductSpace(c.n, c.gram), c.c1, c.c2, c.c1p, c.c2p);
}

EvenLattice lattice(const RunConfig& c) {
    if (c.lattice_basis.empty())
        throw input_error("this command needs a lattice_basis");
    return EvenLattice(InnerProductSpace(c.n, c.gram), c.lattice_basis);
}

std::vector<Coset> cosets_for(const RunConfig& c, const EvenLattice& L) {
    return c.cosets_all ? discriminant_group(L) : c.coset_list;
}

json coset_json(const Coset& mu) {
    json a = json::array();
    for (const Rational& r : mu.mu) a.push_back(r.str());
    return a;
}

void emit(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << report.dump(2) << "\n";
    }
}

json base_report(const char* command, const RunConfig& c) {
    json r;
    r["command"] = command;
    r["inputs"] = c.echo;
    r["seed"] = c.seed;
    r["tool_version"] = kVersion;
    return r;
}

int cmd_validate(const RunConfig& c, const std::string& out) {
    FrameConfig cfg = frame_config(c);
    const IncidenceReport& rep = cfg.validation;
    json r = base_report("validate", c);
    r["outputs"] = {
        {"deltas", rep.deltas},
        {"projections", rep.projections},
        {"delta4", rep.delta4},
        {"all_timelike", rep.all_timelike},
        {"same_component", rep.same_component},
        {"pass", rep.pass},
    };
    emit(r, out);
    return rep.pass ? 0 : 2;
}

int cmd_theta(const RunConfig& c, const std::string& mode, const std::string& out) {
    FrameConfig cfg = FrameConfig::checked(InnerProductSpace(c.n, c.gram), c.c1,
                                           c.c2, c.c1p, c.c2p);
    EvenLattice L = lattice(c);
    json r = base_report("theta", c);
    r["outputs"]["mode"] = mode;
    json per = json::array();
    for (const Coset& mu : cosets_for(c, L)) {
        json entry;
        entry["coset"] = coset_json(mu);
        if (mode == "hol") {
            QSeries s = holomorphic_part(L, mu, cfg, c.qmax);
            json terms = json::array();
            for (const auto& [e, coeff] : s.terms)
                terms.push_back(json::array({e.str(), coeff}));
            entry["guarantee"] = s.guarantee;
            entry["terms"] = terms;
        } else {
            CompletedValue val = completed_theta(L, mu, cfg, c.tau, c.qmax,
                                                 {c.tol_special, 400});
            entry["value"] = {{"re", val.value.real()}, {"im", val.value.imag()}};
            entry["tail_bound"] = val.tail;
            entry["terms_used"] = val.terms;
            if (val.tail > c.tol_series)
                throw accuracy_error("completed theta tail bound above tolerance",
                                     std::abs(val.value), val.tail);
        }
        per.push_back(std::move(entry));
    }
    r["outputs"]["cosets"] = per;
    emit(r, out);
    return 0;
}

int cmd_efun(const std::string& fn, const std::vector<double>& args,
             const std::optional<RunConfig>& c, const std::string& xspec,
             const std::string& out) {
    json r;
    r["command"] = "efun";
    r["tool_version"] = kVersion;
    r["inputs"] = {{"fn", fn}, {"args", args}};
    double value = 0.0, bound = 1e-15;
    auto need = [&](size_t k) {
        if (args.size() != k)
            throw input_error("efun " + fn + " expects " + std::to_string(k) +
                              " numeric arguments");
    };
    if (fn == "e1") {
        need(1);
        value = e1(args[0]);
    } else if (fn == "m1") {
        need(1);
        value = m1(args[0]);
    } else if (fn == "e2") {
        need(2);
        value = e2(args[0], args[1]);
        bound = 1e-12;
    } else if (fn == "tilde_e2") {
        need(2);
        value = tilde_e2(args[0], args[1]);
        bound = 1e-12;
    } else if (fn == "e2_flat") {
        need(3);
        value = e2_flat(args[0], args[1], args[2]);
        bound = 1e-11;
    } else if (fn == "e2_boosted") {
        if (!c) throw input_error("efun e2_boosted needs --config for C1, C2");
        if (xspec.empty()) throw input_error("efun e2_boosted needs --x");
        Vec x;
        std::stringstream ss(xspec);
        std::string tok;
        while (std::getline(ss, tok, ',')) x.push_back(std::stod(tok));
        if (static_cast<int>(x.size()) != c->n)
            throw input_error("--x must have n components");
        value = e2_boosted(InnerProductSpace(c->n, c->gram), c->c1, c->c2, x);
        r["inputs"]["x"] = x;
        bound = 1e-11;
    } else {
        throw input_error("unknown efun '" + fn + "'");
    }
    r["outputs"] = {{"value", value}, {"error_bound", bound}};
    emit(r, out);
    return 0;
}

int cmd_verify(const RunConfig& c, const std::string& which, const std::string& out) {
    FrameConfig cfg = FrameConfig::checked(InnerProductSpace(c.n, c.gram), c.c1,
                                           c.c2, c.c1p, c.c2p);
    json r = base_report("verify", c);
    r["outputs"]["which"] = which;
    bool pass = false;

    if (which == "theorem-a") {
        SurfaceChart chart(cfg);
        // samples are drawn up front so the result is identical for any
        // worker count; each slot is evaluated independently and the
        // reduction runs in slot order
        SplitMix64 rng(c.seed);
        std::vector<Vec> samples;
        for (int i = 0; i < 100; ++i)
            samples.push_back(
                vec_scale(1.0 / std::sqrt(2.0), random_regular(rng, cfg, -3, 3)));
        std::vector<double> residual(samples.size(), 0.0);
        auto work = [&](size_t lo, size_t hi) {
            for (size_t i = lo; i < hi; ++i) {
                double surf = surface_integral_phi(samples[i], chart, c.tol_quadrature);
                double closed = closed_form_I(cfg, samples[i], {c.tol_special, 400});
                residual[i] = std::fabs(surf - closed);
            }
        };
        size_t jobs = std::max<size_t>(1, g_jobs);
        if (jobs <= 1) {
            work(0, samples.size());
        } else {
            std::vector<std::thread> pool;
            size_t chunk = (samples.size() + jobs - 1) / jobs;
            for (size_t j = 0; j < jobs; ++j) {
                size_t lo = j * chunk, hi = std::min(samples.size(), lo + chunk);
                if (lo < hi) pool.emplace_back(work, lo, hi);
            }
            for (auto& t : pool) t.join();
        }
        double worst = 0.0;
        for (double v : residual) worst = std::max(worst, v);
        r["residuals"]["max_abs"] = worst;
        r["residuals"]["tolerance"] = 1e-6;
        pass = worst <= 1e-6;
    } else if (which == "stokes") {
        SurfaceChart chart(cfg);
        const InnerProductSpace& V = cfg.V;
        SplitMix64 rng(c.seed);
        double worst_res = 0.0, worst_ratio = 1e9;
        int done = 0;
        while (done < 50) {
            Vec x = random_regular(rng, cfg, -1.5, 1.5);
            double s0 = rng.uniform(0.15, 0.85), t0 = rng.uniform(0.15, 0.85);
            if (r_quantity(V, x, chart.point(s0, t0)) < 0.05) continue;
            ++done;
            auto residual = [&](double h) {
                auto seg = [&](bool s_var, double fix, double a, double b) {
                    auto f = [&](double t) {
                        OrientedFrame z;
                        Vec ds1, ds2, dt1, dt2;
                        if (s_var) {
                            chart.lift(t, fix, z, ds1, ds2, dt1, dt2);
                            return psi_o(V, x, z, ds1, ds2);
                        }
                        chart.lift(fix, t, z, ds1, ds2, dt1, dt2);
                        return psi_o(V, x, z, dt1, dt2);
                    };
                    return integrate_gk15(f, a, b, 1e-14, 400).value;
                };
                double loop = seg(true, t0 - h / 2, s0 - h / 2, s0 + h / 2) +
                              seg(false, s0 + h / 2, t0 - h / 2, t0 + h / 2) -
                              seg(true, t0 + h / 2, s0 - h / 2, s0 + h / 2) -
                              seg(false, s0 - h / 2, t0 - h / 2, t0 + h / 2);
                OrientedFrame z;
                TangentPair tp;
                chart.lift(s0, t0, z, tp.eta1, tp.eta2, tp.mu1, tp.mu2);
                auto proj = [&](Vec& w) {
                    vec_axpy(V.inner(z.z1, w), z.z1, w);
                    vec_axpy(V.inner(z.z2, w), z.z2, w);
                };
                proj(tp.eta1);
                proj(tp.eta2);
                proj(tp.mu1);
                proj(tp.mu2);
                return std::fabs(loop - h * h * phi_km_o(V, x, z, tp));
            };
            double r2 = residual(1e-2), r3 = residual(5e-3);
            worst_res = std::max(worst_res, r2);
            if (r2 > 1e-12) worst_ratio = std::min(worst_ratio, r2 / r3);
        }
        r["residuals"]["max_abs_at_h_0.01"] = worst_res;
        r["residuals"]["min_refinement_ratio"] = worst_ratio;
        pass = worst_res <= 1e-7 && worst_ratio >= 12.0;
    } else if (which == "modularity") {
        EvenLattice L = lattice(c);
        ModularityReport t = verify_T(L, cfg, c.tau, c.qmax, {c.tol_special, 400});
        ModularityReport s = verify_S(L, cfg, c.tau, c.qmax, {c.tol_special, 400});
        r["residuals"]["T"] = t.residual;
        r["residuals"]["S_spread"] = s.residual;
        r["residuals"]["S_phase"] = {{"re", s.measured_phase.real()},
                                     {"im", s.measured_phase.imag()}};
        r["residuals"]["S_abs_deviation"] = std::fabs(std::abs(s.measured_phase) - 1.0);
        pass = t.residual <= 1e-5 && s.conclusive && s.residual <= 1e-4 &&
               std::fabs(std::abs(s.measured_phase) - 1.0) <= 1e-4;
    } else if (which == "shadow") {
        EvenLattice L = lattice(c);
        double worst = 0.0;
        for (const Coset& mu : cosets_for(c, L)) {
            Cplx fd = shadow_fd(L, mu, cfg, c.tau, c.qmax, {c.tol_special, 400});
            Cplx bd = shadow_boundary(L, mu, cfg, c.tau, c.qmax, {c.tol_special, 400});
            worst = std::max(worst, std::abs(fd - bd));
        }
        r["residuals"]["max_abs"] = worst;
        pass = worst <= 1e-4;
    } else if (which == "intersection") {
        SplitMix64 rng(c.seed);
        SurfaceChart chart(cfg);
        int mismatches = 0, done = 0;
        double worst_r = 0.0;
        long draws = 0;
        while (done < 10000 && ++draws < 100000000) {
            Vec x = random_vec(rng, c.n, -2.5, 2.5);
            if (!cfg.regular(x) || phi2(x, cfg) == 0.0) continue;
            ++done;
            if (intersection_number(x, cfg) != phi2(x, cfg)) ++mismatches;
            auto ip = intersection_point(x, cfg);
            if (!ip) {
                ++mismatches;
                continue;
            }
            worst_r = std::max(worst_r,
                               r_quantity(cfg.V, x, chart.point(ip->first, ip->second)));
        }
        r["residuals"]["samples"] = done;
        r["residuals"]["mismatches"] = mismatches;
        r["residuals"]["max_point_residual"] = worst_r;
        pass = done == 10000 && mismatches == 0 && worst_r <= 1e-18;
    } else {
        throw input_error("unknown verification '" + which + "'");
    }
    r["outputs"]["pass"] = pass;
    emit(r, out);
    return pass ? 0 : 3;
}

json fixture_json() {
    FrameConfig cfg = canonical_config();
    json j;
    j["gram"] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}};
    j["c"] = {{"c1", cfg.C1}, {"c2", cfg.C2}, {"c1p", cfg.C1p}, {"c2p", cfg.C2p}};
    double s = std::sqrt(2.0);
    j["lattice_basis"] = {{s, 0, 0, 0}, {0, s, 0, 0}, {0, 0, s, 0}, {0, 0, 0, s}};
    j["cosets"] = "all";
    j["tau"] = {{"re", 0.37}, {"im", 1.3}};
    j["qmax"] = 4.0;
    j["tol"] = {{"series", 1e-6}, {"quadrature", 1e-9}, {"special", 1e-12}};
    j["seed"] = kCanonicalSeed;
    j["search_seed_note"] =
        "c vectors found by rejection sampling with splitmix64 seed 20260808";
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"indefinite theta surface integrals: evaluation and verification"};
    app.require_subcommand(1);

    std::string config_path, out_path, mode = "hol", which = "theorem-a";
    std::string efn, xspec;
    std::vector<double> eargs;
    bool timings = false;

    auto add_common = [&](CLI::App* sub, bool need_config) {
        auto* opt =
            sub->add_option("--config", config_path, "JSON configuration file, or - for stdin");
        if (need_config) opt->required();
        sub->add_option("--out", out_path, "write the JSON report here");
        sub->add_flag("--timings", timings, "report wall-clock time on stderr");
        sub->add_option("--jobs", g_jobs, "worker threads (output is identical for any value)")
            ->check(CLI::Range(1u, 64u));
    };

    CLI::App* validate = app.add_subcommand("validate", "check the incidence conditions");
    add_common(validate, true);

    CLI::App* theta = app.add_subcommand("theta", "evaluate the theta series");
    add_common(theta, true);
    theta->add_option("--mode", mode, "hol | complete")
        ->check(CLI::IsMember({"hol", "complete"}));

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, true);
    verify->add_option("--which", which,
                       "theorem-a | stokes | modularity | shadow | intersection")
        ->required();

    CLI::App* efun = app.add_subcommand("efun", "evaluate an error-function kernel");
    add_common(efun, false);
    efun->add_option("--fn", efn, "e1 | m1 | e2 | tilde_e2 | e2_flat | e2_boosted")
        ->required();
    efun->add_option("--args", eargs, "numeric arguments");
    efun->add_option("--x", xspec, "comma-separated vector for e2_boosted");

    CLI::App* fixture =
        app.add_subcommand("fixture", "print the reference configuration as JSON");
    fixture->add_option("--out", out_path, "write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    auto started = std::chrono::steady_clock::now();
    try {
        int rc = 0;
        if (app.got_subcommand(validate)) {
            rc = cmd_validate(load_config(config_path), out_path);
        } else if (app.got_subcommand(theta)) {
            rc = cmd_theta(load_config(config_path), mode, out_path);
        } else if (app.got_subcommand(verify)) {
            rc = cmd_verify(load_config(config_path), which, out_path);
        } else if (app.got_subcommand(efun)) {
            std::optional<RunConfig> c;
            if (!config_path.empty()) c = load_config(config_path);
            rc = cmd_efun(efn, eargs, c, xspec, out_path);
        } else if (app.got_subcommand(fixture)) {
            emit(fixture_json(), out_path);
        }
        if (timings) {
            double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - started)
                            .count();
            std::cerr << "elapsed_ms " << ms << "\n";
        }
        return rc;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 4;
    } catch (const incidence_error& e) {
        std::cerr << "incidence error: " << e.what() << "\n";
        return 2;
    } catch (const accuracy_error& e) {
        std::cerr << "accuracy error: " << e.what() << " (estimate " << e.estimate
                  << ", bound " << e.error_bound << ")\n";
        return 3;
    } catch (const degenerate_error& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
