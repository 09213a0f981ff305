#pragma once
// Command-line front end. run() is the whole program so tests can drive it in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "halfline/scattering.hpp"
#include "halfline/suites.hpp"

namespace halfline::cli {

using json = nlohmann::json;

inline constexpr const char* schema_version = "1.0";

enum ExitCode { ok = 0, check_failed = 1, usage = 2, exceptional = 3 };

struct usage_error : domain_error {
    using domain_error::domain_error;
};

inline double parse_real(std::string s) {
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s == "euler") return euler_gamma;
    if (s == "pi") return pi;
    size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw usage_error("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw usage_error("not a finite number: '" + s + "'");
    return v;
}

// "re" or "re,im"
inline cplx parse_complex(const std::string& s) {
    auto c = s.find(',');
    if (c == std::string::npos) return parse_real(s);
    if (s.find(',', c + 1) != std::string::npos) throw usage_error("expected re,im: '" + s + "'");
    return {parse_real(s.substr(0, c)), parse_real(s.substr(c + 1))};
}

inline ExtendedParam parse_extended(const std::string& s) {
    if (s == "inf") return ExtendedParam::infinity();
    return ExtendedParam(parse_complex(s));
}

// "a,b,c" or "lo:hi:n" (n points, uniform)
inline std::vector<double> parse_points(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw usage_error("expected lo:hi:n: '" + s + "'");
        double lo = parse_real(parts[0]), hi = parse_real(parts[1]);
        double n = parse_real(parts[2]);
        if (!(n >= 1 && n == std::floor(n) && n <= 1e6)) throw usage_error("bad point count in '" + s + "'");
        if (n == 1) return {lo};
        for (long i = 0; i < long(n); ++i) out.push_back(lo + (hi - lo) * double(i) / (n - 1));
        return out;
    }
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_real(p));
    if (out.empty()) throw usage_error("empty point list");
    return out;
}

inline json cjson(cplx z) { return json::array({z.real(), z.imag()}); }
inline json ejson(const ExtendedParam& p) { return p.is_inf() ? json("inf") : cjson(p.value()); }

inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct SpecFlags {
    std::string family = "homogeneous", m = "0", kappa = "0", nu = "inf";

    void attach(CLI::App* app, const std::string& prefix = "") {
        app->add_option("--" + prefix + "family", family, "homogeneous | kappa | nu")
            ->check(CLI::IsMember({"homogeneous", "kappa", "nu"}));
        app->add_option("--" + prefix + "m", m, "order, re or re,im");
        app->add_option("--" + prefix + "kappa", kappa, "boundary parameter, re,im or inf");
        app->add_option("--" + prefix + "nu", nu, "boundary parameter, re,im, inf or euler");
    }
    OperatorSpec build() const {
        if (family == "homogeneous") return OperatorSpec::homogeneous(parse_complex(m));
        if (family == "kappa") return OperatorSpec::kappa_family(parse_complex(m), parse_extended(kappa));
        return OperatorSpec::nu_family(parse_extended(nu));
    }
};

inline json spec_json(const OperatorSpec& s) {
    json j;
    switch (s.family) {
        case Family::Homogeneous:
            j["family"] = "homogeneous";
            j["m"] = cjson(s.m);
            break;
        case Family::Kappa:
            j["family"] = "kappa";
            j["m"] = cjson(s.m);
            j["kappa"] = ejson(s.kappa);
            break;
        case Family::Nu:
            j["family"] = "nu";
            j["nu"] = ejson(s.nu);
            break;
    }
    return j;
}

// kappa in {0, inf} and nu = inf are evaluated as the plain H_m they equal
inline OperatorSpec reduce(const OperatorSpec& s) {
    if (auto m = homogeneous_order(s)) return OperatorSpec::homogeneous(*m);
    return s;
}

inline void emit(std::ostream& out, const std::string& command, const json& params, const json& results) {
    json r;
    r["schema_version"] = schema_version;
    r["command"] = command;
    r["params"] = params;
    r["results"] = results;
    out << r.dump(2) << "\n";
}

// buffered so that an error halfway leaves stdout empty
struct Csv {
    std::ostream& target;
    std::ostringstream buf;
    Csv(std::ostream& o, const char* header) : target(o) { buf << header << "\n"; }
    void row(std::initializer_list<double> v) {
        bool first = true;
        for (double d : v) {
            buf << (first ? "" : ",") << g17(d);
            first = false;
        }
        buf << "\n";
    }
    int done() {
        target << buf.str();
        return 0;
    }
};

inline json classification_json(const Classification& c) {
    return {{"homogeneous", c.homogeneous}, {"self_adjoint", c.self_adjoint}, {"exceptional", c.exceptional}};
}

inline std::vector<EigenvalueRecord> windowed_eigenvalues(const OperatorSpec& s, double zmin, double zmax, size_t max) {
    if (!(0 < zmin && zmin < zmax)) throw usage_error("need 0 < zmin < zmax");
    if (max == 0) throw usage_error("--max must be positive");
    EigenWindow w;
    w.z_min = zmin;
    w.z_max = zmax;
    w.max_count = max;
    return eigenvalues(s, w);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"halfline: solvable inverse-square Schroedinger operators on the half-line"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    // eig / spiral
    SpecFlags eig_spec;
    double zmin = 1e-12, zmax = 1e12;
    size_t max_count = 10000;
    auto* eig = app.add_subcommand("eig", "eigenvalues with branch indices and classification (JSON)");
    eig_spec.attach(eig);
    eig->add_option("--zmin", zmin, "smallest |z| reported");
    eig->add_option("--zmax", zmax, "largest |z| reported");
    eig->add_option("--max", max_count, "at most this many records");

    SpecFlags spiral_spec;
    size_t spiral_max = 50;
    auto* spiral = app.add_subcommand("spiral", "eigenvalues ordered by branch index (CSV j,w_re,w_im,z_re,z_im)");
    spiral_spec.attach(spiral);
    spiral->add_option("--zmin", zmin);
    spiral->add_option("--zmax", zmax);
    spiral->add_option("--max", spiral_max);

    // kernel / density
    SpecFlags ker_spec;
    std::string ker_k = "1", ker_x = "0.1:5:50", ker_y;
    int side = 0;
    auto* kernel = app.add_subcommand("kernel", "resolvent kernel of (H + k^2)^{-1} (CSV x,y,re,im)");
    ker_spec.attach(kernel);
    kernel->add_option("--k", ker_k, "re,im with Re k > 0; real k > 0 with --side");
    kernel->add_option("--x", ker_x, "points: a,b,c or lo:hi:n");
    kernel->add_option("--y", ker_y, "points (default: same as --x)");
    kernel->add_option("--side", side, "+1/-1: boundary value at energy k^2 from above/below")->check(CLI::IsMember({-1, 0, 1}));

    SpecFlags den_spec;
    std::string den_k = "1", den_x = "0.1:5:50", den_y;
    auto* density = app.add_subcommand("density", "spectral density kernel at real k (CSV x,y,re,im)");
    den_spec.attach(density);
    density->add_option("--k", den_k, "k > 0");
    density->add_option("--x", den_x);
    density->add_option("--y", den_y);

    // transform
    SpecFlags tr_spec;
    int tr_sign = +1;
    std::string tr_x = "0.25:8:32", tr_alpha;
    double tr_beta = 1.0, tr_L = 12.0;
    auto* transform = app.add_subcommand("transform", "transform of f(y) = y^alpha e^{-beta y^2/2} (JSON)");
    tr_spec.attach(transform);
    transform->add_option("--sign", tr_sign, "+1/-1, for the kappa and nu families")->check(CLI::IsMember({-1, 1}));
    transform->add_option("--x", tr_x, "output points");
    transform->add_option("--alpha", tr_alpha, "power at 0, re or re,im (default m + 1/2)");
    transform->add_option("--beta", tr_beta, "Gaussian width, > 0");
    transform->add_option("--L", tr_L, "input cutoff for the sampled kappa/nu transforms");

    // scatter
    SpecFlags sc_left, sc_right;
    std::string sc_x;
    auto* scatter = app.add_subcommand("scatter", "scattering multipliers (CSV x,y,re,im with y = sign)");
    sc_left.attach(scatter);
    sc_right.attach(scatter, "right-");

    // check
    std::string only;
    double tol = 0;
    auto* check = app.add_subcommand("check", "identity suites; exit 1 on any failure (JSON)");
    check->add_option("--only", only, "comma-separated suites");
    check->add_option("--tol", tol, "loosen every threshold to at least this");

    // probe
    std::string kind = "moller", times = "10,50,200", pm = "-0.5", pm2 = "0.5";
    int pr_sign = +1;
    double beta_f = 1, beta_g = 1, pr_t = 1000;
    std::string prof1 = "0.3,1", prof2 = "0.8,2";
    auto* probe = app.add_subcommand("probe", "time-dependent wave-operator probes for homogeneous pairs (JSON)");
    probe->add_option("--kind", kind, "moller | propagation")->check(CLI::IsMember({"moller", "propagation"}));
    probe->add_option("--m", pm, "left order (real)");
    probe->add_option("--m2", pm2, "right order (real)");
    probe->add_option("--times", times, "moller: times");
    probe->add_option("--sign", pr_sign, "moller: +1/-1")->check(CLI::IsMember({-1, 1}));
    probe->add_option("--beta-f", beta_f, "moller: width of f (matched to m2)");
    probe->add_option("--beta-g", beta_g, "moller: width of g (matched to m)");
    probe->add_option("--t", pr_t, "propagation: time");
    probe->add_option("--f1", prof1, "propagation: alpha,beta of f1");
    probe->add_option("--f2", prof2, "propagation: alpha,beta of f2");

    scatter->add_option("--x", sc_x, "grid variable: x for G multipliers, t for wave multipliers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*eig) {
            auto s = eig_spec.build();
            auto v = windowed_eigenvalues(s, zmin, zmax, max_count);
            auto c = classify(s);
            json recs = json::array(), warnings = json::array();
            for (auto& r : v) {
                recs.push_back({{"j", r.j}, {"w", cjson(r.w)}, {"z", cjson(r.z)}, {"near_boundary", r.near_boundary}});
                if (r.near_boundary) warnings.push_back("eigenvalue j=" + std::to_string(r.j) + " is within 1e-8 of the branch cut");
            }
            if (c.exceptional) warnings.push_back("exceptional parameters: boundary values, transforms and scattering are refused");
            if (v.size() == max_count) warnings.push_back("output truncated at --max");
            emit(out, "eig", {{"spec", spec_json(s)}, {"zmin", zmin}, {"zmax", zmax}, {"max", max_count}},
                 {{"classification", classification_json(c)}, {"eigenvalues", recs}, {"count", v.size()}, {"warnings", warnings}});
            return ok;
        }
        if (*spiral) {
            auto s = spiral_spec.build();
            auto v = windowed_eigenvalues(s, zmin, zmax, spiral_max);
            std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.j < b.j; });
            Csv csv(out, "j,w_re,w_im,z_re,z_im");
            for (auto& r : v) csv.row({double(r.j), r.w.real(), r.w.imag(), r.z.real(), r.z.imag()});
            return csv.done();
        }
        if (*kernel || *density) {
            bool is_den = density->parsed();
            auto s = reduce((is_den ? den_spec : ker_spec).build());
            auto xs = parse_points(is_den ? den_x : ker_x);
            auto ys = parse_points((is_den ? den_y : ker_y).empty() ? (is_den ? den_x : ker_x) : (is_den ? den_y : ker_y));
            cplx k = parse_complex(is_den ? den_k : ker_k);
            bool real_k = is_den || side != 0;
            if (real_k && !(k.imag() == 0 && k.real() > 0)) throw usage_error("k must be real and positive");
            Csv csv(out, "x,y,re,im");
            for (double x : xs)
                for (double y : ys) {
                    cplx v = is_den ? spectral_density(s, k.real(), x, y)
                           : side ? boundary_resolvent(s, k.real(), side, x, y).value
                                  : resolvent(s, k, x, y).value;
                    csv.row({x, y, v.real(), v.imag()});
                }
            return csv.done();
        }
        if (*transform) {
            auto s = reduce(tr_spec.build());
            auto xs = parse_points(tr_x);
            for (double x : xs)
                if (!(x > 0)) throw usage_error("output points must be positive");
            if (!(tr_beta > 0)) throw usage_error("--beta must be positive");
            cplx m = s.family == Family::Nu ? cplx(0) : s.m;
            cplx alpha = tr_alpha.empty() ? m + 0.5 : parse_complex(tr_alpha);
            if (!(alpha.real() > -0.5)) throw usage_error("--alpha needs Re alpha > -1/2");
            double beta = tr_beta;
            auto f = [alpha, beta](double y) { return std::pow(cplx(y), alpha) * std::exp(-beta * y * y / 2); };
            Grid out_grid;
            out_grid.nodes = xs;
            out_grid.weights.assign(xs.size(), 0.0);
            SampledFunction r;
            json params = {{"spec", spec_json(s)}, {"alpha", cjson(alpha)}, {"beta", beta}};
            if (s.family == Family::Homogeneous) {
                r = hankel_apply(s.m, f, out_grid);
            } else {
                refuse_exceptional(s, "transform");
                if (!(tr_L > 1)) throw usage_error("--L must exceed 1");
                Grid in = halfline_grid(tr_L);
                GeneralizedTransform t(s, out_grid, in);
                r = t.apply(tr_sign, sample(f, in));
                params["sign"] = tr_sign;
                params["L"] = tr_L;
            }
            json re = json::array(), im = json::array();
            for (cplx v : r.values) {
                re.push_back(v.real());
                im.push_back(v.imag());
            }
            emit(out, "transform", params, {{"x", xs}, {"re", re}, {"im", im}});
            return ok;
        }
        if (*scatter) {
            auto left = sc_left.build();
            bool pair = false;
            for (auto* o : scatter->get_options())
                if (o->get_name().rfind("--right-", 0) == 0 && o->count() > 0) pair = true;
            std::optional<OperatorSpec> right;
            if (pair) right = sc_right.build();
            bool wave = right && homogeneous_order(left) && homogeneous_order(*right);
            auto xs = parse_points(sc_x.empty() ? (wave ? "-20:20:401" : "0.01:20:400") : sc_x);
            Csv csv(out, "x,y,re,im");
            if (wave) {
                for (int sg : {+1, -1}) {
                    auto W = wave_multiplier({left, *right, sg});
                    for (double t : xs) {
                        cplx v = W(t);
                        csv.row({t, double(sg), v.real(), v.imag()});
                    }
                }
            } else {
                if (right) {
                    auto d = scattering_diag(left, *right);
                    for (double x : xs) {
                        if (!(x > 0)) throw usage_error("x must be positive");
                        cplx v = d(x);
                        csv.row({x, 0.0, v.real(), v.imag()});
                    }
                } else {
                    refuse_exceptional(left, "scatter");
                    for (int sg : {+1, -1})
                        for (double x : xs) {
                            if (!(x > 0)) throw usage_error("x must be positive");
                            cplx v = scattering_g(left, sg, x);
                            csv.row({x, double(sg), v.real(), v.imag()});
                        }
                }
            }
            return csv.done();
        }
        if (*check) {
            std::vector<std::string> names;
            if (only.empty()) {
                names = suite_names();
            } else {
                std::stringstream ss(only);
                for (std::string n; std::getline(ss, n, ',');) {
                    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
                        throw usage_error("unknown suite '" + n + "'");
                    names.push_back(n);
                }
            }
            if (tol < 0) throw usage_error("--tol must be non-negative");
            json suites = json::array();
            bool all = true;
            for (auto& n : names) {
                auto r = run_suite(n, tol);
                err << n << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.seconds << " s)\n";
                json lines = json::array();
                for (auto& l : r.lines) {
                    lines.push_back({{"name", l.name}, {"err", std::isfinite(l.err) ? json(l.err) : json("inf")}, {"tol", l.tol}, {"passed", l.passed}});
                    if (!l.passed) err << "  failed: " << l.name << " err=" << l.err << " tol=" << l.tol << "\n";
                }
                suites.push_back({{"name", n}, {"passed", r.passed()}, {"checks", lines}});
                all = all && r.passed();
            }
            emit(out, "check", {{"only", names}, {"tol", tol}}, {{"suites", suites}, {"passed", all}});
            return all ? ok : check_failed;
        }
        if (*probe) {
            double m = parse_real(pm), m2 = parse_real(pm2);
            json params = {{"kind", kind}, {"m", m}, {"m2", m2}};
            if (kind == "moller") {
                auto ts = parse_points(times);
                if (!(beta_f > 0 && beta_g > 0)) throw usage_error("widths must be positive");
                auto r = moller_time_probe({OperatorSpec::homogeneous(m), OperatorSpec::homogeneous(m2), pr_sign},
                                           GaussProfile{m2 + 0.5, beta_f}, GaussProfile{m + 0.5, beta_g}, ts);
                json vals = json::array();
                for (cplx v : r.values) vals.push_back(cjson(v));
                params.update({{"times", ts}, {"sign", pr_sign}, {"beta_f", beta_f}, {"beta_g", beta_g}});
                emit(out, "probe", params, {{"times", r.times}, {"values", vals}, {"limit", cjson(r.limit)}, {"deviations", r.deviations}});
            } else {
                cplx a = parse_complex(prof1), b = parse_complex(prof2);
                if (!(a.imag() > 0 && b.imag() > 0)) throw usage_error("profile widths must be positive");
                auto r = propagation_probe(m, m2, GaussProfile{a.real(), a.imag()}, GaussProfile{b.real(), b.imag()}, pr_t);
                params.update({{"t", pr_t}, {"f1", cjson(a)}, {"f2", cjson(b)}});
                emit(out, "probe", params, {{"value", cjson(r.value)}, {"limit", cjson(r.limit)}, {"deviation", r.deviation}});
            }
            return ok;
        }
    } catch (const exceptional_error& e) {
        err << "refused: " << e.what() << "\n";
        return exceptional;
    } catch (const pole_error& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return check_failed;
    }
    return usage;
}

}  // namespace halfline::cli
