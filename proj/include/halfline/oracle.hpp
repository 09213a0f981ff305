#pragma once
// Independent ground truth for -u'' + (m^2 - 1/4)/x^2 u = z u: Frobenius seeds at
// small x (coefficients rational in m), adaptive Dormand-Prince integration, and
// shooting/variation of parameters. Nothing here evaluates Bessel functions.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "halfline/quad.hpp"
#include "halfline/spec.hpp"
#include "halfline/types.hpp"

namespace halfline::oracle {

struct ShootingConfig {
    double x_start = 1e-3;
    double x_match = 0;  // 0: chosen from |k|
    double x_far = 0;    // 0: 40/Re k
    double ode_tol = 1e-10;
    int frobenius_terms = 12;
};

struct StiffFailure : convergence_error {
    using convergence_error::convergence_error;
};

// ---- adaptive Dormand-Prince 5(4) on complex state vectors ----

template <size_t N>
using State = std::array<cplx, N>;

template <size_t N>
struct Integrator {
    std::function<State<N>(double, const State<N>&)> rhs;
    double tol = 1e-10;
    long steps = 0;

    // advance y from x0 to x1 (either direction)
    void advance(double x0, double x1, State<N>& y, double& h) {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                                e6 = 22.0 / 525, e7 = -1.0 / 40;
        double dir = x1 > x0 ? 1.0 : -1.0;
        double x = x0;
        if (h == 0) h = 1e-3 * std::abs(x1 - x0);
        h = std::abs(h);
        auto k1 = rhs(x, y);
        int guard = 0;
        while (dir * (x1 - x) > 0) {
            if (++guard > 5000000) throw StiffFailure("oracle: step budget exhausted");
            double hs = std::min(h, std::abs(x1 - x));
            double s = dir * hs;
            auto comb = [&](std::initializer_list<std::pair<double, const State<N>*>> terms) {
                State<N> r = y;
                for (auto& [c, k] : terms)
                    for (size_t i = 0; i < N; ++i) r[i] += s * c * (*k)[i];
                return r;
            };
            auto k2 = rhs(x + c2 * s, comb({{a21, &k1}}));
            auto k3 = rhs(x + c3 * s, comb({{a31, &k1}, {a32, &k2}}));
            auto k4 = rhs(x + c4 * s, comb({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
            auto k5 = rhs(x + c5 * s, comb({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
            auto k6 = rhs(x + s, comb({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
            auto yn = comb({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
            auto k7 = rhs(x + s, yn);
            double err = 0;
            for (size_t i = 0; i < N; ++i) {
                cplx e = s * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                double sc = tol * (1e-30 + std::max(std::abs(y[i]), std::abs(yn[i])));
                err = std::max(err, std::abs(e) / sc);
            }
            if (!std::isfinite(err)) throw StiffFailure("oracle: non-finite state");
            if (err <= 1.0) {
                x += s;
                y = yn;
                k1 = k7;
                ++steps;
            }
            double fac = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h = hs * fac;
            if (h < 1e-14 * std::max(1.0, std::abs(x))) throw StiffFailure("oracle: step size underflow");
        }
    }
};

// ---- Frobenius seeds ----
// u = x^{1/2+mu} sum_n c_n x^{2n},  c_n = -z c_{n-1} / (4 n (n + mu)),  c_0 = 1

struct Seed {
    cplx u, du;
};

inline Seed frobenius(cplx mu, cplx z, double x, int terms) {
    cplx c = 1.0, su = 0, sd = 0;
    double x2 = x * x, p = 1;
    for (int n = 0; n < terms; ++n) {
        if (n > 0) {
            c *= -z / (4.0 * n * (double(n) + mu));
            p *= x2;
        }
        cplx e = 0.5 + mu + 2.0 * n;
        su += c * p;
        sd += c * e * p;
    }
    cplx xp = std::pow(cplx(x), 0.5 + mu);
    return {xp * su, xp * sd / x};
}

// m = 0 log solution x^{1/2} ln x sum a_n x^{2n} + x^{1/2} sum b_n x^{2n}, b_0 = 0
inline Seed frobenius_log(cplx z, double x, int terms) {
    cplx a = 1.0, b = 0.0;
    cplx su = 0, sd = 0;
    double lx = std::log(x), p = 1;
    for (int n = 0; n < terms; ++n) {
        if (n > 0) {
            a *= -z / (4.0 * n * n);
            b = -(z * b + 4.0 * n * a) / (4.0 * n * n);
            p *= x * x;
        }
        double e = 0.5 + 2.0 * n;
        // d/dx [x^e (a ln x + b)] = x^{e-1} (e (a ln x + b) + a)
        su += p * (a * lx + b);
        sd += p * (e * (a * lx + b) + a);
    }
    double sx = std::sqrt(x);
    return {sx * su, sx * sd / x};
}

// solution with the family's boundary behavior at 0, evaluated at x
inline Seed boundary_seed(const OperatorSpec& s, cplx z, double x, int terms) {
    switch (s.family) {
        case Family::Homogeneous: return frobenius(s.m, z, x, terms);
        case Family::Kappa: {
            const auto& k = s.kappa;
            Seed p = frobenius(s.m, z, x, terms), q = frobenius(-s.m, z, x, terms);
            // num * x^{1/2-m} + den * x^{1/2+m}, scaled representation of kappa
            return {k.num() * q.u + k.den() * p.u, k.num() * q.du + k.den() * p.du};
        }
        case Family::Nu: {
            const auto& v = s.nu;
            Seed r = frobenius(0.0, z, x, terms), l = frobenius_log(z, x, terms);
            return {v.den() * l.u + v.num() * r.u, v.den() * l.du + v.num() * r.du};
        }
    }
    return {};
}

inline cplx potential_coef(const OperatorSpec& s) {
    cplx m = s.family == Family::Nu ? 0.0 : s.m;
    return m * m - 0.25;
}

inline cplx principal_k(cplx z) {
    cplx k = std::sqrt(-z);
    if (k.real() <= 0) throw domain_error("oracle: need Re sqrt(-z) > 0");
    return k;
}

struct Geometry {
    double x_start, x_match, x_far;
};

inline Geometry geometry(cplx k, const ShootingConfig& cfg) {
    Geometry g;
    g.x_start = cfg.x_start;
    g.x_far = cfg.x_far > 0 ? cfg.x_far : 40.0 / k.real();
    g.x_match = cfg.x_match > 0 ? cfg.x_match : std::clamp(1.0 / std::abs(k), 20 * cfg.x_start, 0.5 * g.x_far);
    return g;
}

// (u, u') of the boundary solution at x
inline Seed boundary_solution_d(const OperatorSpec& s, cplx z, double x, const ShootingConfig& cfg = {}) {
    if (x <= cfg.x_start) return boundary_seed(s, z, x, cfg.frobenius_terms);
    Seed a = boundary_seed(s, z, cfg.x_start, cfg.frobenius_terms);
    cplx V = potential_coef(s);
    Integrator<2> ig{[&](double t, const State<2>& y) { return State<2>{y[1], (V / (t * t) - z) * y[0]}; }, cfg.ode_tol};
    State<2> y{a.u, a.du};
    double h = 0;
    ig.advance(cfg.x_start, x, y, h);
    return {y[0], y[1]};
}

inline cplx boundary_solution(const OperatorSpec& s, cplx z, double x, const ShootingConfig& cfg = {}) {
    return boundary_solution_d(s, z, x, cfg).u;
}

// decaying solution, normalized so u(x_far) ~ 1 (two-term large-x seed e^{-k(x - x_far)})
inline Seed decaying_solution_d(const OperatorSpec& s, cplx z, double x, double x_far, const ShootingConfig& cfg = {}) {
    cplx k = principal_k(z);
    cplx m = s.family == Family::Nu ? 0.0 : s.m;
    cplx a1 = (4.0 * m * m - 1.0) / 8.0;
    cplx u = 1.0 + a1 / (k * x_far);
    cplx du = -k * u - a1 / (k * x_far * x_far);
    cplx V = potential_coef(s);
    Integrator<2> ig{[&](double t, const State<2>& y) { return State<2>{y[1], (V / (t * t) - z) * y[0]}; }, cfg.ode_tol};
    State<2> y{u, du};
    double h = 0;
    ig.advance(x_far, x, y, h);
    return {y[0], y[1]};
}

// Wronskian of boundary vs decaying solution at x_match, in raw and scale-free forms
struct Residual {
    cplx raw;
    cplx normalized;
};

inline Residual eigen_residual_full(const OperatorSpec& s, cplx z, const ShootingConfig& cfg, double x_far) {
    cplx k = principal_k(z);
    Geometry g = geometry(k, cfg);
    Seed b = boundary_solution_d(s, z, g.x_match, cfg);
    Seed d = decaying_solution_d(s, z, g.x_match, x_far, cfg);
    cplx W = b.u * d.du - b.du * d.u;
    double sc = std::abs(b.u * d.du) + std::abs(b.du * d.u);
    return {W, W / sc};
}

// zero iff z is an eigenvalue; normalized to |.| <= 1
inline cplx eigen_residual(const OperatorSpec& s, cplx z, const ShootingConfig& cfg = {}) {
    cplx k = principal_k(z);
    return eigen_residual_full(s, z, cfg, geometry(k, cfg).x_far).normalized;
}

struct RefinedEigenvalue {
    cplx z;
    cplx residual;  // normalized, at the refined point
    bool converged;
};

// secant in z on the raw Wronskian with the far point frozen
inline RefinedEigenvalue refine_eigenvalue(const OperatorSpec& s, cplx z0, const ShootingConfig& cfg = {}) {
    double x_far = geometry(principal_k(z0), cfg).x_far;
    auto g = [&](cplx z) { return eigen_residual_full(s, z, cfg, x_far).raw; };
    auto rr = find_root(g, z0, 1e-12, 60, z0 * cplx(1 + 1e-3, 1e-3));
    RefinedEigenvalue out{rr.root, eigen_residual_full(s, rr.root, cfg, x_far).normalized, rr.converged};
    return out;
}

// u = (L + k^2)^{-1} f at the points xs by variation of parameters,
//   u(x) = -(u_d(x) int_0^x u_b f + u_b(x) int_x^inf u_d f) / W
inline std::vector<cplx> resolvent_apply(const OperatorSpec& s, cplx k, const std::function<cplx(double)>& f,
                                         std::vector<double> xs, const ShootingConfig& cfg = {}) {
    cplx z = -k * k;
    Geometry g = geometry(k, cfg);
    std::sort(xs.begin(), xs.end());
    cplx V = potential_coef(s);
    auto rhs = [&](double sign) {
        return [&, sign](double t, const State<3>& y) {
            return State<3>{y[1], (V / (t * t) - z) * y[0], sign * y[0] * f(t)};
        };
    };
    // head of int_0^x u_b f on [0, x_start] from the series
    QuadPolicy qp;
    qp.abs_tol = 1e-300;
    qp.rel_tol = 1e-12;
    auto head = integrate([&](double t) { return boundary_seed(s, z, t, cfg.frobenius_terms).u * f(t); }, 0.0, cfg.x_start, qp);
    Seed b0 = boundary_seed(s, z, cfg.x_start, cfg.frobenius_terms);
    std::vector<State<3>> B(xs.size()), Dv(xs.size());
    {
        Integrator<3> ig{rhs(1.0), cfg.ode_tol};
        State<3> y{b0.u, b0.du, head.value};
        double x = cfg.x_start, h = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            ig.advance(x, xs[i], y, h);
            x = xs[i];
            B[i] = y;
        }
    }
    {
        cplx m = s.family == Family::Nu ? 0.0 : s.m;
        cplx a1 = (4.0 * m * m - 1.0) / 8.0;
        double xf = std::max(g.x_far, xs.back() * 1.5);
        cplx u = 1.0 + a1 / (k * xf);
        cplx du = -k * u - a1 / (k * xf * xf);
        Integrator<3> ig{rhs(-1.0), cfg.ode_tol};
        State<3> y{u, du, 0.0};
        double x = xf, h = 0;
        for (size_t i = xs.size(); i-- > 0;) {
            ig.advance(x, xs[i], y, h);
            x = xs[i];
            Dv[i] = y;
        }
    }
    std::vector<cplx> out(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        cplx W = B[i][0] * Dv[i][1] - B[i][1] * Dv[i][0];
        out[i] = -(Dv[i][0] * B[i][2] + B[i][0] * Dv[i][2]) / W;
    }
    return out;
}

}  // namespace halfline::oracle
