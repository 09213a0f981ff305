#pragma once
// Adaptive G7K15 quadrature on intervals and on (0, inf), complex rays, and a
// complex secant root finder.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <queue>
#include <vector>

#include "halfline/types.hpp"

namespace halfline {

enum class TailStrategy { exponential_bound, oscillatory_partition };

struct QuadPolicy {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    int max_subdivisions = 4000;
    TailStrategy tail = TailStrategy::exponential_bound;
    // oscillatory partition: tail breakpoints at (n pi + phase)/omega
    double omega = 1.0;
    double phase = 0.0;
};

struct QuadResult {
    cplx value{};
    double error_estimate = 0;
    long evaluations = 0;
    bool converged = true;

    QuadResult& operator+=(const QuadResult& o) {
        value += o.value;
        error_estimate += o.error_estimate;
        evaluations += o.evaluations;
        converged = converged && o.converged;
        return *this;
    }
};

using RealIntegrand = std::function<cplx(double)>;
using ComplexIntegrand = std::function<cplx(cplx)>;

// HALFLINE_QUAD_TOL, when set, replaces the relative tolerance of default policies
inline QuadPolicy default_quad_policy() {
    QuadPolicy p;
    if (const char* s = std::getenv("HALFLINE_QUAD_TOL")) {
        char* end = nullptr;
        double v = std::strtod(s, &end);
        if (end != s && v > 0) {
            p.rel_tol = v;
            p.abs_tol = std::min(p.abs_tol, v * 1e-2);
        }
    }
    return p;
}

namespace detail {

inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    cplx val;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

inline Panel gk15(const RealIntegrand& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx rk = fc * wgk[7], rg = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        double dx = h * xgk[j];
        cplx f1 = f(c - dx), f2 = f(c + dx);
        rk += wgk[j] * (f1 + f2);
        if (j % 2 == 1) rg += wg[j / 2] * (f1 + f2);
    }
    rk *= h;
    rg *= h;
    if (!finite(rk)) throw convergence_error("quadrature: integrand produced a non-finite value");
    return {a, b, rk, std::abs(rk - rg)};
}

}  // namespace detail

inline QuadResult integrate(const RealIntegrand& f, double a, double b, const QuadPolicy& pol = default_quad_policy()) {
    QuadResult r;
    if (a == b) return r;
    std::priority_queue<detail::Panel> q;
    auto p0 = detail::gk15(f, a, b);
    q.push(p0);
    cplx total = p0.val;
    double err = p0.err;
    r.evaluations = 15;
    int n = 1;
    while (err > std::max(pol.abs_tol, pol.rel_tol * std::abs(total))) {
        if (n >= pol.max_subdivisions) {
            r.converged = false;
            break;
        }
        auto p = q.top();
        q.pop();
        double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) {  // interval exhausted at double resolution
            r.converged = false;
            q.push(p);
            break;
        }
        auto l = detail::gk15(f, p.a, mid), rr = detail::gk15(f, mid, p.b);
        total += l.val + rr.val - p.val;
        err += l.err + rr.err - p.err;
        q.push(l);
        q.push(rr);
        r.evaluations += 30;
        ++n;
    }
    // re-add to limit drift from incremental updates
    total = 0;
    err = 0;
    while (!q.empty()) {
        total += q.top().val;
        err += q.top().err;
        q.pop();
    }
    r.value = total;
    r.error_estimate = err;
    return r;
}

// integral over [a, inf) of an exponentially decaying integrand: panels of doubling length
inline QuadResult integrate_exp_tail(const RealIntegrand& f, double a, const QuadPolicy& pol = default_quad_policy(),
                                     double first_len = 1.0) {
    QuadResult r;
    double len = first_len, x = a;
    int quiet = 0;
    for (int it = 0; it < 200; ++it) {
        auto p = integrate(f, x, x + len, pol);
        r += p;
        x += len;
        double scale = std::max(pol.abs_tol, pol.rel_tol * std::abs(r.value));
        quiet = std::abs(p.value) < 0.01 * scale ? quiet + 1 : 0;
        if (quiet >= 2) return r;
        len = std::min(2 * len, 16.0 * first_len);
        if (x > 1e8) break;
    }
    r.converged = false;
    return r;
}

// integral over (0, b] with x = b e^{-u}; takes care of logarithmic and mild
// power singularities at 0
inline QuadResult integrate_log_endpoint(const RealIntegrand& f, double b, const QuadPolicy& pol = default_quad_policy()) {
    auto g = [&](double u) -> cplx {
        double x = b * std::exp(-u);
        if (x == 0) return 0.0;
        return f(x) * x;
    };
    return integrate_exp_tail(g, 0.0, pol, 2.0);
}

// Sum of panel integrals between consecutive breakpoints (n pi + phase)/omega,
// accelerated by repeated averaging of the partial sums.
inline QuadResult integrate_oscillatory_tail(const RealIntegrand& f, double a, const QuadPolicy& pol = default_quad_policy()) {
    QuadResult r;
    double w = pol.omega;
    double n0 = std::ceil((a * w - pol.phase) / pi);
    double first = (n0 * pi + pol.phase) / w;
    if (first <= a) first += pi / w;
    auto head = integrate(f, a, first, pol);
    r += head;
    std::vector<cplx> partial;
    cplx s = 0;
    double x = first;
    cplx prev_est = 0;
    int agree = 0;
    for (int j = 0; j < 4000; ++j) {
        double xn = x + pi / w;
        auto p = integrate(f, x, xn, pol);
        r.evaluations += p.evaluations;
        r.converged = r.converged && p.converged;
        s += p.value;
        partial.push_back(s);
        x = xn;
        if (partial.size() < 6) continue;
        // averaging table over the last K partial sums
        size_t K = std::min<size_t>(partial.size(), 24);
        std::vector<cplx> t(partial.end() - K, partial.end());
        for (size_t lvl = 1; lvl < K; ++lvl)
            for (size_t i = 0; i + lvl < K; ++i) t[i] = 0.5 * (t[i] + t[i + 1]);
        cplx est = t[0];
        double tol = std::max(pol.abs_tol, pol.rel_tol * std::abs(est + head.value));
        if (std::abs(est - prev_est) < tol) {
            if (++agree >= 2) {
                r.value += est;
                r.error_estimate += std::abs(est - prev_est);
                return r;
            }
        } else {
            agree = 0;
        }
        prev_est = est;
    }
    r.value += prev_est;
    r.converged = false;
    return r;
}

inline QuadResult integrate_halfline(const RealIntegrand& f, const QuadPolicy& pol = default_quad_policy(), double split = 1.0) {
    QuadResult r = integrate_log_endpoint(f, split, pol);
    if (pol.tail == TailStrategy::oscillatory_partition)
        r += integrate_oscillatory_tail(f, split, pol);
    else
        r += integrate_exp_tail(f, split, pol);
    return r;
}

// int_0^inf f(p0 + dir s) dir ds for integrands decaying along the ray
inline QuadResult integrate_ray(const ComplexIntegrand& f, cplx p0, cplx dir, const QuadPolicy& pol = default_quad_policy(),
                                double first_len = 1.0) {
    auto g = [&](double s) -> cplx { return f(p0 + dir * s) * dir; };
    return integrate_exp_tail(g, 0.0, pol, first_len);
}

// n-point Gauss-Legendre nodes/weights on [-1, 1] (Newton on the three-term recurrence)
struct GaussRule {
    std::vector<double> x, w;
};

inline GaussRule gauss_legendre(int n) {
    GaussRule g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5)), dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        g.x[i] = -x;
        g.x[n - 1 - i] = x;
        g.w[i] = g.w[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
    }
    return g;
}

// composite rule: `per_panel` Gauss points on each [breaks[i], breaks[i+1]]
inline GaussRule composite_rule(const std::vector<double>& breaks, int per_panel = 16) {
    static thread_local std::vector<GaussRule> cache(65);
    if (per_panel < 1 || per_panel > 64) throw domain_error("composite_rule: 1..64 points per panel");
    if (cache[per_panel].x.empty()) cache[per_panel] = gauss_legendre(per_panel);
    const GaussRule& g = cache[per_panel];
    GaussRule r;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        double c = 0.5 * (breaks[i] + breaks[i + 1]), h = 0.5 * (breaks[i + 1] - breaks[i]);
        for (int j = 0; j < per_panel; ++j) {
            r.x.push_back(c + h * g.x[j]);
            r.w.push_back(h * g.w[j]);
        }
    }
    return r;
}

struct RootResult {
    cplx root{};
    cplx residual{};
    int iterations = 0;
    bool converged = false;
};

// complex secant iteration; stops when the step drops below tol (relative to |root|)
inline RootResult find_root(const ComplexIntegrand& g, cplx seed, double tol = 1e-13, int max_iter = 100, cplx second = cplx(NAN, NAN)) {
    RootResult res;
    cplx x0 = seed;
    cplx x1 = std::isnan(second.real()) ? seed + (1e-4 * std::abs(seed) + 1e-6) * cplx(1, 0.5) : second;
    cplx g0 = g(x0), g1 = g(x1);
    for (int it = 0; it < max_iter; ++it) {
        res.iterations = it + 1;
        cplx d = g1 - g0;
        if (d == 0.0) break;
        cplx x2 = x1 - g1 * (x1 - x0) / d;
        if (!finite(x2)) break;
        x0 = x1;
        g0 = g1;
        x1 = x2;
        g1 = g(x1);
        if (std::abs(x1 - x0) <= tol * std::max(1.0, std::abs(x1)) || g1 == 0.0) {
            res.converged = true;
            break;
        }
    }
    res.root = x1;
    res.residual = g1;
    return res;
}

}  // namespace halfline
