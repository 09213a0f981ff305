#pragma once
// Checks that pit the closed-form kernels against the ODE oracle and against
// quadrature. Shared by the CLI `check` command and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "halfline/kernels.hpp"
#include "halfline/operators.hpp"
#include "halfline/oracle.hpp"
#include "halfline/quad.hpp"

namespace halfline {

// int_0^inf R(x, y) f(y) dy by quadrature, split at the diagonal
inline cplx apply_kernel(const OperatorSpec& s, cplx k, const std::function<cplx(double)>& f, double x) {
    auto g = [&](double y) { return resolvent(s, k, x, y).value * f(y); };
    QuadPolicy p;
    p.rel_tol = 1e-11;
    p.abs_tol = 1e-15;
    QuadResult r = integrate_log_endpoint(g, x, p);
    r += integrate_exp_tail(g, x, p, 1.0 / k.real());
    return r.value;
}

struct BvpReport {
    double max_rel_err = 0;
    std::vector<double> xs;
    std::vector<cplx> oracle, kernel;
};

// (L + k^2) u = f solved by the oracle vs the kernel applied to f; sup-norm relative error
inline BvpReport resolvent_bvp_check(const OperatorSpec& s, cplx k, const std::function<cplx(double)>& f,
                                     std::vector<double> xs = {0.25, 0.5, 1, 1.5, 2, 3, 5}) {
    BvpReport r;
    std::sort(xs.begin(), xs.end());
    r.xs = xs;
    r.oracle = oracle::resolvent_apply(s, k, f, xs);
    double sup = 0, err = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        r.kernel.push_back(apply_kernel(s, k, f, xs[i]));
        sup = std::max(sup, std::abs(r.kernel[i]));
        err = std::max(err, std::abs(r.kernel[i] - r.oracle[i]));
    }
    r.max_rel_err = err / sup;
    return r;
}

struct EigenCheck {
    OperatorSpec spec;
    cplx closed_form{};
    cplx refined{};
    double rel_diff = 0;
    double residual = 0;
    bool converged = false;
};

// closed-form eigenvalues vs shooting roots; only records with 1e-3 <= |z| <= 1e3 are shot
inline std::vector<EigenCheck> eigen_oracle_check(const OperatorSpec& s, size_t max_records = 3) {
    std::vector<EigenCheck> out;
    EigenWindow w;
    w.z_min = 1e-3;
    w.z_max = 1e3;
    for (auto& r : eigenvalues(s, w)) {
        if (out.size() >= max_records) break;
        if (std::abs(r.w.imag()) > 2.8) continue;  // too close to the cut for a cheap far-field
        EigenCheck c;
        c.spec = s;
        c.closed_form = r.z;
        auto ref = oracle::refine_eigenvalue(s, r.z * cplx(1 + 2e-4, -1e-4));
        c.refined = ref.z;
        c.rel_diff = std::abs(ref.z - r.z) / std::abs(r.z);
        c.residual = std::abs(ref.residual);
        c.converged = ref.converged;
        out.push_back(c);
    }
    return out;
}

// smallest normalized shooting residual over a grid of z in the cut plane
inline double min_residual_on_grid(const OperatorSpec& s) {
    double best = 1e300;
    for (double r : {0.05, 0.3, 1.0, 3.0, 10.0})
        for (double th : {-2.5, -1.5, -0.5, 0.0, 0.5, 1.5, 2.5}) {
            cplx z = -r * std::exp(iu * th);  // arg(-z) = th in (-pi, pi)
            best = std::min(best, std::abs(oracle::eigen_residual(s, z)));
        }
    return best;
}

// 12 Kappa specs across real/imaginary/complex m and kappa, plus two nu specs
inline std::vector<OperatorSpec> oracle_battery() {
    // kappa giving a prescribed varsigma
    auto with_varsigma = [](cplx m, cplx sv) { return OperatorSpec::kappa_family(m, sv * gamma(m) / gamma(-m)); };
    return {
        OperatorSpec::kappa_family(0.5, -1.0),
        OperatorSpec::kappa_family(0.3, -2.0),
        OperatorSpec::kappa_family(-0.4, -0.5),
        OperatorSpec::kappa_family(0.7, -3.0),
        OperatorSpec::kappa_family({0.5, 0.5}, cplx(-1, 0.2)),
        with_varsigma({0.3, 0.1}, 1.5 * std::exp(cplx(0, 0.2))),
        OperatorSpec::kappa_family({0.2, 0.6}, cplx(-1, 0.5)),
        OperatorSpec::kappa_family(0.5, cplx(-1, 1)),
        OperatorSpec::kappa_family({0.6, -0.2}, -1.0),
        OperatorSpec::kappa_family({0.1, 0.5}, 1.0),
        OperatorSpec::kappa_family({0, 0.5}, 1.0),
        with_varsigma({0, 0.3}, 1.0),
        OperatorSpec::nu_family(euler_gamma),
        OperatorSpec::nu_family(cplx(0.3, 0.5)),
    };
}

// specs whose point spectrum is empty
inline std::vector<OperatorSpec> empty_spectrum_battery() {
    return {
        OperatorSpec::kappa_family(0.3, 1.0),
        OperatorSpec::kappa_family(0.5, 3.0),
        OperatorSpec::homogeneous(0.4),
        OperatorSpec::nu_family(cplx(0.5, 2.0)),
    };
}

// C-infinity step: 1 on [0, 1/2], 0 on [1, inf)
inline double smooth_cutoff(double s) {
    if (s <= 0.5) return 1;
    if (s >= 1) return 0;
    double u = 2 * (s - 0.5);
    double a = std::exp(-1 / u), b = std::exp(-1 / (1 - u));
    return b / (a + b);
}

// polynomial extrapolation to h = 0 (Neville) from samples (h_i, v_i)
inline cplx extrapolate_to_zero(const std::vector<double>& h, std::vector<cplx> v) {
    size_t n = v.size();
    for (size_t l = 1; l < n; ++l)
        for (size_t i = 0; i + l < n; ++i) v[i] = (h[i + l] * v[i] - h[i] * v[i + 1]) / (h[i + l] - h[i]);
    return v[0];
}

struct CompositionReport {
    cplx composed{};  // int_0^inf E1(x, t) E2(t, y) dt
    cplx expected{};  // kernel of E1 E2
    double abs_err = 0;
};

// int_0^inf 1_[a1,b1](x, t) 1_[a2,b2](t, y) dt by double quadrature; the projection
// kernels are sums over a fixed Gauss grid in k.
//  - overlapping intervals: the t-integral is cut off smoothly at T, 2T, 4T, 8T and
//    extrapolated in 1/T (oscillating parts of the tail die under the smooth cutoff,
//    the rest is a series in 1/T).
//  - disjoint intervals: past t0 each kernel is split into its two Hankel halves; every
//    product of halves has a frequency of fixed sign and is integrated along a vertical ray.
inline CompositionReport projection_composition(const OperatorSpec& s, double a1, double b1, double a2, double b2, double x,
                                                double y, double T = 25) {
    double lo = std::max(a1, a2), hi = std::min(b1, b2);
    bool disjoint = !(lo < hi);
    double t0 = 20;
    double tmax = disjoint ? t0 : 8 * T;
    auto spectral_grid = [&](double a, double b) {
        double ka = std::sqrt(a), kb = std::sqrt(b);
        int np = 4 + int(std::ceil((kb - ka) * tmax / 5));
        std::vector<double> br;
        for (int i = 0; i <= np; ++i) br.push_back(ka + (kb - ka) * i / np);
        return composite_rule(br, 16);
    };
    GaussRule g1 = spectral_grid(a1, b1), g2 = spectral_grid(a2, b2);
    // weights 2 phi_k(x) / (pi D(k)) dk
    auto weights = [&](const GaussRule& g, double pt) {
        std::vector<cplx> w(g.x.size());
        for (size_t i = 0; i < w.size(); ++i)
            w[i] = g.w[i] * 2.0 * density_mode(s, g.x[i], pt) / (pi * density_denominator(s, g.x[i]));
        return w;
    };
    std::vector<cplx> w1 = weights(g1, x), w2 = weights(g2, y);
    auto kernel = [&](const GaussRule& g, const std::vector<cplx>& w, double t) {
        cplx acc = 0;
        for (size_t i = 0; i < w.size(); ++i) acc += w[i] * density_mode(s, g.x[i], t);
        return acc;
    };
    auto half = [&](const GaussRule& g, const std::vector<cplx>& w, cplx t, int sign) {
        cplx acc = 0;
        for (size_t i = 0; i < w.size(); ++i) acc += w[i] * density_mode_half(s, g.x[i], t, sign);
        return acc;
    };
    std::vector<double> br{0};
    for (double e = 1e-6; e < 1; e *= 4) br.push_back(e);
    for (double t = 1; t <= tmax + 1e-9; t += 1) br.push_back(t);
    GaussRule tq = composite_rule(br, 16);
    std::vector<cplx> prod(tq.x.size());
    for (size_t j = 0; j < tq.x.size(); ++j) prod[j] = tq.w[j] * kernel(g1, w1, tq.x[j]) * kernel(g2, w2, tq.x[j]);
    CompositionReport r;
    if (disjoint) {
        cplx acc = 0;
        for (cplx p : prod) acc += p;
        std::vector<double> rb{0};
        for (double e = 0.5; e < 400; e *= 1.5) rb.push_back(e);
        GaussRule rq = composite_rule(rb, 16);
        bool first_below = b1 <= a2;
        for (int sa : {+1, -1})
            for (int sb : {+1, -1}) {
                // frequency sa k1 + sb k2 has a fixed sign: decay upward if positive
                bool up = sa == sb ? sa > 0 : (sa > 0) != first_below;
                cplx dir = up ? iu : -iu;
                for (size_t j = 0; j < rq.x.size(); ++j) {
                    cplx t = t0 + dir * rq.x[j];
                    acc += rq.w[j] * dir * half(g1, w1, t, sa) * half(g2, w2, t, sb);
                }
            }
        r.composed = acc;
    } else {
        std::vector<double> hs;
        std::vector<cplx> vals;
        for (double TT : {T, 2 * T, 4 * T, 8 * T}) {
            cplx acc = 0;
            for (size_t j = 0; j < tq.x.size(); ++j) acc += prod[j] * smooth_cutoff(tq.x[j] / TT);
            hs.push_back(1 / TT);
            vals.push_back(acc);
        }
        r.composed = extrapolate_to_zero(hs, vals);
    }
    r.expected = disjoint ? 0.0 : projection_interval(s, lo, hi, x, y).value;
    r.abs_err = std::abs(r.composed - r.expected);
    return r;
}

// Riesz projection at an eigenvalue z0 of a Kappa spec vs the rank-one kernel P_m(-k^2)
inline double riesz_vs_rank_one(const OperatorSpec& s, cplx z0, double x, double y) {
    cplx k = std::sqrt(-z0);
    double radius = 0.5 * std::min(std::abs(z0), 1.0);
    cplx rz = riesz_projection(s, z0, radius, x, y, 256);
    cplx p = projection_pm(s.m, k, x, y);
    return std::abs(rz - p) / std::abs(p);
}

}  // namespace halfline
