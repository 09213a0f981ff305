#pragma once
// Wave-operator multipliers, scattering constants, diagonalized scattering multipliers and
// time-dependent probes.

#include <cmath>
#include <optional>
#include <vector>

#include "halfline/transforms.hpp"

namespace halfline {

struct ScatteringPair {
    OperatorSpec left, right;  // (H, H'): limits of e^{itH} e^{-itH'}
    int sign = +1;
};

inline cplx scattering_constant(cplx m, cplx m2) {
    if (!(m.real() > -1 && m2.real() > -1)) throw domain_error("scattering_constant: need Re m, Re m' > -1");
    return std::exp(-iu * pi * (m - m2));
}

// order of a spec that is an H_m in disguise (kappa in {0, inf}, nu = inf)
inline std::optional<cplx> homogeneous_order(const OperatorSpec& s) {
    switch (s.family) {
        case Family::Homogeneous: return s.m;
        case Family::Kappa:
            if (s.kappa.is_zero()) return s.m;
            if (s.kappa.is_inf()) return -s.m;
            return std::nullopt;
        case Family::Nu:
            if (s.nu.is_inf()) return cplx(0.0);
            return std::nullopt;
    }
    return std::nullopt;
}

inline bool same_order(cplx a, cplx b) { return std::abs(a - b) < 1e-14; }

inline Multiplier wave_multiplier(const ScatteringPair& p) {
    auto m = homogeneous_order(p.left), m2 = homogeneous_order(p.right);
    if (!m || !m2) throw domain_error("wave_multiplier: unsupported pair (non-homogeneous: use scattering_diag)");
    Multiplier w;
    if (same_order(*m, -0.5) && same_order(*m2, 0.5))
        w = multiplier("wnd", {0.0, 0.0, p.sign});
    else if (same_order(*m, -*m2) && *m2 != 0.0)
        w = multiplier("wave_minus_m", {*m2, 0.0, p.sign});
    else if (same_order(*m, *m2 + 2.0))
        w = multiplier("wave_m_plus2", {*m2, 0.0, p.sign});
    else
        return multiplier("wave_mm'", {*m, *m2, p.sign});
    for (double t : {-3.0, 0.0, 0.7, 2.5}) {
        cplx g = wave_gamma_form(*m, *m2, p.sign, t);
        if (std::abs(w(t) - g) > 1e-9 * std::max(1.0, std::abs(g)))
            throw convergence_error("wave_multiplier: closed form disagrees with the Gamma-ratio form");
    }
    return w;
}

// x -> G^-_left(x) G^+_right(x)
inline Multiplier scattering_diag(const OperatorSpec& left, const OperatorSpec& right) {
    refuse_exceptional(left, "scattering_diag");
    refuse_exceptional(right, "scattering_diag");
    return {"scattering_diag", [left, right](double x) { return scattering_g(left, -1, x) * scattering_g(right, +1, x); }, true};
}

struct GCheckReport {
    double err_minus = 0, err_plus = 0;
    double max_err() const { return std::max(err_minus, err_plus); }
};

// closed-form G^s against the composition F^{s t} F^s on a spectral bump
inline GCheckReport g_quadrature_check(const OperatorSpec& s) {
    Grid X = halfline_grid(45.0), K = interval_grid(0.0, 4.0);
    auto g = sample([](double k) { return cplx(std::exp(-8 * (k - 2) * (k - 2))); }, K);
    GeneralizedTransform T(s, X, K);
    GCheckReport r;
    for (int sg : {-1, +1}) {
        auto composed = T.apply_transpose(sg, T.apply(sg, g));
        auto expected = g;
        for (size_t j = 0; j < K.size(); ++j) expected.values[j] *= scattering_g(s, sg, K.nodes[j]);
        (sg < 0 ? r.err_minus : r.err_plus) = l2_relative(composed, expected);
    }
    return r;
}

namespace detail {

// int conj(bhat_t) M ahat_t ds for chirped profiles, over the range where the integrand lives
inline cplx chirped_pairing(const GaussProfile& b, const std::function<cplx(double)>& M, const GaussProfile& a, double t) {
    GaussProfile bt = b.chirped(t), at = a.chirped(t);
    double rb = std::min(bt.beta.real(), at.beta.real());
    double S = 60 + 80 * std::abs(t) / rb;
    auto f = [&](double s) { return std::conj(bt.mellin(s)) * M(s) * at.mellin(s); };
    QuadResult r;
    double lo = t >= 0 ? -S : -60, hi = t >= 0 ? 60 : S;
    double step = 4.0;
    for (double x = lo; x < hi; x += step) r += integrate(f, x, std::min(hi, x + step));
    if (!r.converged) throw convergence_error("time probe: quadrature did not converge");
    return r.value;
}

inline void require_real_orders(cplx m, cplx m2) {
    if (m.imag() != 0 || m2.imag() != 0) throw domain_error("time probe: real orders only");
}

}  // namespace detail

struct MollerProbe {
    std::vector<double> times;
    std::vector<cplx> values;
    cplx limit{};  // <g, W^{sign} f>
    std::vector<double> deviations;
};

// <g, e^{itH} e^{-itH'} f> through H = F_m Q^2 F_m: transform, chirp, apply s_m(-A) s_m'(A) in
// Mellin space. f must be matched to the right order (alpha = m' + 1/2), g to the left one.
inline MollerProbe moller_time_probe(const ScatteringPair& p, const GaussProfile& f, const GaussProfile& g, const std::vector<double>& times) {
    auto mo = homogeneous_order(p.left), mo2 = homogeneous_order(p.right);
    if (!mo || !mo2) throw domain_error("moller_time_probe: homogeneous pairs only");
    cplx m = *mo, m2 = *mo2;
    detail::require_real_orders(m, m2);
    GaussProfile a = f.hankel_image(m2), b = g.hankel_image(m);
    auto M = [m, m2](double s) { return hankel_symbol(m, -s) * hankel_symbol(m2, s); };
    MollerProbe r;
    auto W = wave_multiplier(p);
    r.limit = mellin_pairing([&](double s) { return g.mellin(s); }, W.eval, [&](double s) { return f.mellin(s); }, 80.0);
    for (double t : times) {
        double ts = p.sign >= 0 ? t : -t;
        cplx v = detail::chirped_pairing(b, M, a, ts);
        r.times.push_back(ts);
        r.values.push_back(v);
        r.deviations.push_back(std::abs(v - r.limit));
    }
    return r;
}

struct PropagationProbe {
    cplx value{};
    cplx limit{};  // psi(+inf) <f1, f2>
    double deviation = 0;
};

// <f1, e^{itX^2} psi(-A) e^{-itX^2} f2> with psi(s) = s_m(-s) s_m'(s); on the line this is the
// triple integral with e^{2Q}, done here in the Mellin picture where the chirped profiles are explicit
inline PropagationProbe propagation_probe(cplx m, cplx m2, const GaussProfile& f1, const GaussProfile& f2, double t) {
    detail::require_real_orders(m, m2);
    auto psi_neg = [m, m2](double s) { return hankel_symbol(m, s) * hankel_symbol(m2, -s); };
    PropagationProbe r;
    r.value = detail::chirped_pairing(f1, psi_neg, f2, t);
    r.limit = std::exp(-iu * (pi / 2) * (m - m2)) * inner(f1, f2);
    r.deviation = std::abs(r.value - r.limit);
    return r;
}

}  // namespace halfline
