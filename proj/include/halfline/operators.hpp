#pragma once
// Parameter algebra for the families H_m, H_{m,kappa}, H_0^nu and their point spectra.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "halfline/spec.hpp"
#include "halfline/specfun.hpp"
#include "halfline/types.hpp"

namespace halfline {

struct Classification {
    bool homogeneous = false;
    bool self_adjoint = false;
    bool exceptional = false;
};

struct EigenvalueRecord {
    long j = 0;
    cplx w{};
    cplx z{};
    bool near_boundary = false;  // |Im w| within 1e-8 of pi
};

inline constexpr double exceptional_tol = 1e-10;
inline constexpr double boundary_warn_tol = 1e-8;

// varsigma = kappa Gamma(-m)/Gamma(m), kept projective
inline ExtendedParam varsigma(cplx m, const ExtendedParam& kappa) {
    return ExtendedParam(kappa.num() * gamma(-m), kappa.den() * gamma(m));
}

// kappa of the Kappa family obtained from nu by the blowup map (nu m - 1)/(nu m + 1)
inline ExtendedParam blowup(cplx m, const ExtendedParam& nu) {
    if (nu.is_inf()) return ExtendedParam(1.0);
    return ExtendedParam(nu.num() * m - nu.den(), nu.num() * m + nu.den());
}

namespace detail {

// Im w_j = c + j d with w_j = (Ln varsigma + 2 pi i j)/m
struct BranchLine {
    cplx alpha;  // principal log of varsigma
    double c, d;
};

inline BranchLine branch_line(cplx m, const ExtendedParam& sv) {
    cplx alpha = std::log(sv.num()) - std::log(sv.den());
    double n2 = std::norm(m);
    double c = (alpha / m).imag();
    double d = 2 * pi * m.real() / n2;
    return {alpha, c, d};
}

inline bool is_real(cplx z, double tol = 1e-14) { return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z.real())); }

}  // namespace detail

inline Classification classify(const OperatorSpec& s) {
    Classification c;
    switch (s.family) {
        case Family::Homogeneous:
            c.homogeneous = true;
            c.self_adjoint = detail::is_real(s.m);
            break;
        case Family::Kappa: {
            c.homogeneous = s.kappa.is_zero() || s.kappa.is_inf();
            bool m_real = detail::is_real(s.m);
            bool m_imag = std::abs(s.m.real()) <= 1e-14 * std::abs(s.m);
            bool k_real = s.kappa.is_inf() || detail::is_real(s.kappa.value());
            bool k_unit = !s.kappa.is_inf() && std::abs(std::abs(s.kappa.value()) - 1) < 1e-14;
            c.self_adjoint = (m_real && k_real) || (m_imag && k_unit);
            if (!c.homogeneous) {
                auto bl = detail::branch_line(s.m, varsigma(s.m, s.kappa));
                for (double target : {pi, -pi}) {
                    if (bl.d == 0) {
                        if (std::abs(bl.c - target) < exceptional_tol) c.exceptional = true;
                    } else {
                        double j = std::round((target - bl.c) / bl.d);
                        if (std::abs(bl.c + j * bl.d - target) < exceptional_tol) c.exceptional = true;
                    }
                }
            }
            break;
        }
        case Family::Nu:
            c.homogeneous = s.nu.is_inf();
            c.self_adjoint = s.nu.is_inf() || detail::is_real(s.nu.value());
            if (!s.nu.is_inf()) {
                double im = s.nu.value().imag();
                c.exceptional = std::abs(im - pi / 2) < exceptional_tol || std::abs(im + pi / 2) < exceptional_tol;
            }
            break;
    }
    return c;
}

struct EigenWindow {
    double z_min = 1e-12;
    double z_max = 1e12;
    size_t max_count = 10000;
    bool bounded = true;  // false: refuse infinite spectra instead of truncating
};

inline std::vector<EigenvalueRecord> eigenvalues(const OperatorSpec& s, const EigenWindow& win = {}) {
    std::vector<EigenvalueRecord> out;
    auto make = [](long j, cplx w) {
        EigenvalueRecord r;
        r.j = j;
        r.w = w;
        r.z = -4.0 * std::exp(-w);
        r.near_boundary = pi - std::abs(w.imag()) < boundary_warn_tol;
        return r;
    };
    if (s.family == Family::Homogeneous) return out;
    if (s.family == Family::Nu) {
        if (s.nu.is_inf()) return out;
        cplx w = 2.0 * (euler_gamma - s.nu.value());
        if (std::abs(w.imag()) < pi) out.push_back(make(0, w));
        return out;
    }
    if (s.kappa.is_zero() || s.kappa.is_inf()) return out;
    auto bl = detail::branch_line(s.m, varsigma(s.m, s.kappa));
    if (bl.d == 0) {
        if (!(std::abs(bl.c) < pi)) return out;
        if (!win.bounded) throw domain_error("eigenvalues: infinite point spectrum, a window is required");
        // Re w_j = Re(alpha/m) + 2 pi j Re(i/m); |z| = 4 e^{-Re w}
        double r0 = (bl.alpha / s.m).real();
        double r1 = (2 * pi * iu / s.m).real();
        double lo = -std::log(win.z_max / 4), hi = -std::log(win.z_min / 4);  // bounds on Re w
        double ja = (lo - r0) / r1, jb = (hi - r0) / r1;
        if (ja > jb) std::swap(ja, jb);
        long j0 = long(std::ceil(ja)), j1 = long(std::floor(jb));
        for (long j = j0; j <= j1; ++j) out.push_back(make(j, (bl.alpha + 2 * pi * iu * double(j)) / s.m));
    } else {
        double a = (-pi - bl.c) / bl.d, b = (pi - bl.c) / bl.d;
        if (a > b) std::swap(a, b);
        for (long j = long(std::floor(a)); j <= long(std::ceil(b)); ++j) {
            cplx w = (bl.alpha + 2 * pi * iu * double(j)) / s.m;
            if (std::abs(w.imag()) < pi) out.push_back(make(j, w));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        double ax = std::abs(x.z), ay = std::abs(y.z);
        if (ax != ay) return ax > ay;
        return x.j < y.j;
    });
    if (out.size() > win.max_count) out.resize(win.max_count);
    return out;
}

// #{j in Z : 0 < g + j < beta}, case analysis of the counting lemma
inline long lemma_count(double beta, double g) {
    auto is_int = [](double v) { return std::abs(v - std::round(v)) < 1e-12; };
    auto frac = [](double v) { return v - std::floor(v); };
    if (is_int(beta)) {
        long b = std::lround(beta);
        return is_int(g) ? b - 1 : b;
    }
    long fb = long(std::floor(beta));
    if (is_int(g) || frac(beta) <= frac(g)) return fb;
    return fb + 1;
}

struct EigenCount {
    bool infinite = false;
    long count = 0;
    long N = 0;                 // N < |m|^2/|Re m| <= N+1
    bool bracket_holds = true;  // count in {N, N+1}
    bool lemma_agrees = true;
};

inline EigenCount count_eigenvalues(cplx m, const ExtendedParam& kappa) {
    if (m == 0.0 || kappa.is_zero() || kappa.is_inf()) throw domain_error("count_eigenvalues: needs m != 0 and kappa not in {0, inf}");
    EigenCount r;
    auto bl = detail::branch_line(m, varsigma(m, kappa));
    if (bl.d == 0) {
        r.infinite = std::abs(bl.c) < pi;
        return r;
    }
    double a = (-pi - bl.c) / bl.d, b = (pi - bl.c) / bl.d;
    if (a > b) std::swap(a, b);
    for (long j = long(std::floor(a)); j <= long(std::ceil(b)); ++j) {
        double im = bl.c + double(j) * bl.d;
        if (std::abs(im) < pi) ++r.count;
    }
    double beta = std::norm(m) / std::abs(m.real());
    r.N = long(std::ceil(beta)) - 1;
    r.bracket_holds = r.count == r.N || r.count == r.N + 1;
    double g = bl.d > 0 ? (bl.c + pi) / bl.d : (pi - bl.c) / std::abs(bl.d);
    r.lemma_agrees = lemma_count(beta, g) == r.count;
    return r;
}

struct DilationResult {
    OperatorSpec spec;
    double energy_scale;  // U_tau H U_{-tau} = energy_scale * H(spec)
};

inline DilationResult dilation_transform(const OperatorSpec& s, double tau) {
    DilationResult r{s, std::exp(-2 * tau)};
    if (s.family == Family::Kappa) r.spec.kappa = s.kappa.scaled(std::exp(-2.0 * tau * s.m));
    if (s.family == Family::Nu && !s.nu.is_inf()) r.spec.nu = ExtendedParam(s.nu.value() + tau);
    return r;
}

inline OperatorSpec adjoint(const OperatorSpec& s) {
    OperatorSpec a = s;
    a.m = std::conj(s.m);
    a.kappa = s.kappa.conj();
    a.nu = s.nu.conj();
    return a;
}

// Kappa specs normalized to Re m >= 0 (Im m >= 0 when Re m = 0) using H_{m,kappa} = H_{-m,1/kappa}
inline OperatorSpec canonicalize(const OperatorSpec& s) {
    OperatorSpec c = s;
    if (s.family == Family::Kappa) {
        bool flip = s.m.real() < 0 || (s.m.real() == 0 && s.m.imag() < 0);
        if (flip) {
            c.m = -s.m;
            c.kappa = s.kappa.inverse();
        }
    }
    return c;
}

// residual of the defining condition kappa = Gamma(m)/Gamma(-m) (-z/4)^{-m}
inline double eigen_condition_residual(cplx m, const ExtendedParam& kappa, cplx z) {
    cplx rhs = gamma(m) / gamma(-m) * std::pow(-z / 4.0, -m);
    cplx k = kappa.value();
    return std::abs(k - rhs) / std::max(std::abs(k), 1e-300);
}

}  // namespace halfline
