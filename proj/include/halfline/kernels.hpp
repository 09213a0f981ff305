#pragma once
// Pointwise resolvent, boundary-value, spectral-density and projection kernels.

#include <cmath>
#include <complex>
#include <functional>

#include "halfline/operators.hpp"
#include "halfline/quad.hpp"
#include "halfline/specfun.hpp"

namespace halfline {

enum class Regime { below_diagonal, above_diagonal };  // x <= y, x > y

struct KernelValue {
    cplx value{};
    Regime regime = Regime::below_diagonal;
};

inline constexpr double pole_guard = 1e-12;

namespace detail {

inline void check_k(cplx k) {
    if (!(k.real() > 0)) throw domain_error("kernel: need Re k > 0");
}
inline void check_xy(double x, double y) {
    if (!(x > 0 && y > 0)) throw domain_error("kernel: need x, y > 0");
}
inline Regime regime(double x, double y) { return x <= y ? Regime::below_diagonal : Regime::above_diagonal; }

// (k/2)^{2m}, principal branch
inline cplx half_pow(cplx k, cplx m) { return std::exp(2.0 * m * std::log(k / 2.0)); }

}  // namespace detail

inline KernelValue resolvent_hm(cplx m, cplx k, double x, double y) {
    detail::check_k(k);
    detail::check_xy(x, y);
    if (!(m.real() > -1)) throw domain_error("resolvent_hm: need Re m > -1");
    double lo = std::min(x, y), hi = std::max(x, y);
    return {bessel_i(m, k * lo) * bessel_k(m, k * hi) / k, detail::regime(x, y)};
}

// rank-one projection P_m(-k^2) = (sin(pi m)/m) k Ka_m(kx) Ka_m(ky), pi k Ka_0 Ka_0 at m = 0
inline cplx projection_pm(cplx m, cplx k, double x, double y) {
    detail::check_k(k);
    detail::check_xy(x, y);
    if (!(std::abs(m.real()) < 1)) throw domain_error("projection_pm: need |Re m| < 1");
    cplx c = m == 0.0 ? cplx(pi) : std::sin(pi * m) / m;
    return c * k * bessel_k(m, k * x) * bessel_k(m, k * y);
}

struct PoleInfo {
    cplx energy;  // -k^2 at the offending point
};

inline KernelValue resolvent_hmk(cplx m, const ExtendedParam& kappa, cplx k, double x, double y) {
    detail::check_k(k);
    detail::check_xy(x, y);
    ExtendedParam sv = varsigma(m, kappa);
    cplx q = detail::half_pow(k, m);
    cplx a = sv.num() * q, b = sv.den();  // varsigma (k/2)^{2m} = a/b
    cplx den = b - a;
    if (std::abs(den) < pole_guard * std::max(std::abs(a), std::abs(b)))
        throw pole_error("resolvent_hmk: -k^2 is an eigenvalue", -k * k);
    double lo = std::min(x, y), hi = std::max(x, y);
    cplx left = b == 0.0 ? -a * bessel_i(-m, k * lo) : b * bessel_i(m, k * lo) - a * bessel_i(-m, k * lo);
    return {left * bessel_k(m, k * hi) / (k * den), detail::regime(x, y)};
}

// R_m - [s/(1-s)] (m/k^2) P_m with s = varsigma (k/2)^{2m}
inline cplx resolvent_hmk_decomposed(cplx m, const ExtendedParam& kappa, cplx k, double x, double y) {
    ExtendedParam sv = varsigma(m, kappa);
    cplx q = detail::half_pow(k, m);
    cplx a = sv.num() * q, b = sv.den();
    cplx den = b - a;
    if (std::abs(den) < pole_guard * std::max(std::abs(a), std::abs(b)))
        throw pole_error("resolvent_hmk: -k^2 is an eigenvalue", -k * k);
    return resolvent_hm(m, k, x, y).value - a / den * (m / (k * k)) * projection_pm(m, k, x, y);
}

inline KernelValue resolvent_h0nu(const ExtendedParam& nu, cplx k, double x, double y) {
    detail::check_k(k);
    detail::check_xy(x, y);
    cplx G = euler_gamma + std::log(k / 2.0);
    cplx D = nu.den() * G - nu.num();  // den * (gamma + ln(k/2) - nu)
    if (std::abs(D) < pole_guard * std::max(std::abs(nu.den() * G), std::abs(nu.num())))
        throw pole_error("resolvent_h0nu: -k^2 is an eigenvalue", -k * k);
    double lo = std::min(x, y), hi = std::max(x, y);
    cplx c = pi * nu.den() / (2.0 * D);
    cplx left = bessel_i(0.0, k * lo) + c * bessel_k(0.0, k * lo);
    return {left * bessel_k(0.0, k * hi) / k, detail::regime(x, y)};
}

// R_0 + P_0 / (2 k^2 (gamma + ln(k/2) - nu))
inline cplx resolvent_h0nu_decomposed(const ExtendedParam& nu, cplx k, double x, double y) {
    cplx G = euler_gamma + std::log(k / 2.0);
    cplx D = nu.den() * G - nu.num();
    if (std::abs(D) < pole_guard * std::max(std::abs(nu.den() * G), std::abs(nu.num())))
        throw pole_error("resolvent_h0nu: -k^2 is an eigenvalue", -k * k);
    return resolvent_hm(0.0, k, x, y).value + nu.den() / (2.0 * k * k * D) * projection_pm(0.0, k, x, y);
}

inline KernelValue resolvent(const OperatorSpec& s, cplx k, double x, double y) {
    switch (s.family) {
        case Family::Homogeneous: return resolvent_hm(s.m, k, x, y);
        case Family::Kappa: return resolvent_hmk(s.m, s.kappa, k, x, y);
        case Family::Nu: return resolvent_h0nu(s.nu, k, x, y);
    }
    return {};
}

// boundary values R(k^2 +- i0) for k > 0, side = +1 or -1
inline KernelValue boundary_resolvent(const OperatorSpec& s, double k, int side, double x, double y) {
    if (!(k > 0)) throw domain_error("boundary_resolvent: need k > 0");
    detail::check_xy(x, y);
    double sg = side >= 0 ? 1.0 : -1.0;
    double lo = std::min(x, y), hi = std::max(x, y);
    Regime rg = detail::regime(x, y);
    switch (s.family) {
        case Family::Homogeneous:
            return {sg * iu / k * bessel_j(s.m, k * lo) * hankel_pm(s.m, side, k * hi), rg};
        case Family::Kappa: {
            cplx m = s.m;
            ExtendedParam sv = varsigma(m, s.kappa);
            cplx a = sv.num() * detail::half_pow(k, m), b = sv.den();
            cplx den = b - a * std::exp(-sg * iu * pi * m);
            if (std::abs(den) < pole_guard * std::max(std::abs(a), std::abs(b)))
                throw exceptional_error("boundary_resolvent: k lies on the exceptional set");
            cplx left = b * bessel_j(m, k * lo) - a * bessel_j(-m, k * lo);
            return {sg * iu / (k * den) * left * hankel_pm(m, side, k * hi), rg};
        }
        case Family::Nu: {
            cplx G = euler_gamma + std::log(k / 2.0);
            cplx c = s.nu.den() * G - s.nu.num();
            cplx den = c - sg * iu * (pi / 2) * s.nu.den();
            if (std::abs(den) < pole_guard * std::max(std::abs(c), std::abs(s.nu.den())))
                throw exceptional_error("boundary_resolvent: k lies on the exceptional set");
            cplx left = c * bessel_j(0.0, k * lo) - (pi / 2) * s.nu.den() * neumann(0.0, k * lo);
            return {sg * iu / (k * den) * left * hankel_pm(0.0, side, k * hi), rg};
        }
    }
    return {};
}

// regular generalized eigenfunction phi_k(x) and scalar D(k) with p(k^2; x, y) = phi_k(x) phi_k(y) / (pi k D(k))
inline cplx density_mode(const OperatorSpec& s, double k, double x) {
    switch (s.family) {
        case Family::Homogeneous: return bessel_j(s.m, k * x);
        case Family::Kappa: {
            ExtendedParam sv = varsigma(s.m, s.kappa);
            cplx a = sv.num() * detail::half_pow(k, s.m), b = sv.den();
            return b * bessel_j(s.m, k * x) - a * bessel_j(-s.m, k * x);
        }
        case Family::Nu: {
            const auto& v = s.nu;
            cplx c = v.den() * (euler_gamma + std::log(k / 2.0)) - v.num();
            return c * bessel_j(0.0, k * x) - (pi / 2) * v.den() * neumann(0.0, k * x);
        }
    }
    return {};
}

// one Hankel half of density_mode, continued to complex t: phi_k = sum over sign of density_mode_half
inline cplx density_mode_half(const OperatorSpec& s, double k, cplx t, int sign) {
    double sg = sign >= 0 ? 1.0 : -1.0;
    switch (s.family) {
        case Family::Homogeneous: return 0.5 * hankel_pm(s.m, sign, k * t);
        case Family::Kappa: {
            ExtendedParam sv = varsigma(s.m, s.kappa);
            cplx a = sv.num() * detail::half_pow(k, s.m), b = sv.den();
            return 0.5 * (b - a * std::exp(sg * iu * pi * s.m)) * hankel_pm(s.m, sign, k * t);
        }
        case Family::Nu: {
            const auto& v = s.nu;
            cplx c = v.den() * (euler_gamma + std::log(k / 2.0)) - v.num();
            return 0.5 * (c + sg * iu * (pi / 2) * v.den()) * hankel_pm(0.0, sign, k * t);
        }
    }
    return {};
}

inline cplx density_denominator(const OperatorSpec& s, double k) {
    switch (s.family) {
        case Family::Homogeneous: return 1.0;
        case Family::Kappa: {
            cplx m = s.m;
            ExtendedParam sv = varsigma(m, s.kappa);
            cplx a = sv.num() * detail::half_pow(k, m), b = sv.den();
            cplx sn = std::sin(pi * m), cs = std::cos(pi * m);
            cplx denom = b * b * sn * sn + (b * cs - a) * (b * cs - a);
            if (std::abs(denom) < pole_guard * std::max(std::norm(a), std::norm(b)))
                throw exceptional_error("spectral_density: k lies on the exceptional set");
            return denom;
        }
        case Family::Nu: {
            const auto& v = s.nu;
            cplx c = v.den() * (euler_gamma + std::log(k / 2.0)) - v.num();
            cplx denom = c * c + (pi / 2) * (pi / 2) * v.den() * v.den();
            if (std::abs(denom) < pole_guard * std::max(std::norm(c), std::norm(v.den())))
                throw exceptional_error("spectral_density: k lies on the exceptional set");
            return denom;
        }
    }
    return 1.0;
}

inline cplx spectral_density(const OperatorSpec& s, double k, double x, double y) {
    if (!(k > 0)) throw domain_error("spectral_density: need k > 0");
    detail::check_xy(x, y);
    cplx d = density_denominator(s, k);
    return density_mode(s, k, x) * density_mode(s, k, y) / (pi * k * d);
}

// (R(k^2 + i0) - R(k^2 - i0)) / 2 pi i
inline cplx density_from_boundary(const OperatorSpec& s, double k, double x, double y) {
    return (boundary_resolvent(s, k, +1, x, y).value - boundary_resolvent(s, k, -1, x, y).value) / (2.0 * pi * iu);
}

// kernel of 1_[a,b](H): integral of 2 p(k^2) k dk over [sqrt a, sqrt b]
inline QuadResult projection_interval(const OperatorSpec& s, double a, double b, double x, double y,
                                      const QuadPolicy& pol = default_quad_policy()) {
    if (!(0 < a && a < b)) throw domain_error("projection_interval: need 0 < a < b");
    if (s.family != Family::Homogeneous && classify(s).exceptional)
        throw exceptional_error("projection_interval: exceptional parameters");
    return integrate([&](double k) { return 2.0 * k * spectral_density(s, k, x, y); }, std::sqrt(a), std::sqrt(b), pol);
}

// Riesz projection at an isolated eigenvalue z0: -(1/2 pi i) of the resolvent around a circle
inline cplx riesz_projection(const OperatorSpec& s, cplx z0, double radius, double x, double y, int nodes = 128) {
    cplx acc = 0;
    for (int j = 0; j < nodes; ++j) {
        double th = 2 * pi * (j + 0.5) / nodes;
        cplx e = std::exp(iu * th);
        cplx z = z0 + radius * e;
        cplx k = std::sqrt(-z);
        acc += resolvent(s, k, x, y).value * (iu * radius * e);
    }
    acc *= 2 * pi / nodes;
    return -acc / (2.0 * pi * iu);
}

// (2/pi) int_0^inf Ja_m(xp) Ja_m(yp) / (p^2 + k^2) dp. Up to a cutoff the integral runs along the
// real axis; beyond it Ja Ja is split into Hankel products, each taken along a ray where it decays.
inline QuadResult resolvent_hm_by_quadrature(cplx m, cplx k, double x, double y, const QuadPolicy& pol = default_quad_policy()) {
    double P = std::max({30.0 / std::min(x, y), 4 * std::abs(k), 4 * std::abs(k.imag()) + 1});
    auto f = [&](double p) { return bessel_j(m, x * p) * bessel_j(m, y * p) / (p * p + k * k); };
    QuadResult r = integrate_log_endpoint(f, 1.0 / std::max(x, y), pol);
    // panels of about one period on the finite stretch
    double a = 1.0 / std::max(x, y), step = pi / (x + y);
    while (a < P) {
        double b = std::min(P, a + 4 * step);
        r += integrate(f, a, b, pol);
        a = b;
    }
    for (int sa : {+1, -1})
        for (int sb : {+1, -1}) {
            auto g = [&](cplx p) { return 0.25 * hankel_pm(m, sa, x * p) * hankel_pm(m, sb, y * p) / (p * p + k * k); };
            double w = sa * x + sb * y;
            if (std::abs(w) < 1e-12 * (x + y)) {
                // no oscillation: p = P/u on (0, 1]
                auto h = [&](double u) { return g(cplx(P / u)) * (P / (u * u)); };
                r += integrate(h, 0.0, 1.0, pol);
            } else {
                cplx dir = w > 0 ? iu : -iu;
                r += integrate_ray(g, cplx(P), dir, pol, std::min(1.0, 2.0 / std::abs(w)));
            }
        }
    r.value *= 2.0 / pi;
    r.error_estimate *= 2.0 / pi;
    return r;
}

}  // namespace halfline
