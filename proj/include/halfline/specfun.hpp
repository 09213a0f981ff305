#pragma once
#define HALFLINE_SPECFUN_HPP 1
// Gamma/digamma and the Bessel family for dimension 1:
//   Ia = sqrt(pi z/2) I,  Ka = sqrt(2z/pi) K,  Ja, Ha^+-, Ya = sqrt(pi z/2) (J, H^+-, Y)
// Principal branches throughout, argument domain C \ (-inf, 0].

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include "halfline/types.hpp"

namespace halfline {

struct SeriesPolicy {
    double rel_tol = 1e-15;
    int max_terms = 300;
    double asymptotic_radius = 25.0;
    // cap on the large-argument expansion; it is truncated earlier at its smallest term
    int asymptotic_terms = 40;
};

namespace detail {

inline constexpr std::array<double, 9> lanczos_coef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline bool near_nonpositive_integer(cplx z) {
    if (std::abs(z.imag()) > 1e-14 || z.real() > 0.5) return false;
    double r = std::round(z.real());
    return r <= 0 && std::abs(z.real() - r) < 1e-14;
}

// log of Lanczos sum part, valid for Re z >= 0.5
inline cplx lanczos_log_gamma(cplx z) {
    z -= 1.0;
    cplx a = lanczos_coef[0];
    for (int i = 1; i < 9; ++i) a += lanczos_coef[i] / (z + double(i));
    cplx t = z + 7.5;
    return 0.5 * std::log(2 * pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace detail

inline cplx gamma(cplx z) {
    if (detail::near_nonpositive_integer(z)) throw pole_error("gamma: pole at non-positive integer", z);
    if (z.real() < 0.5) return pi / (std::sin(pi * z) * gamma(1.0 - z));
    // exact factorials keep Gamma(n) bit-clean
    if (z.imag() == 0 && z.real() == std::round(z.real()) && z.real() <= 20) {
        double f = 1;
        for (int k = 2; k < int(z.real()); ++k) f *= k;
        return f;
    }
    return std::exp(detail::lanczos_log_gamma(z));
}

// some logarithm of Gamma (not the principal branch); for ratios that would overflow
inline cplx log_gamma(cplx z) {
    if (detail::near_nonpositive_integer(z)) throw pole_error("log_gamma: pole at non-positive integer", z);
    cplx shift = 0;
    while (z.real() < 0.5) {
        shift -= std::log(z);
        z += 1.0;
    }
    return shift + detail::lanczos_log_gamma(z);
}

// 1/Gamma, entire: zero at the poles
inline cplx rgamma(cplx z) {
    if (detail::near_nonpositive_integer(z)) return 0.0;
    if (z.real() < 0.5) return std::sin(pi * z) * gamma(1.0 - z) / pi;
    return 1.0 / gamma(z);
}

inline cplx digamma(cplx z) {
    if (detail::near_nonpositive_integer(z)) throw pole_error("digamma: pole at non-positive integer", z);
    if (z.real() < 0.5) return digamma(1.0 - z) - pi / std::tan(pi * z);
    cplx acc = 0;
    while (std::abs(z) < 10) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // Bernoulli numbers B2..B14 over 2k
    static constexpr std::array<double, 7> c = {1.0 / 12,     -1.0 / 120,   1.0 / 252,  -1.0 / 240,
                                                1.0 / 132,    -691.0 / 32760, 1.0 / 12};
    cplx iz2 = 1.0 / (z * z), p = iz2, s = 0;
    for (double ck : c) {
        s += ck * p;
        p *= iz2;
    }
    return acc + std::log(z) - 0.5 / z - s;
}

namespace detail {

inline cplxl L(cplx z) { return cplxl(z.real(), z.imag()); }
inline cplx D(cplxl z) { return cplx(double(z.real()), double(z.imag())); }

inline constexpr long double sqrt_pi_l = 1.772453850905516027298167483341145183L;
inline constexpr long double pi_l = 3.141592653589793238462643383279502884L;
inline constexpr long double gamma_l = 0.577215664901532860606512090082402431L;
inline constexpr long double zeta3_l = 1.202056903159594285399738161511449991L;

// Ia by the entire 1/Gamma series, summed in extended precision
inline cplx ia_series(cplx m, cplx z, const SeriesPolicy& pol) {
    cplxl zl = L(z), ml = L(m);
    cplxl w = zl * zl / 4.0L;
    int n0 = 0;
    // first index with m+n+1 off the poles of Gamma
    if (std::abs(m.imag()) < 1e-14) {
        double r = -(m.real() + 1);
        double rr = std::round(r);
        if (rr >= 0 && std::abs(r - rr) < 1e-14) n0 = int(rr) + 1;
    }
    long double fact = 1;
    for (int k = 2; k <= n0; ++k) fact *= k;
    cplxl c = L(rgamma(m + double(n0) + 1.0)) / fact;
    cplxl wn = std::pow(w, n0);
    cplxl term = c * wn, sum = term;
    for (int n = n0 + 1; n < n0 + pol.max_terms; ++n) {
        term *= w / ((long double)n * (ml + (long double)n));
        sum += term;
        if (std::abs(term) < 1e-3L * pol.rel_tol * std::abs(sum) && n > n0 + 2) break;
    }
    cplxl pref = sqrt_pi_l * std::exp((ml + 0.5L) * std::log(zl / 2.0L));
    return D(pref * sum);
}

// formal large-argument series e^{-w} sum a_k(m) w^{-k}; exact for m = +-1/2
inline cplx ka_asym(cplx m, cplx w, const SeriesPolicy& pol) {
    cplx mu = 4.0 * m * m;
    cplx term = 1.0, sum = 1.0, iw = 1.0 / w;
    double prev = 1e300;
    for (int k = 0; k < pol.asymptotic_terms; ++k) {
        double odd = 2.0 * k + 1;
        term *= (mu - odd * odd) / (8.0 * (k + 1)) * iw;
        double a = std::abs(term);
        if (a == 0) break;
        if (a > prev) break;
        sum += term;
        prev = a;
        if (a < 1e-17 * std::abs(sum)) break;
    }
    return std::exp(-w) * sum;
}

// Ka_m for |m| tiny: first two even orders of the m-expansion of
// (Ia_{-m} - Ia_m)/sin(pi m) built from psi, psi', psi'' at integers.
// Returns value and z-derivative.
inline std::pair<cplx, cplx> ka_small_order(cplx m, cplx z, const SeriesPolicy& pol) {
    cplxl zl = L(z), m2 = L(m * m);
    cplxl Lg = std::log(zl / 2.0L);
    cplxl w = zl * zl / 4.0L;
    long double h1 = 0, h2 = 0, h3 = 0;  // sum 1/j, 1/j^2, 1/j^3 for j <= n
    cplxl pw = std::exp(0.5L * Lg);      // (z/2)^{2n+1/2}
    long double fact2 = 1;               // (n!)^2
    cplxl s = 0, ds = 0;
    const long double pi2 = pi_l * pi_l;
    for (int n = 0; n < pol.max_terms; ++n) {
        if (n > 0) {
            h1 += 1.0L / n;
            h2 += 1.0L / ((long double)n * n);
            h3 += 1.0L / ((long double)n * n * n);
            fact2 *= (long double)n * n;
            pw *= w;
        }
        long double psi0 = -gamma_l + h1;
        long double psi1 = pi2 / 6 - h2;
        long double psi2 = -2 * zeta3_l + 2 * h3;
        cplxl a = Lg - psi0;
        long double f2 = -psi1, f3 = -psi2;
        cplxl b = (a * a * a + 3.0L * a * f2 + f3) / 6.0L + pi2 * a / 6.0L;
        cplxl br = a + m2 * b;
        cplxl dbr = 1.0L / zl + m2 * ((a * a + f2) / (2.0L * zl) + pi2 / (6.0L * zl));
        long double p = 2.0L * n + 0.5L;
        cplxl t = pw / fact2 * br;
        cplxl dt = (p / zl) * t + pw / fact2 * dbr;
        s += t;
        ds += dt;
        if (n > 2 && std::abs(t) < 1e-3L * pol.rel_tol * std::abs(s)) break;
    }
    const long double c = -2.0L / sqrt_pi_l;
    return {D(c * s), D(c * ds)};
}

// Ka_m(z) = sqrt(2z/pi) int_0^inf exp(-z cosh t) cosh(m t) dt, trapezoid rule.
// Used for Re z > 0 away from the imaginary axis, where the series cancels badly.
inline cplx ka_integral(cplx m, cplx z) {
    // integrand is analytic in the strip |Im t| < pi/2 - |arg z|; step keeps the
    // trapezoid error near e^{-44}
    const double h = std::min(0.05, 2 * pi * (pi / 2 - std::abs(std::arg(z))) / 44);
    double am = std::abs(m.real());
    cplx sum = 0.5;
    for (int j = 1; j < 100000; ++j) {
        double t = j * h;
        double c1 = 2 * std::sinh(t / 2) * std::sinh(t / 2);  // cosh t - 1
        cplx v = std::exp(-z * c1) * std::cosh(m * t);
        sum += v;
        if (z.real() * c1 - am * t > 46) break;
    }
    return std::sqrt(2.0 * z / pi) * std::exp(-z) * h * sum;
}

inline bool use_k_integral(cplx z) {
    return z.real() > 0 && std::abs(std::arg(z)) <= 0.4 * pi && std::abs(z) >= 1.0;
}

inline bool use_i_asym(cplx z, const SeriesPolicy& pol) {
    double a = std::abs(z);
    // series terms reach e^{|z|} while the value is ~e^{Re z}
    return a > pol.asymptotic_radius || 3 * a - z.real() > 44;
}

}  // namespace detail

inline cplx bessel_k(cplx m, cplx z, const SeriesPolicy& pol = {});

inline cplx bessel_i(cplx m, cplx z, const SeriesPolicy& pol = {}) {
    if (z.real() <= 0 && z.imag() == 0) throw domain_error("bessel_i: argument on the cut (-inf, 0]");
    if (z.real() > 700) throw std::overflow_error("bessel_i: exp(Re z) overflows");
    if (!detail::use_i_asym(z, pol)) return detail::ia_series(m, z, pol);
    cplx kneg = detail::ka_asym(m, -z, pol), kpos = detail::ka_asym(m, z, pol);
    if (z.imag() > 0) return 0.5 * (kneg + iu * std::exp(iu * pi * m) * kpos);
    if (z.imag() < 0) return 0.5 * (kneg - iu * std::exp(-iu * pi * m) * kpos);
    return 0.5 * (kneg - std::sin(pi * m) * kpos);
}

namespace detail {

inline cplx ka_by_series(cplx m, cplx z, const SeriesPolicy& pol) {
    if (std::abs(m) < 1e-4) return ka_small_order(m, z, pol).first;
    // near a nonzero integer order n: step up from mu = m - n with Ka_{mu+1} = -Ka'_mu + (mu+1/2)/z Ka_mu
    double n = std::round(m.real());
    cplx mu = m - n;
    if (n >= 1 && std::abs(mu) < 1e-4) {
        auto [k0, dk0] = ka_small_order(mu, z, pol);
        cplx kp1 = -dk0 + (mu + 0.5) / z * k0;
        // Ka_{nu+1} = Ka_{nu-1} + 2 nu / z Ka_nu (stable upward)
        cplx a = k0, b = kp1;
        for (int j = 1; j < int(n); ++j) {
            cplx nu = mu + double(j);
            cplx c = a + 2.0 * nu / z * b;
            a = b;
            b = c;
        }
        return b;
    }
    return (ia_series(-m, z, pol) - ia_series(m, z, pol)) / std::sin(pi * m);
}

}  // namespace detail

inline cplx bessel_k(cplx m, cplx z, const SeriesPolicy& pol) {
    if (z.real() <= 0 && z.imag() == 0) throw domain_error("bessel_k: argument on the cut (-inf, 0]");
    if (m.real() < 0 || (m.real() == 0 && m.imag() < 0)) m = -m;
    double a = std::abs(z);
    if (a >= 17.0) return detail::ka_asym(m, z, pol);
    if (detail::use_k_integral(z)) return detail::ka_integral(m, z);
    return detail::ka_by_series(m, z, pol);
}

inline cplx bessel_j(cplx m, cplx z, const SeriesPolicy& pol = {}) {
    if (z.real() <= 0 && z.imag() == 0) throw domain_error("bessel_j: argument on the cut (-inf, 0]");
    if (z.imag() >= 0) return std::exp(iu * (pi / 2) * (m + 0.5)) * bessel_i(m, -iu * z, pol);
    return std::exp(-iu * (pi / 2) * (m + 0.5)) * bessel_i(m, iu * z, pol);
}

// sign = +1 or -1
inline cplx hankel_pm(cplx m, int sign, cplx z, const SeriesPolicy& pol = {}) {
    if (z.real() <= 0 && z.imag() == 0) throw domain_error("hankel_pm: argument on the cut (-inf, 0]");
    double s = sign >= 0 ? 1.0 : -1.0;
    return std::exp(-s * iu * (pi / 2) * (m + 0.5)) * bessel_k(m, -s * iu * z, pol);
}

inline cplx neumann(cplx m, cplx z, const SeriesPolicy& pol = {}) {
    return (hankel_pm(m, +1, z, pol) - hankel_pm(m, -1, z, pol)) / (2.0 * iu);
}

// z-derivatives from (d + (m - 1/2)/z) La_m = La_{m-1}
inline cplx bessel_i_deriv(cplx m, cplx z, const SeriesPolicy& pol = {}) {
    return bessel_i(m - 1.0, z, pol) - (m - 0.5) / z * bessel_i(m, z, pol);
}

inline cplx bessel_k_deriv(cplx m, cplx z, const SeriesPolicy& pol = {}) {
    if (m.real() < 0 || (m.real() == 0 && m.imag() < 0)) m = -m;
    double a = std::abs(z);
    bool series_route = !(a >= 17.0) && !detail::use_k_integral(z);
    if (series_route && std::abs(m) < 1e-4) return detail::ka_small_order(m, z, pol).second;
    // Ka_{m+1} = -Ka'_m + (m + 1/2)/z Ka_m
    return (m + 0.5) / z * bessel_k(m, z, pol) - bessel_k(m + 1.0, z, pol);
}

inline cplx bessel_j_deriv(cplx m, cplx z, const SeriesPolicy& pol = {}) {
    return bessel_j(m - 1.0, z, pol) - (m - 0.5) / z * bessel_j(m, z, pol);
}

inline cplx hankel_pm_deriv(cplx m, int sign, cplx z, const SeriesPolicy& pol = {}) {
    return hankel_pm(m - 1.0, sign, z, pol) - (m - 0.5) / z * hankel_pm(m, sign, z, pol);
}

}  // namespace halfline
