#pragma once
// Hankel-type transforms on sampled functions, the inversion x -> 1/x, Mellin
// multipliers and the multiplier identity suite.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "halfline/kernels.hpp"
#include "halfline/operators.hpp"
#include "halfline/quad.hpp"
#include "halfline/specfun.hpp"

namespace halfline {

enum class DecayClass { gaussian_like, exponential, power };

// quadrature nodes on (0, inf) with matching weights
struct Grid {
    std::vector<double> nodes, weights;
    size_t size() const { return nodes.size(); }
};

// geometric panels (halving towards 0) below `panel`, uniform panels of length `panel` up to L
inline Grid halfline_grid(double L, double panel = 0.5, int per_panel = 16, int graded = 26) {
    if (!(L > panel && panel > 0)) throw domain_error("halfline_grid: need L > panel > 0");
    std::vector<double> br;
    for (int n = graded; n >= 1; --n) br.push_back(panel * std::ldexp(1.0, -n));
    for (double a = panel; a < L - 1e-12; a += panel) br.push_back(a);
    br.push_back(L);
    auto r = composite_rule(br, per_panel);
    return {r.x, r.w};
}

inline Grid interval_grid(double a, double b, double panel = 0.25, int per_panel = 16) {
    if (!(b > a)) throw domain_error("interval_grid: need b > a");
    int n = std::max(1, int(std::ceil((b - a) / panel - 1e-9)));
    std::vector<double> br;
    for (int i = 0; i <= n; ++i) br.push_back(a + (b - a) * i / n);
    auto r = composite_rule(br, per_panel);
    return {r.x, r.w};
}

// log-trapezoid weights; default output grid of the transforms
inline Grid geometric_grid(double lo = 1e-3, double hi = 1e3, size_t n = 400) {
    if (!(0 < lo && lo < hi && n >= 2)) throw domain_error("geometric_grid: need 0 < lo < hi, n >= 2");
    Grid g;
    double h = std::log(hi / lo) / double(n - 1);
    for (size_t i = 0; i < n; ++i) {
        double x = lo * std::exp(h * double(i));
        g.nodes.push_back(x);
        g.weights.push_back(x * h * ((i == 0 || i + 1 == n) ? 0.5 : 1.0));
    }
    return g;
}

struct SampledFunction {
    std::vector<double> nodes, weights;
    std::vector<cplx> values;
    DecayClass decay = DecayClass::gaussian_like;
    double power = 0;  // exponent p for DecayClass::power

    Grid grid() const { return {nodes, weights}; }

    void validate() const {
        if (nodes.empty() || nodes.size() != values.size() || nodes.size() != weights.size())
            throw domain_error("SampledFunction: nodes, weights and values must have equal non-zero length");
        if (!(nodes.front() > 0)) throw domain_error("SampledFunction: nodes must be positive");
        for (size_t i = 1; i < nodes.size(); ++i)
            if (!(nodes[i] > nodes[i - 1])) throw domain_error("SampledFunction: nodes must increase strictly");
    }

    // linear interpolation inside the node range, decay_class tail beyond it
    cplx at(double x) const {
        if (x < nodes.front()) throw domain_error("SampledFunction: below the first node");
        if (x > nodes.back()) {
            size_t n = nodes.size();
            switch (decay) {
                case DecayClass::gaussian_like: return 0.0;
                case DecayClass::exponential: {
                    if (n < 2) return 0.0;
                    double a = std::abs(values[n - 2]), b = std::abs(values[n - 1]);
                    if (!(b < a) || b == 0) return 0.0;
                    double rate = std::log(a / b) / (nodes[n - 1] - nodes[n - 2]);
                    return values[n - 1] * std::exp(-rate * (x - nodes[n - 1]));
                }
                case DecayClass::power: return values[n - 1] * std::pow(x / nodes[n - 1], -power);
            }
        }
        auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
        size_t j = size_t(it - nodes.begin());
        if (nodes[j] == x) return values[j];
        double t = (x - nodes[j - 1]) / (nodes[j] - nodes[j - 1]);
        return (1 - t) * values[j - 1] + t * values[j];
    }

    double norm() const {
        double s = 0;
        for (size_t i = 0; i < values.size(); ++i) s += weights[i] * std::norm(values[i]);
        return std::sqrt(s);
    }
};

inline SampledFunction sample(const std::function<cplx(double)>& f, const Grid& g, DecayClass d = DecayClass::gaussian_like) {
    SampledFunction s{g.nodes, g.weights, {}, d, 0};
    s.values.reserve(g.size());
    for (double x : g.nodes) s.values.push_back(f(x));
    return s;
}

// ||a - b|| / ||b|| on a common grid
inline double l2_relative(const SampledFunction& a, const SampledFunction& b) {
    if (a.nodes != b.nodes) throw domain_error("l2_relative: grids differ");
    double num = 0, den = 0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        num += b.weights[i] * std::norm(a.values[i] - b.values[i]);
        den += b.weights[i] * std::norm(b.values[i]);
    }
    return std::sqrt(num / den);
}

// dense Nystrom discretization of an integral operator: out[i] = sum_j K(x_i, y_j) w_j f(y_j)
class TransformMatrix {
public:
    TransformMatrix(const Grid& out, const Grid& in, const std::function<cplx(double, double)>& kernel, bool symmetric = false)
        : out_(out), in_(in), k_(out.size() * in.size()) {
        size_t no = out.size(), ni = in.size();
        if (symmetric && out.nodes == in.nodes) {
            for (size_t i = 0; i < no; ++i)
                for (size_t j = i; j < ni; ++j) k_[i * ni + j] = k_[j * ni + i] = kernel(out.nodes[i], in.nodes[j]);
        } else {
            for (size_t i = 0; i < no; ++i)
                for (size_t j = 0; j < ni; ++j) k_[i * ni + j] = kernel(out.nodes[i], in.nodes[j]);
        }
    }

    SampledFunction apply(const SampledFunction& f) const { return apply(f, [](size_t) { return cplx(1.0); }); }

    // with an extra factor on the input side, e.g. a k-dependent prefactor
    template <class Scale>
    SampledFunction apply(const SampledFunction& f, Scale scale) const {
        if (f.nodes != in_.nodes) throw domain_error("TransformMatrix: input grid mismatch");
        size_t ni = in_.size();
        std::vector<cplx> fw(ni);
        for (size_t j = 0; j < ni; ++j) fw[j] = f.values[j] * f.weights[j] * scale(j);
        SampledFunction g{out_.nodes, out_.weights, std::vector<cplx>(out_.size()), DecayClass::gaussian_like, 0};
        for (size_t i = 0; i < out_.size(); ++i) {
            cplx acc = 0;
            const cplx* row = &k_[i * ni];
            for (size_t j = 0; j < ni; ++j) acc += row[j] * fw[j];
            g.values[i] = acc;
        }
        return g;
    }

    // transpose action: out[j] = sum_i K(x_i, y_j) w_i h(x_i), returned on the input grid
    template <class Scale>
    SampledFunction apply_transpose(const SampledFunction& h, Scale scale) const {
        if (h.nodes != out_.nodes) throw domain_error("TransformMatrix: transpose input grid mismatch");
        size_t ni = in_.size();
        SampledFunction g{in_.nodes, in_.weights, std::vector<cplx>(ni), DecayClass::gaussian_like, 0};
        for (size_t i = 0; i < out_.size(); ++i) {
            cplx hw = h.values[i] * h.weights[i];
            const cplx* row = &k_[i * ni];
            for (size_t j = 0; j < ni; ++j) g.values[j] += row[j] * hw;
        }
        for (size_t j = 0; j < ni; ++j) g.values[j] *= scale(j);
        return g;
    }

    const Grid& out_grid() const { return out_; }
    const Grid& in_grid() const { return in_; }

private:
    Grid out_, in_;
    std::vector<cplx> k_;
};

inline const double sqrt_2_over_pi = std::sqrt(2 / pi);

inline void check_hankel_order(cplx m) {
    if (!(m.real() > -1)) throw domain_error("hankel transform: need Re m > -1");
}

// symmetric Hankel matrix on one grid; reused for repeated applications
inline TransformMatrix hankel_matrix(cplx m, const Grid& g) {
    check_hankel_order(m);
    return TransformMatrix(g, g, [m](double x, double y) { return sqrt_2_over_pi * bessel_j(m, x * y); }, true);
}

inline SampledFunction hankel_apply(cplx m, const SampledFunction& f, const Grid& out = geometric_grid()) {
    check_hankel_order(m);
    f.validate();
    bool same = out.nodes == f.nodes;
    TransformMatrix t(out, f.grid(), [m](double x, double y) { return sqrt_2_over_pi * bessel_j(m, x * y); }, same);
    return t.apply(f);
}

// callable input: one oscillatory quadrature per output node
inline SampledFunction hankel_apply(cplx m, const std::function<cplx(double)>& f, const Grid& out = geometric_grid(),
                                    QuadPolicy pol = default_quad_policy()) {
    check_hankel_order(m);
    pol.abs_tol = std::min(pol.abs_tol, 1e-11);
    pol.tail = TailStrategy::oscillatory_partition;
    SampledFunction g{out.nodes, out.weights, {}, DecayClass::gaussian_like, 0};
    for (double x : out.nodes) {
        pol.omega = x;
        pol.phase = pi / 2 + pi * m.real() / 2 + pi / 4;  // asymptotic zeros of Ja_m(xy)
        auto r = integrate_halfline([&](double y) { return bessel_j(m, x * y) * f(y); }, pol, std::min(1.0, pi / x));
        if (!r.converged) throw convergence_error("hankel_apply: quadrature did not converge");
        g.values.push_back(sqrt_2_over_pi * r.value);
    }
    return g;
}

// ---- generalized incoming/outgoing transforms --------------------------------------------------
// Kernel F^s(x, k) = prefactor_s(k) * density_mode(spec, k, x): x is the position variable, k the
// spectral one. s = -1, +1 selects the two variants; the transpose partner of F^s is F^{-s}.

inline void refuse_exceptional(const OperatorSpec& s, const char* who) {
    if (s.family != Family::Homogeneous && classify(s).exceptional)
        throw exceptional_error(std::string(who) + ": exceptional parameters");
}

inline cplx transform_prefactor(const OperatorSpec& s, int sign, double k) {
    double sg = sign >= 0 ? 1.0 : -1.0;
    switch (s.family) {
        case Family::Homogeneous: return std::exp(sg * iu * (pi / 2) * s.m) * sqrt_2_over_pi;
        case Family::Kappa: {
            ExtendedParam sv = varsigma(s.m, s.kappa);
            cplx a = sv.num() * detail::half_pow(k, s.m), b = sv.den();
            cplx d = b - a * std::exp(sg * iu * pi * s.m);
            if (std::abs(d) < pole_guard * std::max(std::abs(a), std::abs(b)))
                throw exceptional_error("transform: k on the exceptional set");
            return std::exp(sg * iu * (pi / 2) * s.m) * sqrt_2_over_pi / d;
        }
        case Family::Nu: {
            const auto& v = s.nu;
            cplx c = v.den() * (euler_gamma + std::log(k / 2.0)) - v.num();
            cplx d = c + sg * iu * (pi / 2) * v.den();
            if (std::abs(d) < pole_guard * std::max(std::abs(c), std::abs(v.den())))
                throw exceptional_error("transform: k on the exceptional set");
            return sqrt_2_over_pi / d;
        }
    }
    return 0.0;
}

inline cplx transform_kernel(const OperatorSpec& s, int sign, double x, double k) {
    return transform_prefactor(s, sign, k) * density_mode(s, k, x);
}

// both variants and both directions share the mode matrix
class GeneralizedTransform {
public:
    GeneralizedTransform(const OperatorSpec& s, const Grid& position, const Grid& spectral)
        : spec_(s),
          modes_(position, spectral, [s](double x, double k) { return density_mode(s, k, x); }) {
        refuse_exceptional(s, "generalized transform");
        for (int sign : {-1, +1}) {
            auto& p = pre_[sign > 0];
            for (double k : spectral.nodes) p.push_back(transform_prefactor(s, sign, k));
        }
    }

    // spectral -> position: (F^s g)(x) = int F^s(x, k) g(k) dk
    SampledFunction apply(int sign, const SampledFunction& g) const {
        const auto& p = pre_[sign > 0];
        return modes_.apply(g, [&p](size_t j) { return p[j]; });
    }

    // position -> spectral: (F^{s t} h)(k) = int F^s(x, k) h(x) dx
    SampledFunction apply_transpose(int sign, const SampledFunction& h) const {
        const auto& p = pre_[sign > 0];
        return modes_.apply_transpose(h, [&p](size_t j) { return p[j]; });
    }

    const OperatorSpec& spec() const { return spec_; }

private:
    OperatorSpec spec_;
    TransformMatrix modes_;
    std::vector<cplx> pre_[2];
};

inline SampledFunction generalized_hankel_apply(cplx m, const ExtendedParam& kappa, int sign, const SampledFunction& f,
                                                const Grid& out = geometric_grid()) {
    f.validate();
    GeneralizedTransform t(OperatorSpec::kappa_family(m, kappa), out, f.grid());
    return t.apply(sign, f);
}

inline SampledFunction hankel_nu_apply(const ExtendedParam& nu, int sign, const SampledFunction& f, const Grid& out = geometric_grid()) {
    f.validate();
    GeneralizedTransform t(OperatorSpec::nu_family(nu), out, f.grid());
    return t.apply(sign, f);
}

// (Jf)(x) = f(1/x)/x, exact on the remapped nodes
inline SampledFunction involution_j(const SampledFunction& f) {
    SampledFunction g;
    size_t n = f.nodes.size();
    for (size_t i = n; i-- > 0;) {
        double x = f.nodes[i];
        g.nodes.push_back(1 / x);
        g.values.push_back(x * f.values[i]);
        g.weights.push_back(f.weights[i] / (x * x));
    }
    return g;
}

// ---- multipliers in the dilation-spectral variable ---------------------------------------------

// Mellin symbol of the order-m Hankel transform: F_m = J s_m(A)
inline cplx hankel_symbol(cplx m, cplx t) {
    cplx a = (m + 1.0 + iu * t) / 2.0, b = (m + 1.0 - iu * t) / 2.0;
    // both Gammas underflow for large |t|; their ratio does not
    if (std::abs(t.real()) > 40) return std::exp(iu * std::log(2.0) * t + log_gamma(a) - log_gamma(b));
    return std::exp(iu * std::log(2.0) * t) * gamma(a) * rgamma(b);
}

// symbols of the two Hankel-function transforms of order 0
inline cplx hankel_pm_symbol(int sign, double t) {
    double sg = sign >= 0 ? 1.0 : -1.0;
    cplx g = gamma((1.0 + iu * t) / 2.0);
    return g * g * std::exp(iu * std::log(2.0) * t) * std::exp(-sg * pi * t / 2) / pi;
}

// e^{+-i pi (m - m')/2} s_m(-t) s_m'(t)
inline cplx wave_gamma_form(cplx m, cplx m2, int sign, double t) {
    double sg = sign >= 0 ? 1.0 : -1.0;
    return std::exp(sg * iu * (pi / 2) * (m - m2)) * hankel_symbol(m, -t) * hankel_symbol(m2, t);
}

inline cplx scattering_g(const OperatorSpec& s, int sign, double x) {
    double sg = sign >= 0 ? 1.0 : -1.0;
    switch (s.family) {
        case Family::Homogeneous: return std::exp(sg * iu * pi * s.m);
        case Family::Kappa: {
            ExtendedParam sv = varsigma(s.m, s.kappa);
            cplx a = sv.num() * detail::half_pow(x, s.m), b = sv.den();
            cplx d = b - a * std::exp(sg * iu * pi * s.m);
            if (std::abs(d) < pole_guard * std::max(std::abs(a), std::abs(b))) throw exceptional_error("g_mk: pole");
            return std::exp(sg * iu * pi * s.m) * (b - a * std::exp(-sg * iu * pi * s.m)) / d;
        }
        case Family::Nu: {
            const auto& v = s.nu;
            cplx c = v.den() * (euler_gamma + std::log(x / 2.0)) - v.num();
            cplx d = c + sg * iu * (pi / 2) * v.den();
            if (std::abs(d) < pole_guard * std::max(std::abs(c), std::abs(v.den()))) throw exceptional_error("g0_nu: pole");
            return (c - sg * iu * (pi / 2) * v.den()) / d;
        }
    }
    return 0.0;
}

struct Multiplier {
    std::string label;
    std::function<cplx(double)> eval;
    bool position_variable = false;  // g_mk, g0_nu act on x > 0; the rest on t in R
    cplx operator()(double t) const { return eval(t); }
};

struct MultiplierParams {
    cplx m = 0.0;
    cplx m2 = 0.0;  // second order for wave_mm'
    int sign = +1;
    ExtendedParam kappa{};
    ExtendedParam nu = ExtendedParam::infinity();
};

inline Multiplier multiplier(const std::string& label, const MultiplierParams& p = {}) {
    cplx m = p.m, m2 = p.m2;
    double sg = p.sign >= 0 ? 1.0 : -1.0;
    int sign = p.sign;
    if (label == "xi_m") return {label, [m](double t) { return hankel_symbol(m, t); }};
    if (label == "xi0_pm") return {label, [sign](double t) { return hankel_pm_symbol(sign, t); }};
    if (label == "wave_mm'" || label == "wave_mm")
        return {"wave_mm'", [m, m2, sign](double t) { return wave_gamma_form(m, m2, sign, t); }};
    if (label == "wave_minus_m")  // pair (-m, m)
        return {label, [m, sg](double t) {
                    cplx e = std::exp(sg * pi * t);
                    return (e + std::exp(-sg * iu * pi * m)) / (e + std::exp(sg * iu * pi * m));
                }};
    if (label == "wave_m_plus2")  // pair (m + 2, m); the phase e^{+-i pi} contributes the sign
        return {label, [m](double t) { return -(m + 1.0 - iu * t) / (m + 1.0 + iu * t); }};
    if (label == "wnd") return {label, [sg](double t) { return sg * std::tanh(pi * t) - sg * iu / std::cosh(pi * t); }};
    if (label == "g_mk") {
        auto s = OperatorSpec::kappa_family(m, p.kappa);
        refuse_exceptional(s, "g_mk");
        return {label, [s, sign](double x) { return scattering_g(s, sign, x); }, true};
    }
    if (label == "g0_nu") {
        auto s = OperatorSpec::nu_family(p.nu);
        refuse_exceptional(s, "g0_nu");
        return {label, [s, sign](double x) { return scattering_g(s, sign, x); }, true};
    }
    if (label == "y0_tanh") return {label, [](double t) { return iu * hankel_symbol(0.0, t) * std::tanh(pi * t / 2); }};
    throw domain_error("multiplier: unknown label '" + label + "'");
}

// ---- Mellin side -------------------------------------------------------------------------------

// h(x) = coef x^alpha e^{-beta x^2 / 2}; closed forms for the Mellin transform, Hankel image and
// inner products. Needs Re beta > 0 and Re alpha > -1/2.
struct GaussProfile {
    cplx alpha = 0.5;
    cplx beta = 1.0;
    cplx coef = 1.0;

    cplx operator()(double x) const { return coef * std::pow(x, alpha) * std::exp(-beta * x * x / 2.0); }

    // (1/sqrt(2 pi)) int h(x) x^{-1/2 - i tau} dx
    cplx mellin(double tau) const {
        if (coef == 0.0) return 0.0;
        cplx s = alpha + 0.5 - iu * tau;
        return std::exp(std::log(coef) - 0.5 * std::log(2 * pi) - std::log(2.0) - s / 2.0 * std::log(beta / 2.0) + log_gamma(s / 2.0));
    }

    // e^{-i t x^2} h
    GaussProfile chirped(double t) const { return {alpha, beta + 2.0 * iu * t, coef}; }

    // F_m h for h matched to the order (alpha = m + 1/2)
    GaussProfile hankel_image(cplx m) const {
        if (std::abs(alpha - (m + 0.5)) > 1e-14) throw domain_error("GaussProfile::hankel_image: need alpha = m + 1/2");
        return {alpha, 1.0 / beta, coef * std::pow(beta, -(m + 1.0))};
    }
};

// int conj(g) f dx over (0, inf)
inline cplx inner(const GaussProfile& g, const GaussProfile& f) {
    cplx s = std::conj(g.alpha) + f.alpha + 1.0;
    cplx b = std::conj(g.beta) + f.beta;
    return std::conj(g.coef) * f.coef * 0.5 * std::exp(-s / 2.0 * std::log(b / 2.0) + log_gamma(s / 2.0));
}

// (M(A) f)(x) = (1/sqrt(2 pi)) int M(tau) fhat(tau) x^{-1/2 + i tau} dtau by the trapezoid rule
inline cplx mellin_multiplier_apply(const std::function<cplx(double)>& M, const std::function<cplx(double)>& fhat, double x,
                                    double T = 60, double h = 0.05) {
    long n = std::lround(T / h);
    cplx acc = 0;
    double lx = std::log(x);
    for (long i = -n; i <= n; ++i) {
        double tau = h * double(i);
        double w = (i == -n || i == n) ? 0.5 : 1.0;
        acc += w * M(tau) * fhat(tau) * std::exp((iu * tau - 0.5) * lx);
    }
    return acc * h / std::sqrt(2 * pi);
}

// int conj(ghat) M fhat over R with adaptive quadrature on [-S, S]
inline cplx mellin_pairing(const std::function<cplx(double)>& ghat, const std::function<cplx(double)>& M,
                           const std::function<cplx(double)>& fhat, double S, const QuadPolicy& pol = default_quad_policy()) {
    auto f = [&](double t) { return std::conj(ghat(t)) * M(t) * fhat(t); };
    QuadResult r;
    double step = 4.0;
    for (double a = -S; a < S; a += step) r += integrate(f, a, std::min(S, a + step), pol);
    if (!r.converged) throw convergence_error("mellin_pairing: quadrature did not converge");
    return r.value;
}

// ---- identity suite ----------------------------------------------------------------------------

struct IdentityCheck {
    std::string name;
    double max_err = 0;
    double tol = 0;
    bool passed = false;
};

inline std::vector<double> identity_t_grid() {
    std::vector<double> t;
    for (int i = -2000; i <= 2000; ++i) t.push_back(0.01 * i);
    return t;
}

// each identity as lhs(t) - rhs(t), scaled by max(1, |rhs|)
inline std::vector<IdentityCheck> identity_suite(double tol = 1e-10) {
    std::vector<IdentityCheck> out;
    auto ts = identity_t_grid();
    auto run = [&](const std::string& name, const std::function<std::pair<cplx, cplx>(double)>& lr) {
        IdentityCheck c{name, 0, tol, false};
        for (double t : ts) {
            auto [l, r] = lr(t);
            double e = std::abs(l - r) / std::max(1.0, std::abs(r));
            if (!(e <= c.max_err)) c.max_err = std::isnan(e) ? INFINITY : std::max(c.max_err, e);
        }
        c.passed = c.max_err <= tol;
        out.push_back(c);
    };
    const std::vector<cplx> orders = {0.3, cplx(0.3, 0.2), -0.4};
    for (cplx m : orders) {
        std::string tag = "(m=" + fmt_c(m) + ")";
        run("symbol_at_zero" + tag, [m](double) { return std::pair{hankel_symbol(m, 0.0), cplx(1.0)}; });
        run("symbol_reflection_inverse" + tag, [m](double t) { return std::pair{hankel_symbol(m, -t) * hankel_symbol(m, t), cplx(1.0)}; });
        run("symbol_negated_order" + tag, [m](double t) {
            return std::pair{hankel_symbol(-m, t), hankel_symbol(m, t) * std::cos(pi / 2 * (m + iu * t)) / std::cos(pi / 2 * (m - iu * t))};
        });
        run("symbol_order_plus2" + tag, [m](double t) {
            return std::pair{hankel_symbol(m + 2.0, t), hankel_symbol(m, t) * (m + 1.0 + iu * t) / (m + 1.0 - iu * t)};
        });
        run("symbol_shifted_sum" + tag, [m](double t) {
            cplx l = hankel_symbol(-m, t - 2.0 * iu * m) * hankel_symbol(m, -t + 2.0 * iu * m) + hankel_symbol(m, t) * hankel_symbol(-m, -t);
            return std::pair{l, 2.0 * std::cos(pi * m)};
        });
        for (int s : {+1, -1}) {
            std::string st = s > 0 ? "+" : "-";
            auto wm = multiplier("wave_minus_m", {m, 0.0, s});
            run("wave_minus_m" + st + tag, [&, m, s](double t) { return std::pair{wm(t), wave_gamma_form(-m, m, s, t)}; });
            auto w2 = multiplier("wave_m_plus2", {m, 0.0, s});
            run("wave_m_plus2" + st + tag, [&, m, s](double t) { return std::pair{w2(t), wave_gamma_form(m + 2.0, m, s, t)}; });
        }
    }
    run("symbol_unimodular(m=0.3)", [](double t) { return std::pair{cplx(std::abs(hankel_symbol(0.3, t))), cplx(1.0)}; });
    for (int s : {+1, -1}) {
        std::string st = s > 0 ? "+" : "-";
        double sg = s;
        auto wnd = multiplier("wnd", {0.0, 0.0, s});
        run("wnd" + st, [&, s](double t) { return std::pair{wnd(t), wave_gamma_form(-0.5, 0.5, s, t)}; });
        run("order0_pm_minus_symbol" + st, [sg, s](double t) {
            cplx x0 = hankel_symbol(0.0, t);
            return std::pair{hankel_pm_symbol(s, t) - x0, -sg * x0 * std::tanh(pi * t / 2)};
        });
        run("order0_product_mixed" + st, [sg, s](double t) {
            cplx r = std::exp(-sg * pi * t / 2) / std::cosh(pi * t / 2);
            return std::pair{hankel_symbol(0.0, -t) * hankel_pm_symbol(s, t), r};
        });
        run("order0_product_mixed_swapped" + st, [sg, s](double t) {
            cplx r = std::exp(-sg * pi * t / 2) / std::cosh(pi * t / 2);
            return std::pair{hankel_pm_symbol(-s, -t) * hankel_symbol(0.0, t), r};
        });
        run("order0_product_pm" + st, [sg, s](double t) {
            cplx r = std::exp(-sg * pi * t / 2) / std::cosh(pi * t / 2);
            return std::pair{hankel_pm_symbol(-s, -t) * hankel_pm_symbol(s, t), r * r};
        });
        auto y0 = multiplier("y0_tanh");
        run("y0_tanh" + st, [&, sg, s](double t) {
            return std::pair{y0(t), -sg * iu * (hankel_pm_symbol(s, t) - hankel_symbol(0.0, t))};
        });
    }
    run("order0_inverse", [](double t) { return std::pair{hankel_symbol(0.0, -t) * hankel_symbol(0.0, t), cplx(1.0)}; });
    return out;
}

}  // namespace halfline
