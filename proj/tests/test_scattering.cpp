#include "halfline/scattering.hpp"

#include <gtest/gtest.h>

#include "testutil.hpp"

using namespace halfline;

namespace {
OperatorSpec H(cplx m) { return OperatorSpec::homogeneous(m); }
OperatorSpec K(cplx m, ExtendedParam k) { return OperatorSpec::kappa_family(m, k); }
OperatorSpec N(ExtendedParam v) { return OperatorSpec::nu_family(v); }
std::vector<double> tgrid() {
    std::vector<double> t;
    for (double x = -20; x <= 20; x += 0.1) t.push_back(x);
    return t;
}
}  // namespace

TEST(ScatteringConstant, Values) {
    EXPECT_CNEAR(scattering_constant(0.3, 0.3), 1.0, 0);
    EXPECT_CNEAR(scattering_constant(-0.5, 0.5), -1.0, 1e-15);
    for (cplx m : {cplx(0.3), cplx(0.2, 0.4)}) EXPECT_CNEAR(scattering_constant(-m, m), std::exp(2.0 * iu * pi * m), 1e-15);
    EXPECT_THROW(scattering_constant(-1.5, 0.0), domain_error);
}

TEST(WaveMultiplier, ClosedFormSelection) {
    EXPECT_EQ(wave_multiplier({H(-0.5), H(0.5), +1}).label, "wnd");
    EXPECT_EQ(wave_multiplier({H(-0.3), H(0.3), -1}).label, "wave_minus_m");
    EXPECT_EQ(wave_multiplier({H(2.3), H(0.3), +1}).label, "wave_m_plus2");
    EXPECT_EQ(wave_multiplier({H(0.1), H(0.6), +1}).label, "wave_mm'");
    // kappa in {0, inf} and nu = inf are homogeneous in disguise
    EXPECT_EQ(wave_multiplier({K(0.3, ExtendedParam::infinity()), K(0.3, 0.0), +1}).label, "wave_minus_m");
    EXPECT_EQ(wave_multiplier({N(ExtendedParam::infinity()), H(0.4), +1}).label, "wave_mm'");
    EXPECT_THROW(wave_multiplier({K(0.3, 2.0), H(0.3), +1}), domain_error);
}

TEST(WaveMultiplier, Examples) {
    double m = 0.3;
    for (int s : {+1, -1}) {
        auto w2 = wave_multiplier({H(m + 2), H(m), s});
        for (double t : tgrid()) EXPECT_CNEAR(w2(t), -(m + 1 - iu * t) / (m + 1 + iu * t), 1e-13);
        auto wm = wave_multiplier({H(-m), H(m), s});
        EXPECT_CNEAR(wm(0.0), std::exp(-double(s) * iu * pi * m), 1e-15);
        auto nd = wave_multiplier({H(-0.5), H(0.5), s});
        for (double t : tgrid()) EXPECT_CNEAR(nd(t), wave_gamma_form(-0.5, 0.5, s, t), 1e-10);
    }
}

// the kernel-level definition W^+ = F^+_{m+2} F^{-t}_m = -F_{m+2} F_m against the closed form,
// which pins the overall sign of the (m+2, m) multiplier
TEST(WaveMultiplier, OrderPlusTwoSignFromKernels) {
    double m = 0.3;
    Grid g = halfline_grid(18.0);
    GaussProfile p{m + 0.5, 1.0};
    auto f = sample(p, g);
    auto Fm = hankel_matrix(m, g), Fm2 = hankel_matrix(m + 2, g);
    auto wf = Fm2.apply(Fm.apply(f));
    for (auto& v : wf.values) v *= std::exp(iu * pi * (m + 2) / 2.0) * std::exp(-iu * pi * m / 2.0);
    auto W = wave_multiplier({H(m + 2), H(m), +1});
    for (size_t i = 300; i < 800; i += 100) {
        double x = g.nodes[i];
        cplx v = mellin_multiplier_apply(W.eval, [&](double t) { return p.mellin(t); }, x);
        EXPECT_CREL(wf.values[i], v, 1e-6) << x;
    }
}

TEST(WaveMultiplier, Properties) {
    std::vector<double> orders = {-0.5, -0.2, 0.0, 0.35, 0.5, 1.7};
    for (int s : {+1, -1})
        for (double a : orders)
            for (double b : orders)
                for (double t : {-15.0, -2.0, -0.3, 0.0, 0.9, 4.0, 19.0}) {
                    // unitarity on the self-adjoint locus
                    EXPECT_NEAR(std::abs(wave_gamma_form(a, b, s, t)), 1.0, 1e-12);
                    // transpose: W^{s t}_{a,b} = W^{-s}_{b,a}, and the transpose flips A
                    EXPECT_CNEAR(wave_gamma_form(a, b, s, -t), wave_gamma_form(b, a, -s, t), 1e-12);
                    for (double c : {-0.3, 0.8})
                        EXPECT_CNEAR(wave_gamma_form(a, b, s, t), wave_gamma_form(a, c, s, t) * wave_gamma_form(c, b, s, t), 1e-10);
                }
    // complex orders: chain rule still holds, unitarity does not
    cplx a(0.3, 0.2), b(-0.1, 0.4), c(0.6, -0.3);
    for (double t : tgrid()) EXPECT_CNEAR(wave_gamma_form(a, b, 1, t), wave_gamma_form(a, c, 1, t) * wave_gamma_form(c, b, 1, t), 1e-10);
}

TEST(WaveMultiplier, IntertwiningOnProfiles) {
    // <g, W H' f> = <H g, W f> with H f for matched profiles in closed form:
    // H_m x^{m+1/2} e^{-x^2/2} = (2m + 2) x^{m+1/2} e^{-x^2/2} - x^{m+5/2} e^{-x^2/2}
    double m = -0.2, m2 = 0.45;
    GaussProfile f{m2 + 0.5, 1.0}, g{m + 0.5, 1.5};
    auto Hf = [&](double s) { return (2 * m2 + 2) * f.mellin(s) - GaussProfile{m2 + 2.5, 1.0}.mellin(s); };
    // g is not matched to beta = 1, so apply H_m to it directly: -g'' + (m^2 - 1/4)/x^2 g
    double b = 1.5, a = m + 0.5;
    auto Hg = [&](double s) {
        return (2 * a + 1) * b * g.mellin(s) - b * b * GaussProfile{a + 2, b}.mellin(s);
    };
    for (int sg : {+1, -1}) {
        auto W = wave_multiplier({H(m), H(m2), sg});
        cplx lhs = mellin_pairing([&](double s) { return g.mellin(s); }, W.eval, Hf, 80);
        cplx rhs = mellin_pairing(Hg, W.eval, [&](double s) { return f.mellin(s); }, 80);
        EXPECT_CREL(lhs, rhs, 1e-4);
    }
}

TEST(ScatteringDiag, Examples) {
    auto zero = OperatorSpec::kappa_family(0.3, 0.0);
    for (double x : {0.01, 1.0, 50.0}) {
        EXPECT_CNEAR(scattering_g(zero, -1, x), std::exp(-iu * pi * 0.3), 1e-15);
        EXPECT_CNEAR(scattering_g(zero, +1, x), std::exp(iu * pi * 0.3), 1e-15);
    }
    auto sa = K(0.3, 1.7);
    for (double x = 0.01; x < 100; x *= 1.7)
        for (int s : {-1, +1}) EXPECT_NEAR(std::abs(scattering_g(sa, s, x)), 1.0, 1e-13) << x;
    auto nu = N(1.0);
    for (double x : {0.1, 2.0, 30.0}) {
        cplx c = euler_gamma + std::log(x / 2) - 1.0;
        EXPECT_CNEAR(scattering_g(nu, -1, x), (c + iu * pi / 2.0) / (c - iu * pi / 2.0), 1e-14);
        EXPECT_NEAR(std::abs(scattering_g(nu, -1, x)), 1.0, 1e-14);
    }
    auto d = scattering_diag(sa, nu);
    EXPECT_TRUE(d.position_variable);
    EXPECT_CNEAR(d(2.0), scattering_g(sa, -1, 2.0) * scattering_g(nu, +1, 2.0), 0);
    EXPECT_THROW(scattering_diag(K(0.5, cplx(0, -0.5)), nu), exceptional_error);
}

TEST(ScatteringDiag, QuadratureCheck) {
    EXPECT_LT(g_quadrature_check(K(0.3, 0.0)).max_err(), 1e-6);
    EXPECT_LT(g_quadrature_check(K(0.3, 2.0)).max_err(), 1e-4);
    EXPECT_LT(g_quadrature_check(N(1.0)).max_err(), 1e-4);
    EXPECT_THROW(g_quadrature_check(N(cplx(0, pi / 2))), exceptional_error);
}

TEST(TimeProbe, SameOrderIsConstant) {
    GaussProfile f{0.8, 1.0}, g{0.8, 2.0};
    auto r = moller_time_probe({H(0.3), H(0.3), +1}, f, g, {0, 10, 100});
    for (cplx v : r.values) EXPECT_CREL(v, inner(g, f), 1e-9);
    EXPECT_CREL(r.limit, inner(g, f), 1e-9);
}

TEST(TimeProbe, NeumannDirichletAgainstFreeEvolution) {
    // odd/even free evolution of x e^{-x^2/2} and e^{-x^2/2} gives the closed form
    // sqrt(1 - 2it) / (2 sqrt(1 + 2it)), which tends to -i/2
    GaussProfile f{1.0, 1.0}, g{0.0, 1.0};
    auto r = moller_time_probe({H(-0.5), H(0.5), +1}, f, g, {10, 50, 200});
    EXPECT_CNEAR(r.limit, cplx(0, -0.5), 1e-10);
    for (size_t i = 0; i < r.times.size(); ++i) {
        double t = r.times[i];
        EXPECT_CNEAR(r.values[i], std::sqrt(1.0 - 2.0 * iu * t) / (2.0 * std::sqrt(1.0 + 2.0 * iu * t)), 1e-9) << t;
    }
    EXPECT_LT(r.deviations[2], 5e-2);
    EXPECT_LT(r.deviations[1], r.deviations[0]);
    EXPECT_LT(r.deviations[2], r.deviations[1]);
    auto back = moller_time_probe({H(-0.5), H(0.5), -1}, f, g, {200});
    EXPECT_CNEAR(back.limit, cplx(0, 0.5), 1e-10);
    EXPECT_LT(back.deviations[0], 5e-2);
    EXPECT_THROW(moller_time_probe({H(cplx(0.1, 0.1)), H(0.5), +1}, GaussProfile{1.0}, GaussProfile{cplx(0.6, 0.1)}, {1}), domain_error);
}

TEST(TimeProbe, PropagationLimit) {
    GaussProfile f1{0.3, 1.0}, f2{0.8, 2.0};
    auto r = propagation_probe(-0.5, 0.5, f1, f2, 1e3);
    EXPECT_CNEAR(r.limit, iu * inner(f1, f2), 1e-14);
    EXPECT_LT(r.deviation, 5e-2);
    // at t = 0 the probe is the plain Mellin pairing
    auto r0 = propagation_probe(-0.5, 0.5, f1, f2, 0);
    cplx direct = mellin_pairing([&](double s) { return f1.mellin(s); }, [](double s) { return hankel_symbol(-0.5, s) * hankel_symbol(0.5, -s); },
                                 [&](double s) { return f2.mellin(s); }, 80);
    EXPECT_CREL(r0.value, direct, 1e-9);
}
