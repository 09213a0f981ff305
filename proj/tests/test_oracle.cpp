#include "halfline/oracle.hpp"

#include <gtest/gtest.h>

#include "halfline/crosscheck.hpp"
#include "halfline/specfun.hpp"
#include "testutil.hpp"

using namespace halfline;
using oracle::boundary_solution;
using oracle::eigen_residual;

TEST(Frobenius, SolvesTheEquation) {
    // residual of -u'' + V/x^2 u - z u by finite differences at small x
    cplx m(0.3, 0.2), z(-1.3, 0.4);
    double x = 0.05, h = 1e-4;
    auto u = [&](double t) { return oracle::frobenius(m, z, t, 12).u; };
    cplx upp = (u(x + h) - 2.0 * u(x) + u(x - h)) / (h * h);
    cplx r = -upp + ((m * m - 0.25) / (x * x) - z) * u(x);
    EXPECT_LT(std::abs(r), 1e-5 * std::abs((m * m - 0.25) / (x * x) * u(x)));
    auto l = [&](double t) { return oracle::frobenius_log(z, t, 12).u; };
    cplx lpp = (l(x + h) - 2.0 * l(x) + l(x - h)) / (h * h);
    cplx rl = -lpp + (-0.25 / (x * x) - z) * l(x);
    EXPECT_LT(std::abs(rl), 1e-5 * std::abs(0.25 / (x * x) * l(x)));
}

TEST(BoundarySolution, HomogeneousIsIa) {
    cplx m(0.3, 0.1), k(1.2, 0.3);
    auto s = OperatorSpec::kappa_family(m, 0.0);
    cplx r1 = boundary_solution(s, -k * k, 1.0) / bessel_i(m, k * 1.0);
    cplx r2 = boundary_solution(s, -k * k, 0.5) / bessel_i(m, k * 0.5);
    EXPECT_CREL(r1, r2, 1e-8);
}

TEST(BoundarySolution, NuInfinityAtZeroEnergy) {
    auto s = OperatorSpec::nu_family(ExtendedParam::infinity());
    for (double x : {0.1, 1.0, 3.0}) EXPECT_CREL(boundary_solution(s, 0.0, x), std::sqrt(x), 1e-9);
}

TEST(BoundarySolution, KappaCombination) {
    cplx m = 0.3, k = 1.0;
    auto s = OperatorSpec::kappa_family(m, 2.0);
    cplx sv = varsigma(m, 2.0).value() * std::pow(k / 2.0, 2.0 * m);
    auto ref = [&](double x) { return bessel_i(m, k * x) - sv * bessel_i(-m, k * x); };
    cplx r1 = boundary_solution(s, -1.0, 0.7) / ref(0.7);
    cplx r2 = boundary_solution(s, -1.0, 2.0) / ref(2.0);
    EXPECT_CREL(r1, r2, 1e-7);
}

TEST(EigenResidual, Examples) {
    auto d = OperatorSpec::kappa_family(0.5, -1.0);
    auto r = oracle::refine_eigenvalue(d, cplx(-1.01, 0.02));
    EXPECT_TRUE(r.converged);
    EXPECT_LT(std::abs(r.z + 1.0), 1e-8);
    EXPECT_LT(std::abs(r.residual), 1e-8);
    EXPECT_GT(std::abs(eigen_residual(OperatorSpec::kappa_family(0.3, 1.0), -1.0)), 1e-2);
    EXPECT_LT(std::abs(eigen_residual(OperatorSpec::nu_family(euler_gamma), -4.0)), 1e-8);
    EXPECT_THROW(eigen_residual(d, 2.0), domain_error);
}

TEST(EigenResidual, Battery) {
    size_t shot = 0;
    for (auto& s : oracle_battery()) {
        auto v = eigen_oracle_check(s, 2);
        EXPECT_FALSE(v.empty()) << s.describe();
        for (auto& c : v) {
            ++shot;
            EXPECT_TRUE(c.converged) << s.describe();
            EXPECT_LT(c.rel_diff, 1e-6) << s.describe() << " z=" << c.closed_form;
            EXPECT_LT(c.residual, 1e-7) << s.describe();
        }
    }
    EXPECT_GE(shot, 14u);
}

TEST(EigenResidual, EmptySpectrumBoundedBelow) {
    for (auto& s : empty_spectrum_battery()) EXPECT_GT(min_residual_on_grid(s), 1e-2) << s.describe();
}

TEST(ResolventBvp, Examples) {
    auto f = [](double x) -> cplx { return x * std::exp(-x); };
    EXPECT_LT(resolvent_bvp_check(OperatorSpec::homogeneous(0.5), 1.0, f).max_rel_err, 1e-6);
    EXPECT_LT(resolvent_bvp_check(OperatorSpec::kappa_family(0.3, 2.0), 1.2, f).max_rel_err, 1e-5);
    EXPECT_LT(resolvent_bvp_check(OperatorSpec::nu_family(1.0), 0.8, f).max_rel_err, 1e-5);
    EXPECT_LT(resolvent_bvp_check(OperatorSpec::kappa_family({0.3, 0.2}, cplx(1, -1)), cplx(1, 0.4), f).max_rel_err, 1e-5);
}
