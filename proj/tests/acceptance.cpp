// One PASS/FAIL line per acceptance criterion. Thresholds live with the suites; runtime
// limits are pinned here. --expect-fail lists criteria known to be unattainable: the exit
// status is 0 iff exactly those fail.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <set>
#include <string>

#include "halfline/suites.hpp"

using namespace halfline;

namespace {

struct Verdict {
    bool passed;
    std::string detail;
    double seconds;
};

Verdict from_suite(const std::string& name, double max_seconds) {
    auto r = run_suite(name);
    double worst = 0;
    std::string worst_name;
    size_t failed = 0;
    for (auto& l : r.lines) {
        double ratio = l.tol > 0 ? l.err / l.tol : (l.err > 0 ? INFINITY : 0);
        if (!l.passed) ++failed;
        if (ratio >= worst) {
            worst = ratio;
            worst_name = l.name;
        }
    }
    char buf[512];
    std::snprintf(buf, sizeof buf, "%zu checks, %zu failed; worst err/tol %.3g (%s)", r.lines.size(), failed, worst, worst_name.c_str());
    bool in_time = r.seconds < max_seconds;
    std::string d = buf;
    if (!in_time) d += "; over the runtime limit";
    return {r.passed() && in_time, d, r.seconds};
}

// consecutive ratios e^{-2 pi i/m} over at least 10 eigenvalues of Kappa(0.1+0.5i, 1)
Verdict spiral_criterion() {
    auto t0 = std::chrono::steady_clock::now();
    cplx m(0.1, 0.5);
    auto s = OperatorSpec::kappa_family(m, 1.0);
    EigenWindow w;
    w.z_min = 1e-300;
    w.z_max = 1e300;
    auto v = eigenvalues(s, w);
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.j < b.j; });
    double err = 0;
    for (size_t i = 0; i + 1 < v.size(); ++i) err = std::max(err, relerr(v[i + 1].z / v[i].z, std::exp(-2.0 * pi * iu / m)));
    auto c = count_eigenvalues(m, 1.0);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%zu eigenvalues (counting formula: %ld), ratio err %.3g; needs >= 10 at 1e-12", v.size(), c.count, err);
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {v.size() >= 10 && err <= 1e-12, buf, sec};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> expect_fail;
    app.add_option("--expect-fail", expect_fail, "criteria known to fail");
    CLI11_PARSE(app, argc, argv);
    std::set<int> expected(expect_fail.begin(), expect_fail.end());

    struct Criterion {
        int id;
        const char* title;
        std::function<Verdict()> run;
    };
    std::vector<Criterion> all = {
        {1, "elementary closed forms", [] { return from_suite("elementary", 1); }},
        {2, "integral identities", [] { return from_suite("integrals", 10); }},
        {3, "resolvent by quadrature", [] { return from_suite("resolvent", 30); }},
        {4, "eigenvalue oracle battery", [] { return from_suite("oracle", 60); }},
        {5, "spiral invariant", spiral_criterion},
        {6, "Hankel involution and biorthogonality", [] { return from_suite("hankel", 120); }},
        {7, "multiplier identities", [] { return from_suite("multipliers", 5); }},
        {8, "boundary values and densities", [] { return from_suite("boundary", 600); }},
        {9, "projection idempotency and Riesz projection", [] { return from_suite("projection", 600); }},
        {10, "time-dependent probes", [] { return from_suite("probe", 300); }},
    };

    bool as_expected = true;
    for (auto& c : all) {
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what(), 0};
        }
        bool known = expected.count(c.id) > 0;
        const char* note = "";
        if (!v.passed && known) note = " [expected]";
        if (v.passed && known) note = " [unexpected pass]";
        if (v.passed == known) as_expected = false;
        std::printf("criterion %2d %s: %s (%.2f s) %s%s\n", c.id, v.passed ? "PASS" : "FAIL", c.title, v.seconds, v.detail.c_str(), note);
        std::fflush(stdout);
    }
    return as_expected ? 0 : 1;
}
