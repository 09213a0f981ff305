#include "halfline/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sys/wait.h>

#include "testutil.hpp"

using namespace halfline;
using halfline::cli::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "halfline");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    auto r = run(std::move(args));
    EXPECT_EQ(r.code, 0) << r.err;
    return json::parse(r.out);
}

std::vector<std::vector<double>> csv_rows(const std::string& s, std::string* header = nullptr) {
    std::istringstream in(s);
    std::string line;
    std::getline(in, line);
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) row.push_back(std::stod(c));
        rows.push_back(row);
    }
    return rows;
}

cplx as_c(const json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

}  // namespace

TEST(Parse, Values) {
    EXPECT_CNEAR(cli::parse_complex("0.1,0.5"), cplx(0.1, 0.5), 0);
    EXPECT_CNEAR(cli::parse_complex("-2"), -2.0, 0);
    EXPECT_EQ(cli::parse_real("euler"), euler_gamma);
    EXPECT_TRUE(cli::parse_extended("inf").is_inf());
    EXPECT_THROW(cli::parse_complex("1,2,3"), cli::usage_error);
    EXPECT_THROW(cli::parse_complex("1x"), cli::usage_error);
    EXPECT_THROW(cli::parse_real("nan"), cli::usage_error);
    auto p = cli::parse_points("0:1:5");
    ASSERT_EQ(p.size(), 5u);
    EXPECT_DOUBLE_EQ(p[1], 0.25);
    EXPECT_EQ(cli::parse_points("0.5,2").size(), 2u);
    EXPECT_THROW(cli::parse_points("0:1"), cli::usage_error);
}

TEST(Eig, Examples) {
    auto a = run_json({"eig", "--family", "kappa", "--m", "0.5,0", "--kappa", "-1,0"});
    ASSERT_EQ(a["results"]["count"], 1);
    EXPECT_CNEAR(as_c(a["results"]["eigenvalues"][0]["z"]), -1.0, 1e-14);
    EXPECT_TRUE(a["results"]["classification"]["self_adjoint"]);
    EXPECT_EQ(a["schema_version"], cli::schema_version);
    EXPECT_EQ(a["command"], "eig");

    auto n = run_json({"eig", "--family", "nu", "--nu", "euler,0"});
    ASSERT_EQ(n["results"]["count"], 1);
    EXPECT_CNEAR(as_c(n["results"]["eigenvalues"][0]["z"]), -4.0, 1e-14);

    auto s = run_json({"eig", "--family", "kappa", "--m", "0.1,0.5", "--kappa", "1,0", "--max", "50"});
    EXPECT_LE(s["results"]["count"].get<size_t>(), 50u);
    EXPECT_GE(s["results"]["count"].get<size_t>(), 2u);

    auto e = run_json({"eig", "--family", "kappa", "--m", "0.5", "--kappa", "0,-0.5"});
    EXPECT_TRUE(e["results"]["classification"]["exceptional"]);
    EXPECT_FALSE(e["results"]["warnings"].empty());
}

TEST(Spiral, RatioAndMonotoneDecay) {
    std::string header;
    auto r = run({"spiral", "--family", "kappa", "--m", "0.1,0.5", "--kappa", "1"});
    ASSERT_EQ(r.code, 0);
    auto rows = csv_rows(r.out, &header);
    EXPECT_EQ(header, "j,w_re,w_im,z_re,z_im");
    ASSERT_GE(rows.size(), 2u);
    cplx m(0.1, 0.5);
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        EXPECT_EQ(rows[i + 1][0], rows[i][0] + 1);
        cplx z0(rows[i][3], rows[i][4]), z1(rows[i + 1][3], rows[i + 1][4]);
        EXPECT_LT(std::abs(z1), std::abs(z0));
        // |ratio| = e^{-2 pi Im(i/m)...} < 1 and the full ratio is e^{-2 pi i/m}
        EXPECT_CREL(z1 / z0, std::exp(-2.0 * pi * iu / m), 1e-12);
    }
}

TEST(Density, DirichletRowAndSymmetry) {
    double k = 1.7;
    std::string header;
    auto r = run({"density", "--m", "0.5", "--k", "1.7", "--x", "0.2:4:7", "--y", "2.3"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out, &header);
    EXPECT_EQ(header, "x,y,re,im");
    ASSERT_EQ(rows.size(), 7u);
    for (auto& row : rows) {
        double want = std::sin(k * row[0]) * std::sin(k * row[1]) / (pi * k);
        EXPECT_NEAR(row[2], want, 1e-13);
        EXPECT_NEAR(row[3], 0, 1e-13);
    }
    auto g = csv_rows(run({"density", "--family", "kappa", "--m", "0.3", "--kappa", "2", "--k", "1.1", "--x", "0.3:3:5"}).out);
    ASSERT_EQ(g.size(), 25u);
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = 0; j < 5; ++j) {
            EXPECT_EQ(g[5 * i + j][2], g[5 * j + i][2]);
            EXPECT_EQ(g[5 * i + j][3], g[5 * j + i][3]);
        }
}

TEST(Density, ReductionsAreByteIdentical) {
    EXPECT_EQ(run({"density", "--family", "kappa", "--m", "0.3", "--kappa", "0", "--k", "1.3"}).out,
              run({"density", "--m", "0.3", "--k", "1.3"}).out);
    EXPECT_EQ(run({"kernel", "--family", "kappa", "--m", "0.3,0.1", "--kappa", "inf", "--k", "1.3,0.2"}).out,
              run({"kernel", "--m", "-0.3,-0.1", "--k", "1.3,0.2"}).out);
    EXPECT_EQ(run({"kernel", "--family", "nu", "--nu", "inf", "--k", "0.9"}).out, run({"kernel", "--m", "0", "--k", "0.9"}).out);
}

TEST(Kernel, ValuesAndErrors) {
    auto r = csv_rows(run({"kernel", "--m", "0.5", "--k", "1", "--x", "1", "--y", "2"}).out);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_NEAR(r[0][2], (std::exp(-1.0) - std::exp(-3.0)) / 2, 1e-13);
    auto b = csv_rows(run({"kernel", "--m", "0.5", "--k", "1", "--side", "1", "--x", "0.7", "--y", "1.9"}).out);
    cplx want = std::sin(0.7) * std::exp(iu * 1.9);
    EXPECT_CNEAR(cplx(b[0][2], b[0][3]), want, 1e-12);
    // pole at an eigenvalue: usage exit, nothing on stdout
    auto p = run({"kernel", "--family", "kappa", "--m", "0.5", "--kappa", "-1", "--k", "1", "--x", "1", "--y", "2"});
    EXPECT_EQ(p.code, cli::usage);
    EXPECT_TRUE(p.out.empty());
    EXPECT_EQ(run({"kernel", "--m", "0.5", "--k", "1,1", "--side", "1"}).code, cli::usage);
    EXPECT_EQ(run({"kernel", "--m", "0.5", "--k", "-1"}).code, cli::usage);
}

TEST(Scatter, NeumannDirichletCurve) {
    std::string header;
    auto rows = csv_rows(run({"scatter", "--m", "-0.5", "--right-m", "0.5", "--x", "-3:3:13"}).out, &header);
    EXPECT_EQ(header, "x,y,re,im");
    ASSERT_EQ(rows.size(), 26u);
    for (auto& r : rows) {
        double t = r[0], s = r[1];
        cplx want = s * (std::tanh(pi * t) - iu / std::cosh(pi * t));
        EXPECT_CNEAR(cplx(r[2], r[3]), want, 1e-12) << t << " " << s;
    }
}

TEST(Scatter, UnitModulusAndRefusal) {
    auto rows = csv_rows(run({"scatter", "--family", "kappa", "--m", "0.3", "--kappa", "1.7"}).out);
    ASSERT_EQ(rows.size(), 800u);
    for (auto& r : rows) EXPECT_NEAR(std::hypot(r[2], r[3]), 1.0, 1e-13);
    auto d = csv_rows(run({"scatter", "--family", "kappa", "--m", "0.3", "--kappa", "1.7", "--right-family", "nu", "--right-nu", "1", "--x", "0.5,2"}).out);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_CNEAR(cplx(d[1][2], d[1][3]),
                 scattering_g(OperatorSpec::kappa_family(0.3, 1.7), -1, 2.0) * scattering_g(OperatorSpec::nu_family(1.0), +1, 2.0), 1e-15);
    auto ex = run({"scatter", "--family", "kappa", "--m", "0.5", "--kappa", "0,-0.5"});
    EXPECT_EQ(ex.code, cli::exceptional);
    EXPECT_TRUE(ex.out.empty());
    EXPECT_EQ(run({"transform", "--family", "nu", "--nu", "1,1.5707963267948966"}).code, cli::exceptional);
}

TEST(Transform, HomogeneousAndGeneralized) {
    // f = y e^{-y^2/2} is its own order-1/2 transform
    auto h = run_json({"transform", "--m", "0.5", "--x", "0.5,1,2"});
    auto xs = h["results"]["x"];
    for (size_t i = 0; i < xs.size(); ++i) {
        double x = xs[i];
        EXPECT_NEAR(h["results"]["re"][i].get<double>(), x * std::exp(-x * x / 2), 1e-9);
    }
    // kappa = 0 reduces to the homogeneous transform
    auto k0 = run_json({"transform", "--family", "kappa", "--m", "0.3", "--kappa", "0", "--x", "0.7"});
    auto hm = run_json({"transform", "--m", "0.3", "--x", "0.7"});
    EXPECT_EQ(k0["results"], hm["results"]);
    auto g = run_json({"transform", "--family", "kappa", "--m", "0.3", "--kappa", "2", "--x", "0.5,1", "--sign", "-1"});
    EXPECT_EQ(g["params"]["sign"], -1);
    EXPECT_EQ(g["results"]["re"].size(), 2u);
    EXPECT_EQ(run({"transform", "--m", "0.3", "--x", "0,1"}).code, cli::usage);
}

TEST(Check, OnlyAndTol) {
    auto r = run({"check", "--only", "wronskian,elementary"});
    EXPECT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    ASSERT_EQ(j["results"]["suites"].size(), 2u);
    EXPECT_EQ(j["results"]["suites"][0]["name"], "wronskian");
    EXPECT_TRUE(j["results"]["passed"]);
    auto t = json::parse(run({"check", "--only", "multipliers", "--tol", "1e-3"}).out);
    for (auto& c : t["results"]["suites"][0]["checks"]) EXPECT_GE(c["tol"].get<double>(), 1e-3);
    EXPECT_EQ(run({"check", "--only", "nope"}).code, cli::usage);
}

TEST(Check, FailuresAreRecorded) {
    // the CLI exits 1 iff some line has passed == false
    auto r = run_suite("spiral");
    EXPECT_TRUE(r.passed());
    suites::Sink s{"x", 0, {}};
    s.add("forced", 1.0, 0.5);
    EXPECT_FALSE(s.lines[0].passed);
    s.guard("throws", 1.0, [] { throw convergence_error("boom"); });
    EXPECT_FALSE(s.lines[1].passed);
}

TEST(Probe, Records) {
    auto m = run_json({"probe", "--times", "10,200"});
    EXPECT_CNEAR(as_c(m["results"]["limit"]), cplx(0, -0.5), 1e-10);
    EXPECT_LT(m["results"]["deviations"][1].get<double>(), 5e-2);
    auto p = run_json({"probe", "--kind", "propagation", "--t", "1000"});
    EXPECT_LT(p["results"]["deviation"].get<double>(), 5e-2);
    EXPECT_EQ(run({"probe", "--m", "0.1,0.2"}).code, cli::usage);
}

TEST(Records, RoundTripAndStable) {
    std::vector<std::string> args = {"eig", "--family", "kappa", "--m", "0.3,0.1", "--kappa", "-1.04381,-0.065154"};
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    auto j = json::parse(a.out);
    auto sp = j["params"]["spec"];
    auto flag = [](const json& c) { return cli::g17(c[0].get<double>()) + "," + cli::g17(c[1].get<double>()); };
    auto c = run({"eig", "--family", sp["family"], "--m", flag(sp["m"]), "--kappa", flag(sp["kappa"])});
    EXPECT_EQ(json::parse(c.out)["params"], j["params"]);
    EXPECT_EQ(c.out, a.out);
    // an inf parameter survives as the literal
    auto i = run_json({"eig", "--family", "nu", "--nu", "inf"});
    EXPECT_EQ(i["params"]["spec"]["nu"], "inf");
}

TEST(Usage, ExitCodes) {
    EXPECT_EQ(run({}).code, cli::usage);
    EXPECT_EQ(run({"bogus"}).code, cli::usage);
    EXPECT_EQ(run({"eig", "--m", "abc"}).code, cli::usage);
    EXPECT_EQ(run({"eig", "--family", "wrong"}).code, cli::usage);
    EXPECT_EQ(run({"eig", "--family", "kappa", "--m", "1.5", "--kappa", "1"}).code, cli::usage);
    EXPECT_EQ(run({"eig", "--zmin", "0"}).code, cli::usage);
    EXPECT_EQ(run({"eig", "--help"}).code, 0);
}

TEST(Binary, ExitCodesFromProcess) {
    auto code = [](const std::string& args) {
        std::string cmd = std::string(HALFLINE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
        int s = std::system(cmd.c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(code("eig --family kappa --m 0.5,0 --kappa -1,0"), 0);
    EXPECT_EQ(code("eig --family kappa --m 0.5,0 --kappa x"), 2);
    EXPECT_EQ(code("scatter --family kappa --m 0.5 --kappa 0,-0.5"), 3);
    EXPECT_EQ(code("check --only elementary --tol 0"), 0);
}
