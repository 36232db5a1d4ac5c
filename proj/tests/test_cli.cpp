#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(WCS_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::vector<double> column(const std::string& text, const std::string& name) {
    const auto rows = csv(text);
    std::vector<double> out;
    if (rows.empty()) return out;
    std::size_t idx = 0;
    while (idx < rows[0].size() && rows[0][idx] != name) ++idx;
    if (idx == rows[0].size()) return out;
    for (std::size_t i = 1; i < rows.size(); ++i) out.push_back(std::stod(rows[i][idx]));
    return out;
}

}  // namespace

TEST(Cli, FactorialExamples) {
    auto r = run("factorial --alpha 0 --beta 1 --nu 0 --n 0..5");
    ASSERT_EQ(r.code, 0);
    const auto col = column(r.out, "factorial");
    const std::vector<double> want{1, 1, 2, 6, 24, 120};
    ASSERT_EQ(col.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(col[i], want[i], 1e-12 * want[i]);
    EXPECT_NEAR(column(run("factorial --alpha 0 --beta 1 --nu 2 --n 3").out, "factorial").at(0), 60.0, 1e-10);
    EXPECT_NEAR(column(run("factorial --alpha 1 --beta 1 --nu 1 --n 3").out, "factorial").at(0), 36.0, 1e-10);
    const auto big = run("factorial --n 500");
    EXPECT_EQ(big.code, 0);
    EXPECT_NE(big.out.find(",inf\n"), std::string::npos);
}

TEST(Cli, SpectrumHeaderAndValues) {
    auto r = run("spectrum --n 0..3");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,alpha,beta,nu,energy");
    const auto e = column(r.out, "energy");
    ASSERT_EQ(e.size(), 4u);
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(e[n], n + 0.5, 1e-12);
    const auto d = column(run("spectrum --alpha 1 --beta 1 --nu 1 --n 0..1").out, "energy");
    EXPECT_NEAR(d.at(0), 0.5, 1e-12);
    EXPECT_NEAR(d.at(1), 2.5, 1e-12);
    EXPECT_EQ(column(run("spectrum --alpha 0,0.5,1 --nu 1 --n 0..4").out, "energy").size(), 15u);
}

TEST(Cli, MandelRows) {
    auto r = run("mandel --x 0.5:5:10");
    ASSERT_EQ(r.code, 0);
    const auto q = column(r.out, "q_z");
    ASSERT_EQ(q.size(), 10u);
    for (double v : q) EXPECT_LE(std::fabs(v), 1e-9);
    EXPECT_GT(column(run("mandel --alpha 0 --beta 1 --nu 0.5 --x 1").out, "q_z").at(0), 0.0);
    EXPECT_EQ(run("mandel --x 0").code, 2);
}

TEST(Cli, UncertaintyUnits) {
    auto u = [](const std::string& p) { return column(run("uncertainty --units half-hbar " + p).out, "vacuum_product").at(0); };
    EXPECT_NEAR(u("--alpha 0 --beta 1 --nu 0"), 1.0, 1e-12);
    EXPECT_NEAR(u("--alpha 0 --beta 1 --nu 1"), 2.0, 1e-12);
    EXPECT_NEAR(u("--alpha 1 --beta 1 --nu 1"), 1.0, 1e-12);
    EXPECT_EQ(run("uncertainty --units furlongs").code, 2);
}

TEST(Cli, Wavefunction) {
    EXPECT_NEAR(column(run("wavefunction --k 0 --x 0").out, "psi").at(0), 0.7511255445, 1e-10);
    EXPECT_NEAR(column(run("wavefunction --k 0 --x 1").out, "psi").at(0), 0.4555806722, 5e-10);
    EXPECT_NEAR(column(run("wavefunction --k 1 --x 1").out, "psi").at(0), 0.6442883651, 1e-10);
    EXPECT_EQ(run("wavefunction --x -1").code, 2);
}

TEST(Cli, Weight) {
    EXPECT_NEAR(column(run("weight --family wright --alpha 1 --beta 1 --nu 1 --x 1").out, "u_tilde").at(0), 0.2277877,
                1e-7);
    EXPECT_NEAR(column(run("weight --family ml-closed-form --x 1").out, "u_tilde").at(0), 0.3678794, 1e-7);
    for (double u : column(run("weight --family ml-closed-form --x 0.5:20:8").out, "u")) {
        EXPECT_NEAR(u, 0.3183099, 1e-7);
    }
    // alpha contradicting the family, unknown family, pole of Gamma(-nu)
    EXPECT_EQ(run("weight --family wright --alpha 0 --nu 1 --x 1").code, 2);
    EXPECT_EQ(run("weight --family cauchy --x 1").code, 2);
    EXPECT_EQ(run("weight --family one-minus-beta --beta 0.5 --nu 0 --x 1").code, 2);
}

TEST(Cli, MomentsAndExitCodes) {
    auto r = run("moments --family ml-closed-form --n-max 5");
    EXPECT_EQ(r.code, 0);
    for (double e : column(r.out, "rel_error")) EXPECT_LE(e, 1e-9);
    auto w = run("moments --family wright --beta 1 --nu 1 --n-max 6");
    EXPECT_EQ(w.code, 0);
    const auto tgt = column(w.out, "target_factorial");
    ASSERT_EQ(tgt.size(), 7u);
    EXPECT_NEAR(tgt[6], 518400.0, 1e-6);
    for (double e : column(w.out, "rel_error")) EXPECT_LE(e, 1e-6);
    EXPECT_EQ(run("moments --family ml-closed-form --n-max 13").code, 2);
    // a threshold no quadrature can meet is a verification failure, with the table still written
    auto strict = run("moments --family wright --beta 1 --nu 1 --n-max 3 --threshold 1e-300");
    EXPECT_EQ(strict.code, 4);
    EXPECT_EQ(column(strict.out, "rel_error").size(), 4u);
}

TEST(Cli, CarlemanAndHankel) {
    auto c = run("carleman --alpha 0 --beta 1");
    ASSERT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("determinate"), std::string::npos);
    EXPECT_EQ(c.out.find("indeterminate"), std::string::npos);
    auto h = run("hankel --size 3 --offset 0");
    ASSERT_EQ(h.code, 0);
    EXPECT_EQ(column(h.out, "sign").at(0), 1.0);
    EXPECT_NEAR(std::exp(column(h.out, "log_abs_det").at(0)), 4.0, 1e-12);
    EXPECT_EQ(column(run("hankel --size 1 --offset 0").out, "scaled_det").at(0), 1.0);
    EXPECT_EQ(run("hankel --size 60 --offset 0").code, 3);
}

TEST(Cli, JsonCarriesConfig) {
    auto r = run("spectrum --n 0..2 --format json --alpha 0.5");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["config"]["command"], "spectrum");
    EXPECT_EQ(j["config"]["alpha"], "0.5");
    ASSERT_EQ(j["rows"].size(), 3u);
    EXPECT_DOUBLE_EQ(j["rows"][0]["alpha"].get<double>(), 0.5);
}

TEST(Cli, PdistSamplingIsSeeded) {
    auto a = run("pdist --x 2 --samples 50 --seed 9");
    auto b = run("pdist --x 2 --samples 50 --seed 9");
    auto c = run("pdist --x 2 --samples 50 --seed 10");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
    double total = 0.0;
    for (double p : column(run("pdist --x 3").out, "probability")) total += p;
    EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(Cli, InvalidConfigurations) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("spectrum --alpha 2").code, 2);
    EXPECT_EQ(run("spectrum --n 5..2").code, 2);
    EXPECT_EQ(run("spectrum --format xml").code, 2);
    EXPECT_EQ(run("spectrum --tol -1").code, 2);
    EXPECT_EQ(run("spectrum --hbar 0").code, 2);
    EXPECT_EQ(run("mandel --x 1:2").code, 2);
    EXPECT_EQ(run("spectrum --gnuplot").code, 2);
    EXPECT_EQ(run("nosuchcommand").code, 2);
}
