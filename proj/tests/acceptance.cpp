// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// Every criterion is checked against values computed here from independent
// formulas (test oracles), never against the library's own output alone. Time
// budgets are enforced in optimized builds only.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wcs/wcs.hpp"

namespace {

using wcs::CoherentLabel;
using wcs::DeformationParams;

struct Check {
    bool ok = true;
    std::string first_failure;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) first_failure = what;
        ok = ok && cond;
    }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
#ifdef WCS_ENFORCE_TIME_BUDGETS
    c.expect(secs < budget_s, fmt("took %.2f s, budget %.0f s", secs, budget_s));
#endif
    std::printf("%s %2d %-34s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, name, secs, c.ok ? "" : "  ",
                c.first_failure.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
}

// ---------------------------------------------------------------- CLI helpers

int run_cli(const std::string& args, const std::string& out_path) {
    const std::string cmd = std::string(WCS_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

int main() {
    std::printf("acceptance criteria\n");

    criterion(1, "classical reduction", 1.0, [](Check& c) {
        const auto cl = DeformationParams::classical();
        long double fact = 1.0L;
        for (unsigned n = 0; n <= 20; ++n) {
            if (n > 0) fact *= n;
            c.expect(oracle::rel_err(wcs::gen_factorial(n, cl).to_linear(), fact) <= 1e-12, fmt("n! at n=%g", n));
        }
        for (double x : {0.5, 1.0, 4.0}) {
            for (unsigned n = 0; n <= 25; ++n) {
                const double got = wcs::photon_pdf(n, CoherentLabel::from_intensity(x), cl);
                c.expect(oracle::rel_err(got, oracle::poisson(n, x)) <= 1e-10, fmt("Poisson x=%g n=%g", x, n));
            }
        }
        for (int i = 0; i <= 99; ++i) {
            const double x = 0.1 + 9.9 * i / 99.0;
            const auto z = CoherentLabel::from_intensity(x);
            c.expect(std::fabs(wcs::mandel_qz(z, cl)) <= 1e-9, fmt("Q_z(%g)", x));
            c.expect(std::fabs(wcs::mandel_qm(z, cl)) <= 1e-9, fmt("Q_M(%g)", x));
        }
        const wcs::PhysicalScales s(0.7, 1.3, 2.1);
        for (unsigned n = 0; n <= 50; ++n) {
            c.expect(std::fabs(wcs::energy_level(n, cl, s) - s.hbar * s.omega * (n + 0.5)) <= 1e-12 * (n + 1),
                     fmt("E_%g", n));
            c.expect(std::fabs(wcs::quadrature_stats(n, cl, s).product - 0.5 * s.hbar) <= 1e-12,
                     fmt("uncertainty n=%g", n));
        }
    });

    criterion(2, "vacuum-uncertainty range", 1.0, [](Check& c) {
        const wcs::PhysicalScales s(1.7, 1.0, 1.0);
        const double lo = wcs::vacuum_uncertainty(DeformationParams(0, 1, 0), s);
        const double hi = wcs::vacuum_uncertainty(DeformationParams(0, 1, 1), s);
        c.expect(std::fabs(lo - 0.5 * s.hbar) <= 1e-10, fmt("nu=0 gives %g", lo));
        c.expect(std::fabs(hi - s.hbar) <= 1e-10, fmt("nu=1 gives %g", hi));
        // the sweep between is the box value [1] = 1 + nu, rising monotonically
        double prev = lo;
        for (int i = 1; i <= 100; ++i) {
            const double v = i / 100.0;
            const double u = wcs::vacuum_uncertainty(DeformationParams(0, 1, v), s);
            c.expect(std::fabs(u - 0.5 * s.hbar * (1.0 + v)) <= 1e-10, fmt("nu=%g", v));
            c.expect(u > prev, fmt("monotone at nu=%g", v));
            prev = u;
        }
    });

    criterion(3, "Mandel sign checks", 10.0, [](Check& c) {
        for (double v : {0.25, 0.5, 0.75}) {
            const double q = wcs::mandel_qz(1.0, DeformationParams(0, 1, v));
            const double want = static_cast<double>(oracle::mandel_qz(1.0L, 0, 1, v));
            c.expect(q > 0.0, fmt("Q_z(1) = %g for nu=%g", q, v));
            c.expect(std::fabs(q - want) <= 1e-8, fmt("Q_z(1) oracle mismatch for nu=%g", v));
        }
        c.expect(std::fabs(wcs::mandel_qz(1.0, DeformationParams(0, 1, 0))) <= 1e-9, "Q_z(1) nu=0");
        // alpha = 1 regression goldens (from the Fock-sum oracle)
        const DeformationParams w(1, 1, 1);
        c.expect(std::fabs(wcs::mandel_qz(1.0, w) - (-0.2646472312)) <= 1e-9, "Q_z golden alpha=1");
        c.expect(std::fabs(wcs::mandel_qm(1.0, w) - 1.395549316) <= 1e-8, "Q_M golden alpha=1");
    });

    criterion(4, "moment closure, Wright family", 60.0, [](Check& c) {
        const double k = 2.0 * std::cyl_bessel_k(0.0, 2.0);
        c.expect(std::fabs(wcs::weight_wright(1.0, 1.0, 1.0).u_tilde - k) <= 1e-7 * k, "Bessel cross-check");
        const auto r = wcs::verify_moments({wcs::WeightFamily::wright, 1.0, 1.0}, 6);
        long double fact = 1.0L;
        for (unsigned n = 0; n <= 6; ++n) {
            if (n > 0) fact *= n;
            c.expect(oracle::rel_err(r.quadrature_moments[n], fact * fact) <= 1e-6, fmt("(n!)^2 at n=%g", n));
        }
        for (double v : {0.5, 1.0}) {
            const auto h = wcs::verify_moments({wcs::WeightFamily::wright, 0.5, v}, 8);
            for (unsigned n = 0; n <= 8; ++n) {
                c.expect(oracle::rel_err(h.quadrature_moments[n], oracle::wright_factorial(n, 0.5, v)) <= 1e-5,
                         fmt("beta=0.5 nu=%g n=%g", v, n));
            }
        }
    });

    criterion(5, "Mittag-Leffler closed-form weight", 5.0, [](Check& c) {
        wcs::MomentOptions opt;
        opt.outer_rel_tol = 1e-10;
        for (double v : {0.0, 0.5, 1.0, 2.0}) {
            const auto r = wcs::verify_moments({wcs::WeightFamily::ml_closed_form, 1.0, v}, 10, opt);
            for (unsigned n = 0; n <= 10; ++n) {
                c.expect(oracle::rel_err(r.quadrature_moments[n], oracle::ml_factorial(n, 1.0, v)) <= 1e-8,
                         fmt("nu=%g n=%g", v, n));
            }
        }
    });

    criterion(6, "Carleman / Hankel suite", 10.0, [](Check& c) {
        for (int i = 0; i <= 20; ++i) {
            for (int j = 1; j <= 20; ++j) {
                const DeformationParams p(i / 20.0, j / 20.0, 0.5);
                c.expect(wcs::carleman_classify(p).determinate, "determinate on valid grid " + p.describe());
            }
        }
        for (double e : {1.01, 1.5, 2.0, 3.0}) {
            c.expect(!wcs::classify_exponent(e).determinate, fmt("synthetic exponent %g", e));
        }
        for (const auto& t : oracle::grid27()) {
            const DeformationParams p(t.alpha, t.beta, t.nu);
            for (unsigned size = 1; size <= 5; ++size) {
                for (unsigned offset : {0u, 1u}) {
                    const auto h = wcs::hankel_hadamard(p, size, offset);
                    c.expect(h.sign == 1 && h.scaled_det > 0.0,
                             "Hankel positivity " + p.describe() + fmt(" size=%g offset=%g", size, offset));
                }
            }
        }
        const auto h3 = wcs::hankel_hadamard(DeformationParams::classical(), 3, 0);
        c.expect(std::fabs(std::exp(h3.log_abs_det) - 4.0) <= 1e-12, "classical size-3 determinant");
    });

    criterion(7, "two-path identities", 30.0, [](Check& c) {
        oracle::Rng rng(2024);
        for (int i = 0; i < 30; ++i) {
            const auto t = oracle::random_triple(rng);
            const DeformationParams p(t.alpha, t.beta, t.nu);
            const double x = rng.uniform(0.05, 8.0);
            for (unsigned r : {1u, 2u}) {
                const double got = wcs::normally_ordered_moment(r, CoherentLabel::from_intensity(x), p);
                const auto want = oracle::fock_factorial_moment(r, x, t.alpha, t.beta, t.nu);
                c.expect(oracle::rel_err(got, want) <= 1e-8, "moment r=" + std::to_string(r) + " " + p.describe());
            }
        }
        for (int i = 0; i < 100; ++i) {
            const auto t = oracle::random_triple(rng);
            const DeformationParams p(t.alpha, t.beta, t.nu);
            const CoherentLabel z1(rng.uniform(-2, 2), rng.uniform(-2, 2));
            const CoherentLabel z2(rng.uniform(-2, 2), rng.uniform(-2, 2));
            const double d = wcs::continuity_defect(z1, z2, p).defect;
            c.expect(d <= 1e-9, fmt("continuity defect %g", d) + " " + p.describe());
        }
        for (int i = 0; i < 20; ++i) {
            const auto t = oracle::random_triple(rng);
            const DeformationParams p(t.alpha, t.beta, t.nu);
            const std::complex<double> z(rng.uniform(-2, 2), rng.uniform(-2, 2));
            const long double log_norm = std::log(oracle::n_function(std::norm(z), t.alpha, t.beta, t.nu));
            // amplitudes c_n = z^n / sqrt([n]! N) from the product factorial
            auto amp = [&](unsigned n) {
                const long double mag = std::exp(n * std::log(std::abs(z)) -
                                                  0.5L * oracle::log_factorial_product(n, t.alpha, t.beta, t.nu) -
                                                  0.5L * log_norm);
                return std::polar(static_cast<double>(mag), n * std::arg(z));
            };
            for (unsigned n = 0; n < 40; ++n) {
                const auto cn = amp(n);
                if (std::abs(cn) < 1e-200) break;
                const auto lhs = wcs::ladder_up_coeff(n, p) * amp(n + 1);
                c.expect(std::abs(lhs - z * cn) <= 1e-10 * std::abs(z * cn), "eigenstate relation " + p.describe());
            }
        }
    });

    criterion(8, "wavefunction cross-checks", 5.0, [](Check& c) {
        for (const auto& t : {oracle::Triple{0.5, 0.75, 0.25}, oracle::Triple{1, 1, 1}, oracle::Triple{0.2, 0.5, 1.5}}) {
            const DeformationParams p(t.alpha, t.beta, t.nu);
            for (int i = 0; i <= 60; ++i) {
                const double x = 3.0 * i / 60.0;
                const double closed = wcs::first_excited_closed_form(x, p);
                const double ladder = wcs::excited_wavefunction(1, x, p).value;
                const double scale = x == 0.0 ? 1.0 : std::fabs(closed);
                c.expect(std::fabs(ladder - closed) <= 1e-9 * scale, "first excited " + p.describe() + fmt(" x=%g", x));
            }
        }
        const auto cl = DeformationParams::classical();
        for (int i = 0; i <= 80; ++i) {
            const double x = 4.0 * i / 80.0;
            c.expect(std::fabs(wcs::excited_wavefunction(0, x, cl).value - oracle::gaussian_ground(x)) <= 1e-10,
                     fmt("Gaussian x=%g", x));
            c.expect(std::fabs(wcs::excited_wavefunction(1, x, cl).value - oracle::hermite_first(x)) <= 1e-10,
                     fmt("Hermite x=%g", x));
        }
    });

    criterion(9, "asymptotics", 5.0, [](Check& c) {
        const oracle::Triple triples[] = {{0, 1, 0}, {1, 1, 1}, {0.5, 0.5, 0.5}, {1, 0.25, 2}, {0.25, 0.75, 0}};
        for (const auto& t : triples) {
            const DeformationParams p(t.alpha, t.beta, t.nu);
            auto ratio = [&](unsigned n) {
                // product-of-boxes oracle for the exact log factorial
                return static_cast<double>(oracle::log_factorial_product(n, t.alpha, t.beta, t.nu)) /
                       wcs::log_factorial_asymptotic(n, p);
            };
            const double r4 = ratio(10000), r2 = ratio(100);
            c.expect(r4 >= 0.98 && r4 <= 1.02, fmt("ratio %g at n=1e4", r4) + " " + p.describe());
            c.expect(std::fabs(r4 - 1.0) < std::fabs(r2 - 1.0), "trend " + p.describe());
            const double lib = wcs::gen_factorial(10000, p).log_abs / wcs::log_factorial_asymptotic(10000, p);
            c.expect(std::fabs(lib - r4) <= 1e-9, "library vs oracle " + p.describe());
        }
    });

    criterion(10, "CLI determinism and exit codes", 10.0, [](Check& c) {
        const std::string dir = "acceptance_cli";
        std::filesystem::create_directories(dir);
        const std::vector<std::string> commands = {
            "factorial --alpha 0,1 --nu 1 --n 0..30",
            "spectrum --alpha 0:1:3 --beta 0.5,1 --nu 1 --n 0..20",
            "pdist --alpha 0.5 --beta 0.75 --nu 0.25 --x 0.5,2,6",
            "pdist --x 3 --samples 200 --seed 42",
            "mandel --alpha 1 --beta 1 --nu 0.25,1 --x 0.1:5:20",
            "uncertainty --alpha 0 --beta 0.25:1:4 --nu 0:1:5 --units half-hbar",
            "wavefunction --alpha 0.5 --beta 0.75 --nu 0.25 --k 0..2 --x 0:3:16",
            "weight --family wright --beta 0.5 --nu 1 --x 0.1:8:6",
            "weight --family one-minus-beta --beta 0.6 --nu -0.3,0.4 --x 0.2:5:5",
            "moments --family ml-closed-form --nu 0.5 --n-max 8",
            "moments --family wright --beta 1 --nu 1 --n-max 4",
            "carleman --alpha 0:1:3 --beta 0.5,1 --nu 0.5",
            "hankel --alpha 0.5 --beta 0.75 --nu 1 --size 1..5 --offset 0,1",
        };
        int idx = 0;
        for (const auto& cmd : commands) {
            for (const char* format : {"csv", "json"}) {
                const std::string args = cmd + " --format " + format;
                const std::string a = dir + "/run" + std::to_string(idx) + "a." + format;
                const std::string b = dir + "/run" + std::to_string(idx) + "b." + format;
                const int ca = run_cli(args, a), cb = run_cli(args, b);
                c.expect(ca == 0 && cb == 0, "exit code for: " + args);
                const std::string ta = slurp(a), tb = slurp(b);
                c.expect(!ta.empty() && ta == tb, "byte-identical output for: " + args);
            }
            ++idx;
        }
        // --out writes the same bytes as standard output
        const std::string file = dir + "/out.csv";
        run_cli("spectrum --n 0..5 --out " + file, dir + "/stdout.txt");
        run_cli("spectrum --n 0..5", dir + "/direct.csv");
        c.expect(slurp(file) == slurp(dir + "/direct.csv") && slurp(dir + "/stdout.txt").empty(), "--out");
        const std::string sink = dir + "/sink";
        c.expect(run_cli("spectrum --alpha 1.5", sink) == 2, "exit 2 on invalid parameters");
        c.expect(run_cli("weight --family wright --alpha 0 --nu 1 --x 1", sink) == 2, "exit 2 on family mismatch");
        c.expect(run_cli("hankel --size 60 --offset 0", sink) == 3, "exit 3 on numerical failure");
        c.expect(run_cli("moments --family wright --beta 1 --nu 1 --n-max 3 --threshold 1e-300", sink) == 4,
                 "exit 4 on verification failure");
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
