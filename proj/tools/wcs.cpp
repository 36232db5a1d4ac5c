// wcs: tabular front end to the deformed-boson library.
//
// Every subcommand sweeps the Cartesian product of the --alpha/--beta/--nu lists
// (in that nesting order) and writes one table as CSV or as JSON {config, rows}.
// Exit codes: 0 success, 2 invalid configuration, 3 numerical failure,
// 4 verification failure.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "wcs/wcs.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerify = 4;

// ---------------------------------------------------------------- grids

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw wcs::ParameterError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw wcs::ParameterError("not a finite number: '" + s + "'");
    return v;
}

std::uint64_t parse_count(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw wcs::ParameterError("not a nonnegative integer: '" + s + "'");
    }
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw wcs::ParameterError("integer out of range: '" + s + "'");
    }
}

/// "v", "v1,v2,...", or "start:stop:count" (count points, endpoints included).
std::vector<double> parse_real_grid(const std::string& spec, const char* name) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3) throw wcs::ParameterError(std::string(name) + ": expected start:stop:count");
        const double a = parse_real(parts[0]), b = parse_real(parts[1]);
        const auto count = parse_count(parts[2]);
        if (count == 0) throw wcs::ParameterError(std::string(name) + ": grid count must be >= 1");
        if (count == 1) return {a};
        for (std::uint64_t i = 0; i < count; ++i) {
            out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
        }
        return out;
    }
    for (const auto& item : split(spec, ',')) out.push_back(parse_real(item));
    if (out.empty()) throw wcs::ParameterError(std::string(name) + ": empty grid");
    return out;
}

/// "n", "n1,n2,...", or "a..b" (inclusive).
std::vector<std::uint64_t> parse_int_grid(const std::string& spec, const char* name) {
    std::vector<std::uint64_t> out;
    if (const auto dots = spec.find(".."); dots != std::string::npos) {
        const auto a = parse_count(spec.substr(0, dots)), b = parse_count(spec.substr(dots + 2));
        if (b < a) throw wcs::ParameterError(std::string(name) + ": empty range");
        if (b - a > 10000000) throw wcs::ParameterError(std::string(name) + ": range too long");
        for (auto n = a; n <= b; ++n) out.push_back(n);
        return out;
    }
    for (const auto& item : split(spec, ',')) out.push_back(parse_count(item));
    if (out.empty()) throw wcs::ParameterError(std::string(name) + ": empty grid");
    return out;
}

// ---------------------------------------------------------------- tables

struct Inf {};
using Cell = std::variant<double, std::int64_t, std::string, Inf>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_cell(const Cell& c) {
    struct {
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string& v) const { return v; }
        std::string operator()(Inf) const { return "inf"; }
    } visit;
    return std::visit(visit, c);
}

json json_cell(const Cell& c) {
    struct {
        json operator()(double v) const { return v; }
        json operator()(std::int64_t v) const { return v; }
        json operator()(const std::string& v) const { return v; }
        json operator()(Inf) const { return "inf"; }
    } visit;
    return std::visit(visit, c);
}

std::string render_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
        out += '\n';
    }
    return out;
}

std::string render_json(const Table& t, const json& config) {
    json doc;
    doc["config"] = config;
    doc["rows"] = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
        doc["rows"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- run configuration

struct RunConfig {
    std::string command;
    std::string alpha = "0", beta = "1", nu = "0";
    double hbar = 1.0, mass = 1.0, omega = 1.0;
    std::optional<double> tol;
    std::string format = "csv";
    std::string out;
    bool gnuplot = false;

    // subcommand arguments
    std::string n_range = "0..10";
    std::string x_grid = "0.1:10:100";
    std::string k_list = "0";
    std::string family = "ml-closed-form";
    std::string units = "hbar";
    std::string sizes = "1..5";
    std::string offsets = "0,1";
    unsigned n_max = 6;
    double threshold = 1e-6;
    double tail_tol = 1e-12;
    std::uint64_t samples = 0;
    std::uint64_t seed = 1;

    double series_tol() const { return tol.value_or(1e-8); }
    double quad_tol() const { return tol.value_or(1e-6); }

    wcs::PhysicalScales scales() const { return {hbar, mass, omega}; }

    std::vector<wcs::DeformationParams> params() const {
        std::vector<wcs::DeformationParams> out;
        for (double a : parse_real_grid(alpha, "--alpha")) {
            for (double b : parse_real_grid(beta, "--beta")) {
                for (double v : parse_real_grid(nu, "--nu")) out.emplace_back(a, b, v);
            }
        }
        return out;
    }

    json to_json() const {
        json j;
        j["command"] = command;
        j["alpha"] = alpha;
        j["beta"] = beta;
        j["nu"] = nu;
        j["hbar"] = hbar;
        j["mass"] = mass;
        j["omega"] = omega;
        if (tol) j["tol"] = *tol;
        j["format"] = format;
        if (command == "factorial" || command == "spectrum") j["n"] = n_range;
        if (command == "pdist" || command == "mandel" || command == "wavefunction" || command == "weight") {
            j["x"] = x_grid;
        }
        if (command == "pdist") {
            j["tail_tol"] = tail_tol;
            j["samples"] = samples;
            j["seed"] = seed;
        }
        if (command == "wavefunction") j["k"] = k_list;
        if (command == "weight" || command == "moments") j["family"] = family;
        if (command == "uncertainty") j["units"] = units;
        if (command == "moments") {
            j["n_max"] = n_max;
            j["threshold"] = threshold;
        }
        if (command == "hankel") {
            j["size"] = sizes;
            j["offset"] = offsets;
        }
        return j;
    }
};

void add_param_columns(std::vector<Cell>& row, const wcs::DeformationParams& p) {
    row.emplace_back(p.alpha());
    row.emplace_back(p.beta());
    row.emplace_back(p.nu());
}

// ---------------------------------------------------------------- commands

struct CommandResult {
    Table table;
    int exit_code = kExitOk;
};

CommandResult cmd_factorial(const RunConfig& cfg) {
    Table t{{"n", "alpha", "beta", "nu", "log_factorial", "factorial"}, {}};
    const auto ns = parse_int_grid(cfg.n_range, "--n");
    for (const auto& p : cfg.params()) {
        for (auto n : ns) {
            const auto f = wcs::gen_factorial(n, p);
            std::vector<Cell> row{static_cast<std::int64_t>(n)};
            add_param_columns(row, p);
            row.emplace_back(f.log_abs);
            if (f.representable()) {
                row.emplace_back(f.to_linear());
            } else {
                row.emplace_back(Inf{});
            }
            t.rows.push_back(std::move(row));
        }
    }
    return {std::move(t)};
}

CommandResult cmd_spectrum(const RunConfig& cfg) {
    Table t{{"n", "alpha", "beta", "nu", "energy"}, {}};
    const auto ns = parse_int_grid(cfg.n_range, "--n");
    const auto s = cfg.scales();
    for (const auto& p : cfg.params()) {
        for (auto n : ns) {
            std::vector<Cell> row{static_cast<std::int64_t>(n)};
            add_param_columns(row, p);
            row.emplace_back(wcs::energy_level(n, p, s));
            t.rows.push_back(std::move(row));
        }
    }
    return {std::move(t)};
}

// Uniform in [0, 1) from the top 53 bits; fixed across standard libraries.
double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

CommandResult cmd_pdist(const RunConfig& cfg) {
    const auto xs = parse_real_grid(cfg.x_grid, "--x");
    Table t;
    if (cfg.samples == 0) {
        t.columns = {"x", "alpha", "beta", "nu", "n", "probability"};
    } else {
        t.columns = {"x", "alpha", "beta", "nu", "sample", "n"};
    }
    for (const auto& p : cfg.params()) {
        for (double x : xs) {
            if (x < 0.0) throw wcs::ParameterError("--x must be >= 0");
            const auto dist = wcs::photon_distribution(wcs::CoherentLabel::from_intensity(x), p, cfg.tail_tol);
            if (cfg.samples == 0) {
                for (std::size_t n = 0; n < dist.probabilities.size(); ++n) {
                    std::vector<Cell> row{x};
                    add_param_columns(row, p);
                    row.emplace_back(static_cast<std::int64_t>(n));
                    row.emplace_back(dist.probabilities[n]);
                    t.rows.push_back(std::move(row));
                }
                continue;
            }
            std::vector<double> cdf;
            wcs::CompensatedSum acc;
            for (double pn : dist.probabilities) {
                acc.add(pn);
                cdf.push_back(acc.value());
            }
            std::mt19937_64 gen(cfg.seed);
            for (std::uint64_t i = 0; i < cfg.samples; ++i) {
                const double u = unit_uniform(gen) * cdf.back();
                const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
                const auto n = std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
                std::vector<Cell> row{x};
                add_param_columns(row, p);
                row.emplace_back(static_cast<std::int64_t>(i));
                row.emplace_back(static_cast<std::int64_t>(n));
                t.rows.push_back(std::move(row));
            }
        }
    }
    return {std::move(t)};
}

CommandResult cmd_mandel(const RunConfig& cfg) {
    const auto xs = parse_real_grid(cfg.x_grid, "--x");
    Table t{{"x", "alpha", "beta", "nu", "q_z", "q_m"}, {}};
    for (const auto& p : cfg.params()) {
        for (double x : xs) {
            if (!(x > 0.0)) throw wcs::ParameterError("--x must be > 0 for the Mandel parameters");
            const auto z = wcs::CoherentLabel::from_intensity(x);
            std::vector<Cell> row{x};
            add_param_columns(row, p);
            row.emplace_back(wcs::mandel_qz(z, p));
            row.emplace_back(wcs::mandel_qm(z, p));
            t.rows.push_back(std::move(row));
        }
    }
    return {std::move(t)};
}

CommandResult cmd_uncertainty(const RunConfig& cfg) {
    if (cfg.units != "hbar" && cfg.units != "half-hbar") {
        throw wcs::ParameterError("--units must be hbar or half-hbar");
    }
    Table t{{"alpha", "beta", "nu", "vacuum_product"}, {}};
    const auto s = cfg.scales();
    const double unit = cfg.units == "half-hbar" ? 0.5 * s.hbar : 1.0;
    for (const auto& p : cfg.params()) {
        std::vector<Cell> row;
        add_param_columns(row, p);
        row.emplace_back(wcs::vacuum_uncertainty(p, s) / unit);
        t.rows.push_back(std::move(row));
    }
    return {std::move(t)};
}

CommandResult cmd_wavefunction(const RunConfig& cfg) {
    const auto xs = parse_real_grid(cfg.x_grid, "--x");
    const auto ks = parse_int_grid(cfg.k_list, "--k");
    const auto s = cfg.scales();
    Table t{{"x", "k", "alpha", "beta", "nu", "psi", "cancellation"}, {}};
    for (const auto& p : cfg.params()) {
        for (auto k : ks) {
            for (double x : xs) {
                const auto w = wcs::excited_wavefunction(k, x, p, s, std::min(cfg.series_tol(), 1e-14));
                if (w.cancellation) spdlog::warn("cancellation in psi_{} at x = {} for {}", k, x, p.describe());
                std::vector<Cell> row{x, static_cast<std::int64_t>(k)};
                add_param_columns(row, p);
                row.emplace_back(w.value);
                row.emplace_back(static_cast<std::int64_t>(w.cancellation));
                t.rows.push_back(std::move(row));
            }
        }
    }
    return {std::move(t)};
}

wcs::WeightFamily parse_family(const std::string& name) {
    if (name == "wright") return wcs::WeightFamily::wright;
    if (name == "one-minus-beta") return wcs::WeightFamily::one_minus_beta;
    if (name == "ml-closed-form") return wcs::WeightFamily::ml_closed_form;
    throw wcs::ParameterError("--family must be wright, one-minus-beta or ml-closed-form");
}

// Weight families fix alpha; an explicit --alpha must agree with it.
std::vector<wcs::WeightSpec> weight_specs(const RunConfig& cfg, bool alpha_given) {
    const auto family = parse_family(cfg.family);
    std::vector<wcs::WeightSpec> out;
    const auto alphas = parse_real_grid(cfg.alpha, "--alpha");
    for (double b : parse_real_grid(cfg.beta, "--beta")) {
        for (double v : parse_real_grid(cfg.nu, "--nu")) {
            wcs::WeightSpec spec{family, b, v};
            spec.validate();
            if (alpha_given) {
                for (double a : alphas) {
                    if (a != spec.alpha()) {
                        throw wcs::ParameterError("--alpha " + format_double(a) + " does not match family " +
                                                  cfg.family + " (alpha = " + format_double(spec.alpha()) + ")");
                    }
                }
            }
            out.push_back(spec);
        }
    }
    return out;
}

CommandResult cmd_weight(const RunConfig& cfg, bool alpha_given) {
    const auto xs = parse_real_grid(cfg.x_grid, "--x");
    const wcs::quad::Options opt{cfg.quad_tol() * 1e-4, 1e-12, 4000};
    Table t{{"x", "alpha", "beta", "nu", "u_tilde", "u", "err_est"}, {}};
    for (const auto& spec : weight_specs(cfg, alpha_given)) {
        const auto p = spec.params();
        for (double x : xs) {
            const auto w = spec.evaluate(x, opt);
            if (w.negative) spdlog::warn("negative weight at x = {} for {}", x, p.describe());
            std::vector<Cell> row{x};
            add_param_columns(row, p);
            row.emplace_back(w.u_tilde);
            row.emplace_back(wcs::u_from_u_tilde(w, p));
            row.emplace_back(w.abs_err_est);
            t.rows.push_back(std::move(row));
        }
    }
    return {std::move(t)};
}

CommandResult cmd_moments(const RunConfig& cfg, bool alpha_given) {
    if (cfg.n_max > 12) throw wcs::ParameterError("--n-max must be <= 12");
    if (!(cfg.threshold > 0.0)) throw wcs::ParameterError("--threshold must be > 0");
    wcs::MomentOptions opt;
    opt.outer_rel_tol = cfg.quad_tol();
    CommandResult res;
    res.table.columns = {"n", "alpha", "beta", "nu", "quadrature_moment", "target_factorial", "rel_error",
                         "truncation_point"};
    for (const auto& spec : weight_specs(cfg, alpha_given)) {
        const auto report = wcs::verify_moments(spec, cfg.n_max, opt);
        const auto p = spec.params();
        for (std::size_t i = 0; i < report.orders.size(); ++i) {
            std::vector<Cell> row{static_cast<std::int64_t>(report.orders[i])};
            add_param_columns(row, p);
            row.emplace_back(report.quadrature_moments[i]);
            row.emplace_back(report.target_factorials[i]);
            row.emplace_back(report.rel_errors[i]);
            row.emplace_back(report.truncation_points[i]);
            res.table.rows.push_back(std::move(row));
        }
        if (report.max_rel_error() > cfg.threshold) {
            spdlog::error("moment check failed for {}: max relative error {} > {}", p.describe(),
                          report.max_rel_error(), cfg.threshold);
            res.exit_code = kExitVerify;
        }
    }
    return res;
}

CommandResult cmd_carleman(const RunConfig& cfg) {
    Table t{{"alpha", "beta", "nu", "exponent", "verdict"}, {}};
    for (const auto& p : cfg.params()) {
        const auto v = wcs::carleman_classify(p);
        std::vector<Cell> row;
        add_param_columns(row, p);
        row.emplace_back(v.exponent);
        row.emplace_back(std::string(v.determinate ? "determinate" : "indeterminate"));
        t.rows.push_back(std::move(row));
    }
    return {std::move(t)};
}

CommandResult cmd_hankel(const RunConfig& cfg) {
    const auto sizes = parse_int_grid(cfg.sizes, "--size");
    const auto offsets = parse_int_grid(cfg.offsets, "--offset");
    Table t{{"alpha", "beta", "nu", "size", "offset", "sign", "scaled_det", "log_abs_det"}, {}};
    for (const auto& p : cfg.params()) {
        for (auto size : sizes) {
            for (auto offset : offsets) {
                if (offset > 1) throw wcs::ParameterError("--offset must be 0 or 1");
                const auto h = wcs::hankel_hadamard(p, size, static_cast<unsigned>(offset));
                std::vector<Cell> row;
                add_param_columns(row, p);
                row.emplace_back(static_cast<std::int64_t>(size));
                row.emplace_back(static_cast<std::int64_t>(offset));
                row.emplace_back(static_cast<std::int64_t>(h.sign));
                row.emplace_back(h.scaled_det);
                row.emplace_back(h.log_abs_det);
                t.rows.push_back(std::move(row));
            }
        }
    }
    return {std::move(t)};
}

// ---------------------------------------------------------------- output

std::string gnuplot_script(const Table& t, const std::string& csv_path) {
    std::string s = "set datafile separator ','\nset key autotitle columnhead\n";
    s += "plot '" + csv_path + "' using 1:" + std::to_string(t.columns.size()) + " with linespoints\n";
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw wcs::ParameterError("cannot open output file " + path);
    f << text;
    if (!f) throw wcs::ParameterError("failed writing " + path);
}

void setup_logging() {
    auto logger = spdlog::stderr_logger_st("wcs");
    logger->set_pattern("wcs: %l: %v");
    logger->set_level(spdlog::level::warn);
    if (const char* env = std::getenv("WCS_LOG")) {
        const std::string level = env;
        if (level == "error") logger->set_level(spdlog::level::err);
        if (level == "warn") logger->set_level(spdlog::level::warn);
        if (level == "info") logger->set_level(spdlog::level::info);
        if (level == "debug") logger->set_level(spdlog::level::debug);
    }
    spdlog::set_default_logger(logger);
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    RunConfig cfg;
    CLI::App app{"Numerics for the deformed boson algebra and its coherent states"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--alpha", cfg.alpha, "alpha: value, list a,b,c or grid start:stop:count");
    app.add_option("--beta", cfg.beta, "beta: value, list or grid");
    app.add_option("--nu", cfg.nu, "nu: value, list or grid");
    app.add_option("--hbar", cfg.hbar, "reduced Planck constant");
    app.add_option("--mass", cfg.mass, "oscillator mass");
    app.add_option("--omega", cfg.omega, "oscillator frequency");
    app.add_option("--tol", cfg.tol, "tolerance (default 1e-8 series, 1e-6 quadrature)");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out, "output file (default: standard output)");
    app.add_flag("--gnuplot", cfg.gnuplot, "also write <out>.gp plotting the CSV");

    auto* factorial = app.add_subcommand("factorial", "generalized factorial [n]!");
    factorial->add_option("--n", cfg.n_range, "n: value, list or range a..b");
    auto* spectrum = app.add_subcommand("spectrum", "energy levels E_n");
    spectrum->add_option("--n", cfg.n_range, "n: value, list or range a..b");
    auto* pdist = app.add_subcommand("pdist", "photon-number distribution of |z>");
    pdist->add_option("--x", cfg.x_grid, "intensities |z|^2");
    pdist->add_option("--tail-tol", cfg.tail_tol, "probability mass allowed beyond the cutoff");
    pdist->add_option("--samples", cfg.samples, "draw this many photon counts instead");
    pdist->add_option("--seed", cfg.seed, "sampler seed");
    auto* mandel = app.add_subcommand("mandel", "Mandel parameters Q_z and Q_M");
    mandel->add_option("--x", cfg.x_grid, "intensities |z|^2");
    auto* uncertainty = app.add_subcommand("uncertainty", "vacuum quadrature uncertainty product");
    uncertainty->add_option("--units", cfg.units, "hbar or half-hbar");
    auto* wavefunction = app.add_subcommand("wavefunction", "oscillator eigenfunctions psi_k(x)");
    wavefunction->add_option("--k", cfg.k_list, "levels: value, list or range");
    wavefunction->add_option("--x", cfg.x_grid, "positions x >= 0");
    auto* weight = app.add_subcommand("weight", "resolution-of-unity weight U~(x) and U(x)");
    weight->add_option("--family", cfg.family, "wright, one-minus-beta or ml-closed-form");
    weight->add_option("--x", cfg.x_grid, "intensities x > 0");
    auto* moments = app.add_subcommand("moments", "quadrature moments of U~ against [n]!");
    moments->add_option("--family", cfg.family, "wright, one-minus-beta or ml-closed-form");
    moments->add_option("--n-max", cfg.n_max, "highest moment order (<= 12)");
    moments->add_option("--threshold", cfg.threshold, "relative error that fails the check");
    app.add_subcommand("carleman", "Carleman determinacy verdict");
    auto* hankel = app.add_subcommand("hankel", "Hankel-Hadamard determinants");
    hankel->add_option("--size", cfg.sizes, "matrix sizes: value, list or range");
    hankel->add_option("--offset", cfg.offsets, "offsets 0 and/or 1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    const bool alpha_given = app.count("--alpha") > 0;

    try {
        if (cfg.tol && !(*cfg.tol > 0.0)) throw wcs::ParameterError("--tol must be > 0");
        if (cfg.gnuplot && (cfg.out.empty() || cfg.format != "csv")) {
            throw wcs::ParameterError("--gnuplot requires --out and CSV output");
        }
        (void)cfg.scales();
        spdlog::info("running {}", cfg.command);

        CommandResult res;
        const auto& c = cfg.command;
        if (c == "factorial") res = cmd_factorial(cfg);
        else if (c == "spectrum") res = cmd_spectrum(cfg);
        else if (c == "pdist") res = cmd_pdist(cfg);
        else if (c == "mandel") res = cmd_mandel(cfg);
        else if (c == "uncertainty") res = cmd_uncertainty(cfg);
        else if (c == "wavefunction") res = cmd_wavefunction(cfg);
        else if (c == "weight") res = cmd_weight(cfg, alpha_given);
        else if (c == "moments") res = cmd_moments(cfg, alpha_given);
        else if (c == "carleman") res = cmd_carleman(cfg);
        else res = cmd_hankel(cfg);

        const std::string text = cfg.format == "json" ? render_json(res.table, cfg.to_json()) : render_csv(res.table);
        if (cfg.out.empty()) {
            std::fwrite(text.data(), 1, text.size(), stdout);
        } else {
            write_text(cfg.out, text);
            if (cfg.gnuplot) write_text(cfg.out + ".gp", gnuplot_script(res.table, cfg.out));
        }
        return res.exit_code;
    } catch (const wcs::ParameterError& e) {
        spdlog::error("{}", e.what());
        return kExitConfig;
    } catch (const wcs::ConvergenceError& e) {
        spdlog::error("{}", e.what());
        return kExitNumeric;
    } catch (const wcs::RangeError& e) {
        spdlog::error("{}", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kExitNumeric;
    }
}
