// fibcmv command-line front end: reproducible, machine-readable outputs for
// the fibonacci-word, spectrum, walk and ising computations.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fibcmv/cmv.hpp"
#include "fibcmv/errors.hpp"
#include "fibcmv/fib_words.hpp"
#include "fibcmv/ising.hpp"
#include "fibcmv/poly_roots.hpp"
#include "fibcmv/qwalk.hpp"
#include "fibcmv/trace_map.hpp"

using json = nlohmann::ordered_json;
using namespace fibcmv;
using words::SubshiftPoint;

namespace {

constexpr const char* kVersion = "fibcmv-output v1";

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Output {
    std::string path;      // empty = stdout
    std::string format;    // "csv" or "json"
    json config;

    std::ostream& open(std::ofstream& file) const {
        if (path.empty()) return std::cout;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output path: " + path);
        return file;
    }

    // Tabular output: CSV by default, or a JSON array of row objects when
    // --format json is requested.
    void write_table(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) const {
        if (format == "json") {
            json payload = json::array();
            for (const auto& row : rows) {
                json obj;
                for (std::size_t i = 0; i < header.size(); ++i)
                    obj[header[i]] = i < row.size() ? row[i] : "";
                payload.push_back(obj);
            }
            write_json(payload);
            return;
        }
        std::ofstream file;
        std::ostream& os = open(file);
        os << "# " << kVersion << "\n";
        os << "# config " << config.dump() << "\n";
        for (std::size_t i = 0; i < header.size(); ++i)
            os << header[i] << (i + 1 < header.size() ? "," : "\n");
        for (const auto& row : rows)
            for (std::size_t i = 0; i < row.size(); ++i)
                os << row[i] << (i + 1 < row.size() ? "," : "\n");
    }

    void write_json(const json& payload) const {
        std::ofstream file;
        std::ostream& os = open(file);
        json envelope;
        envelope["version"] = kVersion;
        envelope["config"] = config;
        envelope["payload"] = payload;
        os << envelope.dump(2) << "\n";
    }
};

SubshiftPoint parse_omega(const std::string& text) {
    if (text == "u") return SubshiftPoint::fixed_point();
    if (text.rfind("shift:", 0) == 0) return SubshiftPoint::shift(std::stoll(text.substr(6)));
    if (text.rfind("rot:", 0) == 0) return SubshiftPoint::rotation(std::stod(text.substr(4)));
    throw CLI::ValidationError("--omega", "expected u, shift:J or rot:THETA");
}

// ------------------------------------------------------------------ fib
int run_fib_census(int k, const Output& out) {
    const auto census = words::factor_census(k);
    json payload;
    payload["k"] = k;
    payload["F_k"] = census.length;
    payload["count"] = census.count;
    payload["repeatable"] = census.repeatable;
    payload["nonrepeatable_word"] = census.nonrepeatable;
    out.write_json(payload);
    return 0;
}

// ------------------------------------------------------------------ spectrum
int run_spectrum(double theta_a, double theta_b, int depth, int grid, int threads,
                 const Output& out) {
    const tracemap::CoinAngles angles{theta_a, theta_b};
    const auto spec = tracemap::spectrum_approx(angles, depth, grid, threads);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        const bool in = spec.mask[static_cast<std::size_t>(i)] != 0;
        std::vector<std::string> row{fmt17(spec.angle(i)), in ? "1" : "0"};
        if (in) {
            const auto tb = tracemap::transport_constants(spec.point(i), angles, depth);
            row.push_back(fmt17(tb.invariant));
            row.push_back(fmt17(tb.C));
            row.push_back(fmt17(tb.gamma1));
            row.push_back(fmt17(tb.gamma2));
            row.push_back(fmt17(tb.beta));
        } else {
            row.insert(row.end(), {"", "", "", "", ""});
        }
        rows.push_back(std::move(row));
    }
    out.write_table({"angle", "in_spectrum", "I", "C", "gamma1", "gamma2", "beta"}, rows);
    return 0;
}

// ------------------------------------------------------------------ walk
int run_walk(double theta_a, double theta_b, const std::string& omega, long long steps, double p,
             const Output& out) {
    const tracemap::CoinAngles angles{theta_a, theta_b};
    const auto coins = walk::coin_assignment(parse_omega(omega), angles);
    const auto series = walk::evolve_moments(coins, steps, p);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t n = 0; n < series.moments.size(); ++n)
        rows.push_back({std::to_string(n), fmt17(series.moments[n]), fmt17(series.time_avg[n])});
    out.write_table({"n", "M", "Mtilde"}, rows);
    return 0;
}

int run_walk_exponents(double theta_a, double theta_b, const std::string& omega, int nmax_pow,
                       double p, int depth, int grid, int threads, const Output& out) {
    if (nmax_pow < 7) throw CLI::ValidationError("--nmax-pow", "need at least 2^7 steps");
    const tracemap::CoinAngles angles{theta_a, theta_b};
    const auto coins = walk::coin_assignment(parse_omega(omega), angles);
    const long long max_n = 1LL << nmax_pow;
    const auto series = walk::evolve_moments(coins, max_n, p);
    std::vector<long long> ladder;
    std::vector<double> values;
    for (int e = 4; e <= nmax_pow; ++e) {
        ladder.push_back(1LL << e);
        values.push_back(series.time_avg[static_cast<std::size_t>((1LL << e) - 1)]);
    }
    const auto fit = walk::empirical_exponent(ladder, values, p);

    const auto spec = tracemap::spectrum_approx(angles, depth, grid, threads);
    std::vector<Complex> samples;
    for (int i = 0; i < spec.grid; ++i)
        if (spec.mask[static_cast<std::size_t>(i)]) samples.push_back(spec.point(i));
    const double bound =
        samples.empty() ? 0.0 : tracemap::bound_over_support(angles, samples, depth);

    json payload;
    payload["p"] = p;
    payload["beta_tilde_fit"] = fit.fitted;
    payload["beta_minus"] = fit.lower;
    payload["beta_plus"] = fit.upper;
    payload["theory_lower_bound"] = bound;
    payload["note"] = "finite-N proxy over N = 2^4..2^" + std::to_string(nmax_pow);
    out.write_json(payload);
    return 0;
}

// ------------------------------------------------------------------ ising
int run_ising_zeros(double ja, double jb, double tau, const std::string& omega, long long length,
                    const Output& out) {
    const auto ring =
        ising::fibonacci_couplings(Complex{ja}, Complex{jb}, parse_omega(omega), length, tau);
    const auto alphas = ising::theta_inversion(ising::beta_sequence(ring));
    const auto zeros = ising::zeros_on_circle(alphas);
    const auto band_list = ising::bands(alphas);
    if (zeros.angles.size() != band_list.size())
        throw NumericError("zero count vs band count mismatch");
    // bands are ordered by their zero; zero i sits in band i
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < zeros.angles.size(); ++i)
        rows.push_back({fmt17(zeros.angles[i]), fmt17(zeros.residuals[i]), std::to_string(i)});
    out.write_table({"angle", "residual", "band_index"}, rows);
    return 0;
}

int run_ising_dos(double ja, double jb, double tau, const std::string& omega, int kmax,
                  const Output& out) {
    const auto report =
        ising::dos_convergence(Complex{ja}, Complex{jb}, parse_omega(omega), 3, kmax, tau);
    json entries = json::array();
    for (const auto& e : report.entries) {
        json row;
        row["k"] = e.k;
        row["F_k"] = e.length;
        row["kolmogorov_prev"] = e.kolmogorov_prev;
        row["cross_omega_hausdorff"] = e.cross_omega_hausdorff;
        row["cross_omega_kolmogorov"] = e.cross_omega_kolmogorov;
        row["in_band_fraction"] = e.in_band_fraction;
        entries.push_back(row);
    }
    json payload;
    payload["ladder"] = entries;
    out.write_json(payload);
    return 0;
}

// ------------------------------------------------------------------ verify
struct SuiteResult {
    std::string name;
    bool pass;
    double residual;
    double tolerance;
};

SuiteResult verify_fib(bool quick) {
    const int kmax = quick ? 6 : 9;
    bool ok = true;
    for (int k = 2; k <= kmax; ++k) {
        const auto c = words::factor_census(k);
        ok = ok && c.count == c.length + 1 && c.repeatable == c.length;
    }
    return {"fib-census", ok, 0.0, 0.0};
}

SuiteResult verify_ising_oracle(bool quick, std::uint64_t seed) {
    std::mt19937_64 gen{seed};
    std::uniform_real_distribution<double> re(0.05, 2.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    const int trials = quick ? 25 : 100;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const long long L = 1 + static_cast<long long>(gen() % (quick ? 10 : 12));
        std::vector<Complex> J;
        for (long long i = 0; i < L; ++i) J.emplace_back(re(gen), 0.0);
        const ising::IsingRing ring(std::move(J));
        const Complex h = std::polar(1.0, ang(gen));
        const Complex zb = ising::partition_bruteforce(ring, h);
        const Complex zt = ising::partition_transfer(ring, h);
        worst = std::max(worst, std::abs(zb - zt) / std::abs(zb));
    }
    return {"ising-oracle", worst <= 1e-10, worst, 1e-10};
}

SuiteResult verify_cgmv(bool quick) {
    const tracemap::CoinAngles angles{std::numbers::pi / 3.0, std::numbers::pi / 6.0};
    const long long w = quick ? 16 : 32;
    double worst = 0.0;
    for (long long shift : {0LL, 1LL, 2LL}) {
        const auto point = shift == 0 ? SubshiftPoint::fixed_point() : SubshiftPoint::shift(shift);
        const auto coins = walk::coin_assignment(point, angles);
        const auto uw = walk::u_matrix_window(coins, -w, w);
        const auto ew = cmv::extended_cmv_window(walk::cgmv_coefficients(coins), -w, w, -w, w);
        for (long long m = -w; m < w; ++m)
            for (long long k = -w; k < w; ++k)
                worst = std::max(worst, std::abs(uw.at(m, k) - ew.at(m, k)));
    }
    return {"cgmv-window", worst <= 1e-12, worst, 1e-12};
}

SuiteResult verify_trace(bool quick, std::uint64_t seed) {
    const tracemap::CoinAngles angles{std::numbers::pi / 3.0, std::numbers::pi / 6.0};
    std::mt19937_64 gen{seed};
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    const int kmax = quick ? 10 : 12;
    const int trials = quick ? 20 : 100;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Complex z = std::polar(1.0, ang(gen));
        const auto orbit = tracemap::trace_orbit(tracemap::initial_traces(z, angles), kmax);
        for (int k = 0; k <= std::min(kmax, orbit.max_index()); ++k) {
            const double direct = tracemap::half_trace_direct(z, angles, k);
            worst =
                std::max(worst, std::abs(direct - orbit.at(k)) / (1.0 + std::abs(orbit.at(k))));
        }
    }
    return {"trace-oracle", worst <= 1e-9, worst, 1e-9};
}

SuiteResult verify_lemma(bool quick, std::uint64_t seed) {
    std::mt19937_64 gen{seed};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    const int trials = quick ? 30 : 100;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Complex z = std::polar(1.0, ang(gen));
        const Complex a = std::polar(0.9 * std::sqrt(unit(gen)), ang(gen));
        worst = std::max(worst, std::abs(cmv::transfer_single(z, a).det() - z));
        std::vector<Complex> word;
        for (int j = 0; j < 8; ++j) word.push_back(Complex{1.8 * unit(gen) - 0.9});
        const auto [f, r] = cmv::reversal_norm_pair(z, word);
        worst = std::max(worst, std::abs(f - r) / (1.0 + f));
    }
    return {"lemma-suite", worst <= 1e-10, worst, 1e-10};
}

SuiteResult verify_zero_chain(bool quick) {
    const long long L = quick ? 13 : 21;
    const auto ring =
        ising::fibonacci_couplings(Complex{1.0}, Complex{0.5}, SubshiftPoint::fixed_point(), L);
    const auto alphas = ising::theta_inversion(ising::beta_sequence(ring));
    RootOptions opts;
    opts.on_unit_circle = true;
    auto angles_of = [&](const Poly& p) {
        std::vector<double> a;
        for (Complex r : poly_roots(p, opts)) {
            double t = std::arg(r);
            if (t < 0.0) t += 2.0 * std::numbers::pi;
            a.push_back(t);
        }
        std::sort(a.begin(), a.end());
        return a;
    };
    const auto az = angles_of(ising::partition_poly(ring));
    const auto azt = angles_of(ising::partition_tilde_poly(ring));
    const auto ad = angles_of(ising::discriminant_poly(alphas));
    const double worst =
        std::max(ising::hausdorff_distance(az, azt), ising::hausdorff_distance(azt, ad));
    return {"zero-chain", worst <= 1e-8, worst, 1e-8};
}

int run_verify(const std::string& selector, bool quick, std::uint64_t seed, const Output& out) {
    std::vector<SuiteResult> results;
    const bool all = selector == "all";
    if (all || selector == "fib") results.push_back(verify_fib(quick));
    if (all || selector == "ising-oracle") results.push_back(verify_ising_oracle(quick, seed));
    if (all || selector == "cgmv") results.push_back(verify_cgmv(quick));
    if (all || selector == "trace") results.push_back(verify_trace(quick, seed));
    if (all || selector == "lemma") results.push_back(verify_lemma(quick, seed));
    if (all || selector == "zero-chain") results.push_back(verify_zero_chain(quick));
    if (results.empty()) throw CLI::ValidationError("suite", "unknown suite: " + selector);

    bool ok = true;
    json payload = json::array();
    for (const auto& r : results) {
        ok = ok && r.pass;
        std::printf("%-14s %s  residual %.3e  tolerance %.1e\n", r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.residual, r.tolerance);
        json row;
        row["suite"] = r.name;
        row["pass"] = r.pass;
        row["residual"] = r.residual;
        row["tolerance"] = r.tolerance;
        payload.push_back(row);
    }
    if (!out.path.empty()) out.write_json(payload);
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for CMV operators with Fibonacci Verblunsky coefficients"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 20240901;
    int threads = 0;
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", seed, "seed for randomized verification suites");
    app.add_option("--threads", threads, "worker threads, 0 = auto (results independent of N)");

    // fib
    auto* fib = app.add_subcommand("fib", "fibonacci word combinatorics");
    fib->require_subcommand(1);
    fib->fallthrough();
    auto* census = fib->add_subcommand("census", "factor census at level k");
    census->fallthrough();
    int census_k = 2;
    census->add_option("--k", census_k, "substitution level")->required();

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "trace-map spectrum scan");
    spectrum->fallthrough();
    double sp_ta = 0.0, sp_tb = 0.0;
    int sp_depth = 12, sp_grid = 2000;
    spectrum->add_option("--theta-a", sp_ta, "coin angle a (radians)")->required();
    spectrum->add_option("--theta-b", sp_tb, "coin angle b (radians)")->required();
    spectrum->add_option("--depth", sp_depth, "trace-map depth");
    spectrum->add_option("--grid", sp_grid, "circle grid size");

    // walk
    auto* walk_cmd = app.add_subcommand("walk", "coined quantum walk moments");
    walk_cmd->fallthrough();
    double wk_ta = 0.0, wk_tb = 0.0, wk_p = 2.0;
    long long wk_steps = 256;
    std::string wk_omega = "u";
    walk_cmd->add_option("--theta-a", wk_ta, "coin angle a (radians)");
    walk_cmd->add_option("--theta-b", wk_tb, "coin angle b (radians)");
    walk_cmd->add_option("--omega", wk_omega, "u | shift:J | rot:THETA");
    walk_cmd->add_option("--steps", wk_steps, "number of steps");
    walk_cmd->add_option("--p", wk_p, "moment power");
    auto* exponents = walk_cmd->add_subcommand("exponents", "fit transport exponents");
    exponents->fallthrough();
    int wk_nmax_pow = 12, wk_depth = 16, wk_grid = 4000;
    exponents->add_option("--nmax-pow", wk_nmax_pow, "largest ladder point 2^pow");
    exponents->add_option("--depth", wk_depth, "spectrum depth for the theory bound");
    exponents->add_option("--grid", wk_grid, "spectrum grid for the theory bound");

    // ising
    auto* ising_cmd = app.add_subcommand("ising", "Lee-Yang zeros of the Ising ring");
    ising_cmd->require_subcommand(1);
    ising_cmd->fallthrough();
    auto* zeros_cmd = ising_cmd->add_subcommand("zeros", "partition function zeros");
    zeros_cmd->fallthrough();
    double is_ja = 1.0, is_jb = 0.5, is_tau = 1.0;
    long long is_len = 34;
    std::string is_omega = "u";
    zeros_cmd->add_option("--ja", is_ja, "coupling p(a)")->required();
    zeros_cmd->add_option("--jb", is_jb, "coupling p(b)")->required();
    zeros_cmd->add_option("--tau", is_tau, "temperature");
    zeros_cmd->add_option("--omega", is_omega, "u | shift:J");
    zeros_cmd->add_option("--length", is_len, "ring size")->required();
    auto* dos_cmd = ising_cmd->add_subcommand("dos", "density-of-zeros ladder");
    dos_cmd->fallthrough();
    double ds_ja = 1.0, ds_jb = 0.5, ds_tau = 1.0;
    int ds_kmax = 8;
    std::string ds_omega = "u";
    dos_cmd->add_option("--ja", ds_ja, "coupling p(a)")->required();
    dos_cmd->add_option("--jb", ds_jb, "coupling p(b)")->required();
    dos_cmd->add_option("--tau", ds_tau, "temperature");
    dos_cmd->add_option("--omega", ds_omega, "u | shift:J");
    dos_cmd->add_option("--kmax", ds_kmax, "largest fibonacci index");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run invariant suites");
    verify_cmd->fallthrough();
    std::string vf_suite = "all";
    bool vf_quick = false;
    verify_cmd->add_option("suite", vf_suite,
                           "all | fib | ising-oracle | cgmv | trace | lemma | zero-chain");
    verify_cmd->add_flag("--quick", vf_quick, "reduced sizes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        Output out;
        out.path = out_path;
        out.format = format;
        out.config["version"] = kVersion;
        out.config["seed"] = seed;
        // thread count deliberately left out: results are independent of it

        if (census->parsed()) {
            out.config["subcommand"] = "fib census";
            out.config["k"] = census_k;
            return run_fib_census(census_k, out);
        }
        if (spectrum->parsed()) {
            out.config["subcommand"] = "spectrum";
            out.config["theta_a"] = fmt17(sp_ta);
            out.config["theta_b"] = fmt17(sp_tb);
            out.config["depth"] = sp_depth;
            out.config["grid"] = sp_grid;
            return run_spectrum(sp_ta, sp_tb, sp_depth, sp_grid, threads, out);
        }
        if (exponents->parsed()) {
            out.config["subcommand"] = "walk exponents";
            out.config["theta_a"] = fmt17(wk_ta);
            out.config["theta_b"] = fmt17(wk_tb);
            out.config["omega"] = wk_omega;
            out.config["p"] = fmt17(wk_p);
            out.config["nmax_pow"] = wk_nmax_pow;
            out.config["depth"] = wk_depth;
            out.config["grid"] = wk_grid;
            return run_walk_exponents(wk_ta, wk_tb, wk_omega, wk_nmax_pow, wk_p, wk_depth,
                                      wk_grid, threads, out);
        }
        if (walk_cmd->parsed()) {
            out.config["subcommand"] = "walk";
            out.config["theta_a"] = fmt17(wk_ta);
            out.config["theta_b"] = fmt17(wk_tb);
            out.config["omega"] = wk_omega;
            out.config["steps"] = wk_steps;
            out.config["p"] = fmt17(wk_p);
            return run_walk(wk_ta, wk_tb, wk_omega, wk_steps, wk_p, out);
        }
        if (zeros_cmd->parsed()) {
            out.config["subcommand"] = "ising zeros";
            out.config["ja"] = fmt17(is_ja);
            out.config["jb"] = fmt17(is_jb);
            out.config["tau"] = fmt17(is_tau);
            out.config["omega"] = is_omega;
            out.config["length"] = is_len;
            return run_ising_zeros(is_ja, is_jb, is_tau, is_omega, is_len, out);
        }
        if (dos_cmd->parsed()) {
            out.config["subcommand"] = "ising dos";
            out.config["ja"] = fmt17(ds_ja);
            out.config["jb"] = fmt17(ds_jb);
            out.config["tau"] = fmt17(ds_tau);
            out.config["omega"] = ds_omega;
            out.config["kmax"] = ds_kmax;
            return run_ising_dos(ds_ja, ds_jb, ds_tau, ds_omega, ds_kmax, out);
        }
        if (verify_cmd->parsed()) {
            out.config["subcommand"] = "verify";
            out.config["suite"] = vf_suite;
            out.config["quick"] = vf_quick;
            return run_verify(vf_suite, vf_quick, seed, out);
        }
        std::cerr << "missing subcommand; see --help\n";
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "numerical inconsistency: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
