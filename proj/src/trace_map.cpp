#include "fibcmv/trace_map.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "fibcmv/cmv.hpp"
#include "fibcmv/errors.hpp"
#include "fibcmv/fib_words.hpp"

namespace fibcmv::tracemap {

namespace {

constexpr double kEscapeOverflow = 1e150;
constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_unit(Complex z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12)
        throw std::invalid_argument("spectral parameter must satisfy |z| = 1");
}

bool escape_pair(double xj, double xj1) {
    return std::abs(xj) > 1.0 && std::abs(xj1) > 1.0 && std::abs(xj1) >= std::abs(xj);
}

}  // namespace

CoinAngles::CoinAngles(double ta, double tb) : theta_a(ta), theta_b(tb) {
    if (!(ta > -kHalfPi && ta < kHalfPi && tb > -kHalfPi && tb < kHalfPi))
        throw std::invalid_argument("coin angles must lie in the open interval (-pi/2, pi/2)");
}

TraceTriple initial_traces(Complex z, const CoinAngles& angles) {
    check_unit(z);
    const double sec_a = 1.0 / std::cos(angles.theta_a);
    const double sec_b = 1.0 / std::cos(angles.theta_b);
    TraceTriple t;
    t.x_prev = std::real(z) * sec_b;
    t.x_curr = std::real(z) * sec_a;
    t.x_next = std::real(z * z) * sec_a * sec_b +
               std::tan(angles.theta_a) * std::tan(angles.theta_b);
    t.k = 0;
    return t;
}

double fricke_vogt(double x_next, double x_curr, double x_prev) {
    return x_next * x_next + x_curr * x_curr + x_prev * x_prev -
           2.0 * x_next * x_curr * x_prev - 1.0;
}

double fricke_vogt(const TraceTriple& t) { return fricke_vogt(t.x_next, t.x_curr, t.x_prev); }

TraceOrbit trace_orbit(const TraceTriple& initial, int k_max) {
    if (k_max < 1) throw std::invalid_argument("trace_orbit: k_max must be >= 1");
    TraceOrbit orbit;
    orbit.x = {initial.x_prev, initial.x_curr, initial.x_next};
    bool overflowed = false;
    for (int k = 1; k < k_max; ++k) {
        const std::size_t n = orbit.x.size();
        const double next = 2.0 * orbit.x[n - 1] * orbit.x[n - 2] - orbit.x[n - 3];
        if (std::abs(next) > kEscapeOverflow) {
            overflowed = true;
            break;
        }
        orbit.x.push_back(next);
    }
    // escape_index is the first k satisfying the escape criterion; it always
    // precedes any overflow.
    for (int k = -1; k + 1 <= orbit.max_index(); ++k) {
        if (escape_pair(orbit.at(k), orbit.at(k + 1))) {
            orbit.escaped = true;
            orbit.escape_index = k;
            break;
        }
    }
    if (overflowed) orbit.escaped = true;
    return orbit;
}

double half_trace_direct(Complex z, const CoinAngles& angles, int k, double* imag_residual) {
    check_unit(z);
    const words::Word block = words::fib_word(k);
    const Complex alpha_a{std::sin(angles.theta_a)};
    const Complex alpha_b{std::sin(angles.theta_b)};
    Mat2 m = Mat2::identity();
    for (char letter : block) {
        // One letter contributes the coefficient pair (sin theta, 0).
        m = cmv::transfer_single(z, letter == words::kA ? alpha_a : alpha_b) * m;
        m = cmv::transfer_single(z, Complex{0.0}) * m;
    }
    const auto f = static_cast<double>(block.size());
    const Complex normalized = 0.5 * std::pow(z, -f) * m.trace();
    const double resid = std::abs(std::imag(normalized));
    if (imag_residual) *imag_residual = resid;
    if (resid > 1e-9 * (1.0 + std::abs(normalized)))
        throw NumericError("half_trace_direct: normalized trace has imaginary residual " +
                           std::to_string(resid));
    return std::real(normalized);
}

double trace_sup_bound(Complex z, const CoinAngles& angles) {
    const TraceTriple t = initial_traces(z, angles);
    const double inv = fricke_vogt(t);
    if (inv < -8.0) throw NumericError("trace_sup_bound: I(z) < -8 on the unit circle");
    const double sec_a = 1.0 / std::cos(angles.theta_a);
    const double sec_b = 1.0 / std::cos(angles.theta_b);
    return std::max({2.0 + std::sqrt(8.0 + inv), sec_a, sec_b});
}

NestNorms nests_norms(Complex z, const CoinAngles& angles) {
    check_unit(z);
    const Mat2 a = cmv::transfer_single(z, Complex{std::sin(angles.theta_a)});
    const Mat2 b = cmv::transfer_single(z, Complex{std::sin(angles.theta_b)});
    const Mat2 t = cmv::transfer_single(z, Complex{0.0});
    const Mat2 ta = t * a;
    const Mat2 tbta = t * b * ta;
    const Mat2 tatbta = t * a * tbta;
    return {ta.opnorm(), tbta.opnorm(), tatbta.opnorm()};
}

TransportBound transport_constants(Complex z, const CoinAngles& angles, int escape_depth) {
    const TraceTriple t = initial_traces(z, angles);
    TransportBound out;
    out.z = z;
    out.invariant = fricke_vogt(t);
    out.C = trace_sup_bound(z, angles);
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    out.gamma1 = std::log1p(1.0 / (4.0 * out.C * out.C)) / (16.0 * std::log(phi));
    const NestNorms norms = nests_norms(z, angles);
    const double sup = std::max(1.0, out.C);
    out.K = std::max({8.0 * sup, 4.0 * norms.ta, 4.0 * norms.tbta, 4.0 * norms.tatbta}) *
            (4.0 + 4.0 * sup);
    out.gamma2 = 4.0 * std::log2(out.K);
    out.beta = dkl_scaling_exponent(out.gamma1, 2.0 * out.gamma2 + 1.0);
    out.in_spectrum = !trace_orbit(t, escape_depth).escaped;
    return out;
}

double dkl_scaling_exponent(double gamma_lower, double gamma_upper) {
    if (!(gamma_lower > 0.0 && gamma_upper > 0.0))
        throw std::invalid_argument("dkl_scaling_exponent: exponents must be positive");
    return 2.0 * gamma_lower / (gamma_lower + gamma_upper);
}

double SpectrumApprox::angle(int i) const {
    return 2.0 * std::numbers::pi * double(i) / double(grid);
}

Complex SpectrumApprox::point(int i) const { return std::polar(1.0, angle(i)); }

double SpectrumApprox::in_fraction() const {
    long long c = 0;
    for (auto m : mask) c += m;
    return double(c) / double(mask.size());
}

std::vector<std::pair<double, double>> SpectrumApprox::arcs() const {
    std::vector<std::pair<double, double>> out;
    const int n = grid;
    if (n == 0) return out;
    bool all = true;
    for (auto m : mask) all = all && m;
    if (all) {
        out.emplace_back(0.0, 2.0 * std::numbers::pi);
        return out;
    }
    // Walk from a gap cell so wrap-around arcs merge.
    int start = 0;
    while (mask[static_cast<std::size_t>(start)]) ++start;
    int i = start;
    do {
        if (mask[static_cast<std::size_t>(i)]) {
            int j = i;
            while (mask[static_cast<std::size_t>((j + 1) % n)]) j = (j + 1) % n;
            const double lo = angle(i);
            double hi = angle(j);
            if (j < i) hi += 2.0 * std::numbers::pi;
            out.emplace_back(lo, hi);
            i = (j + 1) % n;
        } else {
            i = (i + 1) % n;
        }
    } while (i != start);
    return out;
}

SpectrumApprox spectrum_approx(const CoinAngles& angles, int depth, int grid, int threads) {
    if (grid < 1000) throw std::invalid_argument("spectrum_approx: grid must be >= 1000");
    if (depth < 3) throw std::invalid_argument("spectrum_approx: depth must be >= 3");
    SpectrumApprox out;
    out.grid = grid;
    out.depth = depth;
    out.mask.assign(static_cast<std::size_t>(grid), 0);

    auto work = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * double(i) / double(grid));
            const TraceOrbit orbit = trace_orbit(initial_traces(z, angles), depth);
            out.mask[static_cast<std::size_t>(i)] = orbit.escaped ? 0 : 1;
        }
    };

    int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads <= 1) {
        work(0, grid);
        return out;
    }
    n_threads = std::min(n_threads, grid);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    const int chunk = (grid + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t)
        pool.emplace_back(work, t * chunk, std::min(grid, (t + 1) * chunk));
    for (auto& th : pool) th.join();
    return out;
}

double bound_over_support(const CoinAngles& angles, std::span<const Complex> samples,
                          int escape_depth) {
    if (samples.empty()) throw std::invalid_argument("bound_over_support: empty sample set");
    double best = 0.0;
    for (Complex z : samples)
        best = std::max(best, transport_constants(z, angles, escape_depth).beta);
    return best;
}

}  // namespace fibcmv::tracemap
