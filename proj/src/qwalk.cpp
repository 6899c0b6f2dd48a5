#include "fibcmv/qwalk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fibcmv/errors.hpp"

namespace fibcmv::walk {

Coin Coin::rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return Coin{Mat2{Complex{c}, Complex{-s}, Complex{s}, Complex{c}}};
}

bool Coin::is_unitary(double tol) const {
    // columns orthonormal
    const Complex dot = std::conj(m.a) * m.b + std::conj(m.c) * m.d;
    const double n1 = std::norm(m.a) + std::norm(m.c);
    const double n2 = std::norm(m.b) + std::norm(m.d);
    return std::abs(n1 - 1.0) <= tol && std::abs(n2 - 1.0) <= tol && std::abs(dot) <= tol;
}

CoinSequence coin_assignment(const words::SubshiftPoint& omega, const CoinAngles& angles) {
    const Coin ca = Coin::rotation(angles.theta_a);
    const Coin cb = Coin::rotation(angles.theta_b);
    return [omega, ca, cb](long long n) { return omega.at(n) == words::kA ? ca : cb; };
}

WalkState WalkState::delta(long long m0, long long radius) {
    if (radius < std::llabs(m0) + 4)
        throw std::invalid_argument("WalkState::delta: window too small for initial support");
    WalkState s;
    s.lo_ = -radius;
    s.hi_ = radius;
    s.amp_.assign(static_cast<std::size_t>(2 * radius + 1), Complex{0.0});
    s.amp_[s.idx(m0)] = Complex{1.0};
    s.support_lo_ = s.support_hi_ = m0;
    return s;
}

WalkState WalkState::delta_for_steps(long long m0, long long steps) {
    return delta(m0, std::llabs(m0) + 2 * steps + 4);
}

void WalkState::step(const CoinSequence& coins) {
    if (support_lo_ - 2 < lo_ || support_hi_ + 2 > hi_)
        throw std::invalid_argument(
            "WalkState::step: support within 2 of the window edge; size the window as "
            "radius >= support + 2*steps + 4");
    std::vector<Complex> next(amp_.size(), Complex{0.0});
    // positions n with 2n or 2n+1 inside the current support
    const long long n_lo = (support_lo_ - 1) / 2 - 1;
    const long long n_hi = support_hi_ / 2 + 1;
    for (long long n = n_lo; n <= n_hi; ++n) {
        const long long up = 2 * n, down = 2 * n + 1;
        if (up < lo_ || down > hi_) continue;
        const Complex au = amp_[idx(up)];
        const Complex ad = amp_[idx(down)];
        if (au == Complex{0.0} && ad == Complex{0.0}) continue;
        const Coin c = coins(n);
        // |n,up>   -> c11 |n+1,up> + c21 |n-1,down>
        // |n,down> -> c12 |n+1,up> + c22 |n-1,down>
        next[idx(2 * (n + 1))] += c.c11() * au + c.c12() * ad;
        next[idx(2 * (n - 1) + 1)] += c.c21() * au + c.c22() * ad;
    }
    amp_ = std::move(next);
    long long lo = hi_, hi = lo_;
    for (long long m = lo_; m <= hi_; ++m) {
        if (amp_[idx(m)] != Complex{0.0}) {
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
    }
    support_lo_ = lo;
    support_hi_ = hi;
}

double WalkState::norm() const {
    double s = 0.0;
    for (const Complex& a : amp_) s += std::norm(a);
    return std::sqrt(s);
}

double WalkState::moment(double p) const {
    double s = 0.0;
    for (long long m = support_lo_; m <= support_hi_; ++m) {
        const double w = std::norm(amp_[idx(m)]);
        if (w != 0.0) s += (1.0 + std::pow(std::abs(double(m)), p)) * w;
    }
    return s;
}

Complex WalkState::amplitude(long long m) const {
    if (m < lo_ || m > hi_) return Complex{0.0};
    return amp_[idx(m)];
}

MomentSeries evolve_moments(const CoinSequence& coins, long long steps, double p,
                            long long initial_e_index) {
    MomentSeries out;
    out.p = p;
    out.moments.reserve(static_cast<std::size_t>(steps) + 1);
    WalkState state = WalkState::delta_for_steps(initial_e_index, steps);
    out.moments.push_back(state.moment(p));
    for (long long n = 0; n < steps; ++n) {
        state.step(coins);
        out.moments.push_back(state.moment(p));
    }
    out.time_avg.resize(out.moments.size());
    double run = 0.0;
    for (std::size_t i = 0; i < out.moments.size(); ++i) {
        run += out.moments[i];
        out.time_avg[i] = run / double(i + 1);  // Mtilde(N) with N = i+1
    }
    return out;
}

double time_avg_moments(std::span<const double> moments, long long N) {
    if (N < 1 || N > static_cast<long long>(moments.size()))
        throw std::invalid_argument("time_avg_moments: N outside the computed history");
    double s = 0.0;
    for (long long n = 0; n < N; ++n) s += moments[static_cast<std::size_t>(n)];
    return s / double(N);
}

ExponentFit empirical_exponent(std::span<const long long> ladder_N,
                               std::span<const double> mtilde_at_N, double p) {
    if (ladder_N.size() != mtilde_at_N.size())
        throw std::invalid_argument("empirical_exponent: ladder size mismatch");
    if (ladder_N.size() < 4)
        throw std::invalid_argument("empirical_exponent: need a ladder of at least 4 points");
    const std::size_t start = ladder_N.size() / 2;  // largest half
    std::vector<double> xs, ys;
    for (std::size_t i = start > 0 ? start - 1 : 0; i < ladder_N.size(); ++i) {
        xs.push_back(p * std::log(double(ladder_N[i])));
        ys.push_back(std::log(mtilde_at_N[i]));
    }
    const double n = double(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    ExponentFit fit;
    fit.fitted = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.lower = std::numeric_limits<double>::infinity();
    fit.upper = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double slope = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
        fit.lower = std::min(fit.lower, slope);
        fit.upper = std::max(fit.upper, slope);
    }
    return fit;
}

cmv::DenseMatrix u_matrix_window(const CoinSequence& coins, long long begin, long long end) {
    if (end <= begin) throw std::invalid_argument("u_matrix_window: empty range");
    cmv::DenseMatrix w(end - begin, end - begin, begin, begin);
    for (long long m = begin; m < end; ++m) {
        // Row m lists the image of e_m under one step.
        const long long n = m >= 0 ? m / 2 : -((-m + 1) / 2);  // floor(m/2)
        const Coin c = coins(n);
        if (m == 2 * n) {
            if (w.contains(m, 2 * n - 1)) w.at(m, 2 * n - 1) = c.c21();
            if (w.contains(m, 2 * n + 2)) w.at(m, 2 * n + 2) = c.c11();
        } else {
            if (w.contains(m, 2 * n - 1)) w.at(m, 2 * n - 1) = c.c22();
            if (w.contains(m, 2 * n + 2)) w.at(m, 2 * n + 2) = c.c12();
        }
    }
    return w;
}

namespace {

// Phases sigma^1_n, sigma^2_n of the diagonal coin entries, in [0, 2pi).
std::pair<double, double> coin_phases(const Coin& c) {
    if (std::abs(c.c11()) < 1e-15 || std::abs(c.c22()) < 1e-15)
        throw std::invalid_argument("cgmv_coefficients: coin has a vanishing diagonal entry");
    auto wrap = [](double a) { return a < 0.0 ? a + 2.0 * std::numbers::pi : a; };
    return {wrap(std::arg(c.c11())), wrap(std::arg(c.c22()))};
}

}  // namespace

Complex cgmv_lambda(const CoinSequence& coins, long long n) {
    // lambda_0 = lambda_{-1} = 1;
    // lambda_{2t+2} = e^{-i sigma1_t} lambda_{2t},  lambda_{2t+1} = e^{i sigma2_t} lambda_{2t-1}.
    if (n == 0 || n == -1) return Complex{1.0};
    double phase = 0.0;
    if (n % 2 == 0) {
        const long long t_end = n / 2;  // lambda_{2 t_end}
        if (t_end > 0)
            for (long long t = 0; t < t_end; ++t) phase -= coin_phases(coins(t)).first;
        else
            for (long long t = t_end; t < 0; ++t) phase += coin_phases(coins(t)).first;
    } else {
        const long long t_end = (n - 1) / 2;  // lambda_{2 t_end + 1}
        if (t_end >= 0)
            for (long long t = 0; t <= t_end; ++t) phase += coin_phases(coins(t)).second;
        else
            for (long long t = t_end + 1; t <= -1; ++t) phase -= coin_phases(coins(t)).second;
    }
    return std::polar(1.0, phase);
}

cmv::VerblunskySequence cgmv_coefficients(const CoinSequence& coins) {
    return cmv::VerblunskySequence(
        [coins](long long j) -> Complex {
            if (j % 2 != 0) return Complex{0.0};
            const long long n = j / 2;
            const Complex ratio = cgmv_lambda(coins, 2 * n) / cgmv_lambda(coins, 2 * n - 1);
            return ratio * std::conj(coins(n).c21());
        },
        /*two_sided=*/true);
}

NormPowerlaw norm_powerlaw_check(Complex z, const words::SubshiftPoint& omega,
                                 const CoinAngles& angles, std::span<const double> L_ladder,
                                 double slack) {
    if (L_ladder.size() < 3)
        throw std::invalid_argument("norm_powerlaw_check: ladder too short");
    const cmv::VerblunskySequence seq = cgmv_coefficients(coin_assignment(omega, angles));
    const double max_L = *std::max_element(L_ladder.begin(), L_ladder.end());
    const auto N = static_cast<int>(std::floor(max_L)) + 2;
    const auto sol = cmv::solution_sequence(z, seq, {Complex{1.0}, Complex{1.0}}, N);

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double L : L_ladder) {
        const double x = std::log(L);
        const double y = std::log(cmv::solution_norm(sol, L));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = double(L_ladder.size());
    NormPowerlaw out;
    out.fitted = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const auto tb = tracemap::transport_constants(z, angles);
    out.gamma1 = tb.gamma1;
    out.upper_exponent = 2.0 * tb.gamma2 + 1.0;
    out.within = out.fitted >= out.gamma1 - slack && out.fitted <= out.upper_exponent + slack;
    return out;
}

}  // namespace fibcmv::walk
