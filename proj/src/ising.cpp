#include "fibcmv/ising.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fibcmv/cmv.hpp"
#include "fibcmv/errors.hpp"
#include "fibcmv/poly_roots.hpp"

namespace fibcmv::ising {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0.0 ? a + kTwoPi : a;
}

double circle_dist(double a, double b) {
    const double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTwoPi - d);
}

bool all_real(std::span<const Complex> alphas, double tol = 1e-13) {
    for (Complex a : alphas)
        if (std::abs(std::imag(a)) > tol) return false;
    return true;
}

// 2x2 matrix of h-polynomials whose off-diagonal entries carry an implicit
// factor sqrt(h); closed under multiplication, with trace a plain polynomial.
struct HalfParityMat {
    Poly p11, p12, p21, p22;

    static HalfParityMat identity() {
        return {Poly::constant(1.0), Poly::constant(0.0), Poly::constant(0.0),
                Poly::constant(1.0)};
    }

    HalfParityMat operator*(const HalfParityMat& o) const {
        return {shift_up(p12 * o.p21) + p11 * o.p11, p11 * o.p12 + p12 * o.p22,
                p21 * o.p11 + p22 * o.p21, shift_up(p21 * o.p12) + p22 * o.p22};
    }

    Poly trace() const { return p11 + p22; }
};

}  // namespace

IsingRing::IsingRing(std::vector<Complex> J, double tau_, double kb, Complex H)
    : couplings(std::move(J)), tau(tau_), k_boltzmann(kb), field(H) {
    if (couplings.empty()) throw std::invalid_argument("IsingRing: need at least one spin");
    if (!(tau > 0.0)) throw std::invalid_argument("IsingRing: temperature must be positive");
    if (!(k_boltzmann > 0.0)) throw std::invalid_argument("IsingRing: k_B must be positive");
    for (Complex j : couplings)
        if (!(std::real(j) > 0.0))
            throw std::invalid_argument("IsingRing: couplings must have positive real part");
}

IsingRing fibonacci_couplings(Complex pa, Complex pb, const words::SubshiftPoint& omega,
                              long long L, double tau, double kb) {
    if (!(std::real(pa) > 0.0 && std::real(pb) > 0.0))
        throw std::invalid_argument("fibonacci_couplings: p(a), p(b) need positive real part");
    std::vector<Complex> J;
    J.reserve(static_cast<std::size_t>(L));
    for (long long i = 0; i < L; ++i) J.push_back(omega.at(i) == words::kA ? pa : pb);
    return IsingRing(std::move(J), tau, kb);
}

Complex energy(std::span<const int> sigma, const IsingRing& ring) {
    if (static_cast<long long>(sigma.size()) != ring.size())
        throw std::invalid_argument("energy: configuration length mismatch");
    for (int s : sigma)
        if (s != 1 && s != -1) throw std::invalid_argument("energy: spins must be +-1");
    Complex e{0.0};
    const long long L = ring.size();
    for (long long i = 0; i < L; ++i) {
        e += ring.couplings[static_cast<std::size_t>(i)] * double(sigma[static_cast<std::size_t>(i)]) *
             double(sigma[static_cast<std::size_t>((i + 1) % L)]);
        e += ring.field * double(sigma[static_cast<std::size_t>(i)]);
    }
    return -e / ring.kt();
}

std::vector<Complex> beta_sequence(const IsingRing& ring) {
    std::vector<Complex> beta;
    beta.reserve(ring.couplings.size());
    for (Complex j : ring.couplings) beta.push_back(std::exp(2.0 * j / ring.kt()));
    return beta;
}

std::vector<Complex> theta_inversion(std::span<const Complex> beta) {
    std::vector<Complex> alpha;
    alpha.reserve(beta.size());
    for (Complex b : beta) {
        if (!(std::abs(b) > 1.0))
            throw std::invalid_argument("theta_inversion: |beta| must exceed 1");
        alpha.push_back(1.0 / b);
    }
    return alpha;
}

Complex sqrt_branch(Complex h) {
    if (h == Complex{0.0}) throw std::invalid_argument("sqrt_branch: h must be nonzero");
    return std::polar(std::sqrt(std::abs(h)), wrap_angle(std::arg(h)) / 2.0);
}

Complex partition_bruteforce(const IsingRing& ring, Complex h) {
    const long long L = ring.size();
    if (L > 20) throw std::invalid_argument("partition_bruteforce: capped at L = 20");
    const Complex s = sqrt_branch(h);
    Complex total{0.0};
    std::vector<int> sigma(static_cast<std::size_t>(L));
    for (long long mask = 0; mask < (1LL << L); ++mask) {
        for (long long i = 0; i < L; ++i)
            sigma[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? 1 : -1;
        Complex bond{0.0};
        int mag = 0;
        for (long long i = 0; i < L; ++i) {
            bond += ring.couplings[static_cast<std::size_t>(i)] *
                    double(sigma[static_cast<std::size_t>(i)] *
                           sigma[static_cast<std::size_t>((i + 1) % L)]);
            mag += sigma[static_cast<std::size_t>(i)];
        }
        total += std::exp(bond / ring.kt()) * std::pow(s, double(mag));
    }
    return total;
}

Complex partition_transfer(const IsingRing& ring, Complex h) {
    // Bond weights exp(J' ss' + H'(s + s')/2), written with e^{H'} = sqrt(h)
    // on the fixed branch; identical to Tr prod (beta_i h)^{-1/2} (beta_i h,
    // sqrt h; sqrt h, beta_i) with branches resolved consistently.
    const Complex s = sqrt_branch(h);
    Mat2 prod = Mat2::identity();
    for (Complex j : ring.couplings) {
        const Complex ej = std::exp(j / ring.kt());
        const Mat2 v{ej * s, 1.0 / ej, 1.0 / ej, ej / s};
        prod = v * prod;
    }
    return prod.trace();
}

Complex partition_tilde(const IsingRing& ring, Complex h) {
    const Complex s = sqrt_branch(h);
    Mat2 prod = Mat2::identity();
    for (Complex beta : beta_sequence(ring)) {
        const Mat2 v{h, s / std::conj(beta), s / beta, Complex{1.0}};
        prod = v * prod;
    }
    return prod.trace();
}

Poly partition_bruteforce_poly(const IsingRing& ring) {
    const long long L = ring.size();
    if (L > 20) throw std::invalid_argument("partition_bruteforce_poly: capped at L = 20");
    std::vector<Complex> coeff(static_cast<std::size_t>(L) + 1, Complex{0.0});
    std::vector<int> sigma(static_cast<std::size_t>(L));
    for (long long mask = 0; mask < (1LL << L); ++mask) {
        for (long long i = 0; i < L; ++i)
            sigma[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? 1 : -1;
        Complex bond{0.0};
        int mag = 0;
        for (long long i = 0; i < L; ++i) {
            bond += ring.couplings[static_cast<std::size_t>(i)] *
                    double(sigma[static_cast<std::size_t>(i)] *
                           sigma[static_cast<std::size_t>((i + 1) % L)]);
            mag += sigma[static_cast<std::size_t>(i)];
        }
        coeff[static_cast<std::size_t>((mag + L) / 2)] += std::exp(bond / ring.kt());
    }
    return Poly{std::move(coeff)};
}

Poly partition_poly(const IsingRing& ring) {
    HalfParityMat prod = HalfParityMat::identity();
    Complex norm{1.0};
    for (Complex beta : beta_sequence(ring)) {
        const HalfParityMat m{Poly{{Complex{0.0}, beta}}, Poly::constant(1.0),
                              Poly::constant(1.0), Poly::constant(beta)};
        prod = m * prod;
    }
    for (Complex j : ring.couplings) norm *= std::exp(-j / ring.kt());
    return norm * prod.trace();
}

Poly partition_tilde_poly(const IsingRing& ring) {
    HalfParityMat prod = HalfParityMat::identity();
    for (Complex beta : beta_sequence(ring)) {
        const HalfParityMat m{Poly{{Complex{0.0}, Complex{1.0}}},
                              Poly::constant(1.0 / std::conj(beta)),
                              Poly::constant(1.0 / beta), Poly::constant(1.0)};
        prod = m * prod;
    }
    return prod.trace();
}

Complex discriminant(Complex h, std::span<const Complex> alphas) {
    return cmv::transfer_word(h, alphas).trace();
}

Poly discriminant_poly(std::span<const Complex> alphas) {
    // entries of rho^{-1} [[h, -conj a],[-a h, 1]] as plain h-polynomials
    Poly p11 = Poly::constant(1.0), p12 = Poly::constant(0.0);
    Poly p21 = Poly::constant(0.0), p22 = Poly::constant(1.0);
    for (Complex a : alphas) {
        const double inv_rho = 1.0 / std::sqrt(1.0 - std::norm(a));
        const Poly t11{{Complex{0.0}, inv_rho}};
        const Poly t12 = Poly::constant(-inv_rho * std::conj(a));
        const Poly t21{{Complex{0.0}, -inv_rho * a}};
        const Poly t22 = Poly::constant(inv_rho);
        Poly n11 = t11 * p11 + t12 * p21;
        Poly n12 = t11 * p12 + t12 * p22;
        Poly n21 = t21 * p11 + t22 * p21;
        Poly n22 = t21 * p12 + t22 * p22;
        p11 = std::move(n11);
        p12 = std::move(n12);
        p21 = std::move(n21);
        p22 = std::move(n22);
    }
    return p11 + p22;
}

double normalized_discriminant(double theta, std::span<const Complex> alphas) {
    const auto L = static_cast<double>(alphas.size());
    const Complex val = discriminant(std::polar(1.0, theta), alphas);
    const Complex normalized = std::polar(1.0, -L * theta / 2.0) * val;
    return std::real(normalized);
}

namespace {

CircleZeroSet zeros_sign_change(std::span<const Complex> alphas) {
    const auto L = static_cast<long long>(alphas.size());
    auto g = [&](double th) { return normalized_discriminant(th, alphas); };

    long long grid = 32 * L;  // 16 points per expected zero on each cover
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::vector<double> found;
        const double step = 2.0 * kTwoPi / double(grid);
        double prev = g(0.0);
        for (long long i = 1; i <= grid; ++i) {
            const double th = double(i) * step;
            const double curr = g(th);
            if ((prev < 0.0) != (curr < 0.0)) {
                double lo = th - step, hi = th;
                double glo = prev;
                // bisect to 1e-12 in the angle
                while (hi - lo > 1e-12) {
                    const double mid = 0.5 * (lo + hi);
                    const double gm = g(mid);
                    if ((glo < 0.0) != (gm < 0.0)) {
                        hi = mid;
                    } else {
                        lo = mid;
                        glo = gm;
                    }
                }
                found.push_back(wrap_angle(0.5 * (lo + hi)));
            }
            prev = curr;
        }
        // The double cover visits each zero twice; merge modulo 2 pi.
        std::sort(found.begin(), found.end());
        std::vector<double> merged;
        for (double a : found) {
            if (merged.empty() || circle_dist(a, merged.back()) > 1e-9) merged.push_back(a);
        }
        if (merged.size() > 1 && circle_dist(merged.front(), merged.back()) <= 1e-9)
            merged.pop_back();
        if (static_cast<long long>(merged.size()) == L) {
            CircleZeroSet out;
            out.angles = std::move(merged);
            out.residuals.reserve(out.angles.size());
            for (double a : out.angles) out.residuals.push_back(std::abs(g(a)));
            return out;
        }
        grid *= 4;
    }
    throw NumericError("zeros_on_circle: sign-change count never matched the expected " +
                       std::to_string(L) + " zeros");
}

CircleZeroSet zeros_polynomial(std::span<const Complex> alphas) {
    const Poly delta = discriminant_poly(alphas);
    RootOptions opts;
    opts.on_unit_circle = true;
    const std::vector<Complex> roots = poly_roots(delta, opts);
    double scale = 0.0;
    for (const Complex& c : delta.c) scale += std::abs(c);
    CircleZeroSet out;
    std::vector<std::pair<double, double>> items;
    for (const Complex& r : roots) {
        if (std::abs(std::abs(r) - 1.0) > 1e-8)
            throw NumericError("zeros_on_circle: polynomial root off the unit circle by " +
                               std::to_string(std::abs(std::abs(r) - 1.0)));
        items.emplace_back(wrap_angle(std::arg(r)), std::abs(delta.eval(r / std::abs(r))) / scale);
    }
    std::sort(items.begin(), items.end());
    for (auto& [a, res] : items) {
        out.angles.push_back(a);
        out.residuals.push_back(res);
    }
    return out;
}

}  // namespace

CircleZeroSet zeros_on_circle(std::span<const Complex> alphas, ZeroMethod method) {
    if (alphas.empty()) throw std::invalid_argument("zeros_on_circle: empty coefficient list");
    if (method == ZeroMethod::Auto)
        method = all_real(alphas) ? ZeroMethod::SignChange : ZeroMethod::Polynomial;
    if (method == ZeroMethod::SignChange && !all_real(alphas))
        throw std::invalid_argument("zeros_on_circle: sign-change method needs real coefficients");
    return method == ZeroMethod::SignChange ? zeros_sign_change(alphas)
                                            : zeros_polynomial(alphas);
}

std::vector<Band> bands(std::span<const Complex> alphas) {
    if (!all_real(alphas))
        throw std::invalid_argument("bands: real coefficient sequence required");
    const CircleZeroSet zeros = zeros_on_circle(alphas, ZeroMethod::SignChange);
    const auto L = static_cast<long long>(zeros.angles.size());
    auto g = [&](double th) { return normalized_discriminant(th, alphas); };

    // For every pair of consecutive zeros there is exactly one gap (possibly
    // a single touching point).  Work on the lifted interval so odd-L
    // anti-periodicity is invisible.
    std::vector<Band> out(static_cast<std::size_t>(L));
    for (long long i = 0; i < L; ++i) {
        const double z0 = zeros.angles[static_cast<std::size_t>(i)];
        double z1 = zeros.angles[static_cast<std::size_t>((i + 1) % L)];
        if (z1 <= z0) z1 += kTwoPi;
        // locate the extremum of |g| between the zeros
        const int scan = 512;
        double t_max = z0, g_max = 0.0;
        for (int s = 1; s < scan; ++s) {
            const double t = z0 + (z1 - z0) * double(s) / double(scan);
            const double v = std::abs(g(t));
            if (v > g_max) {
                g_max = v;
                t_max = t;
            }
        }
        double right_edge, next_left_edge;
        if (g_max <= 2.0) {
            // closed gap: bands touch at the extremum
            right_edge = next_left_edge = t_max;
        } else {
            auto cross = [&](double lo, double hi, bool rising) {
                // |g| crosses 2 exactly once on [lo, hi]
                for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const bool above = std::abs(g(mid)) > 2.0;
                    if (above == rising) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                return 0.5 * (lo + hi);
            };
            right_edge = cross(z0, t_max, true);
            next_left_edge = cross(t_max, z1, false);
        }
        out[static_cast<std::size_t>(i)].zero_angle = z0;
        out[static_cast<std::size_t>(i)].right_angle = wrap_angle(right_edge);
        out[static_cast<std::size_t>((i + 1) % L)].left_angle = wrap_angle(next_left_edge);
    }
    return out;
}

Complex gamma_from_bands(std::span<const Band> bands) {
    if (bands.empty()) throw std::invalid_argument("gamma_from_bands: empty band list");
    double phase = std::numbers::pi * double(bands.size());  // (-1)^L
    for (const Band& b : bands) phase += b.right_angle;
    return std::polar(1.0, phase);
}

bool interlacing_check(std::span<const double> first, std::span<const double> second) {
    if (first.size() != second.size() || first.empty())
        throw std::invalid_argument("interlacing_check: need equal nonempty counts");
    std::vector<std::pair<double, int>> merged;
    for (double a : first) merged.emplace_back(wrap_angle(a), 0);
    for (double a : second) merged.emplace_back(wrap_angle(a), 1);
    std::sort(merged.begin(), merged.end());
    const std::size_t n = merged.size();
    for (std::size_t i = 0; i < n; ++i)
        if (merged[i].second == merged[(i + 1) % n].second) return false;
    return true;
}

CircleMeasure CircleMeasure::from_zeros(const CircleZeroSet& zeros) {
    CircleMeasure m;
    m.angles = zeros.angles;
    std::sort(m.angles.begin(), m.angles.end());
    return m;
}

double kolmogorov_distance(const CircleMeasure& mu, const CircleMeasure& nu) {
    if (mu.angles.empty() || nu.angles.empty())
        throw std::invalid_argument("kolmogorov_distance: empty measure");
    // CDFs anchored at angle 0; both are right-continuous step functions, so
    // the supremum is attained just after a support point of either measure.
    std::vector<double> stops;
    stops.reserve(mu.angles.size() + nu.angles.size());
    for (double a : mu.angles) stops.push_back(wrap_angle(a));
    for (double a : nu.angles) stops.push_back(wrap_angle(a));
    std::sort(stops.begin(), stops.end());
    auto cdf = [](const std::vector<double>& sorted, double x) {
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
        return double(it - sorted.begin()) / double(sorted.size());
    };
    double d = 0.0;
    for (double s : stops)
        d = std::max(d, std::abs(cdf(mu.angles, s) - cdf(nu.angles, s)));
    return d;
}

double hausdorff_distance(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("hausdorff_distance: empty angle set");
    double worst = 0.0;
    for (double x : a) {
        double nearest = kTwoPi;
        for (double y : b) nearest = std::min(nearest, circle_dist(x, y));
        worst = std::max(worst, nearest);
    }
    for (double y : b) {
        double nearest = kTwoPi;
        for (double x : a) nearest = std::min(nearest, circle_dist(y, x));
        worst = std::max(worst, nearest);
    }
    return worst;
}

DosReport dos_convergence(Complex pa, Complex pb, const words::SubshiftPoint& omega, int k_min,
                          int k_max, double tau, double kb) {
    if (k_min < 1 || k_max < k_min)
        throw std::invalid_argument("dos_convergence: bad ladder range");
    const words::SubshiftPoint base = words::SubshiftPoint::fixed_point();
    const std::vector<long long> repeatable = words::repeatable_prefix_lengths(omega, k_max);

    // Deepest band set for the in-band fraction.
    const long long deepest_L = words::fib_number(k_max);
    std::vector<Band> deep_bands;
    {
        const IsingRing ring = fibonacci_couplings(pa, pb, omega, deepest_L, tau, kb);
        const std::vector<Complex> alphas = theta_inversion(beta_sequence(ring));
        if (all_real(alphas)) deep_bands = bands(alphas);
    }
    auto in_band = [&](double angle) {
        for (const Band& b : deep_bands) {
            const double lo = b.left_angle;
            double hi = b.right_angle;
            double x = angle;
            if (hi < lo) hi += kTwoPi;
            if (x < lo) x += kTwoPi;
            if (x >= lo - 1e-12 && x <= hi + 1e-12) return true;
        }
        return false;
    };

    DosReport report;
    CircleMeasure prev;
    for (int k = k_min; k <= k_max; ++k) {
        const long long L = words::fib_number(k);
        const IsingRing ring = fibonacci_couplings(pa, pb, omega, L, tau, kb);
        const std::vector<Complex> alphas = theta_inversion(beta_sequence(ring));
        const CircleZeroSet zeros = zeros_on_circle(alphas);
        const CircleMeasure nu = CircleMeasure::from_zeros(zeros);

        DosLadderEntry entry;
        entry.k = k;
        entry.length = L;
        if (!prev.angles.empty()) entry.kolmogorov_prev = kolmogorov_distance(nu, prev);
        if (std::find(repeatable.begin(), repeatable.end(), L) != repeatable.end()) {
            const IsingRing uring = fibonacci_couplings(pa, pb, base, L, tau, kb);
            const std::vector<Complex> ualphas = theta_inversion(beta_sequence(uring));
            const CircleZeroSet uzeros = zeros_on_circle(ualphas);
            entry.cross_omega_hausdorff = hausdorff_distance(zeros.angles, uzeros.angles);
            entry.cross_omega_kolmogorov =
                kolmogorov_distance(nu, CircleMeasure::from_zeros(uzeros));
        }
        if (!deep_bands.empty()) {
            long long inside = 0;
            for (double a : zeros.angles) inside += in_band(a) ? 1 : 0;
            entry.in_band_fraction = double(inside) / double(zeros.angles.size());
        }
        report.entries.push_back(entry);
        prev = nu;
    }
    return report;
}

}  // namespace fibcmv::ising
