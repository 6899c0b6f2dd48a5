#include "fibcmv/cmv.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace fibcmv::cmv {

namespace {

void check_disc(Complex a) {
    if (!(std::abs(a) < 1.0))
        throw std::invalid_argument("Verblunsky coefficient must satisfy |alpha| < 1");
}

double rho_of(Complex a) { return std::sqrt(1.0 - std::norm(a)); }

// Entry (m, k) of the CMV pattern, given a coefficient accessor.  The
// accessor must provide alpha at indices m-2 .. m+1 (alpha_{-1} = -1 encodes
// the half-line case).
template <class AlphaAt>
Complex cmv_entry(long long m, long long k, AlphaAt&& alpha_at) {
    const auto rho_at = [&](long long j) { return rho_of(alpha_at(j)); };
    if (m % 2 == 0 || (m < 0 && (-m) % 2 == 0)) {
        // even row 2t
        const long long t2 = m;
        if (k == t2 - 1) return std::conj(alpha_at(t2)) * rho_at(t2 - 1);
        if (k == t2) return -std::conj(alpha_at(t2)) * alpha_at(t2 - 1);
        if (k == t2 + 1) return std::conj(alpha_at(t2 + 1)) * rho_at(t2);
        if (k == t2 + 2) return rho_at(t2 + 1) * rho_at(t2);
        return Complex{0.0};
    }
    // odd row 2t+1
    const long long t2 = m - 1;
    if (k == t2 - 1) return rho_at(t2) * rho_at(t2 - 1);
    if (k == t2) return -rho_at(t2) * alpha_at(t2 - 1);
    if (k == t2 + 1) return -std::conj(alpha_at(t2 + 1)) * alpha_at(t2);
    if (k == t2 + 2) return -rho_at(t2 + 1) * alpha_at(t2);
    return Complex{0.0};
}

}  // namespace

VerblunskyCoeff::VerblunskyCoeff(Complex a) : alpha(a), rho(0.0) {
    check_disc(a);
    rho = rho_of(a);
}

VerblunskySequence::VerblunskySequence(Generator gen, bool two_sided)
    : gen_(std::move(gen)), two_sided_(two_sided) {}

VerblunskySequence VerblunskySequence::from_vector(std::vector<Complex> alphas) {
    for (Complex a : alphas) check_disc(a);
    auto data = std::make_shared<std::vector<Complex>>(std::move(alphas));
    return VerblunskySequence(
        [data](long long n) -> Complex {
            if (n < 0 || n >= static_cast<long long>(data->size()))
                throw std::out_of_range("VerblunskySequence: index outside stored range");
            return (*data)[static_cast<std::size_t>(n)];
        },
        /*two_sided=*/false);
}

VerblunskySequence VerblunskySequence::constant(Complex alpha, bool two_sided) {
    check_disc(alpha);
    return VerblunskySequence([alpha](long long) { return alpha; }, two_sided);
}

Complex VerblunskySequence::alpha(long long n) const {
    if (!two_sided_ && n < 0)
        throw std::out_of_range("VerblunskySequence: negative index on a one-sided sequence");
    Complex a = gen_(n);
    check_disc(a);
    return a;
}

double VerblunskySequence::rho(long long n) const { return rho_of(alpha(n)); }

VerblunskyCoeff VerblunskySequence::coeff(long long n) const { return VerblunskyCoeff(alpha(n)); }

std::vector<Complex> VerblunskySequence::prefix(int n) const {
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(alpha(i));
    return out;
}

Mat2 transfer_single(Complex z, Complex alpha) {
    check_disc(alpha);
    const double inv_rho = 1.0 / rho_of(alpha);
    return Mat2{z, -std::conj(alpha), -alpha * z, Complex{1.0}} * Complex{inv_rho};
}

Mat2 transfer_word(Complex z, std::span<const Complex> word) {
    Mat2 t = Mat2::identity();
    for (Complex a : word) t = transfer_single(z, a) * t;
    return t;
}

Mat2 transfer_steps(Complex z, const VerblunskySequence& seq, int n) {
    Mat2 t = Mat2::identity();
    for (int j = 0; j < n; ++j) t = transfer_single(z, seq.alpha(j)) * t;
    return t;
}

std::vector<SolutionPoint> solution_sequence(Complex z, const VerblunskySequence& seq,
                                             SolutionPoint initial, int N) {
    std::vector<SolutionPoint> out;
    out.reserve(static_cast<std::size_t>(N) + 1);
    out.push_back(initial);
    Complex xi = initial.xi, zeta = initial.zeta;
    for (int n = 0; n < N; ++n) {
        const Complex a = seq.alpha(n);
        const double inv_rho = 1.0 / rho_of(a);
        const Complex nxi = inv_rho * (z * xi - std::conj(a) * zeta);
        const Complex nzeta = inv_rho * (-a * z * xi + zeta);
        xi = nxi;
        zeta = nzeta;
        out.push_back({xi, zeta});
    }
    return out;
}

double solution_norm(std::span<const SolutionPoint> solution, double L) {
    if (L < 0.0) throw std::invalid_argument("solution_norm: L must be >= 0");
    const auto floor_L = static_cast<long long>(std::floor(L));
    if (floor_L + 1 >= static_cast<long long>(solution.size()))
        throw std::invalid_argument("solution_norm: solution too short for requested L");
    double s = 0.0;
    for (long long n = 0; n <= floor_L; ++n) s += std::norm(solution[static_cast<std::size_t>(n)].xi);
    s += (L - double(floor_L)) * std::norm(solution[static_cast<std::size_t>(floor_L + 1)].xi);
    return std::sqrt(s);
}

std::pair<double, double> reversal_norm_pair(Complex z, std::span<const Complex> word) {
    std::vector<Complex> reversed(word.rbegin(), word.rend());
    return {transfer_word(z, word).opnorm(), transfer_word(z, reversed).opnorm()};
}

PolyPair szego_polynomials(const VerblunskySequence& seq, int n) {
    if (n < 0) throw std::invalid_argument("szego_polynomials: n must be >= 0");
    Poly phi = Poly::constant(Complex{1.0});
    Poly phi_star = Poly::constant(Complex{1.0});
    for (int k = 0; k < n; ++k) {
        const Complex a = seq.alpha(k);
        Poly zphi = shift_up(phi);
        Poly next = zphi + (-std::conj(a)) * phi_star;
        Poly next_star = phi_star + (-a) * zphi;
        phi = std::move(next);
        phi_star = std::move(next_star);
    }
    return {std::move(phi), std::move(phi_star), n};
}

Poly paraorthogonal(const VerblunskySequence& seq, int n, Complex gamma) {
    if (std::abs(std::abs(gamma) - 1.0) > 1e-12)
        throw std::invalid_argument("paraorthogonal: |gamma| must equal 1");
    PolyPair pp = szego_polynomials(seq, n);
    return shift_up(pp.phi) + gamma * pp.phi_star;
}

DenseMatrix cmv_finite(std::span<const Complex> alphas) {
    const auto n = static_cast<long long>(alphas.size());
    if (n < 2) throw std::invalid_argument("cmv_finite: need at least two coefficients");
    const auto alpha_at = [&](long long j) -> Complex {
        if (j == -1) return Complex{-1.0};
        if (j >= 0 && j < n) return alphas[static_cast<std::size_t>(j)];
        return Complex{0.0};  // entries touching these never appear inside the block
    };
    DenseMatrix out(n, n);
    for (long long m = 0; m < n; ++m)
        for (long long k = 0; k < n; ++k) out.at(m, k) = cmv_entry(m, k, alpha_at);
    return out;
}

DenseMatrix cmv_finite_lm(std::span<const Complex> alphas) {
    const auto n = static_cast<long long>(alphas.size());
    if (n < 2) throw std::invalid_argument("cmv_finite_lm: need at least two coefficients");
    // Work on a padded size so truncation effects stay outside the block.
    const long long pad = n + 4;
    const auto alpha_at = [&](long long j) -> Complex {
        return (j >= 0 && j < n) ? alphas[static_cast<std::size_t>(j)] : Complex{0.0};
    };
    auto theta = [&](long long j, DenseMatrix& m) {
        const Complex a = alpha_at(j);
        const double r = rho_of(a);
        m.at(j, j) = std::conj(a);
        m.at(j, j + 1) = r;
        m.at(j + 1, j) = r;
        m.at(j + 1, j + 1) = -a;
    };
    DenseMatrix L(pad, pad), M(pad, pad);
    for (long long j = 0; j + 1 < pad; j += 2) theta(j, L);
    M.at(0, 0) = Complex{1.0};
    for (long long j = 1; j + 1 < pad; j += 2) theta(j, M);
    DenseMatrix out(n, n);
    for (long long m = 0; m < n; ++m)
        for (long long k = 0; k < n; ++k) {
            Complex s{0.0};
            for (long long t = 0; t < pad; ++t) s += L.at(m, t) * M.at(t, k);
            out.at(m, k) = s;
        }
    return out;
}

DenseMatrix extended_cmv_window(const VerblunskySequence& seq, long long row_begin,
                                long long row_end, long long col_begin, long long col_end) {
    if (!seq.two_sided())
        throw std::invalid_argument("extended_cmv_window: sequence must be two-sided");
    if (row_end <= row_begin || col_end <= col_begin)
        throw std::invalid_argument("extended_cmv_window: empty range");
    const auto alpha_at = [&](long long j) { return seq.alpha(j); };
    DenseMatrix out(row_end - row_begin, col_end - col_begin, row_begin, col_begin);
    for (long long m = row_begin; m < row_end; ++m)
        for (long long k = col_begin; k < col_end; ++k) out.at(m, k) = cmv_entry(m, k, alpha_at);
    return out;
}

}  // namespace fibcmv::cmv
