#pragma once

#include <span>
#include <vector>

#include "fibcmv/fib_words.hpp"
#include "fibcmv/mat2.hpp"
#include "fibcmv/poly.hpp"

namespace fibcmv::ising {

using fibcmv::Complex;

// Nearest-neighbor Ising ring: L spins sigma_0..sigma_{L-1}, L bonds
// (sigma_i, sigma_{i+1 mod L}), couplings with positive real part, inverse
// temperature bundled as k_B * tau.  The external field enters the partition
// functions through the fugacity h = exp(2H / (k_B tau)).
struct IsingRing {
    std::vector<Complex> couplings;
    double tau = 1.0;
    double k_boltzmann = 1.0;
    Complex field{0.0};  // H, used by energy()

    IsingRing(std::vector<Complex> J, double tau_ = 1.0, double kb = 1.0, Complex H = Complex{0.0});

    long long size() const { return static_cast<long long>(couplings.size()); }
    double kt() const { return k_boltzmann * tau; }
};

// Couplings J_i = p(omega_i) over a subshift point.
IsingRing fibonacci_couplings(Complex pa, Complex pb, const words::SubshiftPoint& omega,
                              long long L, double tau = 1.0, double kb = 1.0);

// E(sigma) = -(1/(k_B tau)) sum_i (J_i sigma_i sigma_{i+1} + H sigma_i), ring indices.
Complex energy(std::span<const int> sigma, const IsingRing& ring);

// beta_i = exp(2 J_i / (k_B tau)); lies outside the closed unit disc when Re J_i > 0.
std::vector<Complex> beta_sequence(const IsingRing& ring);

// Coefficient inversion (Theta u)_n = 1/u_n; G^infty -> punctured disc.
std::vector<Complex> theta_inversion(std::span<const Complex> beta);

// Square root on the fixed branch: sqrt(h) = |h|^{1/2} e^{i arg(h)/2} with
// arg(h) taken in [0, 2pi).
Complex sqrt_branch(Complex h);

// Partition function routes.  All three agree for every h != 0.
Complex partition_bruteforce(const IsingRing& ring, Complex h);  // 2^L sum, L <= 20
Complex partition_transfer(const IsingRing& ring, Complex h);    // Tr prod M_i(h)
Complex partition_tilde(const IsingRing& ring, Complex h);       // Tr prod Mtilde_i(h)

// Degree-L polynomial in h proportional to Z (the factor h^{-L/2} prod beta^{-1/2}
// cleared), grouped by total magnetization.  Brute-force route, L <= 20.
Poly partition_bruteforce_poly(const IsingRing& ring);

// Same polynomial from the transfer product (no size cap).
Poly partition_poly(const IsingRing& ring);

// Degree-L polynomial equal to Ztilde.
Poly partition_tilde_poly(const IsingRing& ring);

// Discriminant Delta_L(h): trace of the CMV transfer product over
// alpha_0..alpha_{L-1} at spectral parameter h.
Complex discriminant(Complex h, std::span<const Complex> alphas);

// Delta_L as a polynomial in h (degree L).
Poly discriminant_poly(std::span<const Complex> alphas);

// Real normalized discriminant g(theta) = e^{-i L theta / 2} Delta(e^{i theta})
// for real coefficient sequences; anti-periodic over 2pi when L is odd, so
// theta is taken in [0, 4pi).
double normalized_discriminant(double theta, std::span<const Complex> alphas);

enum class ZeroMethod { SignChange, Polynomial, Auto };

// Zeros of the discriminant on the unit circle, sorted by angle.
struct CircleZeroSet {
    std::vector<double> angles;     // sorted, in [0, 2pi)
    std::vector<double> residuals;  // |normalized discriminant| at each zero
};

// Locates all L zeros.  SignChange scans the real normalized discriminant on
// a grid of 16 points per expected zero and bisects (real alpha only);
// Polynomial expands Delta and calls the simultaneous root finder, asserting
// unit modulus within 1e-8.  Auto picks SignChange for real sequences.
// Throws NumericError when the zero count cannot be made to match L after
// three 4x grid refinements.
CircleZeroSet zeros_on_circle(std::span<const Complex> alphas,
                              ZeroMethod method = ZeroMethod::Auto);

// A spectral band: maximal arc with |normalized trace| <= 2 carrying exactly
// one discriminant zero.  right_angle is the counterclockwise endpoint.
struct Band {
    double left_angle;
    double right_angle;
    double zero_angle;
};

// Band decomposition B = Delta^{-1}[-2, 2] for a real coefficient sequence;
// exactly one zero per band, bands meet at most at endpoints.
std::vector<Band> bands(std::span<const Complex> alphas);

// gamma = (-1)^L prod of right band endpoints (unimodular).
Complex gamma_from_bands(std::span<const Band> bands);

// Cyclic interlacing of two equal-size sorted angle sets on the circle.
bool interlacing_check(std::span<const double> first, std::span<const double> second);

// Equal-weight probability measure on circle points.
struct CircleMeasure {
    std::vector<double> angles;  // sorted support, weights 1/size each

    static CircleMeasure from_zeros(const CircleZeroSet& zeros);
};

// sup-norm distance of the CDFs anchored at angle 0.
double kolmogorov_distance(const CircleMeasure& mu, const CircleMeasure& nu);

// Hausdorff distance of angle sets in the circular metric.
double hausdorff_distance(std::span<const double> a, std::span<const double> b);

// Ladder study of zero counting measures nu_{F_k}.
struct DosLadderEntry {
    int k = 0;
    long long length = 0;          // F_k
    double kolmogorov_prev = -1.0; // distance to the previous ladder entry (-1 on the first)
    double cross_omega_hausdorff = -1.0;   // vs the ladder base point, repeatable lengths only
    double cross_omega_kolmogorov = -1.0;
    double in_band_fraction = 0.0;         // fraction of zeros inside the deepest band set
};

struct DosReport {
    std::vector<DosLadderEntry> entries;
};

// For each k in [k_min, k_max]: zeros at L = F_k for couplings p(omega);
// Kolmogorov distance along the ladder, plus cross-omega distances against
// the fixed point u at the repeatable prefix lengths of omega.
DosReport dos_convergence(Complex pa, Complex pb, const words::SubshiftPoint& omega, int k_min,
                          int k_max, double tau = 1.0, double kb = 1.0);

}  // namespace fibcmv::ising
