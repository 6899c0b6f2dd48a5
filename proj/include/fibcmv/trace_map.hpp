#pragma once

#include <span>
#include <vector>

#include "fibcmv/mat2.hpp"

namespace fibcmv::tracemap {

using fibcmv::Complex;

// Coin rotation angles, both strictly inside (-pi/2, pi/2).
struct CoinAngles {
    double theta_a;
    double theta_b;

    CoinAngles(double ta, double tb);
};

// Three consecutive half-traces (x_{k-1}, x_k, x_{k+1}) of the trace map.
struct TraceTriple {
    double x_prev;
    double x_curr;
    double x_next;
    int k = 0;  // index of x_curr
};

// The curve of initial conditions at a spectral point |z| = 1:
//   x_{-1} = Re(z) sec(theta_b)
//   x_0    = Re(z) sec(theta_a)
//   x_1    = Re(z^2) sec(theta_a) sec(theta_b) + tan(theta_a) tan(theta_b)
// returned as the triple (x_{-1}, x_0, x_1) with k = 0.
TraceTriple initial_traces(Complex z, const CoinAngles& angles);

// Fricke-Vogt invariant I = x1^2 + x0^2 + xm1^2 - 2 x1 x0 xm1 - 1.
double fricke_vogt(double x_next, double x_curr, double x_prev);
double fricke_vogt(const TraceTriple& t);

// Orbit of the recursion x_{k+1} = 2 x_k x_{k-1} - x_{k-2}.
struct TraceOrbit {
    std::vector<double> x;  // x[i] = x_{i-1}, i.e. x_{-1}, x_0, x_1, x_2, ...
    bool escaped = false;
    int escape_index = -1;  // first k with the escape criterion satisfied

    double at(int k) const { return x[static_cast<std::size_t>(k + 1)]; }
    int max_index() const { return static_cast<int>(x.size()) - 2; }
};

// Iterates from a (x_{-1}, x_0, x_1) triple through x_{k_max}; stops early
// with the escape flag once |x| exceeds 1e150.  escape_index records the
// first k where |x_k| > 1, |x_{k+1}| > 1 and |x_{k+1}| >= |x_k|.
TraceOrbit trace_orbit(const TraceTriple& initial, int k_max);

// Half-trace over the zero-interleaved block of S^k(a) (k >= -1):
//   x_k(z) = Re( z^{-F} Tr T(z, block) ) / 2,  F = number of letters.
// The imaginary residual of the normalized trace is checked against 1e-9.
double half_trace_direct(Complex z, const CoinAngles& angles, int k,
                         double* imag_residual = nullptr);

// Lemma bound C(z) = max(2 + sqrt(8 + I(z)), sec theta_a, sec theta_b).
double trace_sup_bound(Complex z, const CoinAngles& angles);

// Operator norms of T(z)A(z), T(z)B(z)T(z)A(z), T(z)A(z)T(z)B(z)T(z)A(z)
// with A, B the single-letter transfer matrices and T = diag(z, 1).
struct NestNorms {
    double ta;
    double tbta;
    double tatbta;
};

NestNorms nests_norms(Complex z, const CoinAngles& angles);

// Closed-form transport constants at a spectral point.
struct TransportBound {
    Complex z;
    double invariant;  // I(z)
    double C;
    double gamma1;
    double K;
    double gamma2;
    double beta;
    bool in_spectrum;  // false marks the constants as unsound
};

// Computes the full chain I -> C -> (gamma1, K, gamma2) -> beta.  The
// sup_k |x_k| appearing in K is replaced by its proven upper bound C(z),
// which only lowers beta.  in_spectrum is decided by running the trace orbit
// to escape_depth.
TransportBound transport_constants(Complex z, const CoinAngles& angles, int escape_depth = 25);

// Lower scaling exponent 2 g_lower / (g_lower + g_upper); with
// g_upper = 2 gamma2 + 1 this is the transport bound beta.
double dkl_scaling_exponent(double gamma_lower, double gamma_upper);

// Grid scan of the unit circle marking points whose trace orbit has not
// escaped by the given depth.
struct SpectrumApprox {
    int grid = 0;
    int depth = 0;
    std::vector<std::uint8_t> mask;  // 1 = in spectrum approximation

    double angle(int i) const;
    Complex point(int i) const;
    double in_fraction() const;
    // Maximal closed arcs [theta_lo, theta_hi] of in-spectrum cells.
    std::vector<std::pair<double, double>> arcs() const;
};

SpectrumApprox spectrum_approx(const CoinAngles& angles, int depth, int grid, int threads = 0);

// max beta(z) over the sample set; throws on an empty set.
double bound_over_support(const CoinAngles& angles, std::span<const Complex> samples,
                          int escape_depth = 25);

}  // namespace fibcmv::tracemap
