#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fibcmv/cmv.hpp"
#include "fibcmv/fib_words.hpp"
#include "fibcmv/mat2.hpp"
#include "fibcmv/trace_map.hpp"

namespace fibcmv::walk {

using fibcmv::Complex;
using tracemap::CoinAngles;

// A 2x2 unitary coin [[c11, c12], [c21, c22]].
struct Coin {
    Mat2 m;

    Complex c11() const { return m.a; }
    Complex c12() const { return m.b; }
    Complex c21() const { return m.c; }
    Complex c22() const { return m.d; }

    static Coin rotation(double theta);
    bool is_unitary(double tol = 1e-12) const;
};

// Position-dependent, time-independent coin field n -> C_n.
using CoinSequence = std::function<Coin(long long)>;

// Coins following a subshift point: C_n = C_a or C_b according to omega_n.
CoinSequence coin_assignment(const words::SubshiftPoint& omega, const CoinAngles& angles);

// State of the walk over the relabeled basis e_m (e_{2n} = |n, up>,
// e_{2n+1} = |n, down>) on a finite window of e-indices.  One `step`
// application spreads support by at most 2 e-indices per side; stepping a
// state whose support is within 2 of the window edge is an error.
class WalkState {
  public:
    // Delta state at e-index m0 inside a window [-radius, radius].
    static WalkState delta(long long m0, long long radius);

    // Window sized for `steps` applications from a delta at m0:
    // radius = |m0| + 2 steps + 4.
    static WalkState delta_for_steps(long long m0, long long steps);

    void step(const CoinSequence& coins);

    double norm() const;
    double moment(double p) const;  // sum_m (1 + |m|^p) |amp_m|^2
    Complex amplitude(long long m) const;
    long long support_lo() const { return support_lo_; }
    long long support_hi() const { return support_hi_; }
    long long window_lo() const { return lo_; }
    long long window_hi() const { return hi_; }

  private:
    long long lo_ = 0, hi_ = 0;  // inclusive window in e-index
    long long support_lo_ = 0, support_hi_ = 0;
    std::vector<Complex> amp_;

    std::size_t idx(long long m) const { return static_cast<std::size_t>(m - lo_); }
};

// Moments M(n, p) for n = 0..steps and their running time averages
// Mtilde(N, p) = (1/N) sum_{n<N} M(n, p) for N = 1..steps+1.
struct MomentSeries {
    double p = 0.0;
    std::vector<double> moments;
    std::vector<double> time_avg;
};

MomentSeries evolve_moments(const CoinSequence& coins, long long steps, double p,
                            long long initial_e_index = 0);

double time_avg_moments(std::span<const double> moments, long long N);

// Least-squares fit of log Mtilde against p log N over the upper half of a
// geometric ladder, with min/max consecutive two-point slopes as liminf /
// limsup proxies.
struct ExponentFit {
    double fitted = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

ExponentFit empirical_exponent(std::span<const long long> ladder_N,
                               std::span<const double> mtilde_at_N, double p);

// Matrix window of the walk operator in the convention in which it equals
// the extended CMV matrix: row m holds the expansion of U e_m, i.e.
// W[m, k] = <e_k, U e_m>.
cmv::DenseMatrix u_matrix_window(const CoinSequence& coins, long long begin, long long end);

// CGMV gauge: Verblunsky coefficients of the walk unitary,
//   alpha_{2n+1} = 0,  alpha_{2n} = (lambda_{2n} / lambda_{2n-1}) conj(c21_n),
// with the lambda ladder built from the phases of the diagonal coin entries.
// Rejects coins with a vanishing diagonal entry.  For rotation coins all
// lambda = 1 and alpha_{2n} = sin(theta_{omega_n}).
cmv::VerblunskySequence cgmv_coefficients(const CoinSequence& coins);

// lambda_n of the CGMV gauge (exposed for the identity E = Lambda* U Lambda).
Complex cgmv_lambda(const CoinSequence& coins, long long n);

// Fits the growth exponent of the transfer solution norm over an L-ladder at
// a spectral point and compares with the theoretical window
// [gamma1 - slack, 2 gamma2 + 1 + slack].
struct NormPowerlaw {
    double fitted = 0.0;
    double gamma1 = 0.0;
    double upper_exponent = 0.0;  // 2 gamma2 + 1
    bool within = false;
};

NormPowerlaw norm_powerlaw_check(Complex z, const words::SubshiftPoint& omega,
                                 const CoinAngles& angles, std::span<const double> L_ladder,
                                 double slack = 0.1);

}  // namespace fibcmv::walk
