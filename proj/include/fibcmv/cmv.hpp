#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fibcmv/mat2.hpp"
#include "fibcmv/poly.hpp"

namespace fibcmv::cmv {

// A Verblunsky coefficient alpha in the open unit disc together with its
// complementary radius rho = (1 - |alpha|^2)^{1/2}.
struct VerblunskyCoeff {
    Complex alpha;
    double rho;

    explicit VerblunskyCoeff(Complex a);
};

// Deterministic indexed sequence of coefficients, one-sided (n >= 0) or
// two-sided.  Generators must be pure: repeated queries at an index agree.
class VerblunskySequence {
  public:
    using Generator = std::function<Complex(long long)>;

    VerblunskySequence(Generator gen, bool two_sided);

    static VerblunskySequence from_vector(std::vector<Complex> alphas);
    static VerblunskySequence constant(Complex alpha, bool two_sided = true);

    Complex alpha(long long n) const;
    double rho(long long n) const;
    VerblunskyCoeff coeff(long long n) const;
    bool two_sided() const { return two_sided_; }

    // First n coefficients alpha_0 .. alpha_{n-1}.
    std::vector<Complex> prefix(int n) const;

  private:
    Generator gen_;
    bool two_sided_;
};

// Single Szego transfer step T(z, alpha) = rho^{-1} [[z, -conj alpha], [-alpha z, 1]];
// det T = z.  Rejects |alpha| >= 1.
Mat2 transfer_single(Complex z, Complex alpha);

// Product over a finite coefficient word, later letters applied on the left:
// T(z, a_1 ... a_l) = T(z, a_l) ... T(z, a_1).  Empty word gives the identity.
Mat2 transfer_word(Complex z, std::span<const Complex> word);

// n-step transfer over a sequence: T(z, alpha_0 ... alpha_{n-1}).
Mat2 transfer_steps(Complex z, const VerblunskySequence& seq, int n);

struct SolutionPoint {
    Complex xi, zeta;
};

// Iterates (xi_{n+1}, zeta_{n+1}) = T(z, alpha_n) (xi_n, zeta_n) and returns
// the points for n = 0..N.  For |z| = 1 and |xi_0| = |zeta_0| = 1 the two
// components keep equal modulus at every step.
std::vector<SolutionPoint> solution_sequence(Complex z, const VerblunskySequence& seq,
                                             SolutionPoint initial, int N);

// Interpolated window norm:
// ||xi||_L^2 = sum_{n=0}^{floor L} |xi_n|^2 + (L - floor L) |xi_{floor L + 1}|^2.
double solution_norm(std::span<const SolutionPoint> solution, double L);

// (||T(z,w)||, ||T(z,w reversed)||); the two agree for |z| = 1.
std::pair<double, double> reversal_norm_pair(Complex z, std::span<const Complex> word);

// Monic orthogonal polynomial pair from the Szego recursion
//   Phi_{k+1}(z) = z Phi_k(z) - conj(alpha_k) Phi_k*(z)
//   Phi*_{k+1}(z) = Phi*_k(z) - alpha_k z Phi_k(z).
struct PolyPair {
    Poly phi;
    Poly phi_star;
    int degree = 0;
};

PolyPair szego_polynomials(const VerblunskySequence& seq, int n);

// Paraorthogonal polynomial Psi_{n+1}(z) = z Phi_n(z) + gamma Phi_n*(z),
// |gamma| = 1; all zeros unimodular and simple.
Poly paraorthogonal(const VerblunskySequence& seq, int n, Complex gamma);

// Small dense complex matrix, row-major.
struct DenseMatrix {
    long long rows = 0, cols = 0;
    long long row0 = 0, col0 = 0;  // index labels of the first row/column
    std::vector<Complex> data;

    DenseMatrix() = default;
    DenseMatrix(long long r, long long c, long long r0 = 0, long long c0 = 0)
        : rows(r), cols(c), row0(r0), col0(c0), data(static_cast<std::size_t>(r * c)) {}

    Complex& at(long long m, long long k) {
        return data[static_cast<std::size_t>((m - row0) * cols + (k - col0))];
    }
    Complex at(long long m, long long k) const {
        return data[static_cast<std::size_t>((m - row0) * cols + (k - col0))];
    }
    bool contains(long long m, long long k) const {
        return m >= row0 && m < row0 + rows && k >= col0 && k < col0 + cols;
    }
};

// Upper-left n x n block of the half-line CMV matrix for alpha_0..alpha_{n-1},
// assembled from the direct entry formulas (with alpha_{-1} = -1).
DenseMatrix cmv_finite(std::span<const Complex> alphas);

// Same block built from the LM factor product; cross-check for cmv_finite.
DenseMatrix cmv_finite_lm(std::span<const Complex> alphas);

// Window [row_begin, row_end) x [col_begin, col_end) of the extended (two-sided)
// CMV matrix of a two-sided sequence.
DenseMatrix extended_cmv_window(const VerblunskySequence& seq, long long row_begin,
                                long long row_end, long long col_begin, long long col_end);

}  // namespace fibcmv::cmv
