#pragma once

#include <cmath>
#include <complex>

namespace fibcmv {

using Complex = std::complex<double>;

// 2x2 complex matrix [[a, b], [c, d]], value semantics.
struct Mat2 {
    Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static Mat2 identity() { return {}; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    Mat2 operator*(Complex s) const { return {s * a, s * b, s * c, s * d}; }

    Complex trace() const { return a + d; }
    Complex det() const { return a * d - b * c; }

    double frobenius_sq() const {
        return std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    }

    // Largest singular value in closed form:
    //   sigma_max^2 = (f + sqrt(f^2 - 4 |det|^2)) / 2,  f = ||M||_F^2.
    double opnorm() const {
        const double f = frobenius_sq();
        const double d2 = std::norm(det());
        const double disc = std::max(0.0, f * f - 4.0 * d2);
        return std::sqrt(0.5 * (f + std::sqrt(disc)));
    }
};

}  // namespace fibcmv
