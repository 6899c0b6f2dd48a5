#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "fibcmv/mat2.hpp"

namespace fibcmv {

// Dense polynomial with ascending coefficients: c[0] + c[1] z + ... .
struct Poly {
    std::vector<Complex> c;

    Poly() = default;
    explicit Poly(std::vector<Complex> coeffs) : c(std::move(coeffs)) {}
    static Poly constant(Complex v) { return Poly{{v}}; }

    int degree() const { return static_cast<int>(c.size()) - 1; }

    Complex eval(Complex z) const {
        Complex r{0.0};
        for (std::size_t i = c.size(); i-- > 0;) r = r * z + c[i];
        return r;
    }

    Poly derivative() const {
        if (c.size() <= 1) return Poly{{Complex{0.0}}};
        std::vector<Complex> d(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = double(i) * c[i];
        return Poly{std::move(d)};
    }
};

inline Poly operator+(const Poly& p, const Poly& q) {
    std::vector<Complex> r(std::max(p.c.size(), q.c.size()), Complex{0.0});
    for (std::size_t i = 0; i < p.c.size(); ++i) r[i] += p.c[i];
    for (std::size_t i = 0; i < q.c.size(); ++i) r[i] += q.c[i];
    return Poly{std::move(r)};
}

inline Poly operator*(const Poly& p, const Poly& q) {
    if (p.c.empty() || q.c.empty()) return Poly{};
    std::vector<Complex> r(p.c.size() + q.c.size() - 1, Complex{0.0});
    for (std::size_t i = 0; i < p.c.size(); ++i)
        for (std::size_t j = 0; j < q.c.size(); ++j) r[i + j] += p.c[i] * q.c[j];
    return Poly{std::move(r)};
}

inline Poly operator*(Complex s, const Poly& p) {
    Poly r = p;
    for (auto& x : r.c) x *= s;
    return r;
}

// z * p(z)
inline Poly shift_up(const Poly& p) {
    std::vector<Complex> r(p.c.size() + 1, Complex{0.0});
    for (std::size_t i = 0; i < p.c.size(); ++i) r[i + 1] = p.c[i];
    return Poly{std::move(r)};
}

}  // namespace fibcmv
