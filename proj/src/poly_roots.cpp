#include "fibcmv/poly_roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fibcmv/errors.hpp"

namespace fibcmv {

namespace {

double coeff_scale(const Poly& p) {
    double s = 0.0;
    for (const Complex& c : p.c) s += std::abs(c);
    return s;
}

double max_residual(const Poly& p, const std::vector<Complex>& roots) {
    double r = 0.0;
    for (const Complex& z : roots) {
        const double v = std::abs(p.eval(z));
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
        r = std::max(r, v);
    }
    return r;
}

}  // namespace

std::vector<Complex> poly_roots(const Poly& p, const RootOptions& opts) {
    const int n = p.degree();
    if (n < 1) throw std::invalid_argument("poly_roots: degree must be >= 1");
    if (std::abs(p.c.back()) == 0.0)
        throw std::invalid_argument("poly_roots: leading coefficient vanishes");

    // Monic copy.
    Poly m = p;
    const Complex lead = m.c.back();
    for (auto& c : m.c) c /= lead;

    // Equispaced starting points on the unit circle, rotated off any symmetry
    // axis the polynomial itself might have.
    std::vector<Complex> roots(static_cast<std::size_t>(n));
    const double offset = 0.3759 + 0.5 / double(n);
    for (int i = 0; i < n; ++i) {
        const double ang = 2.0 * std::numbers::pi * (double(i) + offset) / double(n);
        roots[static_cast<std::size_t>(i)] = std::polar(1.0, ang);
    }

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        double max_step = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex denom{1.0};
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            if (denom == Complex{0.0} || !std::isfinite(std::abs(denom))) {
                // Collided or runaway guesses; nudge apart and continue.
                roots[i] += Complex{1e-8, 1e-8};
                max_step = 1.0;
                continue;
            }
            Complex delta = m.eval(roots[i]) / denom;
            // Clamp the step: with large coefficients the raw Weierstrass
            // correction can overshoot far enough to overflow z^n.
            const double step = std::abs(delta);
            if (!std::isfinite(step)) {
                roots[i] *= 0.5;
                max_step = 1.0;
                continue;
            }
            if (step > 0.5) delta *= 0.5 / step;
            roots[i] -= delta;
            if (std::abs(roots[i]) > 1e3) roots[i] /= std::abs(roots[i]);
            max_step = std::max(max_step, std::abs(delta));
        }
        if (max_step < opts.step_tol) break;
    }

    const double scale = std::max(coeff_scale(m), 1.0);
    if (opts.on_unit_circle) {
        // Newton polish, then radial projection onto the circle with a final
        // tangential Newton correction in the angle variable.
        const Poly dm = m.derivative();
        for (auto& z : roots) {
            for (int s = 0; s < 3; ++s) {
                const Complex dp = dm.eval(z);
                if (std::abs(dp) == 0.0) break;
                z -= m.eval(z) / dp;
            }
            if (std::abs(z) > 0.0) z /= std::abs(z);
            for (int s = 0; s < 2; ++s) {
                // d/dtheta p(e^{i theta}) = i z p'(z)
                const Complex g = m.eval(z);
                const Complex dg = Complex{0.0, 1.0} * z * dm.eval(z);
                if (std::abs(dg) == 0.0) break;
                const double dtheta = -std::real(g * std::conj(dg)) / std::norm(dg);
                z *= std::polar(1.0, dtheta);
            }
        }
    }

    for (const Complex& z : roots)
        if (!std::isfinite(std::real(z)) || !std::isfinite(std::imag(z)))
            throw NumericError("poly_roots: iteration produced a non-finite root");
    const double res = max_residual(m, roots);
    if (!std::isfinite(res) || res > opts.residual_factor * scale) {
        std::ostringstream msg;
        msg << "poly_roots: no convergence at degree " << n << "; achieved residual " << res
            << " vs bound " << opts.residual_factor * scale;
        throw NumericError(msg.str());
    }
    return roots;
}

}  // namespace fibcmv
