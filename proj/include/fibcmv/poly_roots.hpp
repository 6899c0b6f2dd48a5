#pragma once

#include <vector>

#include "fibcmv/poly.hpp"

namespace fibcmv {

struct RootOptions {
    int max_iter = 400;
    double step_tol = 1e-14;        // stop when all Weierstrass corrections are below this
    double residual_factor = 1e-10; // acceptance: max |p(r)| <= factor * sum |c_i|
    bool on_unit_circle = false;    // project + polish when roots are known unimodular
};

// All roots of p by simultaneous (Weierstrass/Durand-Kerner) iteration from
// equispaced initial guesses on the unit circle.  Throws NumericError with the
// achieved residual if the iteration cap is hit without meeting the residual
// criterion; std::invalid_argument for degree < 1 or vanishing leading
// coefficient.
std::vector<Complex> poly_roots(const Poly& p, const RootOptions& opts = {});

}  // namespace fibcmv
