#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fibcmv/ising.hpp"
#include "fibcmv/poly_roots.hpp"
#include "test_helpers.hpp"

using namespace fibcmv;
using namespace fibcmv::ising;
using fibcmv::words::SubshiftPoint;

namespace {

IsingRing random_ring(std::mt19937_64& gen, long long L, bool complex_couplings) {
    std::vector<Complex> J;
    for (long long i = 0; i < L; ++i) {
        const double re = testutil::random_real(gen, 0.05, 2.0);
        const double im = complex_couplings ? testutil::random_real(gen, -1.0, 1.0) : 0.0;
        J.emplace_back(re, im);
    }
    return IsingRing(std::move(J));
}

}  // namespace

TEST_CASE("ring validation") {
    CHECK_THROWS_AS(IsingRing({Complex{-0.1}}), std::invalid_argument);
    CHECK_THROWS_AS(IsingRing({Complex{1.0}}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(IsingRing({}), std::invalid_argument);
}

TEST_CASE("energy of explicit configurations") {
    const long long L = 6;
    const IsingRing ring(std::vector<Complex>(L, Complex{1.0}));
    std::vector<int> up(L, 1);
    CHECK(std::real(energy(up, ring)) == doctest::Approx(-double(L)));

    std::vector<int> alt;
    for (long long i = 0; i < L; ++i) alt.push_back(i % 2 == 0 ? 1 : -1);
    CHECK(std::real(energy(alt, ring)) == doctest::Approx(double(L)));

    std::vector<int> flipped = up;
    flipped[2] = -1;
    CHECK(std::real(energy(flipped, ring)) == doctest::Approx(-double(L) + 4.0));

    CHECK_THROWS_AS(energy(std::vector<int>{1, 2, 1, 1, 1, 1}, ring), std::invalid_argument);
    CHECK_THROWS_AS(energy(std::vector<int>{1, 1}, ring), std::invalid_argument);
}

TEST_CASE("uniform ring closed form") {
    // L = 3, J = 1, h = 1: (2 cosh 1)^3 + (2 sinh 1)^3
    const IsingRing ring(std::vector<Complex>(3, Complex{1.0}));
    const double expected =
        std::pow(2.0 * std::cosh(1.0), 3.0) + std::pow(2.0 * std::sinh(1.0), 3.0);
    CHECK(std::real(partition_bruteforce(ring, Complex{1.0})) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::real(partition_transfer(ring, Complex{1.0})) ==
          doctest::Approx(expected).epsilon(1e-12));

    // L = 1: two configurations, one self-bond
    const IsingRing single({Complex{0.7}});
    const Complex h{0.36, 0.2};
    const Complex s = sqrt_branch(h);
    const Complex expected1 = std::exp(Complex{0.7}) * (s + 1.0 / s);
    CHECK(std::abs(partition_bruteforce(single, h) - expected1) < 1e-12);
    CHECK(std::abs(partition_transfer(single, h) - expected1) < 1e-12);
}

TEST_CASE("uniform coupling: transfer trace equals eigenvalue sum") {
    auto gen = testutil::rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        const long long L = 2 + (gen() % 7);
        const double J = testutil::random_real(gen, 0.1, 1.5);
        const IsingRing ring(std::vector<Complex>(static_cast<std::size_t>(L), Complex{J}));
        const Complex h = std::polar(1.0, testutil::random_real(gen, 0.0, 6.28));
        const Complex s = sqrt_branch(h);
        // single transfer matrix [[e^J s, e^-J], [e^-J, e^J / s]] eigenvalues
        const Complex a = std::exp(J) * s, d = std::exp(J) / s;
        const Complex b = std::exp(-J);
        const Complex tr = a + d, det = a * d - b * b;
        const Complex disc = std::sqrt(tr * tr - 4.0 * det);
        const Complex l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
        const Complex expected = std::pow(l1, double(L)) + std::pow(l2, double(L));
        const Complex z = partition_transfer(ring, h);
        CHECK(std::abs(z - expected) < 1e-10 * (1.0 + std::abs(expected)));
    }
}

TEST_CASE("brute force vs transfer on random rings") {
    auto gen = testutil::rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const long long L = 1 + (gen() % 12);
        const bool complex_j = trial % 2 == 1;
        const IsingRing ring = random_ring(gen, L, complex_j);
        const Complex h = std::polar(testutil::random_real(gen, 0.3, 2.0),
                                     testutil::random_real(gen, 0.0, 6.28));
        const Complex zb = partition_bruteforce(ring, h);
        const Complex zt = partition_transfer(ring, h);
        CHECK(std::abs(zb - zt) <= 1e-10 * std::abs(zb));
    }
}

TEST_CASE("polynomial forms match brute force coefficients") {
    auto gen = testutil::rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const long long L = 2 + (gen() % 9);
        const IsingRing ring = random_ring(gen, L, trial % 2 == 1);
        const Poly pb = partition_bruteforce_poly(ring);
        const Poly pt = partition_poly(ring);
        REQUIRE(pb.degree() == L);
        REQUIRE(pt.degree() == L);
        for (std::size_t i = 0; i < pb.c.size(); ++i)
            CHECK(std::abs(pb.c[i] - pt.c[i]) <= 1e-11 * (1.0 + std::abs(pb.c[i])));
        // evaluating the polynomial reproduces Z up to the cleared prefactor
        const Complex h = std::polar(1.0, testutil::random_real(gen, 0.0, 6.28));
        const Complex s = sqrt_branch(h);
        const Complex z = partition_bruteforce(ring, h);
        CHECK(std::abs(pb.eval(h) * std::pow(s, -double(L)) - z) <=
              1e-10 * (1.0 + std::abs(z)));
    }
}

TEST_CASE("theta inversion") {
    CHECK(std::abs(theta_inversion(std::vector<Complex>{Complex{2.0}})[0] - 0.5) < 1e-15);
    const Complex b{1.0, 1.0};
    CHECK(std::abs(theta_inversion(std::vector<Complex>{b})[0] - Complex{0.5, -0.5}) < 1e-15);
    CHECK_THROWS_AS(theta_inversion(std::vector<Complex>{Complex{0.9}}), std::invalid_argument);

    auto gen = testutil::rng(111);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Complex> beta;
        for (int i = 0; i < 8; ++i)
            beta.push_back(std::polar(testutil::random_real(gen, 1.1, 5.0),
                                      testutil::random_real(gen, 0.0, 6.28)));
        const auto alpha = theta_inversion(beta);
        for (const auto& a : alpha) {
            CHECK(std::abs(a) < 1.0);
            CHECK(std::abs(a) > 0.0);
        }
        const auto back = [&] {
            std::vector<Complex> out;
            for (Complex a : alpha) out.push_back(1.0 / a);
            return out;
        }();
        for (std::size_t i = 0; i < beta.size(); ++i)
            CHECK(std::abs(back[i] - beta[i]) < 1e-12 * std::abs(beta[i]));
    }
}

TEST_CASE("discriminant basics") {
    // L = 1, real alpha: trace rho^{-1} (h + 1), zero at -1
    const std::vector<Complex> alpha{Complex{0.5}};
    const double rho = std::sqrt(0.75);
    const Complex h{0.3, 0.4};
    CHECK(std::abs(discriminant(h, alpha) - (h + 1.0) / rho) < 1e-14);
    const Poly dp = discriminant_poly(alpha);
    REQUIRE(dp.degree() == 1);
    CHECK(std::abs(dp.eval(Complex{-1.0})) < 1e-14);

    // the polynomial expansion matches pointwise evaluation
    auto gen = testutil::rng(119);
    std::vector<Complex> word;
    for (int i = 0; i < 9; ++i) word.push_back(testutil::random_disc(gen, 0.7));
    const Poly dp9 = discriminant_poly(word);
    for (int t = 0; t < 10; ++t) {
        const Complex z = testutil::random_unit(gen);
        CHECK(std::abs(dp9.eval(z) - discriminant(z, word)) <
              1e-11 * (1.0 + std::abs(dp9.eval(z))));
    }
}

TEST_CASE("conjugation identity D^-1 Mtilde D equals the CMV transfer form") {
    auto gen = testutil::rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        const Complex beta = std::polar(testutil::random_real(gen, 1.2, 4.0),
                                        testutil::random_real(gen, -0.5, 0.5));
        const Complex alpha = 1.0 / beta;
        const Complex h = std::polar(1.0, testutil::random_real(gen, 0.0, 6.28));
        const Complex s = sqrt_branch(h);
        // Mtilde = [[h, s/conj b],[s/b, 1]], D = diag(-1, 1/s)
        // D^{-1} Mtilde D = [[h, -conj(alpha)],[-alpha h, 1]]
        const Complex r11 = h;
        const Complex r12 = (-1.0) * (s / std::conj(beta)) * (1.0 / s);
        const Complex r21 = (-s) * (s / beta);
        const Complex r22 = Complex{1.0};
        CHECK(std::abs(r11 - h) < 1e-14);
        CHECK(std::abs(r12 + std::conj(alpha)) < 1e-14);
        CHECK(std::abs(r21 + alpha * h) < 1e-14);
        CHECK(std::abs(r22 - 1.0) < 1e-14);
    }
}

TEST_CASE("zero chain: Z, Ztilde, discriminant share zeros") {
    auto gen = testutil::rng(131);
    for (long long L : {4LL, 7LL, 10LL}) {
        const IsingRing ring = random_ring(gen, L, false);
        const auto alpha = theta_inversion(beta_sequence(ring));

        RootOptions opts;
        opts.on_unit_circle = true;
        const auto rz = poly_roots(partition_poly(ring), opts);
        const auto rzt = poly_roots(partition_tilde_poly(ring), opts);
        const auto rd = poly_roots(discriminant_poly(alpha), opts);
        auto to_angles = [](const std::vector<Complex>& roots) {
            std::vector<double> a;
            for (Complex r : roots) {
                CHECK(std::abs(std::abs(r) - 1.0) < 1e-8);
                double ang = std::arg(r);
                if (ang < 0.0) ang += 2.0 * std::numbers::pi;
                a.push_back(ang);
            }
            std::sort(a.begin(), a.end());
            return a;
        };
        const auto az = to_angles(rz), azt = to_angles(rzt), ad = to_angles(rd);
        CHECK(hausdorff_distance(az, azt) < 1e-8);
        CHECK(hausdorff_distance(azt, ad) < 1e-8);
        CHECK(hausdorff_distance(az, ad) < 1e-8);

        // Ztilde and the discriminant trace are proportional pointwise
        const Complex h = std::polar(1.0, testutil::random_real(gen, 0.0, 6.28));
        double rho_prod = 1.0;
        for (Complex a : alpha) rho_prod *= std::sqrt(1.0 - std::norm(a));
        CHECK(std::abs(partition_tilde(ring, h) - rho_prod * discriminant(h, alpha)) <
              1e-10 * (1.0 + std::abs(partition_tilde(ring, h))));
    }
}

TEST_CASE("zeros on the circle: methods agree and zeros are simple") {
    auto gen = testutil::rng(137);
    for (long long L : {5LL, 8LL, 13LL, 34LL}) {
        const IsingRing ring = fibonacci_couplings(Complex{1.0}, Complex{0.5},
                                                   SubshiftPoint::fixed_point(), L);
        const auto alpha = theta_inversion(beta_sequence(ring));
        const CircleZeroSet sign = zeros_on_circle(alpha, ZeroMethod::SignChange);
        const CircleZeroSet poly = zeros_on_circle(alpha, ZeroMethod::Polynomial);
        REQUIRE(static_cast<long long>(sign.angles.size()) == L);
        REQUIRE(static_cast<long long>(poly.angles.size()) == L);
        CHECK(hausdorff_distance(sign.angles, poly.angles) < 1e-8);
        for (std::size_t i = 1; i < sign.angles.size(); ++i)
            CHECK(sign.angles[i] - sign.angles[i - 1] > 1e-9);
    }
    (void)gen;
}

TEST_CASE("L = 1 zero sits at h = -1") {
    const std::vector<Complex> alpha{Complex{0.4}};
    const CircleZeroSet zs = zeros_on_circle(alpha);
    REQUIRE(zs.angles.size() == 1);
    CHECK(zs.angles[0] == doctest::Approx(std::numbers::pi).epsilon(1e-10));
}

TEST_CASE("uniform coupling zeros equidistribute at strong coupling") {
    // At J = 2 the fugacity gap at h = 1 is tiny and the zeros spread almost
    // uniformly; at weaker coupling the gap persists and the edge density
    // diverges, so uniformity is only approached on the support.
    for (long long L : {16LL, 32LL}) {
        const IsingRing ring(std::vector<Complex>(static_cast<std::size_t>(L), Complex{2.0}));
        const auto alpha = theta_inversion(beta_sequence(ring));
        const CircleZeroSet zs = zeros_on_circle(alpha);
        REQUIRE(static_cast<long long>(zs.angles.size()) == L);
        const double mean = 2.0 * std::numbers::pi / double(L);
        for (std::size_t i = 0; i < zs.angles.size(); ++i) {
            const double next =
                i + 1 < zs.angles.size() ? zs.angles[i + 1] : zs.angles[0] + 2.0 * std::numbers::pi;
            CHECK(std::abs(next - zs.angles[i] - mean) < mean * 0.1);
        }
    }
    // weak coupling: a macroscopic gap survives around h = 1
    const IsingRing weak(std::vector<Complex>(24, Complex{0.8}));
    const CircleZeroSet zw = zeros_on_circle(theta_inversion(beta_sequence(weak)));
    double largest = 0.0;
    for (std::size_t i = 0; i < zw.angles.size(); ++i) {
        const double next =
            i + 1 < zw.angles.size() ? zw.angles[i + 1] : zw.angles[0] + 2.0 * std::numbers::pi;
        largest = std::max(largest, next - zw.angles[i]);
    }
    CHECK(largest > 0.5);  // the gap does not close with L
}

TEST_CASE("band structure: one zero per band") {
    const long long L = 13;
    const IsingRing ring =
        fibonacci_couplings(Complex{1.0}, Complex{0.5}, SubshiftPoint::fixed_point(), L);
    const auto alpha = theta_inversion(beta_sequence(ring));
    const auto band_list = bands(alpha);
    REQUIRE(static_cast<long long>(band_list.size()) == L);
    for (const Band& b : band_list) {
        // zero strictly inside the arc
        double lo = b.left_angle, hi = b.right_angle, z = b.zero_angle;
        if (hi < lo) hi += 2.0 * std::numbers::pi;
        if (z < lo) z += 2.0 * std::numbers::pi;
        CHECK(z > lo);
        CHECK(z < hi);
        // endpoints carry |normalized trace| = 2
        CHECK(std::abs(std::abs(normalized_discriminant(b.right_angle, alpha)) - 2.0) < 1e-6);
    }
}

TEST_CASE("gamma from bands is unimodular; single band gives -z_r") {
    const std::vector<Complex> alpha{Complex{0.5}};
    const auto band_list = bands(alpha);
    REQUIRE(band_list.size() == 1);
    const Complex g = gamma_from_bands(band_list);
    CHECK(std::abs(std::abs(g) - 1.0) < 1e-12);
    CHECK(std::abs(g + std::polar(1.0, band_list[0].right_angle)) < 1e-12);
}

TEST_CASE("interlacing check") {
    std::vector<double> a{0.0, 2.0, 4.0};
    std::vector<double> b{1.0, 3.0, 5.0};
    CHECK(interlacing_check(a, b));
    std::vector<double> c{1.0, 1.5, 5.5};
    CHECK_FALSE(interlacing_check(a, c));
    CHECK_THROWS_AS(interlacing_check(a, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("measure distances") {
    CircleMeasure mu, nu;
    mu.angles = {0.5, 1.5, 2.5};
    nu.angles = {0.5, 1.5, 2.5};
    CHECK(kolmogorov_distance(mu, nu) == doctest::Approx(0.0));
    CHECK(hausdorff_distance(mu.angles, nu.angles) == doctest::Approx(0.0));

    CircleMeasure zero, pi;
    zero.angles = {0.0};
    pi.angles = {std::numbers::pi};
    CHECK(hausdorff_distance(zero.angles, pi.angles) ==
          doctest::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK(kolmogorov_distance(zero, pi) == doctest::Approx(1.0));

    // wrap-around metric
    std::vector<double> near_zero{0.05};
    std::vector<double> near_two_pi{2.0 * std::numbers::pi - 0.05};
    CHECK(hausdorff_distance(near_zero, near_two_pi) == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("fibonacci couplings follow the word") {
    const IsingRing ring =
        fibonacci_couplings(Complex{1.0}, Complex{0.5}, SubshiftPoint::fixed_point(), 5);
    // u = a b a a b
    CHECK(std::real(ring.couplings[0]) == doctest::Approx(1.0));
    CHECK(std::real(ring.couplings[1]) == doctest::Approx(0.5));
    CHECK(std::real(ring.couplings[2]) == doctest::Approx(1.0));
    CHECK(std::real(ring.couplings[3]) == doctest::Approx(1.0));
    CHECK(std::real(ring.couplings[4]) == doctest::Approx(0.5));
    CHECK_THROWS_AS(
        fibonacci_couplings(Complex{-1.0}, Complex{0.5}, SubshiftPoint::fixed_point(), 5),
        std::invalid_argument);
}

TEST_CASE("repeatable prefixes give identical zero sets across omega") {
    // cyclic rotation of the coupling word leaves the transfer trace invariant
    const auto shifted = SubshiftPoint::shift(3);
    const auto lengths = words::repeatable_prefix_lengths(shifted, 8);
    REQUIRE(!lengths.empty());
    const long long L = lengths.back();
    const IsingRing ru =
        fibonacci_couplings(Complex{1.0}, Complex{0.5}, SubshiftPoint::fixed_point(), L);
    const IsingRing rs = fibonacci_couplings(Complex{1.0}, Complex{0.5}, shifted, L);
    const auto zu = zeros_on_circle(theta_inversion(beta_sequence(ru)));
    const auto zs = zeros_on_circle(theta_inversion(beta_sequence(rs)));
    CHECK(hausdorff_distance(zu.angles, zs.angles) < 1e-9);
}

TEST_CASE("dos ladder report") {
    const DosReport report =
        dos_convergence(Complex{1.0}, Complex{0.5}, SubshiftPoint::shift(1), 3, 7);
    REQUIRE(report.entries.size() == 5);
    for (std::size_t i = 1; i < report.entries.size(); ++i)
        CHECK(report.entries[i].kolmogorov_prev >= 0.0);
    for (const auto& e : report.entries) {
        if (e.cross_omega_hausdorff >= 0.0) CHECK(e.cross_omega_hausdorff < 1e-8);
        CHECK(e.in_band_fraction >= 0.0);
        CHECK(e.in_band_fraction <= 1.0);
    }
}
