#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "torlab/eis.hpp"
#include "torlab/special.hpp"

using namespace torlab;
using eis::eisenstein;
using eis::HPoint;
using special::cplx;
using special::PrecisionError;
using special::QuadratureSpec;

namespace {
constexpr double PI = 3.141592653589793238462643383279502884;
constexpr double CATALAN = 0.91596559417721901505460351493238411;

double rel(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

cplx mobius(const std::array<long long, 4>& g, cplx z) {
    const cplx num = static_cast<double>(g[0]) * z + static_cast<double>(g[1]);
    const cplx den = static_cast<double>(g[2]) * z + static_cast<double>(g[3]);
    return num / den;
}
} // namespace

TEST_CASE("reduce_to_fd lands in the fundamental domain via its own matrix") {
    for (const HPoint z : {HPoint{0.7, 0.8}, HPoint{-3.2, 0.05}, HPoint{0.49, 2.0}}) {
        const auto r = eis::reduce_to_fd(z);
        CHECK(r.z.y > 0.0);
        CHECK(std::abs(r.z.x) <= 0.5 + 1e-12);
        CHECK(r.z.x * r.z.x + r.z.y * r.z.y >= 1.0 - 1e-12);
        CHECK(r.gamma[0] * r.gamma[3] - r.gamma[1] * r.gamma[2] == 1);
        const cplx mapped = mobius(r.gamma, cplx(z.x, z.y));
        CHECK(std::abs(mapped - cplx(r.z.x, r.z.y)) < 1e-10);
    }
    // Identity on interior points.
    const auto id = eis::reduce_to_fd(HPoint{0.1, 1.3});
    CHECK(id.gamma == std::array<long long, 4>{1, 0, 0, 1});
    CHECK_THROWS_AS((void)eis::reduce_to_fd(HPoint{0.0, -1.0}), std::invalid_argument);
}

TEST_CASE("E(i, s) closed form 2 zeta(s) beta(s) / zeta(2s)") {
    const auto zeta = [](double s) {
        return special::riemann_zeta(cplx(s, 0.0)).must().real();
    };
    // s = 2: beta(2) = Catalan.
    const double want2 = 2.0 * zeta(2.0) * CATALAN / zeta(4.0);
    const auto e2 = eisenstein(HPoint{0.0, 1.0}, cplx(2.0, 0.0));
    CHECK_FALSE(e2.pole);
    CHECK(std::abs(e2.value - cplx(want2, 0.0)) < 1e-10);
    // s = 3: beta(3) = pi^3 / 32.
    const double want3 = 2.0 * zeta(3.0) * (PI * PI * PI / 32.0) / zeta(6.0);
    CHECK(std::abs(eisenstein(HPoint{0.0, 1.0}, cplx(3.0, 0.0)).value -
                   cplx(want3, 0.0)) < 1e-10);
}

TEST_CASE("Fourier evaluation agrees with the coprime lattice oracle") {
    const HPoint z{0.31, 1.07};
    // Real s on the sigma = 3 fast path.
    const auto o3 = eis::eisenstein_oracle(z, cplx(3.0, 0.0), 3000);
    CHECK(o3.pairs > 0);
    CHECK(std::abs(eisenstein(z, cplx(3.0, 0.0)).value - o3.value) <
          o3.tail_bound + 1e-10);
    // A genuinely complex s.
    const cplx sc(1.6, 2.0);
    const auto oc = eis::eisenstein_oracle(z, sc, 1200);
    CHECK(std::abs(eisenstein(z, sc).value - oc.value) < oc.tail_bound + 1e-9);
}

TEST_CASE("eisenstein_oracle guards its window") {
    CHECK_THROWS_AS((void)eis::eisenstein_oracle(HPoint{0.0, 1.0}, cplx(1.0, 0.0), 100),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)eis::eisenstein_oracle(HPoint{0.0, 1.0}, cplx(2.0, 0.0), 5),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)eis::eisenstein_oracle(HPoint{0.0, 1.0}, cplx(2.0, 0.0), 20000),
                    std::invalid_argument);
}

TEST_CASE("Functional equation and modular invariance") {
    const HPoint z{0.21, 0.9};
    const cplx s(0.4, 3.0);
    const cplx c = lfun::c_scattering(2, s).must();
    CHECK(rel(eisenstein(z, s).value, c * eisenstein(z, 1.0 - s).value) < 1e-9);

    // T and S moves leave the value unchanged.
    const cplx base = eisenstein(z, s).value;
    CHECK(rel(eisenstein(HPoint{z.x + 1.0, z.y}, s).value, base) < 1e-12);
    const double n2 = z.x * z.x + z.y * z.y;
    CHECK(rel(eisenstein(HPoint{-z.x / n2, z.y / n2}, s).value, base) < 1e-10);
}

TEST_CASE("Special points: E(z,0) = 1, E(z,1/2) = 0, pole data at s = 1") {
    for (const HPoint z : {HPoint{0.137, 1.29}, HPoint{-0.41, 0.93}}) {
        CHECK(std::abs(eisenstein(z, cplx(0.0, 0.0)).value - cplx(1.0, 0.0)) < 1e-10);
        CHECK(std::abs(eisenstein(z, cplx(0.5, 0.0)).value) < 1e-10);
        const auto p = eisenstein(z, cplx(1.0, 0.0));
        CHECK(p.pole);
        CHECK(std::abs(p.residue - cplx(3.0 / PI, 0.0)) < 1e-14);
    }
    // R_2 points (zeros of Lambda(2s)) are flagged too.
    CHECK(eisenstein(HPoint{0.0, 1.0}, cplx(0.25, 14.134725141734693 / 2.0)).pole);
}

TEST_CASE("Constant term: x-average identity and large-y dominance") {
    const cplx s(0.7, 1.3);
    const double y = 0.9;
    const cplx ct = eis::constant_term(HPoint{0.0, y}, s).must();
    const int K = 64;
    cplx avg = 0.0;
    for (int k = 0; k < K; ++k) {
        const double x = -0.5 + (k + 0.5) / K;
        avg += eisenstein(HPoint{x, y}, s).value;
    }
    avg /= static_cast<double>(K);
    CHECK(std::abs(avg - ct) < 1e-12);

    // At y = 8 the Bessel tail is invisible at double precision.
    const cplx ct8 = eis::constant_term(HPoint{0.3, 8.0}, s).must();
    CHECK(rel(eisenstein(HPoint{0.3, 8.0}, s).value, ct8) < 1e-15);

    // c(1/2) = -1 makes the constant term vanish at s = 1/2.
    CHECK(std::abs(eis::constant_term(HPoint{0.0, 1.7}, cplx(0.5, 0.0)).must()) < 1e-13);
    CHECK(eis::constant_term(HPoint{0.0, 1.7}, cplx(1.0, 0.0)).pole);
}

TEST_CASE("Arthur truncation subtracts exactly the high-cusp constant term") {
    const cplx s(0.6, 2.0);
    const double T = 3.0;
    const HPoint high{0.2, 5.0};
    const cplx expect_high =
        eisenstein(high, s).value - eis::constant_term(high, s).must();
    CHECK(std::abs(eis::truncate_eis(high, s, T) - expect_high) < 1e-12);

    const HPoint low{0.2, 1.1};
    CHECK(std::abs(eis::truncate_eis(low, s, T) - eisenstein(low, s).value) < 1e-12);

    CHECK(eis::truncate_one(HPoint{0.0, 5.0}, T) == doctest::Approx(0.0));
    CHECK(eis::truncate_one(HPoint{0.0, 1.2}, T) == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)eis::truncate_eis(low, s, 0.5), std::invalid_argument);
}

TEST_CASE("fd_integrate: area of the modular surface and a truncated box") {
    const auto one = [](double, double) { return cplx(1.0, 0.0); };
    const auto area = eis::fd_integrate(one, 1e8);
    CHECK(area.converged);
    CHECK(area.evals > 0);
    CHECK(std::abs(area.value - cplx(PI / 3.0, 0.0)) < 2e-8);

    // mu{F, y < T} = pi/3 - 1/T through the truncate_one indicator.
    const double T = 4.0;
    const auto box = [T](double x, double y) {
        const double v = eis::truncate_one(HPoint{x, y}, T);
        return cplx(v * v, 0.0);
    };
    const auto m = eis::fd_integrate(box, 6.0, {T});
    CHECK(std::abs(m.value - cplx(PI / 3.0 - 1.0 / T, 0.0)) < 1e-8);

    CHECK_THROWS_AS((void)eis::fd_integrate(one, 0.5), std::invalid_argument);
}

TEST_CASE("Maass-Selberg closed form: degenerate branches are the limits") {
    const double T = 17.0;
    const cplx s(0.63, 1.4);
    const double eps = 1e-6;

    const cplx at = eis::maass_selberg_rhs(s, s, T);
    const cplx near =
        0.5 * (eis::maass_selberg_rhs(s, s + eps, T) + eis::maass_selberg_rhs(s, s - eps, T));
    CHECK(std::abs(at - near) < 1e-5 * std::max(1.0, std::abs(at)));

    const cplx comp = 1.0 - s; // s1 + s2 = 1 branch
    const cplx at2 = eis::maass_selberg_rhs(s, comp, T);
    const cplx near2 = 0.5 * (eis::maass_selberg_rhs(s, comp + eps, T) +
                              eis::maass_selberg_rhs(s, comp - eps, T));
    CHECK(std::abs(at2 - near2) < 1e-5 * std::max(1.0, std::abs(at2)));

    CHECK_THROWS_AS((void)eis::maass_selberg_rhs(s, s, 0.9), std::invalid_argument);
}

TEST_CASE("Maass-Selberg identity holds numerically off the diagonal") {
    const QuadratureSpec light{8, 0.25, 48, 1e-7};
    const auto ms = eis::maass_selberg_check(cplx(0.6, 3.0), cplx(0.55, -2.0), 10.0, light);
    CHECK(ms.rel_error < 0.05);
}

TEST_CASE("Maass-Selberg identity holds numerically on the real diagonal") {
    const QuadratureSpec light{8, 0.25, 48, 1e-7};
    const auto ms = eis::maass_selberg_check(cplx(0.7, 0.0), cplx(0.7, 0.0), 8.0, light);
    CHECK(ms.rel_error < 0.05);
}

TEST_CASE("selberg_transform: layer consistency, parity, linearity") {
    const auto profile = [](double d) { return std::exp(-d * d); };
    const auto ker = eis::selberg_transform(profile, 6.0);
    CHECK(ker.d_max == doctest::Approx(6.0));

    // k_of_u is the profile read through u = 4 sinh^2(d/2), here at d = 1.
    const double u = 4.0 * std::sinh(0.5) * std::sinh(0.5);
    CHECK(ker.k_of_u(u) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));

    // h is even.
    CHECK(ker.h_of_t(1.3) == doctest::Approx(ker.h_of_t(-1.3)).epsilon(1e-10));

    // h(0) = 2 Int_0^inf g, cross-checked by Simpson on the support.
    const int N = 4000;
    const double hstep = 6.0 / N;
    double simpson = ker.g_of_r(0.0) + ker.g_of_r(6.0);
    for (int i = 1; i < N; ++i)
        simpson += ker.g_of_r(i * hstep) * ((i % 2) ? 4.0 : 2.0);
    simpson *= hstep / 3.0;
    CHECK(ker.h_of_t(0.0) == doctest::Approx(2.0 * simpson).epsilon(1e-8));

    // Doubling the profile doubles the transform.
    const auto ker2 =
        eis::selberg_transform([&](double r) { return 2.0 * profile(r); }, 6.0);
    CHECK(ker2.h_of_t(0.9) == doctest::Approx(2.0 * ker.h_of_t(0.9)).epsilon(1e-10));

    CHECK_THROWS_AS((void)eis::selberg_transform(profile, 0.0), std::invalid_argument);
}

TEST_CASE("gaussian_pair_kernel reproduces its target transform") {
    const double a = 2.5;
    const auto ker = eis::gaussian_pair_kernel(a);
    CHECK(ker.d_max == doctest::Approx(12.8 / a));
    // Closed-form g-layer; the tabulated Abel-inverse profile plus forward
    // quadrature reconstructs it to ~5e-10 near the peak (measured), so the
    // gate carries an order of margin.
    const double r = 0.8;
    const double g_exact = a / (2.0 * std::sqrt(PI)) * std::exp(-a * a * r * r / 4.0);
    CHECK(ker.g_of_r(r) == doctest::Approx(g_exact).epsilon(1e-8));
    // The numerically recomputed h matches exp(-(t/a)^2) end to end.
    for (const double t : {0.0, 1.0, 2.7}) {
        const double exact = std::exp(-(t / a) * (t / a));
        CHECK(std::abs(ker.h_of_t(t) - exact) < 1e-6);
    }
    CHECK_THROWS_AS((void)eis::gaussian_pair_kernel(0.0), std::invalid_argument);
}

TEST_CASE("apply_kernel matches h(t) E(z, 1/2 + it) off the acceptance point") {
    const auto ker = eis::gaussian_pair_kernel(2.5);
    const auto ka = eis::apply_kernel(ker, HPoint{0.3, 1.1}, 2.0);
    CHECK(ka.rel_dev < 1e-3);
    CHECK(std::abs(ka.applied - ka.predicted) < 1e-3 * std::abs(ka.predicted));
    CHECK_THROWS_AS((void)eis::apply_kernel(ker, HPoint{0.0, 1.0}, 25.0), PrecisionError);
}

TEST_CASE("Finite-difference Laplacian returns the eigenvalue s(1-s)") {
    const HPoint z{0.15, 1.05};
    const cplx s(0.6, 1.1);
    const cplx lap = eis::fd_laplacian_eis(z, s, 1e-3);
    const cplx want = s * (1.0 - s) * eisenstein(z, s).value;
    CHECK(rel(lap, want) < 1e-4);
}

TEST_CASE("eisenstein guards its declared window") {
    CHECK_THROWS_AS((void)eisenstein(HPoint{0.0, 1.0}, cplx(0.5, 40.0)), PrecisionError);
    CHECK_THROWS_AS((void)eisenstein(HPoint{0.0, 1.0}, cplx(4.0, 0.0)), PrecisionError);
}
