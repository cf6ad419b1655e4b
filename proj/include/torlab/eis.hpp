#pragma once

#include <array>
#include <functional>
#include <vector>

#include "torlab/lfun.hpp"
#include "torlab/special.hpp"

// Real-analytic Eisenstein series for SL(2,Z) (Fourier-Bessel evaluation with
// a brute-force coprime-lattice oracle), constant terms, Arthur truncation,
// quadrature over the modular fundamental domain, Maass-Selberg verification,
// and point-pair kernels with their spherical (Selberg) transform.

namespace torlab::eis {

using special::cplx;
using special::MeroValue;

struct HPoint {
    double x = 0.0;
    double y = 1.0;
};

// Reduction into the standard fundamental domain |x| <= 1/2, |z| >= 1.
// gamma = (a, b, c, d) is the SL(2,Z) matrix with z_fd = (a z + b)/(c z + d).
struct ReduceResult {
    HPoint z;
    std::array<long long, 4> gamma{1, 0, 0, 1};
};
ReduceResult reduce_to_fd(HPoint z);

struct EisEval {
    cplx s;
    int truncation_N = 0; // Fourier terms used
    cplx value{0.0, 0.0};
    double error_estimate = 0.0;
    bool pole = false;        // s = 1 or a zero of Lambda(2s) (the set R_2)
    cplx residue{0.0, 0.0};   // exact 3/pi at s = 1; numeric estimate on R_2
};

// E(z, s) = y^s + c(s) y^{1-s}
//         + (4 sqrt(y)/Lambda(2s)) Sum_{n>=1} n^{s-1/2} sigma_{1-2s}(n)
//           K_{s-1/2}(2 pi n y) cos(2 pi n x).
// Windows: |Im s| <= 35, Re s in [-2.5, 3.5].
EisEval eisenstein(HPoint z, cplx s);

// Direct absolutely-convergent coprime-pair lattice sum
// (1/2) Sum_{gcd(m,n)=1} y^s / |m z + n|^{2s} over max(|m|,|n|) <= M,
// with a rigorous tail bound.  Requires Re s >= 1.25.
struct OracleEval {
    cplx value{0.0, 0.0};
    double tail_bound = 0.0;
    long long pairs = 0;
};
OracleEval eisenstein_oracle(HPoint z, cplx s, long long M);

// y^s + c(s) y^{1-s}; pole exactly where c has one.
MeroValue constant_term(HPoint z, cplx s);

// Arthur truncation: subtract the constant term on the (for T > 1 unique)
// cusp translate of height > T.
cplx truncate_eis(HPoint z, cplx s, double T);
double truncate_one(HPoint z, double T); // Lambda^T applied to F == 1

struct FdResult {
    cplx value{0.0, 0.0};
    double error_estimate = 0.0;
    long long evals = 0;
    bool converged = true;
};

// Integrate f(x, y) dx dy / y^2 over the standard fundamental domain.
// The y-direction uses tanh-sinh panels (substituted u = 1/y above height 1)
// up to y_top; pass in `splits` any heights where f has kinks (e.g. the
// truncation height T).  The tail above y_top is estimated from samples and
// flagged non-convergent when it does not decay.
FdResult fd_integrate(const std::function<cplx(double, double)>& f, double y_top,
                      const std::vector<double>& splits = {},
                      const special::QuadratureSpec& spec = {});

// Maass-Selberg: lhs = integral of Lambda^T E(., s1) Lambda^T E(., s2) over
// the fundamental domain (bilinear, no conjugation); rhs is the exact
// closed form, with the degenerate branches s1 = s2 and s1 + s2 = 1 filled
// by their limits.
struct MSCheck {
    cplx lhs{0.0, 0.0};
    cplx rhs{0.0, 0.0};
    double rel_error = 0.0;
};
cplx maass_selberg_rhs(cplx s1, cplx s2, double T);
MSCheck maass_selberg_check(cplx s1, cplx s2, double T,
                            const special::QuadratureSpec& spec = {});

// Point-pair kernel k(u(z,w)) with its spherical transform chain
//   q(v) = Integral k(v + w^2) dw (even extension),
//   g(r) = q(4 sinh^2(r/2)),
//   h(t) = Integral g(r) e^{irt} dr = 2 Integral_0^inf g(r) cos(rt) dr.
// h is even and real; R(u) E(., s) = h(t) E(., s) for s = 1/2 + it.
struct PointPairKernel {
    double d_max = 0.0; // support radius (hyperbolic distance)
    std::function<double(double)> k_of_u; // profile vs u = 4 sinh^2(d/2)
    std::function<double(double)> g_of_r;
    std::function<double(double)> h_of_t;
};

// Build the kernel from a profile given as a function of hyperbolic
// distance, treated as supported on [0, d_max].
PointPairKernel selberg_transform(const std::function<double(double)>& profile_of_distance,
                                  double d_max);

// Kernel whose spherical transform is exactly h(t) = exp(-(t/a)^2): the
// g-layer is the closed-form Gaussian and the profile is manufactured by the
// inverse Abel transform; its h_of_t is still computed numerically through
// the forward chain (an end-to-end consistency path).
PointPairKernel gaussian_pair_kernel(double a);

struct KernelApply {
    cplx applied{0.0, 0.0};   // integral of k(z, .) E(., 1/2 + it) d mu
    cplx predicted{0.0, 0.0}; // h(t) E(z, 1/2 + it)
    double rel_dev = 0.0;
};
KernelApply apply_kernel(const PointPairKernel& ker, HPoint z, double t);

// 5-point finite-difference hyperbolic Laplacian -y^2 (d_xx + d_yy) applied
// to E(., s); matches s(1-s) E(z, s) up to O(step^2).
cplx fd_laplacian_eis(HPoint z, cplx s, double step);

} // namespace torlab::eis
