#pragma once
// Special functions on binary64: log-gamma, completed zeta, Hurwitz zeta,
// modified Bessel K of complex order. Poles are first-class return values
// (MeroValue), never NaN.

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace torlab::special {

using cplx = std::complex<double>;

// Thrown when an argument leaves the window in which the declared accuracy
// can be met in binary64. Maps to CLI exit code 3.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Value-or-pole result of a meromorphic function evaluation.
struct MeroValue {
    cplx value{0.0, 0.0};   // finite value when !pole
    bool pole = false;
    int order = 0;          // pole order when pole
    cplx residue{0.0, 0.0}; // residue when pole of order 1 (0 if unknown)

    static MeroValue finite(cplx v) { return MeroValue{v, false, 0, {0.0, 0.0}}; }
    static MeroValue simple_pole(cplx res) { return MeroValue{{0.0, 0.0}, true, 1, res}; }

    // Value of a function known to be finite here; throws if it is a pole.
    cplx must() const {
        if (pole) throw std::domain_error("MeroValue: pole where finite value required");
        return value;
    }
};

// Deterministic quadrature configuration (trapezoid refinement on analytic
// integrands). node_count counts the finest level actually used.
struct QuadratureSpec {
    int max_levels = 10;        // trapezoid halvings from initial step
    double initial_step = 0.25; // h at level 0
    double cutoff_exp = 48.0;   // stop tails when exp drop exceeds this
    double declared_error = 1e-12;
};

// Exact Bernoulli numbers B_2..B_30 (even index), as numerator/denominator.
struct BernoulliTable {
    struct Entry { std::int64_t num; std::int64_t den; };
    static const std::array<Entry, 15>& entries(); // B_{2(k+1)} at index k
    static double value(int even_index);           // B_n for even n in [2,30]
};

// log Gamma(s), principal determination up to 2*pi*i jumps (phase only ever
// used through exp). Pole at s = 0, -1, -2, ... (simple; residue of Gamma at
// -k is (-1)^k/k!).
MeroValue log_gamma(cplx s);

// Gamma(s) itself (through exp(log_gamma)).
MeroValue gamma_fn(cplx s);

// Gamma_R(s) = pi^{-s/2} Gamma(s/2): poles at s = 0, -2, -4, ...
MeroValue gamma_R(cplx s);

// Gamma_C(s) = (2 pi)^{1-s} Gamma(s): poles at s = 0, -1, -2, ...
MeroValue gamma_C(cplx s);

// Hurwitz zeta(s, a), a in (0, 1], Euler-Maclaurin. Simple pole at s = 1
// with residue 1. Accuracy ~1e-13 relative for |Im s| <= 80, Re s >= -2.
MeroValue hurwitz_zeta(cplx s, double a);

// Riemann zeta(s) = hurwitz_zeta(s, 1).
MeroValue riemann_zeta(cplx s);

// Digamma psi(x) for real x > 0 (Euler-Maclaurin; used for L(1, chi)).
double digamma(double x);

// Completed zeta Lambda(s) = pi^{-s/2} Gamma(s/2) zeta(s).
// Simple poles at s = 0 (residue -1) and s = 1 (residue +1).  The half plane
// Re s < 1/2 is evaluated through the exact symmetry Lambda(s) = Lambda(1-s),
// so trivial-zero/gamma-pole collisions never arise.
MeroValue lambda_completed(cplx s);

// Modified Bessel K_nu(x) for complex order, real x > 0, via trapezoid
// integration of (1/2) int e^{-x cosh u - nu u} du on a shifted contour
// Im u = -theta sgn(Im nu). Declared window: x >= 0.05, |Im nu| <= 40.
struct BesselEval {
    cplx nu;
    double x = 0.0;
    cplx value{0.0, 0.0};        // K_nu(x)
    cplx scaled{0.0, 0.0};       // e^{pi |Im nu| / 2} K_nu(x), cancellation-safe
    std::string method;          // "contour_trapezoid(theta=...)"
    double error_estimate = 0.0; // absolute, on `scaled`
    int node_count = 0;
};

BesselEval bessel_k(cplx nu, double x, const QuadratureSpec& spec = {});

// Convenience: cancellation-safe e^{pi |Im nu|/2} K_nu(x).
cplx bessel_k_scaled(cplx nu, double x);

} // namespace torlab::special
