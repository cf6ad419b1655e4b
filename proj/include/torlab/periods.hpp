#pragma once

#include <string>
#include <vector>

#include "torlab/eis.hpp"
#include "torlab/lfun.hpp"
#include "torlab/nfield.hpp"

// Toroidal period integrals of Eisenstein series: Heegner-point sums for
// imaginary quadratic fields, closed-geodesic integrals for real quadratic
// fields, the closed-form H-function that ties both to Hecke L-functions,
// the Siegel identity, and the Laplace-eigenvalue consistency check.

namespace torlab::periods {

using special::cplx;
using special::MeroValue;

enum class PeriodMethod { heegner_sum, geodesic_quadrature, closed_form };

struct PeriodResult {
    cplx value{0.0, 0.0};
    double err = 0.0; // >= 0; for heegner_sum bounded by Eisenstein errors
    PeriodMethod method = PeriodMethod::closed_form;
};

struct HFunctionEval {
    cplx s;
    std::string chi_name;
    cplx value{0.0, 0.0};
    bool pole_flag = false; // pole of H (Gamma pole not cancelled, or Lambda(2s) zero)
};

// Pi_chi(E(., s)) = (1/h) Sum_{classes A} conj(chi(A)) E(z_A, s) for d < 0.
// Throws std::domain_error when E has a pole at s.
PeriodResult heegner_period(const nfield::QuadraticField& K,
                            const lfun::HeckeCharacter& chi, cplx s);

// (1/l) Int_0^l E(z(t), s) dt along the closed geodesic of the principal
// class; requires d > 0, h = 1 (trivial character, frequency 0).
PeriodResult geodesic_period(const nfield::QuadraticField& K, cplx s);

// H(g_K, s, chi) = |d|^{s/2} / (2 c_K) * Gamma(s, chi) / Lambda(2s).
// Pole/zero bookkeeping: zeros of H at the poles of Lambda(2s) unless
// cancelled by a Gamma pole; pole_flag at uncancelled Gamma poles and at
// numerical zeros of Lambda(2s).
HFunctionEval h_closed_form(const nfield::QuadraticField& K,
                            const lfun::HeckeCharacter& chi, cplx s);

struct SiegelCheck {
    cplx lhs{0.0, 0.0}; // 2 Lambda(2s) E(z_A, s)
    cplx rhs{0.0, 0.0}; // c_K^{-1} |d|^{s/2} Sum_chi Gamma(s,chi) L(s,chi) conj(chi(A))
    double rel_error = 0.0;
};

// Siegel's identity for class A (index into K.classes); requires d < 0 with
// all class characters real, s != 0, 1.
SiegelCheck siegel_identity_check(const nfield::QuadraticField& K, int class_index,
                                  cplx s);

// |Pi(Delta_fd E) - s(1-s) Pi(E)| / max(|s(1-s) Pi(E)|, 1e-6) with the
// finite-difference hyperbolic Laplacian at the Heegner points (d < 0).
double eigen_consistency(const nfield::QuadraticField& K,
                         const lfun::HeckeCharacter& chi, cplx s,
                         double step = 1e-3);

// JSON report {schema, d, chi, s_grid, lhs, rhs, rel_errors, constant_fit}:
// lhs = direct periods, rhs = H(s, chi) L(s, chi), constant_fit = mean ratio.
std::string periods_report_json(const nfield::QuadraticField& K,
                                const lfun::HeckeCharacter& chi,
                                const std::vector<cplx>& s_grid);

} // namespace torlab::periods
