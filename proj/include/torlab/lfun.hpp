#pragma once

#include <string>
#include <vector>

#include "torlab/nfield.hpp"
#include "torlab/special.hpp"

// Dirichlet L-functions of Kronecker characters, Dedekind zeta functions of
// quadratic fields, real (genus) class-group characters and their Hecke
// L-functions, gamma factors, completed L-functions, the scattering function
// c_n(s), the eigenvalue polynomials gamma_h, and critical-line zero scanning.

namespace torlab::lfun {

using special::cplx;
using special::MeroValue;

// Kronecker symbol (d|n), completely multiplicative in n, period |d| for
// fundamental d.  Defined for all integers n (chi(0) = 0 unless |d| = 1).
int kronecker_chi(long long d, long long n);

// L(s, chi_d) for a fundamental discriminant d via the Hurwitz decomposition
// L(s, chi_d) = |d|^{-s} Sum_{a mod |d|} chi_d(a) zeta(s, a/|d|).
// d = 1 gives the Riemann zeta function (pole at s = 1); other d are entire,
// including a cancellation-free branch around s = 1.  Window |Im s| <= 60.
MeroValue dirichlet_l(long long d, cplx s);

// A character of the class group with archimedean data.  Core scope: values
// in {+-1} (trivial character or genus characters), frequency m = 0.
struct HeckeCharacter {
    long long d = 0;                  // discriminant of the underlying field
    std::vector<double> class_values; // value on classes, in class-list order
    int frequency = 0;                // archimedean index m (core scope: 0)
    std::vector<double> rho;          // rho_w per infinite place (0 when m=0)
    bool self_dual = true;
    std::string name;                 // "trivial" or "genus(d1,d2)"
    long long d1 = 1;                 // factor discriminants: d = d1 * d2,
    long long d2 = 1;                 // trivial character has d1 = 1, d2 = d

    bool is_trivial() const;
};

HeckeCharacter trivial_character(const nfield::QuadraticField& K);

// All real characters of Cl(K): trivial plus the genus characters attached to
// factorizations d = d1*d2 into fundamental discriminants.  Throws
// std::domain_error when the class group is not 2-torsion (their count would
// not exhaust the dual group; such fields are out of core scope).
std::vector<HeckeCharacter> real_class_characters(const nfield::QuadraticField& K);

// L(s, chi): trivial chi -> zeta_K = zeta * L(chi_d); genus chi ->
// L(s, chi_{d1}) * L(s, chi_{d2}).
MeroValue hecke_l(const nfield::QuadraticField& K, const HeckeCharacter& chi, cplx s);

// zeta_K(s) = zeta(s) * L(s, chi_d); simple pole at s = 1 with residue
// L(1, chi_d) = c_K / sqrt(|d|).
MeroValue dedekind_zeta(const nfield::QuadraticField& K, cplx s);

// Archimedean factor Gamma(s, chi): for m = 0 this is Gamma_C(s) when d < 0
// and Gamma_R(s)^2 when d > 0.
MeroValue gamma_factor(const nfield::QuadraticField& K, const HeckeCharacter& chi, cplx s);

// Completed L-function, built multiplicatively from completed Dirichlet
// factors Lambda(s, chi_di) = (|di|/pi)^{s/2} Gamma((s+a_i)/2) L(s, chi_di);
// satisfies Lambda_K(s, chi) = Lambda_K(1-s, chi) and is real on the critical
// line (root number +1 for these self-dual characters).
MeroValue completed_hecke(const nfield::QuadraticField& K, const HeckeCharacter& chi, cplx s);

// Scattering function c_n(s) = Lambda(n(1-s)) / Lambda(ns) with full
// pole/zero bookkeeping:
//   - simple pole at s = 1 with residue +1/(n Lambda(n));
//   - simple pole at s = 1 - 1/n (n >= 3) with residue -1/(n Lambda(n-1));
//   - zero at s = 0, and at s = 1/n for n >= 3;
//   - c_2(1/2) = -1 (double-pole cancellation), c_n(1/2) = 1 for n >= 3;
//   - poles at zeros of Lambda(ns) (set R_n) flagged with numeric residue.
MeroValue c_scattering(int n, cplx s);

// Eigenvalue polynomials gamma_h(s) = s(1-s) * Sum_{k=0}^{h-2}
// ((n-1)s)^k (1-s)^{h-2-k}  (the closed ratio form with the removable
// singularity at ns = 1 filled in); gamma_1 = 0, gamma_2 = s(1-s).
cplx gamma_poly(int n, int h, cplx s);

// A verified list of critical-line zero ordinates for (K, chi).
struct ZeroBracket {
    double lo = 0.0;
    double hi = 0.0;
};

struct ZeroList {
    long long d = 0;
    std::string chi_name;
    double t_max = 0.0;
    double tol = 0.0;
    std::vector<double> ordinates;      // sorted gamma > 0
    std::vector<ZeroBracket> brackets;  // sign-change intervals
    std::vector<double> residuals;      // |Lambda_K(1/2 + i gamma, chi)|
    int audit_count = -1;               // argument-principle count, -1 = not run
    bool audit_match = false;
    bool multiplicity_flag = false;     // suspected tangency / close pair
};

// Scan the critical line on (0, t_max] for zeros of Lambda_K(1/2+it, chi) by
// sign changes of the (real) completed function, refine by bisection, then
// audit the count with an argument-principle contour integral around the
// rectangle [-0.2, 1.2] x [t0, t_max'] (t0 = 0.05, away from the s=1 pole).
ZeroList find_zeros(const nfield::QuadraticField& K, const HeckeCharacter& chi,
                    double t_max, double tol);

// Real value of the completed function on the critical line, normalized by
// the magnitude of the archimedean factors (a Hardy-style Z function used by
// the scan; exposed for tests).
double hardy_z(const nfield::QuadraticField& K, const HeckeCharacter& chi, double t);

std::string zerolist_to_json(const ZeroList& zl);
ZeroList zerolist_from_json(const std::string& text);

} // namespace torlab::lfun
