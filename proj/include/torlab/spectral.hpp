#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "torlab/eis.hpp"
#include "torlab/lfun.hpp"
#include "torlab/nfield.hpp"
#include "torlab/periods.hpp"

// Wave packets of Eisenstein series, the toroidality criterion, Besicovitch
// inner products, the diagonalized operator D (spectrum, action, resolvent),
// the trace formula, and the distributional (Connes-type) vanishing test.

namespace torlab::spectral {

using special::cplx;
using special::MeroValue;

struct Atom {
    cplx s;          // spectral point, inside the strip window
    cplx a{0.0, 0.0}; // coefficient
};

enum class PacketSymmetry { raw, plus_normalized };

struct WavePacket {
    std::vector<Atom> atoms;
    PacketSymmetry symmetry = PacketSymmetry::raw;
};

// Validated constructor: every atom must lie in the Eisenstein window with
// E(., s) pole-free there (s = 1 and the set R_2 rejected); coincident
// spectral points are merged.
WavePacket make_packet(const std::vector<Atom>& atoms,
                       PacketSymmetry symmetry = PacketSymmetry::raw);

// All atoms on the critical line Re s = 1/2 (within 1e-12).
bool is_principal(const WavePacket& p);

// Sum_j a_j E(z, s_j).
cplx ev_packet(const WavePacket& p, eis::HPoint z);

// mu+(s) = (mu(s) + c(1-s) mu(1-s))/2; pointwise ev_packet-invariant, and
// satisfies mu(1-s) = c(s) mu(s) atom-wise.  Reflections hitting a pole of
// E or c are rejected.
WavePacket symmetrize(const WavePacket& p);

struct ToroidalityReport {
    cplx period_closed_form{0.0, 0.0}; // Sum_j a_j H(g_K, s_j, chi) L(s_j, chi)
    cplx period_direct{0.0, 0.0};      // period functional applied to packet values
    double scale = 1.0;                // dimensionless normalization
    bool is_toroidal = false;          // both |period|/scale < tol
    bool spectrum_in_zeros = false;    // every atom near a verified zero ordinate
    bool methods_consistent = true;    // paths agree within combined error
    bool biconditional_ok = false;     // is_toroidal == spectrum_in_zeros
};

// The toroidality criterion against a verified zero list.
ToroidalityReport toroidality_test(const WavePacket& p,
                                   const nfield::QuadraticField& K,
                                   const lfun::HeckeCharacter& chi,
                                   const lfun::ZeroList& zeros, double tol);

struct BesicovitchResult {
    cplx path_a{0.0, 0.0};              // coefficient formula
    cplx path_b{0.0, 0.0};              // extrapolated truncated integrals
    std::array<cplx, 3> path_b_raw{};   // raw values at m = 20, 50, 100
    std::array<double, 3> m_values{20.0, 50.0, 100.0};
};

// Besicovitch inner product (F1, F2)_2 of principal packets by two routes:
// path A: a_0(F1) conj(a_0(F2)) + 2 Sum_{t>0} a_t(F1) conj(a_t(F2)) with the
//         canonical coefficients a_t = (b_t + b_{-t} c(1/2 - it))/2;
// path B: (1/(4 log m)) Int Lambda^m F1 conj(Lambda^m F2) d mu, extrapolated
//         linearly in 1/log m over m in {20, 50, 100}.
// Non-principal packets are rejected.
BesicovitchResult besicovitch_inner(const WavePacket& p1, const WavePacket& p2,
                                    const special::QuadratureSpec& mean_spec = {
                                        8, 0.25, 48, 1e-8});

struct SpectrumD {
    std::vector<double> eigenvalues;    // sorted, lambda = 1/4 + gamma^2
    std::vector<int> multiplicities;    // all 1 at desk scale
    long long d = 0;                    // source zero list
    std::string chi_name;
    double t_max = 0.0;
    int epsilon = 0;                    // 1 iff lambda = 1/4 belongs to the spectrum
};

SpectrumD spectrum_D(const lfun::ZeroList& zl, bool l_half_zero);

// Decide the epsilon flag from |Lambda_K(1/2, chi)| with threshold 1e-6 and
// an explicit warning band [1e-8, 1e-6].
struct EpsilonDecision {
    int epsilon = 0;
    double lambda_half_mag = 0.0;
    bool warning_band = false;
};
EpsilonDecision epsilon_flag(const nfield::QuadraticField& K,
                             const lfun::HeckeCharacter& chi);

// D acts on principal packets by a_t -> ((1 + 4t^2)/4) a_t.
WavePacket apply_D(const WavePacket& p);

// (D - zc)^{-1} on principal packets: a_t -> a_t/(1/4 + t^2 - zc); zc within
// 1e-9 of an eigenvalue is rejected.
WavePacket resolvent(const WavePacket& p, cplx zc);

struct TraceResult {
    cplx value{0.0, 0.0};
    double tail_estimate = 0.0;
    bool tail_ok = true;
    double symmetry_residual = 0.0;
};

// epsilon * u(1/2) + Sum_{gamma in zl, gamma > 0} u(1/2 + i gamma), with the
// test function supplied as u(s); u(1-s) = u(s) is verified at 10 sample
// points (throws std::invalid_argument beyond 1e-8), and the tail beyond
// t_max is estimated with the zero-counting density (1/pi) log(t/(2 pi)).
TraceResult trace_formula(const lfun::ZeroList& zl, int epsilon,
                          const std::function<cplx(cplx)>& u_tilde);

struct ConnesDistribution {
    struct Point {
        double gamma = 0.0;
        int order = 0; // derivative order carried by the mass (<= 2)
        cplx coeff{1.0, 0.0};
    };
    std::vector<Point> points;
};

// True iff every support point lies within tol of a verified zero ordinate
// and the finite-difference derivatives of Lambda_K(1/2 + it, chi) along the
// critical line vanish within tol relative to the local scale, up to each
// point's order.
bool connes_test(const ConnesDistribution& dist, const nfield::QuadraticField& K,
                 const lfun::HeckeCharacter& chi, const lfun::ZeroList& zeros,
                 double tol = 1e-3);

// JSON round trip {schema, atoms: [{re_s, im_s, re_a, im_a}], symmetry}.
std::string packet_to_json(const WavePacket& p);
WavePacket packet_from_json(const std::string& text);

std::string toroidality_report_json(const ToroidalityReport& r, long long d,
                                    const std::string& chi_name, double tol);

} // namespace torlab::spectral
