#include "torlab/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "torlab/eis.hpp"
#include "torlab/lfun.hpp"
#include "torlab/nfield.hpp"
#include "torlab/parallel.hpp"
#include "torlab/periods.hpp"
#include "torlab/special.hpp"
#include "torlab/spectral.hpp"

// Each suite below is one acceptance criterion, self-contained: it builds its
// own inputs, runs both computation routes where the criterion is dual-route,
// and freezes the measured numbers into a byte-stable JSON report.  The
// `threads` parameter, where accepted, only distributes independent sample
// evaluations across a pool; every numeric result is computed identically for
// every thread count.

namespace torlab::verify {

namespace {

using nlohmann::ordered_json;
using special::cplx;

constexpr double PI = 3.141592653589793238462643383279502884;
constexpr const char* kVersion = "torlab 1.0.0";

// Deterministic uniform draws: raw mt19937 output mapped affinely.
// (std::uniform_real_distribution is implementation-defined, so it would not
// give byte-stable reports across standard libraries.)
struct DetRng {
    std::mt19937 g;
    explicit DetRng(unsigned seed) : g(seed) {}
    double uni(double a, double b) {
        return a + (b - a) * (static_cast<double>(g()) * (1.0 / 4294967296.0));
    }
};

std::string fmt(double x) {
    char b[48];
    std::snprintf(b, sizeof b, "%.6e", x);
    return b;
}

double rel_diff(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

ordered_json report_head(const std::string& suite) {
    ordered_json j;
    j["schema"] = 1;
    j["suite"] = suite;
    j["version"] = kVersion;
    return j;
}

void seal(SuiteResult& r, ordered_json& j) {
    j["pass"] = r.pass;
    r.report_json = j.dump(2) + "\n";
}

// ---------------------------------------------------------------- 1: lambda

SuiteResult s_lambda(int threads) {
    SuiteResult r;
    r.name = "lambda";

    const double lam2 = special::lambda_completed(cplx(2.0, 0.0)).must().real();
    const double defect2 = std::abs(lam2 - PI / 6.0);

    // 100-point strip grid, kept away from the poles at s = 0, 1 by Im >= 2.
    std::vector<cplx> pts;
    pts.reserve(100);
    for (int a = 0; a < 10; ++a)
        for (int b = 0; b < 10; ++b)
            pts.emplace_back(-0.75 + 0.25 * a, 2.0 + 2.4 * b);

    std::vector<double> resid(pts.size(), 0.0);
    parallel_for(static_cast<int>(pts.size()), threads, [&](int i) {
        const cplx lhs = special::lambda_completed(pts[static_cast<std::size_t>(i)]).must();
        const cplx rhs =
            special::lambda_completed(1.0 - pts[static_cast<std::size_t>(i)]).must();
        resid[static_cast<std::size_t>(i)] = rel_diff(lhs, rhs);
    });
    const double worst = *std::max_element(resid.begin(), resid.end());

    r.pass = defect2 <= 1e-12 && worst < 1e-10;
    r.detail = "|Lambda(2) - pi/6| = " + fmt(defect2) +
               "; worst |Lambda(s)-Lambda(1-s)| rel = " + fmt(worst) +
               " over 100 grid points";

    ordered_json j = report_head(r.name);
    j["lambda_2"] = lam2;
    j["lambda_2_abs_defect"] = defect2;
    j["grid_points"] = 100;
    j["worst_symmetry_rel"] = worst;
    seal(r, j);
    return r;
}

// ------------------------------------------------------------ 2: scattering

SuiteResult s_scattering(int threads) {
    SuiteResult r;
    r.name = "scattering";

    // c(s) c(1-s) = 1 at 50 points, avoiding poles/zeros of Lambda(2s) where
    // the identity is ill-conditioned in floating point.
    DetRng rng(41110u);
    std::vector<cplx> pts;
    while (pts.size() < 50) {
        const cplx s(rng.uni(0.08, 0.92), rng.uni(-15.0, 15.0));
        const special::MeroValue cv = lfun::c_scattering(2, s);
        const special::MeroValue cw = lfun::c_scattering(2, 1.0 - s);
        if (cv.pole || cw.pole) continue;
        const double mag = std::abs(cv.value);
        if (mag < 1e-2 || mag > 1e2) continue;
        pts.push_back(s);
    }
    std::vector<double> resid(pts.size(), 0.0);
    parallel_for(static_cast<int>(pts.size()), threads, [&](int i) {
        const cplx s = pts[static_cast<std::size_t>(i)];
        const cplx prod = lfun::c_scattering(2, s).must() *
                          lfun::c_scattering(2, 1.0 - s).must();
        resid[static_cast<std::size_t>(i)] = std::abs(prod - 1.0);
    });
    const double worst_prod = *std::max_element(resid.begin(), resid.end());

    // Numeric residue of c_2 at s = 1 by a 64-node circle of radius 0.2:
    // res = (1/N) Sum c(1 + re^{i theta_k}) re^{i theta_k}.
    cplx acc{0.0, 0.0};
    const int N = 64;
    for (int k = 0; k < N; ++k) {
        const double th = 2.0 * PI * k / N;
        const cplx w = 0.2 * cplx(std::cos(th), std::sin(th));
        acc += lfun::c_scattering(2, 1.0 + w).must() * w;
    }
    const cplx res_measured = acc / static_cast<double>(N);
    const double pinned = -3.0 / PI; // target value this criterion pins
    const double defect = std::abs(res_measured - cplx(pinned, 0.0));
    const double vs_plus = std::abs(res_measured - cplx(3.0 / PI, 0.0));
    const bool res_ok = defect <= 1e-7;

    r.pass = worst_prod <= 1e-10 && res_ok;
    r.detail = "worst |c(s)c(1-s)-1| = " + fmt(worst_prod) +
               " over 50 points; contour residue at s=1 = " +
               fmt(res_measured.real()) + " vs pinned -3/pi (defect " +
               fmt(defect) + "; vs +3/pi defect " + fmt(vs_plus) + ")";

    ordered_json j = report_head(r.name);
    j["points"] = 50;
    j["worst_product_residual"] = worst_prod;
    j["contour_residue_re"] = res_measured.real();
    j["contour_residue_im"] = res_measured.imag();
    j["pinned_residue"] = pinned;
    j["abs_defect_vs_pinned"] = defect;
    j["abs_defect_vs_plus_3_over_pi"] = vs_plus;
    j["note"] =
        "measured residue equals +3/pi = +1/(2 Lambda(2)); near s = 1, "
        "Lambda(2-2s) ~ -1/(2(s-1)) * (-1) = +1/(2(s-1)), so the pinned "
        "sign is not attainable by any correct evaluation";
    seal(r, j);
    return r;
}

// ------------------------------------------------------------- 3: gammapoly

SuiteResult s_gammapoly() {
    SuiteResult r;
    r.name = "gammapoly";

    // Dyadic rationals: every product and sum in both evaluation orders is
    // exact in binary floating point, so equality is bitwise.
    const std::vector<cplx> samples = {
        {0.5, 0.0},    {-0.375, 0.0}, {1.25, 0.0},  {2.0, 0.0},
        {-2.0, 0.0},   {0.1875, 0.0}, {0.75, 0.0},  {0.25, 0.5},
        {-0.625, 0.75}, {1.5, -0.875},
    };
    int checked = 0;
    int failures = 0;
    for (int n = 2; n <= 4; ++n) {
        for (const cplx s : samples) {
            const cplx g1 = lfun::gamma_poly(n, 1, s);
            const cplx g2 = lfun::gamma_poly(n, 2, s);
            const cplx ref2 = s * (1.0 - s);
            if (!(g1 == cplx(0.0, 0.0))) ++failures;
            if (!(g2 == ref2)) ++failures;
            checked += 2;
            if (n >= 3) { // h <= n: the h = 3 layer exists from n = 3 on
                const cplx g3 = lfun::gamma_poly(n, 3, s);
                const cplx ref3 =
                    s * (1.0 - s) * ((static_cast<double>(n) - 2.0) * s + 1.0);
                if (!(g3 == ref3)) ++failures;
                checked += 1;
            }
        }
    }

    r.pass = failures == 0;
    r.detail = "gamma_1 = 0, gamma_2 = s(1-s), gamma_3 = s(1-s)((n-2)s+1): " +
               std::to_string(checked - failures) + "/" + std::to_string(checked) +
               " bit-exact equalities (n = 2,3,4 at 10 dyadic points)";

    ordered_json j = report_head(r.name);
    j["checked"] = checked;
    j["failures"] = failures;
    j["comparison"] = "bitwise equality at dyadic sample points";
    seal(r, j);
    return r;
}

// ------------------------------------------------------------ 4: eisenstein

SuiteResult s_eisenstein(int threads) {
    SuiteResult r;
    r.name = "eisenstein";

    // (a) Fourier evaluation vs coprime-lattice oracle at s = 2.  The oracle
    // partial sums converge like C/M^2, so a two-level Richardson step
    // ((4 V(2M) - V(M))/3) removes the leading tail and leaves O(M^{-3}).
    DetRng rng(7770u);
    struct Sample {
        eis::HPoint z;
    };
    std::vector<Sample> samples;
    for (int i = 0; i < 20; ++i)
        samples.push_back({{rng.uni(-0.5, 0.5), rng.uni(0.8, 1.5)}});
    std::vector<double> oracle_rel(samples.size(), 0.0);
    parallel_for(static_cast<int>(samples.size()), threads, [&](int i) {
        const eis::HPoint z = samples[static_cast<std::size_t>(i)].z;
        const cplx s(2.0, 0.0);
        const cplx fourier = eis::eisenstein(z, s).value;
        const cplx v1 = eis::eisenstein_oracle(z, s, 2500).value;
        const cplx v2 = eis::eisenstein_oracle(z, s, 5000).value;
        const cplx vstar = (4.0 * v2 - v1) / 3.0;
        oracle_rel[static_cast<std::size_t>(i)] =
            std::abs(fourier - vstar) / std::abs(vstar);
    });
    const double worst_oracle =
        *std::max_element(oracle_rel.begin(), oracle_rel.end());

    // (b) Functional equation E(z, s) = c(s) E(z, 1-s) at 50 strip points.
    DetRng rng2(7771u);
    struct FPoint {
        eis::HPoint z;
        cplx s;
    };
    std::vector<FPoint> fpts;
    while (fpts.size() < 50) {
        const cplx s(rng2.uni(0.12, 0.88), rng2.uni(-8.0, 8.0));
        if (std::abs(s - 0.5) < 0.05) continue; // both sides vanish there
        const special::MeroValue cv = lfun::c_scattering(2, s);
        if (cv.pole || lfun::c_scattering(2, 1.0 - s).pole) continue;
        const double mag = std::abs(cv.value);
        if (mag < 1e-2 || mag > 1e2) continue;
        fpts.push_back({{rng2.uni(-0.5, 0.5), rng2.uni(0.75, 2.2)}, s});
    }
    std::vector<double> fe_rel(fpts.size(), 0.0);
    parallel_for(static_cast<int>(fpts.size()), threads, [&](int i) {
        const FPoint& p = fpts[static_cast<std::size_t>(i)];
        const cplx lhs = eis::eisenstein(p.z, p.s).value;
        const cplx rhs = lfun::c_scattering(2, p.s).must() *
                         eis::eisenstein(p.z, 1.0 - p.s).value;
        fe_rel[static_cast<std::size_t>(i)] = rel_diff(lhs, rhs);
    });
    const double worst_fe = *std::max_element(fe_rel.begin(), fe_rel.end());

    // (c) Exact special values E(z, 0) = 1 and E(z, 1/2) = 0.
    DetRng rng3(7772u);
    double worst_zero = 0.0;
    double worst_half = 0.0;
    for (int i = 0; i < 10; ++i) {
        const eis::HPoint z{rng3.uni(-0.5, 0.5), rng3.uni(0.6, 3.0)};
        worst_zero = std::max(
            worst_zero, std::abs(eis::eisenstein(z, cplx(0.0, 0.0)).value - 1.0));
        worst_half =
            std::max(worst_half, std::abs(eis::eisenstein(z, cplx(0.5, 0.0)).value));
    }

    r.pass = worst_oracle < 1e-8 && worst_fe < 1e-8 && worst_zero <= 1e-8 &&
             worst_half <= 1e-8;
    r.detail = "oracle rel (20 pts, s=2) = " + fmt(worst_oracle) +
               "; functional-eq rel (50 pts) = " + fmt(worst_fe) +
               "; |E(z,0)-1| = " + fmt(worst_zero) +
               "; |E(z,1/2)| = " + fmt(worst_half);

    ordered_json j = report_head(r.name);
    j["oracle_points"] = 20;
    j["oracle_M_levels"] = ordered_json::array({2500, 5000});
    j["worst_oracle_rel"] = worst_oracle;
    j["functional_points"] = 50;
    j["worst_functional_rel"] = worst_fe;
    j["worst_E_at_0_defect"] = worst_zero;
    j["worst_E_at_half"] = worst_half;
    seal(r, j);
    return r;
}

// --------------------------------------------------------------- 5: residue

SuiteResult s_residue() {
    SuiteResult r;
    r.name = "residue";

    // res_{s=1} E(z, s) by a 64-node contour of radius 1/4, at two z.
    const std::array<eis::HPoint, 2> zs = {{{0.137, 1.29}, {-0.41, 0.93}}};
    std::array<cplx, 2> res{};
    const int N = 64;
    for (int iz = 0; iz < 2; ++iz) {
        cplx acc{0.0, 0.0};
        for (int k = 0; k < N; ++k) {
            const double th = 2.0 * PI * k / N;
            const cplx w = 0.25 * cplx(std::cos(th), std::sin(th));
            acc += eis::eisenstein(zs[static_cast<std::size_t>(iz)], 1.0 + w).value * w;
        }
        res[static_cast<std::size_t>(iz)] = acc / static_cast<double>(N);
    }
    const double target = 3.0 / PI;
    const double d0 = std::abs(res[0] - cplx(target, 0.0));
    const double d1 = std::abs(res[1] - cplx(target, 0.0));
    const double dz = std::abs(res[0] - res[1]);

    r.pass = d0 <= 1e-6 && d1 <= 1e-6 && dz <= 1e-9;
    r.detail = "contour residue of E at s=1: defects vs 3/pi " + fmt(d0) + ", " +
               fmt(d1) + " at two z; z-dependence " + fmt(dz);

    ordered_json j = report_head(r.name);
    j["target"] = target;
    j["residue_z1_re"] = res[0].real();
    j["residue_z1_im"] = res[0].imag();
    j["residue_z2_re"] = res[1].real();
    j["residue_z2_im"] = res[1].imag();
    j["abs_defect_z1"] = d0;
    j["abs_defect_z2"] = d1;
    j["z_dependence"] = dz;
    seal(r, j);
    return r;
}

// ---------------------------------------------------------------- 6: siegel

SuiteResult s_siegel(int threads) {
    SuiteResult r;
    r.name = "siegel";

    struct Task {
        long long d;
        int cls;
        cplx s;
        double tol;
    };
    const std::array<cplx, 3> sgrid = {cplx(0.75, 0.0), cplx(2.0, 0.0),
                                       cplx(0.5, 3.0)};
    std::vector<Task> tasks;
    for (const cplx s : sgrid) tasks.push_back({-4, 0, s, 1e-6});
    for (const cplx s : sgrid) tasks.push_back({-3, 0, s, 1e-6});
    for (const cplx s : sgrid) tasks.push_back({-20, 0, s, 1e-5});
    for (const cplx s : sgrid) tasks.push_back({-20, 1, s, 1e-5});

    std::vector<double> rels(tasks.size(), 0.0);
    parallel_for(static_cast<int>(tasks.size()), threads, [&](int i) {
        const Task& t = tasks[static_cast<std::size_t>(i)];
        const nfield::QuadraticField K = nfield::make_field(t.d);
        rels[static_cast<std::size_t>(i)] =
            periods::siegel_identity_check(K, t.cls, t.s).rel_error;
    });

    bool ok = true;
    double worst_m4 = 0.0, worst_m3 = 0.0, worst_m20 = 0.0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        ok = ok && rels[i] <= tasks[i].tol;
        if (tasks[i].d == -4) worst_m4 = std::max(worst_m4, rels[i]);
        if (tasks[i].d == -3) worst_m3 = std::max(worst_m3, rels[i]);
        if (tasks[i].d == -20) worst_m20 = std::max(worst_m20, rels[i]);
    }

    r.pass = ok;
    r.detail = "Siegel identity worst rel: d=-4 " + fmt(worst_m4) + ", d=-3 " +
               fmt(worst_m3) + " (tol 1e-6); d=-20 both classes " + fmt(worst_m20) +
               " (tol 1e-5)";

    ordered_json j = report_head(r.name);
    auto arr = ordered_json::array();
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        ordered_json e;
        e["d"] = tasks[i].d;
        e["class_index"] = tasks[i].cls;
        e["s_re"] = tasks[i].s.real();
        e["s_im"] = tasks[i].s.imag();
        e["rel_error"] = rels[i];
        e["tol"] = tasks[i].tol;
        arr.push_back(e);
    }
    j["checks"] = arr;
    j["worst_d_m4"] = worst_m4;
    j["worst_d_m3"] = worst_m3;
    j["worst_d_m20"] = worst_m20;
    seal(r, j);
    return r;
}

// -------------------------------------------------------------- 7: geodesic

SuiteResult s_geodesic() {
    SuiteResult r;
    r.name = "geodesic";

    const nfield::QuadraticField K = nfield::make_field(5);
    const std::vector<cplx> sgrid = {
        {0.60, 0.0}, {0.75, 0.0}, {0.90, 0.0}, {1.10, 0.0},  {1.30, 0.0},
        {0.75, 1.0}, {0.60, 1.8}, {1.10, 1.4}, {0.85, 2.2},  {0.55, 2.8},
    };

    std::vector<cplx> ratios;
    ratios.reserve(sgrid.size());
    for (const cplx s : sgrid) {
        const cplx period = periods::geodesic_period(K, s).value;
        const cplx gr = special::gamma_R(s).must();
        const cplx ref = gr * gr * lfun::dedekind_zeta(K, s).must() *
                         std::exp(0.5 * s * std::log(5.0)) /
                         special::lambda_completed(2.0 * s).must();
        ratios.push_back(period / ref);
    }
    cplx mean{0.0, 0.0};
    for (const cplx q : ratios) mean += q;
    mean /= static_cast<double>(ratios.size());
    double spread = 0.0;
    for (const cplx q : ratios)
        spread = std::max(spread, std::abs(q - mean) / std::abs(mean));
    const double predicted = 1.0 / (2.0 * K.ck); // c_K = 2 log(eps_+) for d = 5
    const double const_rel = std::abs(mean - cplx(predicted, 0.0)) / predicted;

    r.pass = spread < 1e-5 && const_rel < 1e-4;
    r.detail = "d=5 period/reference ratio spread = " + fmt(spread) +
               " over 10 s; mean ratio " + fmt(mean.real()) + " vs 1/(2 c_K) = " +
               fmt(predicted) + " (rel " + fmt(const_rel) + ")";

    ordered_json j = report_head(r.name);
    j["d"] = 5;
    j["s_points"] = static_cast<int>(sgrid.size());
    j["ratio_mean_re"] = mean.real();
    j["ratio_mean_im"] = mean.imag();
    j["ratio_spread_rel"] = spread;
    j["predicted_constant"] = predicted;
    j["constant_rel_error"] = const_rel;
    seal(r, j);
    return r;
}

// ----------------------------------------------------------------- 8: zeros

SuiteResult s_zeros() {
    SuiteResult r;
    r.name = "zeros";

    const nfield::QuadraticField K = nfield::make_field(-4);
    const lfun::HeckeCharacter chi = lfun::trivial_character(K);
    const lfun::ZeroList zl = lfun::find_zeros(K, chi, 15.0, 1e-10);

    const std::array<double, 4> reference = {6.0209489047, 10.2437703042,
                                             12.9880980123, 14.1347251417};
    const bool count_ok = zl.ordinates.size() == 4;
    double worst_resid = 0.0;
    for (const double q : zl.residuals) worst_resid = std::max(worst_resid, q);
    double worst_ref = 0.0;
    if (count_ok)
        for (std::size_t i = 0; i < 4; ++i)
            worst_ref = std::max(worst_ref, std::abs(zl.ordinates[i] - reference[i]));

    r.pass = count_ok && worst_resid < 1e-8 && zl.audit_count == 4 &&
             zl.audit_match && (!count_ok || worst_ref < 1e-6);
    r.detail = "d=-4 trivial chi on [0,15]: " + std::to_string(zl.ordinates.size()) +
               " ordinates (want 4), worst completed residual " + fmt(worst_resid) +
               ", audit count " + std::to_string(zl.audit_count) +
               ", max drift vs reference " + fmt(worst_ref);

    ordered_json j = report_head(r.name);
    j["zerolist"] = ordered_json::parse(lfun::zerolist_to_json(zl));
    j["reference_ordinates"] = reference;
    j["worst_residual"] = worst_resid;
    j["worst_reference_drift"] = worst_ref;
    seal(r, j);
    return r;
}

// -------------------------------------------------------------- 9: toroidal

SuiteResult s_toroidal() {
    SuiteResult r;
    r.name = "toroidal";

    const nfield::QuadraticField K = nfield::make_field(-4);
    const lfun::HeckeCharacter chi = lfun::trivial_character(K);
    const lfun::ZeroList zl = lfun::find_zeros(K, chi, 15.0, 1e-10);
    if (zl.ordinates.size() < 2)
        throw std::runtime_error("toroidal suite: zero scan found fewer than 2 zeros");
    const double tol = 1e-6;

    const spectral::WavePacket p_two = spectral::make_packet(
        {{cplx(0.5, zl.ordinates[0]), cplx(1.0, 0.0)},
         {cplx(0.5, zl.ordinates[1]), cplx(0.7, 0.0)}});
    const spectral::WavePacket p_one =
        spectral::make_packet({{cplx(0.5, zl.ordinates[0]), cplx(1.0, 0.0)}});
    const spectral::WavePacket p_ctrl =
        spectral::make_packet({{cplx(0.75, 0.0), cplx(1.0, 0.0)}});

    const spectral::ToroidalityReport rep_two =
        spectral::toroidality_test(p_two, K, chi, zl, tol);
    const spectral::ToroidalityReport rep_one =
        spectral::toroidality_test(p_one, K, chi, zl, tol);
    const spectral::ToroidalityReport rep_ctrl =
        spectral::toroidality_test(p_ctrl, K, chi, zl, tol);

    auto ratio_closed = [](const spectral::ToroidalityReport& q) {
        return std::abs(q.period_closed_form) / q.scale;
    };
    auto ratio_direct = [](const spectral::ToroidalityReport& q) {
        return std::abs(q.period_direct) / q.scale;
    };
    const double worst_zero_ratio =
        std::max({ratio_closed(rep_two), ratio_direct(rep_two),
                  ratio_closed(rep_one), ratio_direct(rep_one)});
    const double ctrl_ratio = std::min(ratio_closed(rep_ctrl), ratio_direct(rep_ctrl));
    const double margin = ctrl_ratio / std::max(worst_zero_ratio, 1e-300);

    const bool zero_ok = rep_two.is_toroidal && rep_two.spectrum_in_zeros &&
                         rep_two.biconditional_ok && rep_two.methods_consistent &&
                         rep_one.is_toroidal && rep_one.spectrum_in_zeros &&
                         rep_one.biconditional_ok && rep_one.methods_consistent;
    const bool ctrl_ok = !rep_ctrl.is_toroidal && !rep_ctrl.spectrum_in_zeros &&
                         rep_ctrl.biconditional_ok && rep_ctrl.methods_consistent &&
                         ctrl_ratio > 1e-2;

    r.pass = zero_ok && ctrl_ok && worst_zero_ratio < tol && margin > 1e3;
    r.detail = "zero-supported packets: worst |period|/scale = " +
               fmt(worst_zero_ratio) + " (both paths); control at s=0.75: " +
               fmt(ctrl_ratio) + "; margin " + fmt(margin);

    ordered_json j = report_head(r.name);
    j["tol"] = tol;
    j["packet_two_zeros"] =
        ordered_json::parse(spectral::toroidality_report_json(rep_two, K.d, chi.name, tol));
    j["packet_one_zero"] =
        ordered_json::parse(spectral::toroidality_report_json(rep_one, K.d, chi.name, tol));
    j["packet_control"] =
        ordered_json::parse(spectral::toroidality_report_json(rep_ctrl, K.d, chi.name, tol));
    j["worst_zero_ratio"] = worst_zero_ratio;
    j["control_ratio"] = ctrl_ratio;
    j["margin"] = margin;
    seal(r, j);
    return r;
}

// --------------------------------------------------------- 10: maass-selberg

SuiteResult s_maass_selberg() {
    SuiteResult r;
    r.name = "maass-selberg";

    // (a) Calibration: Int_F |Lambda^T 1|^2 dmu = pi/3 - 1/T at T = 10.  The
    // integrand is piecewise constant, so the default (tight) spec is cheap.
    const double T0 = 10.0;
    auto fcal = [&](double x, double y) -> cplx {
        const double v = eis::truncate_one({x, y}, T0);
        return cplx(v * v, 0.0);
    };
    const eis::FdResult cal = eis::fd_integrate(fcal, T0 + 2.0, {T0});
    const double cal_target = PI / 3.0 - 1.0 / T0;
    const double cal_defect = std::abs(cal.value.real() - cal_target) +
                              std::abs(cal.value.imag());

    // (b) Off-diagonal critical-line pairing at T = 50 vs the exact
    // Maass-Selberg value (degenerate s1 + s2 = 1 branch).
    const special::QuadratureSpec ms_spec{8, 0.25, 48, 1e-9};
    const eis::MSCheck off =
        eis::maass_selberg_check(cplx(0.5, 5.0), cplx(0.5, -5.0), 50.0, ms_spec);

    // (c) Diagonal growth at Re s = 0.7: I(T) = T^p/p + b log T + c + d T^{-p}
    // with p = 2 sigma - 1 = 0.4.  Six T samples over-determine the fit, and
    // the exponent is recovered by golden-section search on the least-squares
    // residual.
    const std::array<double, 6> Ts = {10.0, 15.0, 24.0, 38.0, 60.0, 95.0};
    std::array<double, 6> Is{};
    std::array<double, 6> rhs_rel{};
    for (std::size_t i = 0; i < Ts.size(); ++i) {
        const eis::MSCheck ck = eis::maass_selberg_check(
            cplx(0.7, 0.0), cplx(0.7, 0.0), Ts[i], ms_spec);
        Is[i] = ck.lhs.real();
        rhs_rel[i] = ck.rel_error;
    }
    auto sse_for = [&](double p) {
        // Normal equations for basis {T^p, log T, 1, T^{-p}}.
        double G[4][5] = {};
        for (std::size_t i = 0; i < Ts.size(); ++i) {
            const double phi[4] = {std::pow(Ts[i], p), std::log(Ts[i]), 1.0,
                                   std::pow(Ts[i], -p)};
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) G[a][b] += phi[a] * phi[b];
                G[a][4] += phi[a] * Is[i];
            }
        }
        // Gaussian elimination with partial pivoting.
        for (int col = 0; col < 4; ++col) {
            int piv = col;
            for (int row = col + 1; row < 4; ++row)
                if (std::abs(G[row][col]) > std::abs(G[piv][col])) piv = row;
            for (int k = 0; k < 5; ++k) std::swap(G[col][k], G[piv][k]);
            for (int row = col + 1; row < 4; ++row) {
                const double f = G[row][col] / G[col][col];
                for (int k = col; k < 5; ++k) G[row][k] -= f * G[col][k];
            }
        }
        double coef[4];
        for (int row = 3; row >= 0; --row) {
            double acc = G[row][4];
            for (int k = row + 1; k < 4; ++k) acc -= G[row][k] * coef[k];
            coef[row] = acc / G[row][row];
        }
        double sse = 0.0;
        for (std::size_t i = 0; i < Ts.size(); ++i) {
            const double fit = coef[0] * std::pow(Ts[i], p) +
                               coef[1] * std::log(Ts[i]) + coef[2] +
                               coef[3] * std::pow(Ts[i], -p);
            sse += (fit - Is[i]) * (fit - Is[i]);
        }
        return std::pair<double, double>(sse, coef[0]);
    };
    double lo = 0.25, hi = 0.55;
    const double gr = 0.6180339887498949;
    double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
    double f1 = sse_for(c1).first, f2 = sse_for(c2).first;
    for (int it = 0; it < 80; ++it) {
        if (f1 <= f2) {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - gr * (hi - lo);
            f1 = sse_for(c1).first;
        } else {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + gr * (hi - lo);
            f2 = sse_for(c2).first;
        }
    }
    const double p_fit = 0.5 * (lo + hi);
    const auto [sse_at_fit, lead_coef] = sse_for(p_fit);
    const double p_defect = std::abs(p_fit - 0.4);
    const double lead_rel = std::abs(lead_coef - 2.5) / 2.5;

    r.pass = cal_defect <= 1e-8 && off.rel_error < 0.02 && p_defect <= 0.02;
    r.detail = "calibration |I - (pi/3 - 1/10)| = " + fmt(cal_defect) +
               "; off-diagonal rel vs exact = " + fmt(off.rel_error) +
               " at T=50; fitted diagonal exponent " + fmt(p_fit) +
               " (target 0.4, leading coefficient " + fmt(lead_coef) + ")";

    ordered_json j = report_head(r.name);
    j["calibration_T"] = T0;
    j["calibration_value"] = cal.value.real();
    j["calibration_target"] = cal_target;
    j["calibration_abs_defect"] = cal_defect;
    j["offdiag_lhs_re"] = off.lhs.real();
    j["offdiag_lhs_im"] = off.lhs.imag();
    j["offdiag_rhs_re"] = off.rhs.real();
    j["offdiag_rhs_im"] = off.rhs.imag();
    j["offdiag_rel_error"] = off.rel_error;
    j["diagonal_T"] = Ts;
    j["diagonal_I"] = Is;
    j["diagonal_rhs_rel"] = rhs_rel;
    j["fit_exponent"] = p_fit;
    j["fit_exponent_defect"] = p_defect;
    j["fit_sse"] = sse_at_fit;
    j["fit_leading_coefficient"] = lead_coef;
    j["fit_leading_rel_vs_2p5"] = lead_rel;
    seal(r, j);
    return r;
}

// ------------------------------------------------------------ 11: besicovitch

SuiteResult s_besicovitch() {
    SuiteResult r;
    r.name = "besicovitch";

    const spectral::WavePacket p5 =
        spectral::make_packet({{cplx(0.5, 5.0), cplx(1.0, 0.0)}});
    const spectral::WavePacket p3 =
        spectral::make_packet({{cplx(0.5, 3.0), cplx(1.0, 0.0)}});

    const spectral::BesicovitchResult same = spectral::besicovitch_inner(p5, p5);
    const spectral::BesicovitchResult cross = spectral::besicovitch_inner(p3, p5);

    // The pinned gates read the m = 100 estimate: the Maass-Selberg
    // asymptotics carry oscillatory O(1/log m) terms (frequencies from the
    // atom ordinates), so the three raw samples are non-monotone and the
    // two-parameter 1/log m extrapolation can land farther from the limit
    // than any raw value.  Both are reported; the m = 100 value is gated.
    const double a_defect = std::abs(same.path_a - cplx(0.5, 0.0));
    const double b_rel = std::abs(same.path_b_raw[2] - cplx(0.5, 0.0)) / 0.5;
    const double cross_a = std::abs(cross.path_a);
    const double cross_b = std::abs(cross.path_b_raw[2]);

    r.pass = a_defect <= 1e-14 && b_rel <= 0.05 && cross_a <= 1e-14 &&
             cross_b < 0.05;
    r.detail = "single atom t=5: path A defect " + fmt(a_defect) +
               ", path B at m=100 = " + fmt(same.path_b_raw[2].real()) +
               " (rel vs 1/2 " + fmt(b_rel) + "); cross t=3,5: |path B at m=100| = " +
               fmt(cross_b);

    ordered_json j = report_head(r.name);
    j["same_path_a_re"] = same.path_a.real();
    j["same_path_a_im"] = same.path_a.imag();
    j["same_path_b_re"] = same.path_b.real();
    j["same_path_b_im"] = same.path_b.imag();
    auto raw = ordered_json::array();
    for (int k = 0; k < 3; ++k) {
        ordered_json e;
        e["m"] = same.m_values[static_cast<std::size_t>(k)];
        e["re"] = same.path_b_raw[static_cast<std::size_t>(k)].real();
        e["im"] = same.path_b_raw[static_cast<std::size_t>(k)].imag();
        raw.push_back(e);
    }
    j["same_path_b_raw"] = raw;
    j["same_path_b_m100_rel_vs_half"] = b_rel;
    j["cross_path_a_abs"] = cross_a;
    j["cross_path_b_extrapolated_abs"] = std::abs(cross.path_b);
    auto craw = ordered_json::array();
    for (int k = 0; k < 3; ++k) {
        ordered_json e;
        e["m"] = cross.m_values[static_cast<std::size_t>(k)];
        e["re"] = cross.path_b_raw[static_cast<std::size_t>(k)].real();
        e["im"] = cross.path_b_raw[static_cast<std::size_t>(k)].imag();
        craw.push_back(e);
    }
    j["cross_path_b_raw"] = craw;
    j["cross_path_b_m100_abs"] = cross_b;
    seal(r, j);
    return r;
}

// ----------------------------------------------------------------- 12: kernel

SuiteResult s_kernel() {
    SuiteResult r;
    r.name = "kernel";

    const eis::PointPairKernel ker = eis::gaussian_pair_kernel(3.0);
    const eis::KernelApply ka = eis::apply_kernel(ker, {0.0, 1.0}, 4.0);

    // The spectral multiplier u~(s) = exp((s - 1/2)^2 / a^2) restricts to
    // h(t) = exp(-(t/a)^2) on the critical line and is s <-> 1-s symmetric.
    auto u_tilde = [](cplx s) { return std::exp((s - 0.5) * (s - 0.5) / 9.0); };
    const std::array<cplx, 10> samples = {
        cplx(0.30, 2.0),  cplx(0.45, 7.5),  cplx(0.70, -3.2), cplx(0.50, 11.0),
        cplx(0.90, 0.4),  cplx(-0.20, 5.5), cplx(1.20, -6.0), cplx(0.05, 9.9),
        cplx(0.62, -12.3), cplx(0.37, 15.0)};
    double sym_resid = 0.0;
    for (const cplx s : samples) {
        const cplx a = u_tilde(s);
        const cplx b = u_tilde(1.0 - s);
        sym_resid = std::max(sym_resid,
                             std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
    const double h_defect = std::abs(ker.h_of_t(4.0) - std::exp(-16.0 / 9.0));

    r.pass = ka.rel_dev < 1e-4 && sym_resid < 1e-8;
    r.detail = "apply_kernel at (i, t=4), a=3: rel deviation " + fmt(ka.rel_dev) +
               "; u~ symmetry residual " + fmt(sym_resid) +
               "; |h(4) - exp(-16/9)| = " + fmt(h_defect);

    ordered_json j = report_head(r.name);
    j["a"] = 3.0;
    j["t"] = 4.0;
    j["applied_re"] = ka.applied.real();
    j["applied_im"] = ka.applied.imag();
    j["predicted_re"] = ka.predicted.real();
    j["predicted_im"] = ka.predicted.imag();
    j["rel_deviation"] = ka.rel_dev;
    j["u_symmetry_residual"] = sym_resid;
    j["h4_vs_exact_gaussian"] = h_defect;
    seal(r, j);
    return r;
}

// ------------------------------------------------------------------ 13: trace

SuiteResult s_trace() {
    SuiteResult r;
    r.name = "trace";

    const nfield::QuadraticField K = nfield::make_field(-4);
    const lfun::HeckeCharacter chi = lfun::trivial_character(K);
    const lfun::ZeroList zl = lfun::find_zeros(K, chi, 40.0, 1e-10);

    const spectral::EpsilonDecision eps = spectral::epsilon_flag(K, chi);
    auto u_tilde = [](cplx s) { return std::exp((s - 0.5) * (s - 0.5) / 64.0); };
    const spectral::TraceResult path_a =
        spectral::trace_formula(zl, eps.epsilon, u_tilde);

    const eis::PointPairKernel ker = eis::gaussian_pair_kernel(8.0);
    double path_b = (eps.epsilon == 1) ? ker.h_of_t(0.0) : 0.0;
    for (const double g : zl.ordinates) path_b += ker.h_of_t(g);

    const double rel =
        std::abs(path_a.value - cplx(path_b, 0.0)) / std::abs(path_a.value);

    r.pass = rel <= 1e-6 && eps.epsilon == 0 && eps.lambda_half_mag > 1e-6 &&
             path_a.tail_ok;
    r.detail = "eigenvalue path " + fmt(path_a.value.real()) + " vs kernel path " +
               fmt(path_b) + " (rel " + fmt(rel) + ") over " +
               std::to_string(zl.ordinates.size()) +
               " zeros to 40; epsilon = " + std::to_string(eps.epsilon) +
               " with |Lambda_K(1/2)| = " + fmt(eps.lambda_half_mag);

    ordered_json j = report_head(r.name);
    j["zeros_used"] = static_cast<int>(zl.ordinates.size());
    j["t_max"] = zl.t_max;
    j["epsilon"] = eps.epsilon;
    j["lambda_half_mag"] = eps.lambda_half_mag;
    j["epsilon_warning_band"] = eps.warning_band;
    j["path_eigenvalues_re"] = path_a.value.real();
    j["path_eigenvalues_im"] = path_a.value.imag();
    j["path_kernel"] = path_b;
    j["rel_difference"] = rel;
    j["tail_estimate"] = path_a.tail_estimate;
    j["tail_ok"] = path_a.tail_ok;
    j["symmetry_residual"] = path_a.symmetry_residual;
    seal(r, j);
    return r;
}

// ----------------------------------------------------------------- 14: connes

SuiteResult s_connes() {
    SuiteResult r;
    r.name = "connes";

    const nfield::QuadraticField K = nfield::make_field(-4);
    const lfun::HeckeCharacter chi = lfun::trivial_character(K);
    const lfun::ZeroList zl = lfun::find_zeros(K, chi, 15.0, 1e-10);
    if (zl.ordinates.empty())
        throw std::runtime_error("connes suite: empty zero scan");
    const double g1 = zl.ordinates[0];

    spectral::ConnesDistribution order0;
    order0.points.push_back({g1, 0, cplx(1.0, 0.0)});
    spectral::ConnesDistribution order1;
    order1.points.push_back({g1, 1, cplx(1.0, 0.0)});
    const spectral::ConnesDistribution empty;

    const bool pass0 = spectral::connes_test(order0, K, chi, zl);
    const bool pass1 = spectral::connes_test(order1, K, chi, zl);
    const bool passe = spectral::connes_test(empty, K, chi, zl);

    r.pass = pass0 && !pass1 && passe;
    r.detail = std::string("order-0 mass at gamma_1: ") +
               (pass0 ? "vanishes" : "DOES NOT vanish") +
               "; order-1 at the same simple zero: " +
               (pass1 ? "unexpectedly vanishes" : "correctly rejected") +
               "; empty distribution: " + (passe ? "passes" : "FAILS");

    ordered_json j = report_head(r.name);
    j["gamma_1"] = g1;
    j["order0_passes"] = pass0;
    j["order1_passes"] = pass1;
    j["empty_passes"] = passe;
    seal(r, j);
    return r;
}

// ------------------------------------------------------------ 15: determinism

SuiteResult s_determinism(int threads) {
    SuiteResult r;
    r.name = "determinism";

    // Only these four suites consume the thread-count parameter anywhere in
    // their computation; every other suite's runner takes no thread input at
    // all (see run_suite), so those reports are thread-invariant by
    // construction.  The four that do thread are re-run at two different
    // counts and compared byte for byte.
    const std::vector<std::string> compared = {"lambda", "scattering",
                                               "eisenstein", "siegel"};
    const std::vector<std::string> invariant = {
        "gammapoly", "residue",     "geodesic", "zeros",  "toroidal",
        "maass-selberg", "besicovitch", "kernel",   "trace",  "connes"};
    const int t_lo = 1;
    const int t_hi = threads >= 2 ? threads : 3;

    bool all_same = true;
    auto arr = ordered_json::array();
    std::string first_diff;
    for (const std::string& name : compared) {
        const SuiteResult a = run_suite(name, t_lo);
        const SuiteResult b = run_suite(name, t_hi);
        const bool same = a.report_json == b.report_json;
        all_same = all_same && same;
        if (!same && first_diff.empty()) first_diff = name;
        ordered_json e;
        e["suite"] = name;
        e["byte_identical"] = same;
        e["bytes"] = static_cast<long long>(a.report_json.size());
        arr.push_back(e);
    }

    r.pass = all_same;
    r.detail = all_same
                   ? ("4 threaded suites byte-identical at thread counts {" +
                      std::to_string(t_lo) + "," + std::to_string(t_hi) +
                      "}; remaining 10 take no thread input (invariant by construction)")
                   : ("suite '" + first_diff + "' differs between thread counts " +
                      std::to_string(t_lo) + " and " + std::to_string(t_hi));

    ordered_json j = report_head(r.name);
    j["thread_counts"] = ordered_json::array({t_lo, t_hi});
    j["compared"] = arr;
    j["invariant_by_construction"] = invariant;
    seal(r, j);
    return r;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "lambda",   "scattering",    "gammapoly",   "eisenstein", "residue",
        "siegel",   "geodesic",      "zeros",       "toroidal",   "maass-selberg",
        "besicovitch", "kernel",     "trace",       "connes",     "determinism"};
    return names;
}

SuiteResult run_suite(const std::string& name, int threads) {
    if (threads < 1 || threads > 64)
        throw std::invalid_argument("run_suite: threads must be in [1, 64]");
    if (name == "lambda") return s_lambda(threads);
    if (name == "scattering") return s_scattering(threads);
    if (name == "gammapoly") return s_gammapoly();
    if (name == "eisenstein") return s_eisenstein(threads);
    if (name == "residue") return s_residue();
    if (name == "siegel") return s_siegel(threads);
    if (name == "geodesic") return s_geodesic();
    if (name == "zeros") return s_zeros();
    if (name == "toroidal") return s_toroidal();
    if (name == "maass-selberg") return s_maass_selberg();
    if (name == "besicovitch") return s_besicovitch();
    if (name == "kernel") return s_kernel();
    if (name == "trace") return s_trace();
    if (name == "connes") return s_connes();
    if (name == "determinism") return s_determinism(threads);
    throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
}

} // namespace torlab::verify
