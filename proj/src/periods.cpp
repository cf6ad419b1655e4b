#include "torlab/periods.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace torlab::periods {

namespace {

void require_imaginary(const nfield::QuadraticField& K, const char* who) {
    if (K.d >= 0) throw std::invalid_argument(std::string(who) + ": need d < 0");
}

cplx pow_cplx(double base, cplx e) { return std::exp(e * std::log(base)); }

} // namespace

PeriodResult heegner_period(const nfield::QuadraticField& K,
                            const lfun::HeckeCharacter& chi, cplx s) {
    require_imaginary(K, "heegner_period");
    if (static_cast<int>(chi.class_values.size()) != K.h)
        throw std::invalid_argument("heegner_period: character/class mismatch");
    PeriodResult out;
    out.method = PeriodMethod::heegner_sum;
    cplx acc{0.0, 0.0};
    double err = 0.0;
    for (const auto& cl : K.classes) {
        const cplx zA = nfield::heegner_point(cl.form);
        const eis::EisEval ev = eis::eisenstein({zA.real(), zA.imag()}, s);
        if (ev.pole) throw std::domain_error("heegner_period: E has a pole at s");
        const double w = chi.class_values[cl.index]; // real characters: conj = id
        acc += w * ev.value;
        err += std::abs(w) * ev.error_estimate;
    }
    out.value = acc / static_cast<double>(K.h);
    out.err = err / static_cast<double>(K.h);
    return out;
}

PeriodResult geodesic_period(const nfield::QuadraticField& K, cplx s) {
    if (K.d <= 0) throw std::invalid_argument("geodesic_period: need d > 0");
    if (K.h != 1)
        throw std::invalid_argument("geodesic_period: restricted to class number 1");
    const nfield::GeodesicSegment geo =
        nfield::closed_geodesic(K, K.classes.front().form);
    const double ell = geo.length;

    // E(z(t), s) is smooth and ell-periodic along the closed geodesic, so the
    // periodic trapezoid rule converges spectrally; double until stable.
    auto level = [&](int n, double* everr) -> cplx {
        cplx acc{0.0, 0.0};
        double ee = 0.0;
        for (int i = 0; i < n; ++i) {
            const cplx z = geo.point(ell * i / n);
            const eis::EisEval ev = eis::eisenstein({z.real(), z.imag()}, s);
            if (ev.pole) throw std::domain_error("geodesic_period: E has a pole at s");
            acc += ev.value;
            ee += ev.error_estimate;
        }
        if (everr) *everr = ee / n;
        return acc / static_cast<double>(n);
    };

    PeriodResult out;
    out.method = PeriodMethod::geodesic_quadrature;
    double everr = 0.0;
    cplx cur = level(32, nullptr);
    double delta = std::abs(cur);
    for (int n = 64; n <= 2048; n *= 2) {
        const cplx next = level(n, &everr);
        delta = std::abs(next - cur);
        cur = next;
        if (delta <= 1e-12 * std::max(1.0, std::abs(cur))) break;
    }
    out.value = cur; // trapezoid mean = (1/ell) Int_0^ell E dt
    out.err = delta + everr;
    if (delta > 1e-8 * std::max(1.0, std::abs(cur)))
        throw std::runtime_error("geodesic_period: quadrature failed to converge");
    return out;
}

HFunctionEval h_closed_form(const nfield::QuadraticField& K,
                            const lfun::HeckeCharacter& chi, cplx s) {
    HFunctionEval out;
    out.s = s;
    out.chi_name = chi.name;
    const MeroValue g = lfun::gamma_factor(K, chi, s);
    const MeroValue lam = special::lambda_completed(2.0 * s);
    const cplx pref = pow_cplx(std::abs(static_cast<double>(K.d)), 0.5 * s) /
                      (2.0 * K.ck);

    const int ord_g = g.pole ? g.order : 0;
    const int ord_l = lam.pole ? lam.order : 0;
    const int net = ord_g - ord_l; // pole order of Gamma(s,chi)/Lambda(2s)
    if (net > 0) {
        out.pole_flag = true;
        return out;
    }
    if (net < 0) { // zero of H (Lambda pole uncancelled)
        out.value = {0.0, 0.0};
        return out;
    }
    if (ord_g > 0) {
        // Simple/simple cancellation: Gamma ~ res_g/(s-s0), Lambda(2s) ~
        // res_l/(2(s-s0)); ratio -> 2 res_g / res_l.
        out.value = pref * 2.0 * g.residue / lam.residue;
        return out;
    }
    if (std::abs(lam.value) < 1e-12) { // the set R_2: genuine pole of H
        out.pole_flag = true;
        return out;
    }
    out.value = pref * g.value / lam.value;
    return out;
}

SiegelCheck siegel_identity_check(const nfield::QuadraticField& K, int class_index,
                                  cplx s) {
    require_imaginary(K, "siegel_identity_check");
    if (class_index < 0 || class_index >= K.h)
        throw std::invalid_argument("siegel_identity_check: class index out of range");
    if (std::abs(s) < 1e-12 || std::abs(s - cplx(1.0, 0.0)) < 1e-12)
        throw std::domain_error("siegel_identity_check: s = 0, 1 excluded");

    const auto chars = lfun::real_class_characters(K); // throws when not 2-torsion

    const cplx zA = nfield::heegner_point(K.classes[class_index].form);
    const eis::EisEval ev = eis::eisenstein({zA.real(), zA.imag()}, s);
    if (ev.pole) throw std::domain_error("siegel_identity_check: E pole at s");
    const cplx lam2s = special::lambda_completed(2.0 * s).must();

    SiegelCheck out;
    out.lhs = 2.0 * lam2s * ev.value;
    cplx rhs{0.0, 0.0};
    for (const auto& chi : chars) {
        const cplx gamma = lfun::gamma_factor(K, chi, s).must();
        const cplx lval = lfun::hecke_l(K, chi, s).must();
        rhs += gamma * lval * chi.class_values[class_index];
    }
    out.rhs = rhs * pow_cplx(std::abs(static_cast<double>(K.d)), 0.5 * s) / K.ck;
    out.rel_error = std::abs(out.lhs - out.rhs) /
                    std::max({std::abs(out.lhs), std::abs(out.rhs), 1e-300});
    return out;
}

double eigen_consistency(const nfield::QuadraticField& K,
                         const lfun::HeckeCharacter& chi, cplx s, double step) {
    require_imaginary(K, "eigen_consistency");
    cplx lap{0.0, 0.0};
    for (const auto& cl : K.classes) {
        const cplx zA = nfield::heegner_point(cl.form);
        lap += chi.class_values[cl.index] *
               eis::fd_laplacian_eis({zA.real(), zA.imag()}, s, step);
    }
    lap /= static_cast<double>(K.h);
    const cplx ev = s * (1.0 - s) * heegner_period(K, chi, s).value;
    return std::abs(lap - ev) / std::max(std::abs(ev), 1e-6);
}

std::string periods_report_json(const nfield::QuadraticField& K,
                                const lfun::HeckeCharacter& chi,
                                const std::vector<cplx>& s_grid) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["d"] = K.d;
    j["chi"] = chi.name;
    auto sg = nlohmann::ordered_json::array();
    auto lhs = nlohmann::ordered_json::array();
    auto rhs = nlohmann::ordered_json::array();
    auto rel = nlohmann::ordered_json::array();
    cplx ratio_acc{0.0, 0.0};
    int ratio_n = 0;
    for (const cplx s : s_grid) {
        const PeriodResult pr = (K.d < 0) ? heegner_period(K, chi, s)
                                          : geodesic_period(K, s);
        const HFunctionEval H = h_closed_form(K, chi, s);
        const cplx lv = lfun::hecke_l(K, chi, s).must();
        const cplx closed = H.value * lv;
        sg.push_back({{"re", s.real()}, {"im", s.imag()}});
        lhs.push_back({{"re", pr.value.real()}, {"im", pr.value.imag()}});
        rhs.push_back({{"re", closed.real()}, {"im", closed.imag()}});
        rel.push_back(std::abs(pr.value - closed) /
                      std::max({std::abs(pr.value), std::abs(closed), 1e-300}));
        if (std::abs(closed) > 1e-12) {
            ratio_acc += pr.value / closed;
            ++ratio_n;
        }
    }
    j["s_grid"] = sg;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["rel_errors"] = rel;
    const cplx fit = ratio_n ? ratio_acc / static_cast<double>(ratio_n) : cplx{0.0, 0.0};
    j["constant_fit"] = {{"re", fit.real()}, {"im", fit.imag()}};
    return j.dump(2) + "\n";
}

} // namespace torlab::periods
