#include "torlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace torlab::spectral {

namespace {

constexpr double PI = 3.14159265358979323846;
constexpr double MERGE_EPS = 1e-12;

bool on_critical_line(cplx s) { return std::abs(s.real() - 0.5) < MERGE_EPS; }

void require_principal(const WavePacket& p, const char* who) {
    if (!is_principal(p))
        throw std::invalid_argument(std::string(who) + ": packet must be principal "
                                    "(all atoms on the critical line)");
}

// Coefficient lookup at a spectral point (0 when absent).
cplx coeff_at(const WavePacket& p, cplx s) {
    for (const auto& at : p.atoms)
        if (std::abs(at.s - s) < 1e-9) return at.a;
    return {0.0, 0.0};
}

} // namespace

WavePacket make_packet(const std::vector<Atom>& atoms, PacketSymmetry symmetry) {
    WavePacket p;
    p.symmetry = symmetry;
    for (const auto& at : atoms) {
        if (std::abs(at.s.imag()) > 35.0 || at.s.real() < -2.0 || at.s.real() > 3.0)
            throw std::invalid_argument("make_packet: atom outside spectral window");
        if (lfun::c_scattering(2, at.s).pole)
            throw std::invalid_argument(
                "make_packet: atom at a pole of E (s = 1 or the set R_2)");
        bool merged = false;
        for (auto& prev : p.atoms) {
            if (std::abs(prev.s - at.s) < MERGE_EPS) {
                prev.a += at.a;
                merged = true;
                break;
            }
        }
        if (!merged) p.atoms.push_back(at);
    }
    return p;
}

bool is_principal(const WavePacket& p) {
    return std::all_of(p.atoms.begin(), p.atoms.end(),
                       [](const Atom& at) { return on_critical_line(at.s); });
}

cplx ev_packet(const WavePacket& p, eis::HPoint z) {
    cplx acc{0.0, 0.0};
    for (const auto& at : p.atoms) acc += at.a * eis::eisenstein(z, at.s).value;
    return acc;
}

WavePacket symmetrize(const WavePacket& p) {
    std::vector<Atom> out;
    for (const auto& at : p.atoms) {
        const cplx refl = 1.0 - at.s;
        const MeroValue c_at_s = lfun::c_scattering(2, at.s);
        if (c_at_s.pole)
            throw std::invalid_argument("symmetrize: atom at a pole of c");
        // mu+(s0) picks up a_{s0}/2; mu+(1-s0) picks up c(s0) a_{s0}/2.
        out.push_back({at.s, 0.5 * at.a});
        out.push_back({refl, 0.5 * c_at_s.value * at.a});
    }
    WavePacket sym = make_packet(out, PacketSymmetry::plus_normalized);
    return sym;
}

ToroidalityReport toroidality_test(const WavePacket& p,
                                   const nfield::QuadraticField& K,
                                   const lfun::HeckeCharacter& chi,
                                   const lfun::ZeroList& zeros, double tol) {
    ToroidalityReport rep;
    if (p.atoms.empty()) { // vacuously toroidal
        rep.is_toroidal = true;
        rep.spectrum_in_zeros = true;
        rep.biconditional_ok = true;
        return rep;
    }

    // Closed-form path: Sum_j a_j H(s_j) L(s_j); scale makes it dimensionless.
    double scale = 0.0;
    double closed_err = 0.0;
    cplx closed{0.0, 0.0};
    for (const auto& at : p.atoms) {
        const periods::HFunctionEval H = periods::h_closed_form(K, chi, at.s);
        if (H.pole_flag)
            throw std::domain_error("toroidality_test: H pole at an atom");
        const cplx lv = lfun::hecke_l(K, chi, at.s).must();
        closed += at.a * H.value * lv;
        double lscale = 1.0;
        for (const cplx off : {cplx(0.05, 0.0), cplx(-0.05, 0.0), cplx(0.0, 0.05),
                               cplx(0.0, -0.05)})
            lscale = std::max(lscale, std::abs(lfun::hecke_l(K, chi, at.s + off).must()));
        scale += std::abs(at.a) * std::abs(H.value) * lscale;
        closed_err += std::abs(at.a) * std::abs(H.value) * 1e-10;
    }
    if (scale <= 0.0) scale = 1.0;
    rep.scale = scale;
    rep.period_closed_form = closed;

    // Direct path: the period functional applied to packet values.
    double direct_err = 0.0;
    if (K.d < 0) {
        cplx acc{0.0, 0.0};
        for (const auto& cl : K.classes) {
            const cplx zA = nfield::heegner_point(cl.form);
            acc += chi.class_values[cl.index] * ev_packet(p, {zA.real(), zA.imag()});
        }
        rep.period_direct = acc / static_cast<double>(K.h);
        for (const auto& at : p.atoms)
            direct_err += std::abs(at.a) * 1e-10; // Eisenstein evaluation floor
    } else {
        cplx acc{0.0, 0.0};
        double err = 0.0;
        for (const auto& at : p.atoms) {
            const periods::PeriodResult pr = periods::geodesic_period(K, at.s);
            acc += at.a * pr.value;
            err += std::abs(at.a) * pr.err;
        }
        rep.period_direct = acc;
        direct_err = err;
    }

    const double ra = std::abs(rep.period_closed_form) / scale;
    const double rb = std::abs(rep.period_direct) / scale;
    rep.is_toroidal = (ra < tol) && (rb < tol);
    rep.methods_consistent =
        std::abs(rep.period_closed_form - rep.period_direct) <=
        100.0 * (closed_err + direct_err) + tol * scale;

    rep.spectrum_in_zeros = true;
    for (const auto& at : p.atoms) {
        if (!on_critical_line(at.s)) {
            rep.spectrum_in_zeros = false;
            break;
        }
        const double t = std::abs(at.s.imag());
        bool near = false;
        for (const double g : zeros.ordinates)
            if (std::abs(t - g) < 1e-6) { near = true; break; }
        if (!near) {
            rep.spectrum_in_zeros = false;
            break;
        }
    }
    rep.biconditional_ok = (rep.is_toroidal == rep.spectrum_in_zeros);
    return rep;
}

BesicovitchResult besicovitch_inner(const WavePacket& p1, const WavePacket& p2,
                                    const special::QuadratureSpec& mean_spec) {
    require_principal(p1, "besicovitch_inner");
    require_principal(p2, "besicovitch_inner");
    BesicovitchResult out;

    // Path A: canonical coefficients a_t = (b_t + b_{-t} c(1/2 - it))/2,
    // inner product = a_0^1 conj(a_0^2) + 2 Sum_{t > 0} a_t^1 conj(a_t^2).
    auto canon = [](const WavePacket& p, double t) -> cplx {
        const cplx s(0.5, t);
        const cplx b_plus = coeff_at(p, s);
        const cplx b_minus = coeff_at(p, 1.0 - s);
        const cplx c_ref = lfun::c_scattering(2, 1.0 - s).must(); // c(1/2 - it)
        return 0.5 * (b_plus + b_minus * c_ref);
    };
    std::vector<double> support;
    for (const auto* pp : {&p1, &p2})
        for (const auto& at : pp->atoms) {
            const double t = std::abs(at.s.imag());
            bool seen = false;
            for (const double u : support)
                if (std::abs(u - t) < 1e-9) { seen = true; break; }
            if (!seen) support.push_back(t);
        }
    std::sort(support.begin(), support.end());
    cplx a{0.0, 0.0};
    for (const double t : support) {
        if (t < 1e-12) continue; // E(., 1/2) = 0: zero vector contributes nothing
        a += 2.0 * canon(p1, t) * std::conj(canon(p2, t));
    }
    out.path_a = a;

    // Path B: truncated integrals, extrapolated linearly in 1/log m.
    for (int k = 0; k < 3; ++k) {
        const double m = out.m_values[k];
        auto f = [&](double x, double y) -> cplx {
            const eis::HPoint z{x, y};
            cplx f1{0.0, 0.0};
            for (const auto& at : p1.atoms)
                f1 += at.a * eis::truncate_eis(z, at.s, m);
            if (&p1 == &p2) return cplx(std::norm(f1), 0.0);
            cplx f2{0.0, 0.0};
            for (const auto& at : p2.atoms)
                f2 += at.a * eis::truncate_eis(z, at.s, m);
            return f1 * std::conj(f2);
        };
        const eis::FdResult fi = eis::fd_integrate(f, m + 10.0, {m}, mean_spec);
        out.path_b_raw[k] = fi.value / (4.0 * std::log(m));
    }
    // Least squares for alpha + beta / log m through the three samples.
    double sw = 0.0, sx = 0.0, sxx = 0.0;
    cplx sy{0.0, 0.0}, sxy{0.0, 0.0};
    for (int k = 0; k < 3; ++k) {
        const double xk = 1.0 / std::log(out.m_values[k]);
        sw += 1.0;
        sx += xk;
        sxx += xk * xk;
        sy += out.path_b_raw[k];
        sxy += xk * out.path_b_raw[k];
    }
    const double det = sw * sxx - sx * sx;
    out.path_b = (sxx * sy - sx * sxy) / det;
    return out;
}

SpectrumD spectrum_D(const lfun::ZeroList& zl, bool l_half_zero) {
    SpectrumD out;
    out.d = zl.d;
    out.chi_name = zl.chi_name;
    out.t_max = zl.t_max;
    out.epsilon = l_half_zero ? 1 : 0;
    if (l_half_zero) {
        out.eigenvalues.push_back(0.25);
        out.multiplicities.push_back(1);
    }
    for (const double g : zl.ordinates) {
        out.eigenvalues.push_back(0.25 + g * g);
        out.multiplicities.push_back(1);
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    return out;
}

EpsilonDecision epsilon_flag(const nfield::QuadraticField& K,
                             const lfun::HeckeCharacter& chi) {
    EpsilonDecision out;
    out.lambda_half_mag = std::abs(lfun::completed_hecke(K, chi, cplx(0.5, 0.0)).must());
    out.epsilon = (out.lambda_half_mag > 1e-6) ? 0 : 1;
    out.warning_band = (out.lambda_half_mag >= 1e-8 && out.lambda_half_mag <= 1e-6);
    return out;
}

WavePacket apply_D(const WavePacket& p) {
    require_principal(p, "apply_D");
    WavePacket out = p;
    for (auto& at : out.atoms) {
        const double t = at.s.imag();
        at.a *= (1.0 + 4.0 * t * t) / 4.0;
    }
    return out;
}

WavePacket resolvent(const WavePacket& p, cplx zc) {
    require_principal(p, "resolvent");
    WavePacket out = p;
    for (auto& at : out.atoms) {
        const double t = at.s.imag();
        const cplx den = cplx(0.25 + t * t, 0.0) - zc;
        if (std::abs(den) < 1e-9)
            throw std::invalid_argument("resolvent: zc within 1e-9 of an eigenvalue");
        at.a /= den;
    }
    return out;
}

TraceResult trace_formula(const lfun::ZeroList& zl, int epsilon,
                          const std::function<cplx(cplx)>& u_tilde) {
    TraceResult out;
    // Admissibility: u(1 - s) = u(s) at 10 sample points.
    double worst = 0.0;
    const cplx samples[10] = {{0.6, 0.0},  {0.8, 0.0},  {1.1, 0.0},  {0.5, 1.0},
                              {0.5, 3.0},  {0.7, 2.0},  {0.3, -1.0}, {0.9, 4.0},
                              {0.45, 7.5}, {0.2, 0.3}};
    for (const cplx s : samples) {
        const cplx u1 = u_tilde(s), u2 = u_tilde(1.0 - s);
        worst = std::max(worst,
                         std::abs(u1 - u2) / std::max(1.0, std::abs(u1)));
    }
    out.symmetry_residual = worst;
    if (worst > 1e-8)
        throw std::invalid_argument("trace_formula: test function not symmetric "
                                    "under s -> 1-s");

    cplx acc = static_cast<double>(epsilon) * u_tilde(cplx(0.5, 0.0));
    for (const double g : zl.ordinates) acc += u_tilde(cplx(0.5, g));
    out.value = acc;

    // Tail beyond t_max from the zero-counting density (1/pi) log(t/(2 pi)),
    // integrated with the midpoint rule until the summand is negligible.
    double tail = 0.0;
    const double dt = 0.25;
    for (double t = zl.t_max + 0.5 * dt; t < zl.t_max + 400.0; t += dt) {
        const double dens = std::log(std::max(t, 7.0) / (2.0 * PI)) / PI;
        const double mag = std::abs(u_tilde(cplx(0.5, t)));
        tail += mag * dens * dt;
        if (mag * dens < 1e-18 && t > zl.t_max + 5.0) break;
    }
    out.tail_estimate = tail;
    out.tail_ok = tail < 1e-9;
    return out;
}

bool connes_test(const ConnesDistribution& dist, const nfield::QuadraticField& K,
                 const lfun::HeckeCharacter& chi, const lfun::ZeroList& zeros,
                 double tol) {
    auto lam = [&](double t) {
        return lfun::completed_hecke(K, chi, cplx(0.5, t)).must().real();
    };
    for (const auto& pt : dist.points) {
        if (pt.order < 0 || pt.order > 2)
            throw std::invalid_argument("connes_test: orders <= 2 only");
        bool near = false;
        for (const double g : zeros.ordinates)
            if (std::abs(std::abs(pt.gamma) - g) < tol) { near = true; break; }
        if (!near) return false;

        const double g = std::abs(pt.gamma);
        const double scale =
            std::max({std::abs(lam(g + 0.5)), std::abs(lam(g - 0.5)), 1e-300});
        const double h = 0.25;
        const double f0 = lam(g), fp = lam(g + h), fm = lam(g - h);
        if (std::abs(f0) > tol * scale) return false;
        if (pt.order >= 1) {
            const double d1 = (fp - fm) / (2.0 * h);
            if (std::abs(d1) > tol * scale) return false;
        }
        if (pt.order >= 2) {
            const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
            if (std::abs(d2) > tol * scale) return false;
        }
    }
    return true;
}

std::string packet_to_json(const WavePacket& p) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    auto atoms = nlohmann::ordered_json::array();
    for (const auto& at : p.atoms)
        atoms.push_back({{"re_s", at.s.real()},
                         {"im_s", at.s.imag()},
                         {"re_a", at.a.real()},
                         {"im_a", at.a.imag()}});
    j["atoms"] = atoms;
    j["symmetry"] =
        (p.symmetry == PacketSymmetry::plus_normalized) ? "plus_normalized" : "raw";
    return j.dump(2) + "\n";
}

WavePacket packet_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms"))
        atoms.push_back({cplx(a.at("re_s").get<double>(), a.at("im_s").get<double>()),
                         cplx(a.at("re_a").get<double>(), a.at("im_a").get<double>())});
    const std::string sym = j.value("symmetry", "raw");
    return make_packet(atoms, sym == "plus_normalized"
                                  ? PacketSymmetry::plus_normalized
                                  : PacketSymmetry::raw);
}

std::string toroidality_report_json(const ToroidalityReport& r, long long d,
                                    const std::string& chi_name, double tol) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["d"] = d;
    j["chi"] = chi_name;
    j["tol"] = tol;
    j["period_closed_form"] = {{"re", r.period_closed_form.real()},
                               {"im", r.period_closed_form.imag()}};
    j["period_direct"] = {{"re", r.period_direct.real()},
                          {"im", r.period_direct.imag()}};
    j["scale"] = r.scale;
    j["is_toroidal"] = r.is_toroidal;
    j["spectrum_in_zeros"] = r.spectrum_in_zeros;
    j["methods_consistent"] = r.methods_consistent;
    j["biconditional_ok"] = r.biconditional_ok;
    return j.dump(2) + "\n";
}

} // namespace torlab::spectral
