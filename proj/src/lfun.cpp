#include "torlab/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace torlab::lfun {

using special::BernoulliTable;
using special::PrecisionError;

namespace {

constexpr double PI = 3.14159265358979323846;

long long llmod(long long a, long long m) { return ((a % m) + m) % m; }

// Kronecker symbol (a|n), full extension to all integers.
int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v % 2 == 1) {
        const long long am8 = llmod(a, 8);
        if (am8 == 3 || am8 == 5) result = -result;
    }
    a = llmod(a, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const long long nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return (n == 1) ? result : 0;
}

// phi(u) = (e^u - 1)/u, stable near u = 0.
cplx phi1(cplx u) {
    if (std::abs(u) < 1e-3)
        return 1.0 + u * (0.5 + u * (1.0 / 6.0 + u * (1.0 / 24.0 + u / 120.0)));
    return (std::exp(u) - 1.0) / u;
}

// Prime-discriminant factorization of a fundamental discriminant: the odd
// prime factors p contribute p* = (-1)^{(p-1)/2} p, the 2-part is whatever
// remains (one of 1, -4, 8, -8).
std::vector<long long> prime_discriminants(long long d) {
    std::vector<long long> out;
    long long m = std::llabs(d);
    while (m % 2 == 0) m /= 2;
    long long odd_prod = 1;
    for (long long p = 3; p * p <= m; p += 2) {
        if (m % p == 0) {
            m /= p;
            const long long ps = (p % 4 == 1) ? p : -p;
            out.push_back(ps);
            odd_prod *= ps;
        }
    }
    if (m > 1) {
        const long long ps = (m % 4 == 1) ? m : -m;
        out.push_back(ps);
        odd_prod *= ps;
    }
    const long long two_part = d / odd_prod;
    if (two_part != 1) {
        if (two_part != -4 && two_part != 8 && two_part != -8)
            throw std::logic_error("prime_discriminants: unexpected 2-part");
        out.push_back(two_part);
    }
    std::sort(out.begin(), out.end(),
              [](long long x, long long y) { return std::llabs(x) < std::llabs(y); });
    return out;
}

// Magnitude of the archimedean part of one completed Dirichlet factor,
// |(q/pi)^{s/2} Gamma((s+a)/2)|; used to normalize the Hardy Z function.
double arch_factor_mag(long long f, cplx s) {
    const long long q = (f == 1) ? 1 : std::llabs(f);
    const int a = (f < 0) ? 1 : 0;
    const double re_pref = 0.5 * s.real() * std::log(static_cast<double>(q) / PI);
    const MeroValue lg = special::log_gamma(0.5 * (s + static_cast<double>(a)));
    return std::exp(re_pref + lg.must().real());
}

// Completed Dirichlet factor Lambda(s, chi_f) = (|f|/pi)^{s/2}
// Gamma((s+a)/2) L(s, chi_f); f = 1 means the completed Riemann zeta.
MeroValue completed_dirichlet(long long f, cplx s) {
    if (f == 1) return special::lambda_completed(s);
    // Real primitive characters have root number +1, so the completed factor
    // obeys the exact symmetry Lambda(s, chi_f) = Lambda(1-s, chi_f).  Serve
    // the left half plane through it; the function is entire, so no residue
    // bookkeeping is needed, and the Gamma-pole/trivial-zero collisions at
    // s + a in {0, -2, -4, ...} never arise.
    if (s.real() < 0.5) return completed_dirichlet(f, 1.0 - s);
    const int a = (f < 0) ? 1 : 0;
    const MeroValue lg = special::log_gamma(0.5 * (s + static_cast<double>(a)));
    if (lg.pole)
        throw std::logic_error("completed_dirichlet: unexpected gamma pole in the "
                               "right half plane");
    const cplx pref = 0.5 * s * std::log(static_cast<double>(std::llabs(f)) / PI);
    return MeroValue::finite(std::exp(pref + lg.value) * dirichlet_l(f, s).must());
}

} // namespace

int kronecker_chi(long long d, long long n) {
    if (d != 1 && !nfield::is_fundamental_discriminant(d))
        throw std::invalid_argument("kronecker_chi: d must be 1 or fundamental");
    return kronecker(d, n);
}

MeroValue dirichlet_l(long long d, cplx s) {
    if (d == 1) return special::riemann_zeta(s);
    if (!nfield::is_fundamental_discriminant(d))
        throw std::invalid_argument("dirichlet_l: d must be 1 or a fundamental discriminant");
    if (std::abs(s.imag()) > 60.0)
        throw PrecisionError("dirichlet_l: window is |Im s| <= 60");

    const long long q = std::llabs(d);
    const double t = std::abs(s.imag());
    const int N = static_cast<int>(std::ceil(std::max(18.0, 0.7 * t + 12.0))) + 1;
    const int J = 12;

    // L(s, chi_d) = q^{-s} Sum_a chi(a) zeta(s, a/q), Euler-Maclaurin per
    // residue class with a shared cut N.  The only pole terms are
    // chi(a) w_a^{1-s}/(s-1); since Sum_a chi(a) = 0 they combine into the
    // everywhere-finite expression Sum_a chi(a) (w_a^{1-s} - 1)/(s-1)
    // = -Sum_a chi(a) log(w_a) phi1((1-s) log w_a), removing the s = 1
    // cancellation catastrophe.
    cplx total = 0.0;
    for (long long a = 1; a < q; ++a) {
        const int ca = kronecker(d, a);
        if (ca == 0) continue;
        const double x = static_cast<double>(a) / static_cast<double>(q);
        const double w = x + N;
        const double logw = std::log(w);

        cplx acc = 0.0;
        for (int k = 0; k < N; ++k) acc += std::exp(-s * std::log(x + k));

        const cplx winv_s = std::exp(-s * logw); // w^{-s}
        acc += 0.5 * winv_s;
        acc += -logw * phi1((1.0 - s) * logw); // w^{1-s}/(s-1) after chi-sum

        cplx poch = s;          // (s)_1
        cplx wpow = winv_s / w; // w^{-s-1}
        double fact = 2.0;      // (2j)!
        for (int j = 1; j <= J; ++j) {
            acc += BernoulliTable::value(2 * j) / fact * poch * wpow;
            poch *= (s + cplx(2.0 * j - 1.0)) * (s + cplx(2.0 * j));
            wpow /= w * w;
            fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        }
        total += static_cast<double>(ca) * acc;
    }
    const cplx qms = std::exp(-s * std::log(static_cast<double>(q)));
    return MeroValue::finite(qms * total);
}

bool HeckeCharacter::is_trivial() const { return d1 == 1; }

HeckeCharacter trivial_character(const nfield::QuadraticField& K) {
    HeckeCharacter chi;
    chi.d = K.d;
    chi.class_values.assign(static_cast<std::size_t>(K.h), 1.0);
    chi.frequency = 0;
    chi.rho.assign(K.d < 0 ? 1 : 2, 0.0);
    chi.self_dual = true;
    chi.name = "trivial";
    chi.d1 = 1;
    chi.d2 = K.d;
    return chi;
}

std::vector<HeckeCharacter> real_class_characters(const nfield::QuadraticField& K) {
    const std::vector<long long> fac = prime_discriminants(K.d);
    const int mu = static_cast<int>(fac.size());
    const long long n_real = 1LL << (mu - 1);
    if (n_real != K.h)
        throw std::domain_error(
            "real_class_characters: class group is not 2-torsion (real characters "
            "do not exhaust the dual group); out of core scope");

    std::vector<HeckeCharacter> out;
    out.push_back(trivial_character(K));

    for (unsigned mask = 1; mask < (1u << mu); ++mask) {
        long long p1 = 1;
        for (int i = 0; i < mu; ++i)
            if (mask & (1u << i)) p1 *= fac[static_cast<std::size_t>(i)];
        const long long p2 = K.d / p1;
        if (!(std::llabs(p1) < std::llabs(p2))) continue; // one rep per unordered pair
        HeckeCharacter chi;
        chi.d = K.d;
        chi.frequency = 0;
        chi.rho.assign(K.d < 0 ? 1 : 2, 0.0);
        chi.self_dual = true;
        chi.d1 = p1;
        chi.d2 = p2;
        chi.name = "genus(" + std::to_string(p1) + "," + std::to_string(p2) + ")";
        chi.class_values.reserve(K.classes.size());
        for (const auto& cl : K.classes) {
            const auto& f = cl.form;
            int val = 0;
            bool found = false;
            for (long long xx = -12; xx <= 12 && !found; ++xx) {
                for (long long yy = -12; yy <= 12 && !found; ++yy) {
                    if (xx == 0 && yy == 0) continue;
                    const long long n = f.a * xx * xx + f.b * xx * yy + f.c * yy * yy;
                    if (n <= 0) continue;
                    if (std::gcd(n, std::llabs(K.d)) != 1) continue;
                    const int v1 = kronecker(p1, n);
                    const int v2 = kronecker(p2, n);
                    if (v1 != v2)
                        throw std::logic_error("genus character: factor values disagree");
                    val = v1;
                    found = true;
                }
            }
            if (!found)
                throw std::logic_error("genus character: no represented value coprime to d");
            chi.class_values.push_back(static_cast<double>(val));
        }
        if (chi.class_values.front() != 1.0)
            throw std::logic_error("genus character: principal class value != 1");
        out.push_back(std::move(chi));
    }

    std::sort(out.begin() + 1, out.end(), [](const HeckeCharacter& x, const HeckeCharacter& y) {
        return std::llabs(x.d1) < std::llabs(y.d1) ||
               (std::llabs(x.d1) == std::llabs(y.d1) && x.d1 < y.d1);
    });
    if (static_cast<long long>(out.size()) != n_real)
        throw std::logic_error("real_class_characters: pair enumeration miscount");
    return out;
}

namespace {

void require_core_scope(const HeckeCharacter& chi) {
    if (chi.frequency != 0)
        throw std::domain_error("HeckeCharacter: nonzero archimedean frequency unsupported");
    for (double v : chi.class_values)
        if (v != 1.0 && v != -1.0)
            throw std::domain_error("HeckeCharacter: non-real class values unsupported");
}

} // namespace

MeroValue hecke_l(const nfield::QuadraticField& K, const HeckeCharacter& chi, cplx s) {
    require_core_scope(chi);
    if (chi.is_trivial()) return dedekind_zeta(K, s);
    return MeroValue::finite(dirichlet_l(chi.d1, s).must() * dirichlet_l(chi.d2, s).must());
}

MeroValue dedekind_zeta(const nfield::QuadraticField& K, cplx s) {
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-12)
        return MeroValue::simple_pole(dirichlet_l(K.d, cplx(1.0, 0.0)).must());
    return MeroValue::finite(special::riemann_zeta(s).must() * dirichlet_l(K.d, s).must());
}

MeroValue gamma_factor(const nfield::QuadraticField& K, const HeckeCharacter& chi, cplx s) {
    require_core_scope(chi);
    if (K.d < 0) {
        const double rho = chi.rho.empty() ? 0.0 : chi.rho[0];
        return special::gamma_C(s + cplx(0.0, rho));
    }
    const double r1 = chi.rho.empty() ? 0.0 : chi.rho[0];
    const double r2 = chi.rho.size() < 2 ? 0.0 : chi.rho[1];
    const MeroValue g1 = special::gamma_R(s + cplx(0.0, r1));
    const MeroValue g2 = special::gamma_R(s + cplx(0.0, r2));
    if (g1.pole && g2.pole) return MeroValue{{0.0, 0.0}, true, 2, {0.0, 0.0}};
    if (g1.pole) return MeroValue::simple_pole(g1.residue * g2.value);
    if (g2.pole) return MeroValue::simple_pole(g2.residue * g1.value);
    return MeroValue::finite(g1.value * g2.value);
}

MeroValue completed_hecke(const nfield::QuadraticField& K, const HeckeCharacter& chi, cplx s) {
    require_core_scope(chi);
    if (chi.d != K.d)
        throw std::invalid_argument("completed_hecke: character/field mismatch");
    const MeroValue f1 = completed_dirichlet(chi.d1, s);
    const MeroValue f2 = completed_dirichlet(chi.d2, s);
    if (f1.pole && f2.pole)
        throw std::logic_error("completed_hecke: unexpected double pole");
    if (f1.pole) return MeroValue::simple_pole(f1.residue * f2.value);
    if (f2.pole) return MeroValue::simple_pole(f2.residue * f1.value);
    return MeroValue::finite(f1.value * f2.value);
}

MeroValue c_scattering(int n, cplx s) {
    if (n < 2) throw std::invalid_argument("c_scattering: need n >= 2");
    const double dn = static_cast<double>(n);
    const MeroValue num = special::lambda_completed(dn * (1.0 - s));
    const MeroValue den = special::lambda_completed(dn * s);

    if (num.pole && den.pole) {
        // Only n = 2, s = 1/2: both arguments sit at the pole s0 = 1 of
        // Lambda; the ratio of the two linear factors is exactly -1.
        if (n != 2) throw std::logic_error("c_scattering: unexpected double pole");
        return MeroValue::finite(-1.0);
    }
    if (den.pole) return MeroValue::finite(0.0); // zeros at s = 0 and s = 1/n (n >= 3)
    if (num.pole) {
        // Lambda(n(1-s)) ~ R_p / (n(1-s) - p) = -R_p / (n (s - s0)),
        // s0 = (n-p)/n; residue of c_n there is -R_p / (n Lambda(n s0)).
        const int p = (std::abs(dn * (1.0 - s)) < 0.5) ? 0 : 1;
        const cplx lam_at = special::lambda_completed(cplx(dn - p, 0.0)).must();
        return MeroValue::simple_pole(-num.residue / (dn * lam_at));
    }
    if (std::abs(den.value) < 1e-12) {
        // Zero of Lambda(ns) inside the critical strip (the set R_n): a pole
        // of c_n; residue estimated from a numeric derivative of Lambda.
        const double h = 1e-6;
        const cplx dlam = (special::lambda_completed(dn * s + h).must() -
                           special::lambda_completed(dn * s - h).must()) /
                          (2.0 * h);
        return MeroValue::simple_pole(num.value / (dn * dlam));
    }
    return MeroValue::finite(num.value / den.value);
}

cplx gamma_poly(int n, int h, cplx s) {
    if (n < 2) throw std::invalid_argument("gamma_poly: need n >= 2");
    if (h < 1 || h > n) throw std::invalid_argument("gamma_poly: need 1 <= h <= n");
    // s(1-s) * Sum_{k=0}^{h-2} ((n-1)s)^k (1-s)^{h-2-k}: the closed ratio
    // form with its removable singularity at ns = 1 already filled in.
    const cplx A = static_cast<double>(n - 1) * s;
    const cplx B = 1.0 - s;
    const int m = h - 2;
    cplx sum = 0.0;
    cplx Bk = 1.0;
    std::vector<cplx> Bpow(static_cast<std::size_t>(std::max(m + 1, 0)));
    for (int k = 0; k <= m; ++k) {
        Bpow[static_cast<std::size_t>(k)] = Bk;
        Bk *= B;
    }
    cplx Ak = 1.0;
    for (int k = 0; k <= m; ++k) {
        sum += Ak * Bpow[static_cast<std::size_t>(m - k)];
        Ak *= A;
    }
    return s * (1.0 - s) * sum;
}

namespace {

double arch_mag(const HeckeCharacter& chi, cplx s) {
    return arch_factor_mag(chi.d1, s) * arch_factor_mag(chi.d2, s);
}

} // namespace

double hardy_z(const nfield::QuadraticField& K, const HeckeCharacter& chi, double t) {
    const cplx s(0.5, t);
    const cplx v = completed_hecke(K, chi, s).must();
    return v.real() / arch_mag(chi, s);
}

namespace {

// Continuous argument variation of the completed function along the segment
// from s0 to s1, adaptively refined so each step turns by < 1 radian.
double arg_variation(const nfield::QuadraticField& K, const HeckeCharacter& chi,
                     cplx s0, cplx s1, cplx w0, cplx w1, int depth) {
    const double dphi = std::arg(w1 / w0);
    if (std::abs(dphi) < 1.0 || depth >= 48) return dphi;
    const cplx sm = 0.5 * (s0 + s1);
    const cplx wm = completed_hecke(K, chi, sm).must();
    return arg_variation(K, chi, s0, sm, w0, wm, depth + 1) +
           arg_variation(K, chi, sm, s1, wm, w1, depth + 1);
}

double edge_variation(const nfield::QuadraticField& K, const HeckeCharacter& chi,
                      cplx from, cplx to, double step) {
    const double len = std::abs(to - from);
    const int nseg = std::max(1, static_cast<int>(std::ceil(len / step)));
    double total = 0.0;
    cplx sprev = from;
    cplx wprev = completed_hecke(K, chi, sprev).must();
    for (int i = 1; i <= nseg; ++i) {
        const cplx scur = from + (to - from) * (static_cast<double>(i) / nseg);
        const cplx wcur = completed_hecke(K, chi, scur).must();
        total += arg_variation(K, chi, sprev, scur, wprev, wcur, 0);
        sprev = scur;
        wprev = wcur;
    }
    return total;
}

} // namespace

ZeroList find_zeros(const nfield::QuadraticField& K, const HeckeCharacter& chi,
                    double t_max, double tol) {
    require_core_scope(chi);
    if (!(t_max > 0.0) || t_max > 40.0)
        throw std::invalid_argument("find_zeros: need 0 < t_max <= 40");
    if (!(tol > 0.0)) throw std::invalid_argument("find_zeros: need tol > 0");

    ZeroList zl;
    zl.d = K.d;
    zl.chi_name = chi.name;
    zl.t_max = t_max;
    zl.tol = tol;

    const double t0 = 0.05; // stay clear of the s = 1 pole of trivial chi
    const double dt = 0.04;
    double tprev = t0;
    double zprev = hardy_z(K, chi, tprev);
    for (double t = t0 + dt; tprev < t_max; t += dt) {
        const double tcur = std::min(t, t_max);
        const double zcur = hardy_z(K, chi, tcur);
        if ((zprev < 0.0) != (zcur < 0.0) && zprev != 0.0) {
            double lo = tprev, hi = tcur, zlo = zprev;
            for (int it = 0; it < 64 && hi - lo > 1e-13; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double zm = hardy_z(K, chi, mid);
                if ((zm < 0.0) == (zlo < 0.0)) {
                    lo = mid;
                    zlo = zm;
                } else {
                    hi = mid;
                }
            }
            const double gamma = 0.5 * (lo + hi);
            const double resid = std::abs(completed_hecke(K, chi, cplx(0.5, gamma)).must());
            zl.ordinates.push_back(gamma);
            zl.brackets.push_back({tprev, tcur});
            zl.residuals.push_back(resid);
            if (resid > tol) zl.multiplicity_flag = true; // refinement stalled: suspect
        }
        tprev = tcur;
        zprev = zcur;
    }

    // Argument-principle audit on [-0.2, 1.2] x [t0, t_max].
    const cplx c1(-0.2, t0), c2(1.2, t0), c3(1.2, t_max), c4(-0.2, t_max);
    const double step = 0.05;
    double total = 0.0;
    total += edge_variation(K, chi, c1, c2, step);
    total += edge_variation(K, chi, c2, c3, step);
    total += edge_variation(K, chi, c3, c4, step);
    total += edge_variation(K, chi, c4, c1, step);
    const double winding = total / (2.0 * PI);
    const long rounded = std::lround(winding);
    zl.audit_count = static_cast<int>(rounded);
    zl.audit_match = (std::abs(winding - static_cast<double>(rounded)) < 0.05) &&
                     (zl.audit_count == static_cast<int>(zl.ordinates.size()));
    return zl;
}

std::string zerolist_to_json(const ZeroList& zl) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["d"] = zl.d;
    j["chi"] = zl.chi_name;
    j["t_max"] = zl.t_max;
    j["tol"] = zl.tol;
    nlohmann::ordered_json zeros = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < zl.ordinates.size(); ++i) {
        nlohmann::ordered_json z;
        z["gamma"] = zl.ordinates[i];
        z["residual"] = zl.residuals[i];
        z["bracket"] = {zl.brackets[i].lo, zl.brackets[i].hi};
        zeros.push_back(std::move(z));
    }
    j["zeros"] = std::move(zeros);
    j["audit_count"] = zl.audit_count;
    j["audit_match"] = zl.audit_match;
    j["multiplicity_flag"] = zl.multiplicity_flag;
    return j.dump(2);
}

ZeroList zerolist_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ZeroList zl;
    zl.d = j.at("d").get<long long>();
    zl.chi_name = j.at("chi").get<std::string>();
    zl.t_max = j.at("t_max").get<double>();
    zl.tol = j.at("tol").get<double>();
    for (const auto& z : j.at("zeros")) {
        zl.ordinates.push_back(z.at("gamma").get<double>());
        zl.residuals.push_back(z.at("residual").get<double>());
        const auto& br = z.at("bracket");
        zl.brackets.push_back({br.at(0).get<double>(), br.at(1).get<double>()});
    }
    zl.audit_count = j.at("audit_count").get<int>();
    zl.audit_match = j.at("audit_match").get<bool>();
    zl.multiplicity_flag = j.value("multiplicity_flag", false);
    return zl;
}

} // namespace torlab::lfun
