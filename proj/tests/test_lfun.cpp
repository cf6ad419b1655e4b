#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "torlab/lfun.hpp"
#include "torlab/nfield.hpp"
#include "torlab/special.hpp"

using namespace torlab;
using lfun::c_scattering;
using lfun::dirichlet_l;
using lfun::gamma_poly;
using lfun::HeckeCharacter;
using lfun::kronecker_chi;
using special::cplx;
using special::MeroValue;
using special::PrecisionError;

namespace {
constexpr double PI = 3.141592653589793238462643383279502884;
constexpr double CATALAN = 0.91596559417721901505460351493238411;
const double PHI = (1.0 + std::sqrt(5.0)) / 2.0;

double rel(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Primes below n by sieve, for the Euler-product oracle.
std::vector<long long> primes_below(long long n) {
    std::vector<bool> comp(static_cast<size_t>(n), false);
    std::vector<long long> out;
    for (long long p = 2; p < n; ++p) {
        if (comp[static_cast<size_t>(p)]) continue;
        out.push_back(p);
        for (long long q = p * p; q < n; q += p) comp[static_cast<size_t>(q)] = true;
    }
    return out;
}

// Epstein sum  Sum'_{(m,n)} Q(m,n)^{-3}  truncated at |m|,|n| <= R.
double epstein3(const nfield::QuadraticForm& f, int R) {
    double acc = 0.0;
    for (int m = -R; m <= R; ++m)
        for (int n = -R; n <= R; ++n) {
            if (m == 0 && n == 0) continue;
            const double q =
                static_cast<double>(f.a) * m * m + static_cast<double>(f.b) * m * n +
                static_cast<double>(f.c) * n * n;
            const double inv = 1.0 / q;
            acc += inv * inv * inv;
        }
    return acc;
}
} // namespace

TEST_CASE("Kronecker characters: values, multiplicativity, period") {
    // chi_{-4}: 1, 0, -1, 0 repeating.
    const int want4[8] = {1, 0, -1, 0, 1, 0, -1, 0};
    for (int n = 1; n <= 8; ++n) CHECK(kronecker_chi(-4, n) == want4[n - 1]);
    // chi_5 on residues 1..5: QRs {1,4} -> +1, {2,3} -> -1, 5 -> 0.
    CHECK(kronecker_chi(5, 1) == 1);
    CHECK(kronecker_chi(5, 2) == -1);
    CHECK(kronecker_chi(5, 3) == -1);
    CHECK(kronecker_chi(5, 4) == 1);
    CHECK(kronecker_chi(5, 5) == 0);
    // chi_8 on odd residues 1,3,5,7 -> 1,-1,-1,1.
    CHECK(kronecker_chi(8, 3) == -1);
    CHECK(kronecker_chi(8, 7) == 1);
    // Complete multiplicativity and periodicity.
    for (long long d : {-4LL, 5LL, -20LL})
        for (long long m : {3LL, 7LL, 10LL})
            for (long long n : {2LL, 9LL, 11LL}) {
                CHECK(kronecker_chi(d, m * n) == kronecker_chi(d, m) * kronecker_chi(d, n));
                CHECK(kronecker_chi(d, n + std::llabs(d)) == kronecker_chi(d, n));
            }
    CHECK(kronecker_chi(-4, 0) == 0);
    CHECK_THROWS_AS((void)kronecker_chi(20, 5), std::invalid_argument);
}

TEST_CASE("dirichlet_l: closed values by two routes") {
    // L(1, chi_{-4}) = pi/4 (Leibniz), checked against the digamma route
    // L(1, chi) = -(1/q) Sum_a chi(a) psi(a/q).
    const double l1 = dirichlet_l(-4, cplx(1.0, 0.0)).must().real();
    CHECK(std::abs(l1 - PI / 4.0) < 1e-13);
    double dig = 0.0;
    for (int a = 1; a < 4; ++a)
        if (const int c = kronecker_chi(-4, a); c != 0)
            dig -= c * special::digamma(a / 4.0) / 4.0;
    CHECK(std::abs(l1 - dig) < 1e-12);

    // L(2, chi_{-4}) = Catalan's constant.
    CHECK(std::abs(dirichlet_l(-4, cplx(2.0, 0.0)).must().real() - CATALAN) < 1e-13);

    // Class number formula values: L(1, chi_5) = 2 log phi / sqrt 5,
    // L(1, chi_{-3}) = pi / (3 sqrt 3).
    CHECK(std::abs(dirichlet_l(5, cplx(1.0, 0.0)).must().real() -
                   2.0 * std::log(PHI) / std::sqrt(5.0)) < 1e-13);
    CHECK(std::abs(dirichlet_l(-3, cplx(1.0, 0.0)).must().real() -
                   PI / (3.0 * std::sqrt(3.0))) < 1e-13);

    // s = 0: L(0, chi_{-4}) = 1/2, and even characters vanish.
    CHECK(std::abs(dirichlet_l(-4, cplx(0.0, 0.0)).must().real() - 0.5) < 1e-13);
    CHECK(std::abs(dirichlet_l(5, cplx(0.0, 0.0)).must()) < 1e-13);

    // d = 1 is the Riemann zeta function.
    CHECK(std::abs(dirichlet_l(1, cplx(2.0, 0.0)).must().real() - PI * PI / 6.0) < 1e-13);
    CHECK(dirichlet_l(1, cplx(1.0, 0.0)).pole);
}

TEST_CASE("dirichlet_l matches a truncated Euler product at s = 3") {
    const auto ps = primes_below(100000);
    for (long long d : {-4LL, 5LL}) {
        double prod = 1.0;
        for (long long p : ps)
            prod /= 1.0 - kronecker_chi(d, p) / (static_cast<double>(p) * p * p);
        CHECK(std::abs(dirichlet_l(d, cplx(3.0, 0.0)).must().real() - prod) < 1e-10);
    }
}

TEST_CASE("dirichlet_l: completed functional equation at complex points") {
    // Lambda(s, chi_d) = (|d|/pi)^{s/2} Gamma((s+a)/2) L(s, chi_d) is
    // symmetric under s -> 1-s for these real primitive characters.
    const auto completed = [](long long d, int a, cplx s) {
        const cplx pref = std::exp(0.5 * s * std::log(std::llabs(d) / PI));
        return pref * special::gamma_fn(0.5 * (s + static_cast<double>(a))).must() *
               dirichlet_l(d, s).must();
    };
    for (const cplx s : {cplx(0.3, 2.2), cplx(1.4, -1.1), cplx(0.5, 5.0)}) {
        CHECK(rel(completed(-4, 1, s), completed(-4, 1, 1.0 - s)) < 1e-11);
        CHECK(rel(completed(5, 0, s), completed(5, 0, 1.0 - s)) < 1e-11);
    }
    // Declared window.
    CHECK_THROWS_AS((void)dirichlet_l(-4, cplx(0.5, 70.0)), PrecisionError);
}

TEST_CASE("Class characters: trivial, genus, and the 2-torsion guard") {
    const auto K4 = nfield::make_field(-4);
    const auto only = lfun::real_class_characters(K4);
    REQUIRE(only.size() == 1);
    CHECK(only[0].is_trivial());
    CHECK(only[0].d2 == -4);

    const auto K20 = nfield::make_field(-20);
    const auto chars = lfun::real_class_characters(K20);
    REQUIRE(chars.size() == 2);
    CHECK(chars[0].is_trivial());
    const HeckeCharacter& g = chars[1];
    CHECK_FALSE(g.is_trivial());
    CHECK(g.d1 * g.d2 == -20);
    REQUIRE(g.class_values.size() == 2);
    CHECK(g.class_values[0] == doctest::Approx(1.0));
    CHECK(g.class_values[1] == doctest::Approx(-1.0));
    CHECK(g.self_dual);

    // Cl(Q(sqrt(-23))) = Z/3 is not 2-torsion.
    const auto K23 = nfield::make_field(-23);
    CHECK_THROWS_AS((void)lfun::real_class_characters(K23), std::domain_error);
}

TEST_CASE("Dedekind zeta and genus L-function vs brute Epstein sums") {
    const auto K4 = nfield::make_field(-4);
    const auto triv4 = lfun::trivial_character(K4);
    // zeta_{Q(i)}(3) = (1/4) Sum' (m^2+n^2)^{-3}.
    const double brute4 = epstein3(nfield::QuadraticForm{1, 0, 1}, 600) / 4.0;
    CHECK(std::abs(lfun::hecke_l(K4, triv4, cplx(3.0, 0.0)).must().real() - brute4) < 1e-9);

    const auto K20 = nfield::make_field(-20);
    const auto chars = lfun::real_class_characters(K20);
    const double p0 = epstein3(nfield::QuadraticForm{1, 0, 5}, 600);
    const double p1 = epstein3(nfield::QuadraticForm{2, 2, 3}, 600);
    const double zeta_brute = (p0 + p1) / 2.0;
    const double genus_brute = (p0 - p1) / 2.0;
    CHECK(std::abs(lfun::hecke_l(K20, chars[0], cplx(3.0, 0.0)).must().real() -
                   zeta_brute) < 1e-9);
    CHECK(std::abs(lfun::hecke_l(K20, chars[1], cplx(3.0, 0.0)).must().real() -
                   genus_brute) < 1e-9);

    // Genus factorization route: L(s, chi) = L(s, chi_{d1}) L(s, chi_{d2}).
    const cplx s(1.5, 0.8);
    const cplx fact = dirichlet_l(chars[1].d1, s).must() * dirichlet_l(chars[1].d2, s).must();
    CHECK(rel(lfun::hecke_l(K20, chars[1], s).must(), fact) < 1e-12);
}

TEST_CASE("dedekind_zeta pole at s = 1 carries residue c_K / sqrt|d|") {
    const auto K4 = nfield::make_field(-4);
    const MeroValue at1 = lfun::dedekind_zeta(K4, cplx(1.0, 0.0));
    REQUIRE(at1.pole);
    CHECK(std::abs(at1.residue - cplx(PI / 4.0, 0.0)) < 1e-12);

    const auto K5 = nfield::make_field(5);
    const MeroValue at1r = lfun::dedekind_zeta(K5, cplx(1.0, 0.0));
    REQUIRE(at1r.pole);
    CHECK(std::abs(at1r.residue.real() - 2.0 * std::log(PHI) / std::sqrt(5.0)) < 1e-12);
}

TEST_CASE("completed_hecke: functional equation, reality, pole set") {
    const auto K4 = nfield::make_field(-4);
    const auto K5 = nfield::make_field(5);
    const auto K20 = nfield::make_field(-20);
    const auto triv4 = lfun::trivial_character(K4);
    const auto triv5 = lfun::trivial_character(K5);
    const auto genus = lfun::real_class_characters(K20)[1];

    const cplx pts[] = {cplx(0.3, 1.7), cplx(1.2, -0.6), cplx(0.8, 3.3)};
    const auto check_sym = [&](const nfield::QuadraticField& K, const HeckeCharacter& chi) {
        for (const cplx s : pts)
            CHECK(rel(lfun::completed_hecke(K, chi, s).must(),
                      lfun::completed_hecke(K, chi, 1.0 - s).must()) < 1e-10);
    };
    check_sym(K4, triv4);
    check_sym(K5, triv5);
    check_sym(K20, genus);

    // Real on the critical line (root number +1).
    const cplx on_line = lfun::completed_hecke(K4, triv4, cplx(0.5, 3.1)).must();
    CHECK(std::abs(on_line.imag()) < 1e-12 * std::abs(on_line));

    // Trivial character inherits the zeta poles at s = 0, 1; genus characters
    // are entire there.
    CHECK(lfun::completed_hecke(K4, triv4, cplx(1.0, 0.0)).pole);
    CHECK(lfun::completed_hecke(K4, triv4, cplx(0.0, 0.0)).pole);
    CHECK_FALSE(lfun::completed_hecke(K20, genus, cplx(1.0, 0.0)).pole);
    CHECK_FALSE(lfun::completed_hecke(K20, genus, cplx(0.0, 0.0)).pole);

    // Left half plane is served through the exact reflection, so a
    // trivial-zero collision point like s = -2 is finite and symmetric.
    const MeroValue left = lfun::completed_hecke(K4, triv4, cplx(-2.0, 0.0));
    const MeroValue right = lfun::completed_hecke(K4, triv4, cplx(3.0, 0.0));
    REQUIRE_FALSE(left.pole);
    CHECK(std::abs(left.value - right.value) <= 1e-12 * std::abs(right.value));
}

TEST_CASE("gamma_factor splits by signature") {
    const auto K4 = nfield::make_field(-4);
    const auto K5 = nfield::make_field(5);
    const cplx s(0.9, 1.3);
    CHECK(rel(lfun::gamma_factor(K4, lfun::trivial_character(K4), s).must(),
              special::gamma_C(s).must()) < 1e-13);
    const cplx gr = special::gamma_R(s).must();
    CHECK(rel(lfun::gamma_factor(K5, lfun::trivial_character(K5), s).must(), gr * gr) <
          1e-13);
}

TEST_CASE("c_scattering: unitarity, special values, zeros") {
    for (const cplx s : {cplx(0.3, 2.1), cplx(0.8, -4.4), cplx(1.6, 0.9)})
        for (int n : {2, 3, 4})
            CHECK(std::abs(c_scattering(n, s).must() * c_scattering(n, 1.0 - s).must() -
                           1.0) < 1e-10);

    CHECK(std::abs(c_scattering(2, cplx(0.5, 0.0)).must() - cplx(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(c_scattering(3, cplx(0.5, 0.0)).must() - cplx(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(c_scattering(4, cplx(0.5, 0.0)).must() - cplx(1.0, 0.0)) < 1e-12);

    // |c| = 1 on the critical line.
    CHECK(std::abs(std::abs(c_scattering(2, cplx(0.5, 5.0)).must()) - 1.0) < 1e-12);

    // Zeros at s = 0 and (n >= 3) s = 1/n.
    CHECK(std::abs(c_scattering(2, cplx(0.0, 0.0)).must()) < 1e-13);
    CHECK(std::abs(c_scattering(3, cplx(1.0 / 3.0, 0.0)).must()) < 1e-12);

    CHECK_THROWS_AS((void)c_scattering(1, cplx(0.4, 0.0)), std::invalid_argument);
}

TEST_CASE("c_scattering residues at s = 1 and s = 1 - 1/n") {
    // res_{s=1} c_n = +1/(n Lambda(n)).
    const MeroValue p2 = c_scattering(2, cplx(1.0, 0.0));
    REQUIRE((p2.pole && p2.order == 1));
    CHECK(std::abs(p2.residue - cplx(3.0 / PI, 0.0)) < 1e-12); // 1/(2 Lambda(2))

    const MeroValue p3 = c_scattering(3, cplx(1.0, 0.0));
    REQUIRE((p3.pole && p3.order == 1));
    const double lam3 = special::lambda_completed(cplx(3.0, 0.0)).must().real();
    CHECK(std::abs(p3.residue - cplx(1.0 / (3.0 * lam3), 0.0)) < 1e-12);

    // res_{s=2/3} c_3 = -1/(3 Lambda(2)) = -2/pi.
    const MeroValue q3 = c_scattering(3, cplx(2.0 / 3.0, 0.0));
    REQUIRE((q3.pole && q3.order == 1));
    CHECK(std::abs(q3.residue - cplx(-2.0 / PI, 0.0)) < 1e-12);

    // A zero of Lambda(2s) is a flagged pole: s = rho_1 / 2.
    const MeroValue r = c_scattering(2, cplx(0.25, 14.134725141734693 / 2.0));
    CHECK(r.pole);
}

TEST_CASE("gamma_poly: closed forms, ratio form, removable point") {
    const cplx s(0.37, 1.21);
    CHECK(gamma_poly(2, 1, s) == cplx(0.0, 0.0));
    CHECK(std::abs(gamma_poly(2, 2, s) - s * (1.0 - s)) < 1e-15);
    CHECK(std::abs(gamma_poly(3, 3, s) - s * (1.0 - s) * (s + 1.0)) < 1e-14);

    // Ratio form s(1-s) [((n-1)s)^{h-1} - (1-s)^{h-1}] / (ns - 1).
    for (int n : {3, 4})
        for (int h = 2; h <= n; ++h) {
            const cplx num = std::pow((n - 1.0) * s, h - 1) - std::pow(1.0 - s, h - 1);
            const cplx ratio = s * (1.0 - s) * num / (static_cast<double>(n) * s - 1.0);
            CHECK(std::abs(gamma_poly(n, h, s) - ratio) < 1e-13 * std::abs(ratio));
        }

    // Removable point s = 1/n: gamma_h = s(1-s)(h-1)((n-1)/n)^{h-2};
    // for n = h = 4, s = 1/4 this is (3/16) * 3 * (9/16) = 81/256.
    const cplx quarter(0.25, 0.0);
    CHECK(std::abs(gamma_poly(4, 4, quarter) - cplx(81.0 / 256.0, 0.0)) < 1e-15);

    CHECK_THROWS_AS((void)gamma_poly(2, 3, s), std::invalid_argument);
    CHECK_THROWS_AS((void)gamma_poly(1, 1, s), std::invalid_argument);
}

TEST_CASE("hardy_z changes sign across the first zero of zeta_{Q(i)}") {
    const auto K4 = nfield::make_field(-4);
    const auto triv = lfun::trivial_character(K4);
    const double a = lfun::hardy_z(K4, triv, 6.00);
    const double b = lfun::hardy_z(K4, triv, 6.05);
    CHECK(a * b < 0.0);
}

TEST_CASE("find_zeros on zeta_{Q(i)} up to height 15, with audit") {
    const auto K4 = nfield::make_field(-4);
    const auto triv = lfun::trivial_character(K4);
    const lfun::ZeroList zl = lfun::find_zeros(K4, triv, 15.0, 1e-10);

    const double want[4] = {6.0209489047, 10.2437703042, 12.9880980123,
                            14.1347251417};
    REQUIRE(zl.ordinates.size() == 4);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(zl.ordinates[static_cast<size_t>(i)] - want[i]) < 1e-6);
    for (double r : zl.residuals) CHECK(r < 1e-8);
    CHECK(zl.audit_count == 4);
    CHECK(zl.audit_match);
    CHECK_FALSE(zl.multiplicity_flag);
    REQUIRE(zl.brackets.size() == 4);
    CHECK(zl.brackets[0].lo < want[0]);
    CHECK(zl.brackets[0].hi > want[0]);

    // JSON round trip keeps the payload.
    const lfun::ZeroList back = lfun::zerolist_from_json(lfun::zerolist_to_json(zl));
    CHECK(back.d == zl.d);
    CHECK(back.ordinates == zl.ordinates);
    CHECK(back.audit_match == zl.audit_match);

    CHECK_THROWS_AS((void)lfun::find_zeros(K4, triv, 50.0, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS((void)lfun::find_zeros(K4, triv, 10.0, 0.0), std::invalid_argument);
}
