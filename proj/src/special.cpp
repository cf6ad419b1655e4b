#include "torlab/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace torlab::special {

namespace {

constexpr double PI = std::numbers::pi;

// True when s is within tol of a non-positive integer -k (k >= 0).
bool near_nonpositive_integer(cplx s, double tol, long* k_out) {
    if (std::abs(s.imag()) > tol) return false;
    double r = std::round(s.real());
    if (r > 0.5) return false;
    if (std::abs(s.real() - r) > tol) return false;
    *k_out = static_cast<long>(-r);
    return true;
}

// Stirling series; requires Re z > 0 and |z| >= 25.
cplx stirling_log_gamma(cplx z) {
    const cplx inv2 = 1.0 / (z * z);
    cplx sum = 0.0;
    cplx zp = 1.0 / z;
    for (int j = 1; j <= 10; ++j) {
        sum += BernoulliTable::value(2 * j) / (2.0 * j * (2.0 * j - 1.0)) * zp;
        zp *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * PI) + sum;
}

double factorial(long k) {
    double f = 1.0;
    for (long i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return f;
}

} // namespace

const std::array<BernoulliTable::Entry, 15>& BernoulliTable::entries() {
    // B_2, B_4, ..., B_30 as exact rationals.
    static const std::array<Entry, 15> tab = {{
        {1, 6},
        {-1, 30},
        {1, 42},
        {-1, 30},
        {5, 66},
        {-691, 2730},
        {7, 6},
        {-3617, 510},
        {43867, 798},
        {-174611, 330},
        {854513, 138},
        {-236364091, 2730},
        {8553103, 6},
        {-23749461029LL, 870},
        {8615841276005LL, 14322},
    }};
    return tab;
}

double BernoulliTable::value(int even_index) {
    if (even_index < 2 || even_index > 30 || even_index % 2 != 0)
        throw std::invalid_argument("BernoulliTable::value: need even index in [2,30]");
    const Entry& e = entries()[even_index / 2 - 1];
    return static_cast<double>(e.num) / static_cast<double>(e.den);
}

MeroValue log_gamma(cplx s) {
    long k = 0;
    if (near_nonpositive_integer(s, 1e-12, &k)) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return MeroValue::simple_pole(sign / factorial(k)); // residue of Gamma at -k
    }
    if (s.real() < 0.5) {
        if (std::abs(s.imag()) > 200.0)
            throw PrecisionError("log_gamma: reflection overflow for |Im s| > 200");
        cplx lg = log_gamma(1.0 - s).must();
        return MeroValue::finite(std::log(PI / std::sin(PI * s)) - lg);
    }
    cplx z = s;
    cplx shift = 0.0;
    while (std::abs(z) < 25.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return MeroValue::finite(stirling_log_gamma(z) - shift);
}

MeroValue gamma_fn(cplx s) {
    MeroValue lg = log_gamma(s);
    if (lg.pole) return lg;
    return MeroValue::finite(std::exp(lg.value));
}

MeroValue gamma_R(cplx s) {
    long k = 0;
    if (near_nonpositive_integer(s / 2.0, 1e-12, &k)) {
        // Gamma_R(s) ~ 2 (-1)^k pi^k / k! / (s + 2k) near s = -2k
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return MeroValue::simple_pole(2.0 * sign * std::pow(PI, k) / factorial(k));
    }
    cplx lg = log_gamma(s / 2.0).must();
    return MeroValue::finite(std::exp(lg - 0.5 * s * std::log(PI)));
}

MeroValue gamma_C(cplx s) {
    long k = 0;
    if (near_nonpositive_integer(s, 1e-12, &k)) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return MeroValue::simple_pole(sign * std::pow(2.0 * PI, 1.0 + k) / factorial(k));
    }
    cplx lg = log_gamma(s).must();
    return MeroValue::finite(std::exp(lg + (1.0 - s) * std::log(2.0 * PI)));
}

MeroValue hurwitz_zeta(cplx s, double a) {
    if (!(a > 0.0) || a > 1.0)
        throw std::invalid_argument("hurwitz_zeta: need a in (0, 1]");
    if (std::abs(s.imag()) > 85.0 || s.real() < -3.0 || s.real() > 80.0)
        throw PrecisionError("hurwitz_zeta: argument outside accuracy window");
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-12)
        return MeroValue::simple_pole(1.0);

    // Euler-Maclaurin: direct sum to N-1, then integral + correction terms.
    const double t = std::abs(s.imag());
    const double target = std::max(18.0, 0.7 * t + 12.0);
    const int N = static_cast<int>(std::ceil(target - a)) + 1;
    const int J = 12;

    cplx sum = 0.0;
    for (int k = 0; k < N; ++k) sum += std::exp(-s * std::log(a + k));

    const double w = a + N;
    const double logw = std::log(w);
    const cplx winv_s = std::exp(-s * logw); // w^{-s}
    sum += std::exp((1.0 - s) * logw) / (s - 1.0);
    sum += 0.5 * winv_s;

    // sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * w^{-s-2j+1}
    cplx poch = s;             // (s)_1
    cplx wpow = winv_s / w;    // w^{-s-1}
    double fact = 2.0;         // (2j)!
    for (int j = 1; j <= J; ++j) {
        sum += BernoulliTable::value(2 * j) / fact * poch * wpow;
        poch *= (s + cplx(2.0 * j - 1.0)) * (s + cplx(2.0 * j));
        wpow /= w * w;
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    return MeroValue::finite(sum);
}

MeroValue riemann_zeta(cplx s) { return hurwitz_zeta(s, 1.0); }

double digamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("digamma: need x > 0");
    double acc = 0.0;
    while (x < 24.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double w = 1.0 / (x * x);
    double corr = 0.0, wp = w;
    for (int twoj = 2; twoj <= 14; twoj += 2) {
        corr += BernoulliTable::value(twoj) / twoj * wp;
        wp *= w;
    }
    return acc + std::log(x) - 0.5 / x - corr;
}

MeroValue lambda_completed(cplx s) {
    if (std::abs(s) < 1e-12) return MeroValue::simple_pole(-1.0);
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-12) return MeroValue::simple_pole(1.0);
    if (s.real() < 0.5) {
        // Evaluate through the exact symmetry Lambda(s) = Lambda(1-s); this
        // keeps the zeta/gamma factors in their accurate half plane and
        // resolves the trivial-zero/gamma-pole collisions exactly.  A simple
        // pole at w = 1-s maps back with negated residue (dw = -ds).
        MeroValue r = lambda_completed(1.0 - s);
        if (r.pole) r.residue = -r.residue;
        return r;
    }
    MeroValue gr = gamma_R(s);
    if (gr.pole) // unreachable: reflection keeps Re s >= 0.5
        throw PrecisionError("lambda_completed: gamma factor pole off expected set");
    return MeroValue::finite(gr.value * riemann_zeta(s).must());
}

namespace {

// One trapezoid level for the shifted-contour Bessel integral.
// Computes h * sum_k F(k h) where
//   F(v) = (1/2) exp( -x cosh(v - i thetâ) - nu (v - i thetâ) + pi |Im nu|/2 )
// i.e. the scaled integrand; walks outward in both directions until the
// magnitude drops `cutoff` e-folds below the running maximum.
struct TrapResult {
    cplx integral;
    double mag_sum; // h * sum |F|, for cancellation-aware error floor
    int nodes;
};

TrapResult bessel_trap_level(cplx nu, double x, double theta, double h, double cutoff) {
    const double sig = nu.real();
    const double t = nu.imag();
    const double th = (t >= 0.0) ? theta : -theta; // signed shift, u = v - i*th
    const double ct = std::cos(theta), st = std::sin(th);
    const double prefac = std::abs(t) * (PI / 2.0 - theta);

    // F(v) = (1/2) exp(-x cosh(v - i th) - nu (v - i th) + pi |t| / 2) with
    //   Re = -x cos(theta) cosh v - sig v + |t| (pi/2 - theta)
    //   Im =  x sin(th) sinh v - t v + sig th
    auto node = [&](double v) -> cplx {
        const double re = -x * ct * std::cosh(v) - sig * v + prefac;
        const double im = x * st * std::sinh(v) - t * v + sig * th;
        return 0.5 * std::exp(cplx(re, im));
    };

    cplx sum = node(0.0);
    double mag = std::abs(sum);
    double maxlog = -x * ct + prefac; // exponent at v = 0 (sig term zero)
    int nodes = 1;
    for (double dir : {1.0, -1.0}) {
        for (int k = 1; k < 2000000; ++k) {
            const double v = dir * k * h;
            const double re = -x * ct * std::cosh(v) - sig * v + prefac;
            maxlog = std::max(maxlog, re);
            if (re < maxlog - cutoff) break;
            const cplx f = node(v);
            sum += f;
            mag += std::abs(f);
            ++nodes;
        }
    }
    return {sum * h, mag * h, nodes};
}

} // namespace

BesselEval bessel_k(cplx nu, double x, const QuadratureSpec& spec) {
    if (!(x > 0.0)) throw std::invalid_argument("bessel_k: need x > 0");
    const double at = std::abs(nu.imag());
    if (x < 0.05 || at > 40.0 || std::abs(nu.real()) > 3.0)
        throw PrecisionError("bessel_k: outside window x >= 0.05, |Im nu| <= 40, |Re nu| <= 3");

    // Contour shift: delta = pi/2 - theta chosen near the error-exponent
    // minimizer arccos(|t|/x); delta = pi/2 (theta = 0) is the real axis.
    double delta = (at < 1e-14) ? PI / 2.0 : std::acos(std::min(1.0, at / x));
    delta = std::clamp(delta, 0.08, PI / 2.0);
    const double theta = PI / 2.0 - delta;

    double h = spec.initial_step;
    TrapResult cur = bessel_trap_level(nu, x, theta, h, spec.cutoff_exp);
    double err = std::abs(cur.integral);
    for (int level = 1; level <= spec.max_levels; ++level) {
        TrapResult next = bessel_trap_level(nu, x, theta, h / 2.0, spec.cutoff_exp);
        err = std::abs(next.integral - cur.integral);
        cur = next;
        h /= 2.0;
        if (err <= std::max(1e-14 * std::abs(cur.integral), 1e-300)) break;
    }

    BesselEval out;
    out.nu = nu;
    out.x = x;
    out.scaled = cur.integral;
    out.value = cur.integral * std::exp(-PI * at / 2.0);
    char buf[64];
    std::snprintf(buf, sizeof buf, "contour_trapezoid(theta=%.4f)", theta);
    out.method = buf;
    out.error_estimate = err + 1e-16 * cur.mag_sum;
    out.node_count = cur.nodes;
    return out;
}

cplx bessel_k_scaled(cplx nu, double x) { return bessel_k(nu, x).scaled; }

} // namespace torlab::special
