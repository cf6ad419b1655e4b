#include "torlab/nfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include "json.hpp"

namespace torlab::nfield {

namespace {

constexpr double PI = std::numbers::pi;
using i128 = __int128;

long long checked_narrow(i128 v, const char* what) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error(what);
    return static_cast<long long>(v);
}

long long isqrt_ll(long long n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_squarefree(long long n) {
    n = std::llabs(n);
    for (long long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        while (n % p == 0) n /= p;
    }
    return true;
}

long long mod4(long long d) { return ((d % 4) + 4) % 4; }

} // namespace

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(std::llabs(n), d);
    if (g > 1) { n /= g; d /= g; }
    num = n;
    den = d;
}

Rational Rational::operator+(const Rational& o) const {
    i128 n = i128(num) * o.den + i128(o.num) * den;
    i128 d = i128(den) * o.den;
    // reduce in 128 bits before narrowing
    i128 a = n < 0 ? -n : n, b = d;
    while (b) { i128 t = a % b; a = b; b = t; }
    if (a == 0) a = 1;
    return Rational(checked_narrow(n / a, "Rational add overflow"),
                    checked_narrow(d / a, "Rational add overflow"));
}

Rational Rational::operator-(const Rational& o) const {
    return *this + Rational(-o.num, o.den);
}

Rational Rational::operator*(const Rational& o) const {
    i128 n = i128(num) * o.num;
    i128 d = i128(den) * o.den;
    i128 a = n < 0 ? -n : n, b = d;
    while (b) { i128 t = a % b; a = b; b = t; }
    if (a == 0) a = 1;
    return Rational(checked_narrow(n / a, "Rational mul overflow"),
                    checked_narrow(d / a, "Rational mul overflow"));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw std::invalid_argument("Rational: division by zero");
    return *this * Rational(o.den, o.num);
}

bool is_fundamental_discriminant(long long d) {
    if (d == 0 || d == 1) return false;
    long long m = mod4(d);
    if (m == 1) return is_squarefree(d);
    if (m == 0) {
        long long q = d / 4;
        long long qm = mod4(q);
        return (qm == 2 || qm == 3) && is_squarefree(q);
    }
    return false;
}

std::vector<QuadraticForm> reduced_forms(long long d) {
    if (d >= 0) throw std::invalid_argument("reduced_forms: need d < 0");
    std::vector<QuadraticForm> out;
    long long amax = isqrt_ll((-d) / 3);
    for (long long a = 1; a <= amax; ++a) {
        for (long long b = -a + 1; b <= a; ++b) {
            long long num = b * b - d;
            if (num % (4 * a) != 0) continue;
            long long c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (a == c || -b == a)) continue; // boundary convention b >= 0
            out.push_back({a, b, c});
        }
    }
    // principal form first, then lexicographic
    long long t = (mod4(d) == 1) ? 1 : 0;
    QuadraticForm principal{1, t, (t * t - d) / 4};
    std::sort(out.begin(), out.end(), [&](const QuadraticForm& f, const QuadraticForm& g) {
        if ((f == principal) != (g == principal)) return f == principal;
        return std::tie(f.a, f.b, f.c) < std::tie(g.a, g.b, g.c);
    });
    return out;
}

QuadraticForm reduce_form(QuadraticForm f) {
    if (f.disc() >= 0) throw std::invalid_argument("reduce_form: need negative discriminant");
    if (f.a <= 0) throw std::invalid_argument("reduce_form: need a > 0");
    for (int iter = 0; iter < 100000; ++iter) {
        // normalize: -a < b <= a
        if (f.b > f.a || f.b <= -f.a) {
            long long k = (2 * f.a - 1 - f.b);
            long long q = k >= 0 ? k / (2 * f.a) : -((-k + 2 * f.a - 1) / (2 * f.a));
            // b + 2 a q in (-a, a]
            long long b2 = f.b + 2 * f.a * q;
            long long c2 = f.c + f.b * q + f.a * q * q;
            f.b = b2;
            f.c = c2;
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        if (f.b < 0 && -f.b == f.a) f.b = -f.b;
        bool reduced = (std::llabs(f.b) <= f.a) && (f.a <= f.c) &&
                       !(f.b < 0 && (std::llabs(f.b) == f.a || f.a == f.c));
        if (reduced) return f;
    }
    throw std::runtime_error("reduce_form: did not terminate");
}

namespace {

// ---- real quadratic machinery (d > 0) ----

// floor((P + sqrt(d)) / Q), exact, any sign of P and Q != 0.
long long cf_floor(long long P, long long Q, long long d) {
    long long t = isqrt_ll(d);
    auto ge = [&](long long a) {
        // (P + sqrt d)/Q >= a ?
        if (Q > 0) {
            long long rhs = a * Q - P; // sqrt d >= rhs
            if (rhs <= 0) return true;
            return d >= rhs * rhs;
        }
        long long rhs = a * Q - P; // sqrt d <= rhs
        if (rhs < 0) return false;
        return d <= rhs * rhs;
    };
    long long est = static_cast<long long>(std::floor((P + std::sqrt(double(d))) / double(Q)));
    while (!ge(est)) --est;
    while (ge(est + 1)) ++est;
    (void)t;
    return est;
}

struct UnitData {
    double regulator = 0.0;
    int period_len = 0;
    int norm = 1;
    bool exact_valid = false;
    long long A = 0, B = 0; // eps = (A + B sqrt d)/2
};

UnitData fundamental_unit(long long d) {
    long long P = (mod4(d) == 1) ? 1 : 0;
    long long Q = 2;
    std::map<std::pair<long long, long long>, int> seen;
    std::vector<std::pair<long long, long long>> steps; // (P_k, Q_k)
    int j = -1;
    for (int k = 0; k < 400000; ++k) {
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) { j = it->second; break; }
        seen[key] = k;
        steps.push_back(key);
        long long a = cf_floor(P, Q, d);
        long long P2 = a * Q - P;
        long long Q2 = (d - P2 * P2) / Q;
        P = P2;
        Q = Q2;
    }
    if (j < 0) throw std::runtime_error("fundamental_unit: period not found");

    UnitData u;
    u.period_len = static_cast<int>(steps.size()) - j;
    u.norm = (u.period_len % 2 == 0) ? 1 : -1;

    long double R = 0.0L;
    const long double sqd = sqrtl(static_cast<long double>(d));
    for (int k = j; k < static_cast<int>(steps.size()); ++k)
        R += logl((steps[k].first + sqd) / steps[k].second);
    u.regulator = static_cast<double>(R);

    // exact coordinates: lambda = prod (P_k + sqrt d)/Q_k = (A + B sqrt d)/2
    try {
        Rational uu(1), vv(0); // lambda = uu + vv sqrt d
        for (int k = j; k < static_cast<int>(steps.size()); ++k) {
            Rational Pk(steps[k].first), Qk(steps[k].second), dd(d);
            Rational nu = (uu * Pk + vv * dd) / Qk;
            Rational nv = (uu + vv * Pk) / Qk;
            uu = nu;
            vv = nv;
        }
        Rational A2 = uu * Rational(2), B2 = vv * Rational(2);
        if (A2.den == 1 && B2.den == 1) {
            u.A = A2.num;
            u.B = B2.num;
            i128 nrm = (i128(u.A) * u.A - i128(d) * u.B * u.B) / 4;
            if (nrm == u.norm) u.exact_valid = true;
        }
    } catch (const std::overflow_error&) {
        u.exact_valid = false;
    }
    return u;
}

bool indef_reduced(long long a, long long b, long long d) {
    // 0 < b < sqrt d and |sqrt d - 2|a|| < b
    if (b <= 0 || b * b >= d) return false;
    long long aa = std::llabs(a);
    if (d >= (b + 2 * aa) * (b + 2 * aa)) return false; // need sqrt d < b + 2|a|
    if (2 * aa > b && (2 * aa - b) * (2 * aa - b) >= d) return false;
    return true;
}

QuadraticForm indef_rho(const QuadraticForm& f, long long d) {
    long long cabs = std::llabs(f.c);
    long long t = isqrt_ll(d);
    // smallest b' = -b (mod 2|c|) with b' > sqrt d - 2|c|, i.e. b' >= t - 2|c| + 1
    long long lo = t - 2 * cabs + 1;
    long long r = ((-f.b - lo) % (2 * cabs) + 2 * cabs) % (2 * cabs);
    long long b2 = lo + r;
    long long c2 = (b2 * b2 - d) / (4 * f.c);
    return {f.c, b2, c2};
}

QuadraticForm indef_reduce(QuadraticForm f, long long d) {
    for (int i = 0; i < 100000; ++i) {
        if (indef_reduced(f.a, f.b, d)) return f;
        f = indef_rho(f, d);
    }
    throw std::runtime_error("indef_reduce: did not terminate");
}

// All reduced indefinite forms of discriminant d > 0.
std::vector<QuadraticForm> indef_reduced_forms(long long d) {
    std::vector<QuadraticForm> out;
    long long t = isqrt_ll(d);
    for (long long b = 1; b <= t; ++b) {
        if (mod4(b * b - d) != 0) continue;
        long long M = (d - b * b) / 4; // = -a c > 0
        for (long long adiv = 1; adiv * adiv <= M; ++adiv) {
            if (M % adiv != 0) continue;
            for (long long aa : {adiv, M / adiv}) {
                if (!indef_reduced(aa, b, d)) continue;
                long long c = -(M / aa);
                out.push_back({aa, b, c});
                out.push_back({-aa, b, -c});
                if (aa * aa == M) break; // avoid duplicate when adiv = M/adiv
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadraticForm& f, const QuadraticForm& g) {
        return std::tie(f.a, f.b, f.c) < std::tie(g.a, g.b, g.c);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct RealClassData {
    int h = 0;
    std::vector<QuadraticForm> reps; // principal first
};

RealClassData real_classes(long long d, int unit_norm) {
    auto forms = indef_reduced_forms(d);
    std::map<std::tuple<long long, long long, long long>, int> cycle_of;
    std::vector<std::vector<QuadraticForm>> cycles;
    for (const auto& f : forms) {
        auto key = std::make_tuple(f.a, f.b, f.c);
        if (cycle_of.count(key)) continue;
        std::vector<QuadraticForm> cyc;
        QuadraticForm g = f;
        for (int i = 0; i < 100000; ++i) {
            auto k2 = std::make_tuple(g.a, g.b, g.c);
            if (cycle_of.count(k2)) break;
            cycle_of[k2] = static_cast<int>(cycles.size());
            cyc.push_back(g);
            g = indef_rho(g, d);
        }
        cycles.push_back(cyc);
    }
    // wide classes: orbits of cycles under (a,b,c) -> (-a,b,-c) when N(eps)=+1
    std::vector<int> wide_of(cycles.size(), -1);
    int nwide = 0;
    for (size_t i = 0; i < cycles.size(); ++i) {
        if (wide_of[i] >= 0) continue;
        wide_of[i] = nwide;
        if (unit_norm == 1) {
            const auto& f = cycles[i].front();
            QuadraticForm sf = indef_reduce({-f.a, f.b, -f.c}, d);
            int jc = cycle_of.at(std::make_tuple(sf.a, sf.b, sf.c));
            wide_of[jc] = nwide;
        }
        ++nwide;
    }
    RealClassData out;
    out.h = nwide;
    // representative per wide class: lexicographically smallest member form
    std::vector<QuadraticForm> rep(nwide, {0, 0, 0});
    std::vector<bool> have(nwide, false);
    for (size_t i = 0; i < cycles.size(); ++i)
        for (const auto& f : cycles[i]) {
            int w = wide_of[i];
            if (!have[w] || std::tie(f.a, f.b, f.c) < std::tie(rep[w].a, rep[w].b, rep[w].c)) {
                rep[w] = f;
                have[w] = true;
            }
        }
    // principal class first
    long long t0 = (mod4(d) == 1) ? 1 : 0;
    QuadraticForm pr = indef_reduce({1, t0, (t0 * t0 - d) / 4}, d);
    int wpr = wide_of[cycle_of.at(std::make_tuple(pr.a, pr.b, pr.c))];
    out.reps.push_back(rep[wpr]);
    std::vector<QuadraticForm> rest;
    for (int w = 0; w < nwide; ++w)
        if (w != wpr) rest.push_back(rep[w]);
    std::sort(rest.begin(), rest.end(), [](const QuadraticForm& f, const QuadraticForm& g) {
        return std::tie(f.a, f.b, f.c) < std::tie(g.a, g.b, g.c);
    });
    out.reps.insert(out.reps.end(), rest.begin(), rest.end());
    return out;
}

} // namespace

QuadraticField make_field(long long d) {
    if (!is_fundamental_discriminant(d))
        throw std::invalid_argument("make_field: d is not a fundamental discriminant");
    if (std::llabs(d) > 1000000)
        throw std::invalid_argument("make_field: |d| > 10^6");

    QuadraticField K;
    K.d = d;
    if (d < 0) {
        auto forms = reduced_forms(d);
        K.h = static_cast<int>(forms.size());
        for (int i = 0; i < K.h; ++i) K.classes.push_back({forms[i], i});
        K.regulator = 1.0;
        K.torsion_e = (d == -3) ? 6 : (d == -4) ? 4 : 2;
        K.ck = 2.0 * PI * K.h * K.regulator / K.torsion_e;
    } else {
        UnitData u = fundamental_unit(d);
        K.eps.a = u.A;
        K.eps.b = u.B;
        K.eps.exact_valid = u.exact_valid;
        K.eps.norm = u.norm;
        K.regulator = u.regulator;
        K.torsion_e = 2;
        auto rc = real_classes(d, u.norm);
        K.h = rc.h;
        for (int i = 0; i < K.h; ++i) K.classes.push_back({rc.reps[i], i});
        K.ck = 4.0 * K.h * K.regulator / K.torsion_e;
    }
    K.pk = pk_matrix(K);
    return K;
}

std::array<std::array<double, 2>, 2> pk_matrix(const QuadraticField& K) {
    double t = (mod4(K.d) == 1) ? 1.0 : 0.0;
    double ad = static_cast<double>(std::llabs(K.d));
    return {{{2.0, t}, {t, (t * t + ad) / 2.0}}};
}

cplx qk_point(const QuadraticField& K) {
    const auto& p = K.pk;
    double a = p[0][0], b = p[0][1], c = p[1][1];
    double y2 = a * c - b * b;
    if (y2 <= 0.0) throw std::domain_error("qk_point: Gram matrix not definite");
    return {b / a, std::sqrt(y2) / a};
}

std::array<std::array<Rational, 2>, 2> pi_matrix(const QuadraticField& K,
                                                 const Rational& xi0,
                                                 const Rational& xi1) {
    long long t = (mod4(K.d) == 1) ? 1 : 0;
    Rational c0((K.d - t * t) / 4); // w^2 = c0 + t w
    Rational tt(t);
    return {{{xi0, xi1 * c0}, {xi1, xi0 + xi1 * tt}}};
}

Rational field_norm(const QuadraticField& K, const Rational& xi0, const Rational& xi1) {
    long long t = (mod4(K.d) == 1) ? 1 : 0;
    Rational nw((t * t - K.d) / 4); // N(w)
    return xi0 * xi0 + xi0 * xi1 * Rational(t) + xi1 * xi1 * nw;
}

cplx heegner_point(const QuadraticForm& f) {
    long long d = f.disc();
    if (d >= 0 || f.a <= 0) throw std::invalid_argument("heegner_point: need definite form, a > 0");
    return {-static_cast<double>(f.b) / (2.0 * f.a),
            std::sqrt(static_cast<double>(-d)) / (2.0 * f.a)};
}

cplx GeodesicSegment::point(double t) const {
    // z(t) = (w_plus * i e^t + w_minus) / (i e^t + 1); unit hyperbolic speed.
    cplx zeta(0.0, std::exp(t));
    return (w_plus * zeta + w_minus) / (zeta + 1.0);
}

GeodesicSegment closed_geodesic(const QuadraticField& K, const QuadraticForm& f) {
    if (K.d <= 0) throw std::invalid_argument("closed_geodesic: need d > 0");
    if (f.disc() != K.d) throw std::invalid_argument("closed_geodesic: form discriminant mismatch");
    GeodesicSegment g;
    double sq = std::sqrt(static_cast<double>(K.d));
    double r1 = (-f.b + sq) / (2.0 * f.a);
    double r2 = (-f.b - sq) / (2.0 * f.a);
    g.w_minus = std::min(r1, r2);
    g.w_plus = std::max(r1, r2);
    g.center = 0.5 * (g.w_minus + g.w_plus);
    g.radius = 0.5 * (g.w_plus - g.w_minus);
    // eps_+ = eps if N(eps) = +1, else eps^2; length = 2 log eps_+
    g.length = (K.eps.norm == 1) ? 2.0 * K.regulator : 4.0 * K.regulator;
    return g;
}

double ck_constant(const QuadraticField& K) { return K.ck; }

std::string field_to_json(const QuadraticField& K) {
    nlohmann::ordered_json j;
    j["d"] = K.d;
    j["h"] = K.h;
    auto forms = nlohmann::ordered_json::array();
    for (const auto& c : K.classes) forms.push_back({c.form.a, c.form.b, c.form.c});
    j["forms"] = forms;
    j["eps"] = {{"a", K.eps.a}, {"b", K.eps.b}, {"exact", K.eps.exact_valid}, {"norm", K.eps.norm}};
    j["regulator"] = K.regulator;
    j["e"] = K.torsion_e;
    j["cK"] = K.ck;
    j["pK"] = {{K.pk[0][0], K.pk[0][1]}, {K.pk[1][0], K.pk[1][1]}};
    return j.dump();
}

QuadraticField field_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    QuadraticField K;
    K.d = j.at("d").get<long long>();
    K.h = j.at("h").get<int>();
    int idx = 0;
    for (const auto& f : j.at("forms"))
        K.classes.push_back({{f.at(0).get<long long>(), f.at(1).get<long long>(),
                              f.at(2).get<long long>()},
                             idx++});
    K.eps.a = j.at("eps").at("a").get<long long>();
    K.eps.b = j.at("eps").at("b").get<long long>();
    K.eps.exact_valid = j.at("eps").at("exact").get<bool>();
    K.eps.norm = j.at("eps").at("norm").get<int>();
    K.regulator = j.at("regulator").get<double>();
    K.torsion_e = j.at("e").get<int>();
    K.ck = j.at("cK").get<double>();
    auto p = j.at("pK");
    K.pk = {{{p.at(0).at(0).get<double>(), p.at(0).at(1).get<double>()},
             {p.at(1).at(0).get<double>(), p.at(1).at(1).get<double>()}}};
    return K;
}

} // namespace torlab::nfield
