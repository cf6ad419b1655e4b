#pragma once
// Real and imaginary quadratic fields at desk scale: fundamental
// discriminants, reduced binary quadratic forms, class numbers, fundamental
// units via continued fractions, Heegner points and closed geodesics, and
// the archimedean constant c_K = 2^{r1} (2 pi)^{r2} h R / e.

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace torlab::nfield {

using cplx = std::complex<double>;

// Exact rational over int64 with __int128-checked arithmetic.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d);

    Rational operator+(const Rational&) const;
    Rational operator-(const Rational&) const;
    Rational operator*(const Rational&) const;
    Rational operator/(const Rational&) const;
    bool operator==(const Rational&) const = default;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// a x^2 + b x y + c y^2 with discriminant b^2 - 4 a c.
struct QuadraticForm {
    long long a = 0, b = 0, c = 0;
    long long disc() const { return b * b - 4 * a * c; }
    bool operator==(const QuadraticForm&) const = default;
};

struct IdealClass {
    QuadraticForm form; // reduced representative (principal class at index 0)
    int index = 0;
};

// Fundamental unit (a + b sqrt(d))/2; exact coordinates when they fit int64.
struct FundamentalUnit {
    long long a = 0, b = 0;
    bool exact_valid = false;
    int norm = 1; // N(eps) = ±1
};

struct QuadraticField {
    long long d = 0; // fundamental discriminant
    int h = 0;       // (wide) class number
    std::vector<IdealClass> classes;
    FundamentalUnit eps;    // d > 0 only
    double regulator = 1.0; // R; 1 by convention when d < 0
    int torsion_e = 2;      // 6 (d = -3), 4 (d = -4), 2 otherwise
    double ck = 0.0;        // 2^{r1} (2 pi)^{r2} h R / e
    std::array<std::array<double, 2>, 2> pk{}; // trace-form Gram matrix
};

bool is_fundamental_discriminant(long long d);

// Requires fundamental d, 0 < |d| <= 10^6.
QuadraticField make_field(long long d);

// Gram matrix of the standard integral basis (1, w), w = (t + sqrt(d))/2 with
// t = d mod 2; det = |d|.
std::array<std::array<double, 2>, 2> pk_matrix(const QuadraticField& K);

// Image of the Gram matrix [[a,b],[b,c]] in the upper half plane:
// z = (b + i sqrt(a c - b^2)) / a.
cplx qk_point(const QuadraticField& K);

// Matrix of multiplication by xi = xi0 + xi1 w in basis (1, w);
// det = Norm(xi), trace = Tr(xi), exactly.
std::array<std::array<Rational, 2>, 2> pi_matrix(const QuadraticField& K,
                                                 const Rational& xi0,
                                                 const Rational& xi1);
Rational field_norm(const QuadraticField& K, const Rational& xi0, const Rational& xi1);

// All reduced forms of discriminant d < 0 (|b| <= a <= c, b >= 0 when
// |b| = a or a = c), principal form first.
std::vector<QuadraticForm> reduced_forms(long long d);

// Gauss reduction for definite forms (d < 0, a > 0).
QuadraticForm reduce_form(QuadraticForm f);

// Heegner point z_A = (-b + i sqrt(|d|)) / (2a) of a positive definite form.
cplx heegner_point(const QuadraticForm& f);

// Closed geodesic attached to an indefinite form class: the semicircle over
// the real roots of a x^2 + b x + c, traversed once with unit hyperbolic
// speed; length = 2 log eps_+ (eps_+ = totally positive fundamental unit
// modulo ±1).
struct GeodesicSegment {
    double w_minus = 0.0, w_plus = 0.0; // real endpoints
    double center = 0.0, radius = 0.0;
    double length = 0.0;
    cplx point(double t) const; // t in [0, length)
};

GeodesicSegment closed_geodesic(const QuadraticField& K, const QuadraticForm& f);

double ck_constant(const QuadraticField& K);

// JSON record {d, h, forms, eps, regulator, e, cK, pK}.
std::string field_to_json(const QuadraticField& K);
QuadraticField field_from_json(const std::string& text);

} // namespace torlab::nfield
