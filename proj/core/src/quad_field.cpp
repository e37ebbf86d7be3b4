#include "qmono/quad_field.hpp"

#include "qmono/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qmono {

namespace {

void same_field(const FieldElement& x, const FieldElement& y) {
    if (x.delta != y.delta) throw std::invalid_argument("field elements over different discriminants");
}

long double to_ld(const Rat& q) {
    return boost::multiprecision::numerator(q).convert_to<long double>() /
           boost::multiprecision::denominator(q).convert_to<long double>();
}

Int isqrt(const Int& n) { return boost::multiprecision::sqrt(n); }

}  // namespace

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    same_field(x, y);
    return {x.r + y.r, x.s + y.s, x.delta};
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    same_field(x, y);
    return {x.r - y.r, x.s - y.s, x.delta};
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    same_field(x, y);
    return {x.r * y.r + Rat(x.delta) * x.s * y.s, x.r * y.s + x.s * y.r, x.delta};
}

FieldElement FieldElement::inverse() const {
    Rat n = norm(*this);
    if (n == 0) throw std::domain_error("inverse of zero field element");
    return {r / n, -s / n, delta};
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) { return x * y.inverse(); }

bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.delta == y.delta && x.r == y.r && x.s == y.s;
}

Rat norm(const FieldElement& x) { return x.r * x.r - Rat(x.delta) * x.s * x.s; }

long double FieldElement::to_long_double() const {
    long double root = std::sqrt(delta.convert_to<long double>());
    long double a = to_ld(r);
    long double b = to_ld(s) * root;
    // avoid cancellation: x = N(x) / conj(x) when r and s*sqrt(delta) have opposite signs
    if ((a > 0 && b < 0) || (a < 0 && b > 0)) return to_ld(norm(*this)) / (a - b);
    return a + b;
}

bool is_positive(const FieldElement& x) {
    // sign of r + s*sqrt(delta) decided exactly
    int sr = x.r.sign(), ss = x.s.sign();
    if (sr >= 0 && ss >= 0) return sr > 0 || ss > 0;
    if (sr <= 0 && ss <= 0) return false;
    Rat lhs = x.r * x.r, rhs = Rat(x.delta) * x.s * x.s;
    return sr > 0 ? lhs > rhs : rhs > lhs;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    os << r;
    if (s >= 0) os << " + " << s;
    else os << " - " << -s;
    os << "*sqrt(" << delta << ")";
    return os.str();
}

FieldElement pow(const FieldElement& x, long n) {
    FieldElement base = n < 0 ? x.inverse() : x;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    FieldElement acc = FieldElement::integer(1, x.delta);
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

FieldElement QuadraticIrrational::value() const {
    return {Rat(b, 2 * a), Rat(Int(1), 2 * a), delta};
}

std::string QuadraticIrrational::str() const {
    std::ostringstream os;
    os << "(a,b,c)=(" << a << "," << b << "," << c << "), delta=" << delta;
    return os.str();
}

FieldElement OrderUnit::value() const { return {Rat(u, 2), Rat(v, 2), delta}; }

StabilizerMatrix operator*(const StabilizerMatrix& x, const StabilizerMatrix& y) {
    return {x.g11 * y.g11 + x.g12 * y.g21, x.g11 * y.g12 + x.g12 * y.g22,
            x.g21 * y.g11 + x.g22 * y.g21, x.g21 * y.g12 + x.g22 * y.g22};
}

StabilizerMatrix StabilizerMatrix::inverse() const {
    if (det() != 1) throw std::domain_error("matrix not in SL(2,Z)");
    return {g22, -g12, -g21, g11};
}

bool StabilizerMatrix::stabilizes(const QuadraticIrrational& t) const {
    // g.theta = theta  <=>  g21 theta^2 + (g22 - g11) theta - g12 = 0
    FieldElement th = t.value();
    FieldElement lhs = FieldElement::integer(0, t.delta);
    lhs = FieldElement{Rat(g21), 0, t.delta} * th * th + FieldElement{Rat(g22 - g11), 0, t.delta} * th -
          FieldElement{Rat(g12), 0, t.delta};
    return lhs.r == 0 && lhs.s == 0;
}

std::string StabilizerMatrix::str() const {
    std::ostringstream os;
    os << "(" << g11 << "," << g12 << ";" << g21 << "," << g22 << ")";
    return os.str();
}

bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    Int r = isqrt(n);
    return r * r == n;
}

bool is_valid_discriminant(const Int& delta) {
    if (delta <= 0 || is_perfect_square(delta)) return false;
    Int m = delta % 4;
    return m == 0 || m == 1;
}

QuadraticIrrational classify(const Rat& p, const Rat& q, const Int& d) {
    if (q == 0) throw NonQuadratic("q = 0 gives a rational number");
    if (d <= 0) throw NonQuadratic("d must be positive");
    if (is_perfect_square(d)) throw NonQuadratic("d = " + d.str() + " is a perfect square");

    // theta = p + q sqrt(d) is the '+' root of x^2 - 2p x + (p^2 - q^2 d)
    Rat B = 2 * p, C = p * p - q * q * Rat(d);
    Int L = boost::multiprecision::lcm(boost::multiprecision::denominator(B),
                                       boost::multiprecision::denominator(C));
    Int a = L;
    Int b = boost::multiprecision::numerator(B * Rat(L));
    Int c = boost::multiprecision::numerator(C * Rat(L));
    Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(a, b), c);
    a /= g;
    b /= g;
    c /= g;
    if (q < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    QuadraticIrrational t{a, b, c, b * b - 4 * a * c};
    // exact cross-check: b/(2a) = p and delta/(4a^2) = q^2 d
    if (Rat(t.b, 2 * t.a) != p || Rat(t.delta, 4 * t.a * t.a) != q * q * Rat(d))
        throw NonQuadratic("internal classification mismatch");
    return t;
}

namespace {

OrderUnit unit_scan(const Int& delta, std::uint64_t bound, bool allow_negative) {
    if (!is_valid_discriminant(delta))
        throw InvalidDiscriminant(delta.str() + " is not a positive non-square discriminant = 0,1 mod 4");
    for (std::uint64_t v = 1; v <= bound; ++v) {
        Int dv2 = delta * Int(v) * Int(v);
        if (allow_negative && dv2 > 4 && is_perfect_square(dv2 - 4)) return {isqrt(dv2 - 4), Int(v), delta};
        if (is_perfect_square(dv2 + 4)) return {isqrt(dv2 + 4), Int(v), delta};
    }
    throw SearchExhausted("no unit with v <= " + std::to_string(bound) + " for delta " + delta.str());
}

}  // namespace

OrderUnit pell_unit(const Int& delta, std::uint64_t bound) { return unit_scan(delta, bound, false); }

OrderUnit fundamental_unit(const Int& delta, std::uint64_t bound) { return unit_scan(delta, bound, true); }

StabilizerMatrix phi(const OrderUnit& unit, const QuadraticIrrational& t) {
    if (unit.delta != t.delta) throw NonIntegral("unit and theta have different discriminants");
    if (unit.u * unit.u - t.delta * unit.v * unit.v != 4) throw NonIntegral("u^2 - delta v^2 != 4");
    Int p = unit.u + t.b * unit.v, m = unit.u - t.b * unit.v;
    if (p % 2 != 0 || m % 2 != 0) throw NonIntegral("u +- b v is odd");
    return {p / 2, -t.c * unit.v, t.a * unit.v, m / 2};
}

FieldElement phi_inverse(const StabilizerMatrix& g, const QuadraticIrrational& t) {
    if (g.det() != 1 || !g.stabilizes(t)) throw NotStabilizer(g.str() + " does not fix theta");
    return FieldElement{Rat(g.g21), 0, t.delta} * t.value() + FieldElement{Rat(g.g22), 0, t.delta};
}

UnitPowerData unit_power_data(long m, const QuadraticIrrational& t) {
    StabilizerMatrix g = phi(pell_unit(t.delta), t);
    if (m < 0) g = g.inverse();
    StabilizerMatrix acc = StabilizerMatrix::identity();
    for (long i = 0; i < (m < 0 ? -m : m); ++i) acc = acc * g;
    return {m, acc.g11, acc.g12, acc.g21, acc.g22};
}

}  // namespace qmono
