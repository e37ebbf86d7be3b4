#pragma once

// Exact arithmetic in real quadratic fields Q[sqrt(D)].

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace qmono {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// r + s*sqrt(delta)
struct FieldElement {
    Rat r, s;
    Int delta;

    FieldElement() : r(0), s(0), delta(5) {}
    FieldElement(Rat r_, Rat s_, Int d) : r(std::move(r_)), s(std::move(s_)), delta(std::move(d)) {}
    static FieldElement integer(long v, const Int& delta) { return {Rat(v), Rat(0), delta}; }

    FieldElement conj() const { return {r, -s, delta}; }
    FieldElement inverse() const;
    long double to_long_double() const;
    std::string str() const;

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator-(const FieldElement& x) { return {-x.r, -x.s, x.delta}; }
    friend bool operator==(const FieldElement& x, const FieldElement& y);
    friend bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }
};

FieldElement pow(const FieldElement& x, long n);
bool is_positive(const FieldElement& x);
Rat norm(const FieldElement& x);

// theta = (b + sqrt(delta)) / (2a) with a*theta^2 - b*theta + c = 0
struct QuadraticIrrational {
    Int a, b, c, delta;

    FieldElement value() const;
    long double to_long_double() const { return value().to_long_double(); }
    std::string str() const;
};

// (u + v sqrt(delta)) / 2 with u^2 - delta v^2 = 4
struct OrderUnit {
    Int u, v, delta;

    FieldElement value() const;
    long double to_long_double() const { return value().to_long_double(); }
};

struct StabilizerMatrix {
    Int g11, g12, g21, g22;

    static StabilizerMatrix identity() { return {1, 0, 0, 1}; }
    Int det() const { return g11 * g22 - g12 * g21; }
    StabilizerMatrix inverse() const;  // requires det = 1
    bool stabilizes(const QuadraticIrrational& t) const;
    std::string str() const;

    friend StabilizerMatrix operator*(const StabilizerMatrix& x, const StabilizerMatrix& y);
    friend bool operator==(const StabilizerMatrix& x, const StabilizerMatrix& y) = default;
};

struct UnitPowerData {
    long m;
    Int a, b, c, d;

    StabilizerMatrix matrix() const { return {a, b, c, d}; }
};

bool is_perfect_square(const Int& n);
bool is_valid_discriminant(const Int& delta);

QuadraticIrrational classify(const Rat& p, const Rat& q, const Int& d);

constexpr std::uint64_t default_pell_bound = 1000000;

// smallest (u,v), u,v > 0 with u^2 - delta v^2 = 4
OrderUnit pell_unit(const Int& delta, std::uint64_t bound = default_pell_bound);
// smallest (u,v) with u^2 - delta v^2 = +-4; value may have norm -1
OrderUnit fundamental_unit(const Int& delta, std::uint64_t bound = default_pell_bound);

StabilizerMatrix phi(const OrderUnit& unit, const QuadraticIrrational& t);
FieldElement phi_inverse(const StabilizerMatrix& g, const QuadraticIrrational& t);
UnitPowerData unit_power_data(long m, const QuadraticIrrational& t);

}  // namespace qmono
