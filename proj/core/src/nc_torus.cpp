#include "qmono/nc_torus.hpp"

#include "qmono/errors.hpp"

#include <cmath>
#include <numbers>

namespace qmono {

cplx theta_phase(double theta, long k) {
    long double t = static_cast<long double>(theta) * static_cast<long double>(k);
    t -= std::floor(t);
    long double a = 2.0L * std::numbers::pi_v<long double> * t;
    return {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
}

TorusElement TorusElement::scalar(cplx c, double th) { return monomial(0, 0, th, c); }

TorusElement TorusElement::monomial(long m, long n, double th, cplx c) {
    TorusElement x(th);
    x.coeffs[{m, n}] = c;
    return x;
}

cplx TorusElement::coeff(long m, long n) const {
    auto it = coeffs.find({m, n});
    return it == coeffs.end() ? cplx{} : it->second;
}

void TorusElement::add_term(long m, long n, cplx c) { coeffs[{m, n}] += c; }

TorusElement& TorusElement::prune(double eps) {
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        if (std::abs(it->second) <= eps) it = coeffs.erase(it);
        else ++it;
    }
    return *this;
}

double TorusElement::max_abs() const {
    double r = 0;
    for (auto& [k, v] : coeffs) r = std::max(r, std::abs(v));
    return r;
}

static void check_theta(const TorusElement& x, const TorusElement& y) {
    if (x.theta != y.theta) throw ThetaMismatch("theta " + std::to_string(x.theta) + " vs " + std::to_string(y.theta));
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
    check_theta(*this, o);
    for (auto& [k, v] : o.coeffs) coeffs[k] += v;
    return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& o) {
    check_theta(*this, o);
    for (auto& [k, v] : o.coeffs) coeffs[k] -= v;
    return *this;
}

TorusElement& TorusElement::operator*=(cplx s) {
    for (auto& [k, v] : coeffs) v *= s;
    return *this;
}

// (U^a V^b)(U^c V^d) = e^{2 pi i theta b c} U^{a+c} V^{b+d}
TorusElement multiply(const TorusElement& x, const TorusElement& y) {
    check_theta(x, y);
    TorusElement z(x.theta);
    for (auto& [kx, vx] : x.coeffs)
        for (auto& [ky, vy] : y.coeffs)
            z.coeffs[{kx.first + ky.first, kx.second + ky.second}] +=
                vx * vy * theta_phase(x.theta, kx.second * ky.first);
    return z;
}

TorusElement operator*(const TorusElement& x, const TorusElement& y) { return multiply(x, y); }

// (U^m V^n)^* = V^{-n} U^{-m} = e^{2 pi i theta m n} U^{-m} V^{-n}
TorusElement star(const TorusElement& x) {
    TorusElement z(x.theta);
    for (auto& [k, v] : x.coeffs)
        z.coeffs[{-k.first, -k.second}] += std::conj(v) * theta_phase(x.theta, k.first * k.second);
    return z;
}

TorusElement delta(int j, const TorusElement& x) {
    if (j != 1 && j != 2) throw std::invalid_argument("delta index must be 1 or 2");
    TorusElement z(x.theta);
    for (auto& [k, v] : x.coeffs) {
        long w = j == 1 ? k.first : k.second;
        if (w != 0) z.coeffs[k] = 2.0 * std::numbers::pi * static_cast<double>(w) * v;
    }
    return z;
}

double distance(const TorusElement& x, const TorusElement& y) {
    TorusElement d = x;
    d -= y;
    return d.max_abs();
}

OneFormB OneFormB::dtau(int j, double theta) {
    OneFormB w{TorusElement(theta), TorusElement(theta)};
    (j == 1 ? w.b1 : w.b2) = TorusElement::scalar({0.0, -1.0}, theta);
    return w;
}

OneFormB d_B(const TorusElement& x) { return {delta(1, x), delta(2, x)}; }

TwoFormB d_B1(const OneFormB& w) { return {delta(2, w.b1) - delta(1, w.b2)}; }

// (b1,b2) ^ (c1,c2) = b2 c1 - b1 c2
TwoFormB wedge(const OneFormB& w, const OneFormB& w2) { return {w.b2 * w2.b1 - w.b1 * w2.b2}; }

OneFormB left_mul(const TorusElement& x, const OneFormB& w) { return {x * w.b1, x * w.b2}; }

OneFormB right_mul(const OneFormB& w, const TorusElement& x) { return {w.b1 * x, w.b2 * x}; }

OneFormB star(const OneFormB& w) { return {star(w.b1), star(w.b2)}; }

TwoFormB star(const TwoFormB& w) { return {star(w.b)}; }

}  // namespace qmono
