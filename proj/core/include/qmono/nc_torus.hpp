#pragma once

// Truncated smooth noncommutative 2-torus A_theta, normal ordered (U powers left of V powers).

#include <complex>
#include <map>
#include <string>
#include <utility>

namespace qmono {

using cplx = std::complex<double>;
using Mode = std::pair<long, long>;

// e^{2 pi i theta k}, reduced mod 1 in long double before exponentiating
cplx theta_phase(double theta, long k);

struct TorusElement {
    std::map<Mode, cplx> coeffs;
    double theta = 0.0;

    TorusElement() = default;
    explicit TorusElement(double th) : theta(th) {}

    static TorusElement scalar(cplx c, double th);
    static TorusElement monomial(long m, long n, double th, cplx c = 1.0);
    static TorusElement U(double th) { return monomial(1, 0, th); }
    static TorusElement V(double th) { return monomial(0, 1, th); }

    cplx coeff(long m, long n) const;
    void add_term(long m, long n, cplx c);
    TorusElement& prune(double eps = 0.0);
    bool empty() const { return coeffs.empty(); }
    // max |coefficient|
    double max_abs() const;

    TorusElement& operator+=(const TorusElement& o);
    TorusElement& operator-=(const TorusElement& o);
    TorusElement& operator*=(cplx s);
    friend TorusElement operator+(TorusElement x, const TorusElement& y) { return x += y; }
    friend TorusElement operator-(TorusElement x, const TorusElement& y) { return x -= y; }
    friend TorusElement operator*(cplx s, TorusElement x) { return x *= s; }
    friend TorusElement operator*(const TorusElement& x, const TorusElement& y);
};

TorusElement multiply(const TorusElement& x, const TorusElement& y);
TorusElement star(const TorusElement& x);
TorusElement delta(int j, const TorusElement& x);
double distance(const TorusElement& x, const TorusElement& y);

// Omega^1_B = B + B as pairs; d_B b = (delta_1 b, delta_2 b), dtau^1 = (-i, 0), dtau^2 = (0, -i)
struct OneFormB {
    TorusElement b1, b2;

    static OneFormB dtau(int j, double theta);
};

// Omega^2_B = B, element b stands for b vol_B
struct TwoFormB {
    TorusElement b;
};

OneFormB d_B(const TorusElement& x);
TwoFormB d_B1(const OneFormB& w);
TwoFormB wedge(const OneFormB& w, const OneFormB& w2);
OneFormB left_mul(const TorusElement& x, const OneFormB& w);
OneFormB right_mul(const OneFormB& w, const TorusElement& x);
OneFormB star(const OneFormB& w);
TwoFormB star(const TwoFormB& w);

}  // namespace qmono
