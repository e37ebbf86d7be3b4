#pragma once

// sigma-twisted horizontal calculus over P, the canonical gauge potential, field strength,
// gauge action and the q-deformed vertical calculus on O(U(1)).

#include "qmono/heisenberg.hpp"

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace qmono {

// degree 0: c[0]; degree 1: c[0] dtau^1 + c[1] dtau^2; degree 2: c[0] vol_B.
// Right multiplication is twisted: (p dtau) q = p sigma(q) dtau, (p vol) q = p sigma^2(q) vol.
struct HorizontalForm {
    int degree = 0;
    std::vector<GradedElement> c;

    static HorizontalForm zero(ContextPtr ctx, int degree);
    HorizontalForm& operator+=(const HorizontalForm& o);
    HorizontalForm& operator-=(const HorizontalForm& o);
    HorizontalForm& operator*=(cplx s);
    friend HorizontalForm operator+(HorizontalForm x, const HorizontalForm& y) { return x += y; }
    friend HorizontalForm operator-(HorizontalForm x, const HorizontalForm& y) { return x -= y; }
    friend HorizontalForm operator*(cplx s, HorizontalForm x) { return x *= s; }
};

double distance(const HorizontalForm& x, const HorizontalForm& y);
double max_abs(const HorizontalForm& x);

HorizontalForm left_mul(const GradedElement& q, const HorizontalForm& w, Diagnostics* diag = nullptr);
HorizontalForm right_mul(const HorizontalForm& w, const GradedElement& q, Diagnostics* diag = nullptr);
HorizontalForm wedge(const HorizontalForm& w, const HorizontalForm& w2, Diagnostics* diag = nullptr);
HorizontalForm star(const HorizontalForm& w);

// i s1 dtau^1 + i s2 dtau^2 realizes nabla_0 + [i(s1 dtau^1 + s2 dtau^2), .]
struct GaugePotential {
    double s1 = 0.0, s2 = 0.0;
};

HorizontalForm potential_form(ContextPtr ctx, const GaugePotential& pot);
HorizontalForm nabla0(const GradedElement& p);
// graded commutator [w, p] = w p - p w for a 1-form w
HorizontalForm commutator(const HorizontalForm& w, const GradedElement& p, Diagnostics* diag = nullptr);
HorizontalForm apply_potential(const GaugePotential& pot, const GradedElement& p, Diagnostics* diag = nullptr);
// canonical prolongation on 1-forms
HorizontalForm prolongation(const GaugePotential& pot, const HorizontalForm& w, Diagnostics* diag = nullptr);
HorizontalForm field_strength(const GaugePotential& pot, const GradedElement& p, Diagnostics* diag = nullptr);
// [K vol_B, p] = K sigma^2(p) vol_B - K p vol_B
HorizontalForm vol_commutator(double K, const GradedElement& p);

// exact field strength eigenvalue on P_m divided by 2 pi: eps^{-m} c_m in Q[sqrt(D)]
FieldElement curvature_eigenvalue(const QuadraticIrrational& t, long m);
// 2 pi eps c_1 / (eps^2 - 1)
long double curvature_commutator_constant(const QuadraticIrrational& t);

GradedElement gauge_transform(cplx zeta, const GradedElement& p);
HorizontalForm gauge_transform(cplx zeta, const HorizontalForm& w);
// (psi(zeta) |> nabla)(p) = psi(zeta)(nabla(psi(zeta)^{-1} p))
HorizontalForm transformed_potential(cplx zeta, const GaugePotential& pot, const GradedElement& p,
                                     Diagnostics* diag = nullptr);

long double q_number(long n, long double q);

struct VerticalCoefficient {
    std::complex<long double> left;   // 2 pi i [m]_q
    std::complex<long double> right;  // 2 pi i [m]_q q^{-m}
};
std::map<long, VerticalCoefficient> vertical_derivative(long double q, const GradedElement& p);
VerticalCoefficient vertical_coefficient(long double q, long m);

struct AdaptednessReport {
    long double q = 1;
    bool adapted = false;
    std::optional<std::complex<long double>> constant;
    long double max_rel_deviation = 0;
    std::vector<std::pair<long, std::complex<long double>>> ratios;
};

AdaptednessReport adaptedness_test(const QuadraticIrrational& t, long double q, long M, long double tol = 1e-8L);
AdaptednessReport relative_adaptedness_test(const QuadraticIrrational& t, long double q, long M,
                                            long double tol = 1e-8L);

}  // namespace qmono
