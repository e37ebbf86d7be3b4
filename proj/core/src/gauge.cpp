#include "qmono/gauge.hpp"

#include "qmono/errors.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace qmono {

namespace {

constexpr long double two_pi_l = 2.0L * std::numbers::pi_v<long double>;
const cplx I{0.0, 1.0};

GradedElement scalar(ContextPtr ctx, cplx c) {
    return GradedElement(ctx, TorusElement::scalar(c, ctx->theta()));
}

GradedElement sigma_pow(const GradedElement& p, int k) {
    GradedElement out = p;
    for (int i = 0; i < k; ++i) out = sigma(out);
    return out;
}

void same_degree(const HorizontalForm& x, const HorizontalForm& y) {
    if (x.degree != y.degree) throw std::invalid_argument("forms of different degree");
}

}  // namespace

HorizontalForm HorizontalForm::zero(ContextPtr ctx, int degree) {
    HorizontalForm w;
    w.degree = degree;
    w.c.assign(degree == 1 ? 2 : 1, GradedElement(ctx));
    return w;
}

HorizontalForm& HorizontalForm::operator+=(const HorizontalForm& o) {
    same_degree(*this, o);
    for (size_t j = 0; j < c.size(); ++j) c[j] += o.c[j];
    return *this;
}

HorizontalForm& HorizontalForm::operator-=(const HorizontalForm& o) {
    same_degree(*this, o);
    for (size_t j = 0; j < c.size(); ++j) c[j] -= o.c[j];
    return *this;
}

HorizontalForm& HorizontalForm::operator*=(cplx s) {
    for (auto& x : c) x *= s;
    return *this;
}

double max_abs(const HorizontalForm& x) {
    double r = 0;
    for (auto& p : x.c) r = std::max(r, max_abs(p));
    return r;
}

double distance(const HorizontalForm& x, const HorizontalForm& y) {
    HorizontalForm d = x;
    d -= y;
    return max_abs(d);
}

HorizontalForm left_mul(const GradedElement& q, const HorizontalForm& w, Diagnostics* diag) {
    HorizontalForm out = w;
    for (auto& x : out.c) x = mul_P(q, x, diag);
    return out;
}

HorizontalForm right_mul(const HorizontalForm& w, const GradedElement& q, Diagnostics* diag) {
    HorizontalForm out = w;
    GradedElement tq = sigma_pow(q, w.degree);
    for (auto& x : out.c) x = mul_P(x, tq, diag);
    return out;
}

// (p1 dtau^1 + p2 dtau^2) ^ (q1 dtau^1 + q2 dtau^2) = (p1 sigma(q2) - p2 sigma(q1)) vol_B
HorizontalForm wedge(const HorizontalForm& w, const HorizontalForm& w2, Diagnostics* diag) {
    if (w.degree == 0) return left_mul(w.c[0], w2, diag);
    if (w2.degree == 0) return right_mul(w, w2.c[0], diag);
    if (w.degree != 1 || w2.degree != 1) return HorizontalForm::zero(w.c[0].ctx, 2);
    HorizontalForm out = HorizontalForm::zero(w.c[0].ctx, 2);
    int k = w.degree;
    out.c[0] = mul_P(w.c[0], sigma_pow(w2.c[1], k), diag) - mul_P(w.c[1], sigma_pow(w2.c[0], k), diag);
    return out;
}

// (p dtau)^* = -sigma(p^*) dtau, (p vol)^* = sigma^2(p^*) vol
HorizontalForm star(const HorizontalForm& w) {
    HorizontalForm out = w;
    for (auto& x : out.c) {
        x = sigma_pow(star_P(x), w.degree);
        if (w.degree == 1) x *= -1.0;
    }
    return out;
}

HorizontalForm potential_form(ContextPtr ctx, const GaugePotential& pot) {
    HorizontalForm a = HorizontalForm::zero(ctx, 1);
    a.c[0] = scalar(ctx, I * pot.s1);
    a.c[1] = scalar(ctx, I * pot.s2);
    return a;
}

HorizontalForm nabla0(const GradedElement& p) {
    HorizontalForm w;
    w.degree = 1;
    w.c = {cplx(I) * partial(1, p), cplx(I) * partial(2, p)};
    return w;
}

HorizontalForm commutator(const HorizontalForm& w, const GradedElement& p, Diagnostics* diag) {
    return right_mul(w, p, diag) - left_mul(p, w, diag);
}

HorizontalForm apply_potential(const GaugePotential& pot, const GradedElement& p, Diagnostics* diag) {
    HorizontalForm out = nabla0(p);
    if (pot.s1 != 0.0 || pot.s2 != 0.0) out += commutator(potential_form(p.ctx, pot), p, diag);
    return out;
}

// nabla_0'(w) + A ^ w + w ^ A, nabla_0'(p1 dtau^1 + p2 dtau^2) = -i (d2 p1 - d1 p2) vol_B
HorizontalForm prolongation(const GaugePotential& pot, const HorizontalForm& w, Diagnostics* diag) {
    if (w.degree != 1) throw std::invalid_argument("prolongation acts on 1-forms");
    ContextPtr ctx = w.c[0].ctx;
    HorizontalForm out = HorizontalForm::zero(ctx, 2);
    out.c[0] = cplx(-I) * (partial(2, w.c[0]) - partial(1, w.c[1]));
    if (pot.s1 != 0.0 || pot.s2 != 0.0) {
        HorizontalForm a = potential_form(ctx, pot);
        out += wedge(a, w, diag);
        out += wedge(w, a, diag);
    }
    return out;
}

HorizontalForm field_strength(const GaugePotential& pot, const GradedElement& p, Diagnostics* diag) {
    HorizontalForm f = prolongation(pot, apply_potential(pot, p, diag), diag);
    return cplx(-I) * f;
}

HorizontalForm vol_commutator(double K, const GradedElement& p) {
    HorizontalForm out = HorizontalForm::zero(p.ctx, 2);
    out.c[0] = cplx(K) * (sigma_pow(p, 2) - p);
    return out;
}

FieldElement curvature_eigenvalue(const QuadraticIrrational& t, long m) {
    UnitPowerData u = unit_power_data(m, t);
    FieldElement eps = pell_unit(t.delta).value();
    return pow(eps, -m) * FieldElement{Rat(u.c), 0, t.delta};
}

long double curvature_commutator_constant(const QuadraticIrrational& t) {
    FieldElement eps = pell_unit(t.delta).value();
    UnitPowerData u = unit_power_data(1, t);
    FieldElement k = eps * FieldElement{Rat(u.c), 0, t.delta} / (eps * eps - FieldElement::integer(1, t.delta));
    return two_pi_l * k.to_long_double();
}

GradedElement gauge_transform(cplx zeta, const GradedElement& p) {
    GradedElement out = p;
    for (auto& [m, f] : out.parts) f *= std::pow(zeta, static_cast<int>(m));
    return out;
}

HorizontalForm gauge_transform(cplx zeta, const HorizontalForm& w) {
    HorizontalForm out = w;
    for (auto& x : out.c) x = gauge_transform(zeta, x);
    return out;
}

HorizontalForm transformed_potential(cplx zeta, const GaugePotential& pot, const GradedElement& p,
                                     Diagnostics* diag) {
    return gauge_transform(zeta, apply_potential(pot, gauge_transform(1.0 / zeta, p), diag));
}

long double q_number(long n, long double q) {
    if (q == 0) throw ConfigError("q must be nonzero");
    if (q == 1) return static_cast<long double>(n);
    return (1.0L - std::pow(q, static_cast<long double>(n))) / (1.0L - q);
}

VerticalCoefficient vertical_coefficient(long double q, long m) {
    std::complex<long double> left(0, two_pi_l * q_number(m, q));
    return {left, left * std::pow(q, static_cast<long double>(-m))};
}

std::map<long, VerticalCoefficient> vertical_derivative(long double q, const GradedElement& p) {
    std::map<long, VerticalCoefficient> out;
    for (long m : p.grades()) out[m] = vertical_coefficient(q, m);
    return out;
}

namespace {

AdaptednessReport ratio_test(long double q, long M, long double tol,
                             const std::function<std::complex<long double>(long)>& numerator) {
    if (M < 2) throw ConfigError("grade range M must be >= 2");
    AdaptednessReport rep;
    rep.q = q;
    bool finite = true;
    for (long m = -M; m <= M; ++m) {
        if (m == 0) continue;
        std::complex<long double> den = vertical_coefficient(q, m).right;
        if (std::abs(den) == 0) {
            finite = false;
            continue;
        }
        rep.ratios.emplace_back(m, numerator(m) / den);
    }
    if (!finite || rep.ratios.empty()) return rep;
    std::complex<long double> ref = rep.ratios.front().second;
    for (auto& [m, r] : rep.ratios)
        rep.max_rel_deviation = std::max(rep.max_rel_deviation, std::abs(r - ref) / std::abs(ref));
    rep.adapted = rep.max_rel_deviation <= tol;
    if (rep.adapted) rep.constant = ref;
    return rep;
}

}  // namespace

AdaptednessReport adaptedness_test(const QuadraticIrrational& t, long double q, long M, long double tol) {
    return ratio_test(q, M, tol, [&](long m) {
        return std::complex<long double>(two_pi_l * curvature_eigenvalue(t, m).to_long_double(), 0);
    });
}

AdaptednessReport relative_adaptedness_test(const QuadraticIrrational& t, long double q, long M,
                                            long double tol) {
    FieldElement eps = pell_unit(t.delta).value();
    return ratio_test(q, M, tol, [&](long m) {
        // [i s dtau, p] = i s (eps^{-m} - 1) p dtau on P_m, per unit s
        FieldElement k = pow(eps, -m) - FieldElement::integer(1, t.delta);
        return std::complex<long double>(0, k.to_long_double());
    });
}

}  // namespace qmono
