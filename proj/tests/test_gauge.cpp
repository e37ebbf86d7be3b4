#include "qmono/gauge.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qmono;

namespace {

constexpr double pi = std::numbers::pi;
const double eps = (3 + std::sqrt(5.0)) / 2;
const double theta = (1 + std::sqrt(5.0)) / 2;
const QuadraticIrrational golden = classify(Rat(1, 2), Rat(1, 2), 5);
const cplx I(0, 1);

ContextPtr ctx() {
    static const ContextPtr c = make_context(golden);
    return c;
}

GradedElement packet(long m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return GradedElement(make_packet(ctx(), m, random_packet(rng, ctx()->module(m).sectors)));
}

GradedElement torus(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return GradedElement(ctx(), random_torus(rng, theta, 4, 1));
}

// c_m of the golden stabilizer (2 1; 1 1) by integer matrix powers
long c_of(long m) {
    long a = 1, b = 0, c = 0, d = 1;
    const long g[4] = {2, 1, 1, 1}, gi[4] = {1, -1, -1, 2};
    const long* h = m < 0 ? gi : g;
    for (long i = 0; i < std::abs(m); ++i) {
        const long na = a * h[0] + b * h[2], nb = a * h[1] + b * h[3], nc = c * h[0] + d * h[2],
                   nd = c * h[1] + d * h[3];
        a = na, b = nb, c = nc, d = nd;
    }
    return c;
}

double rel(const HorizontalForm& a, const HorizontalForm& b) {
    return distance(a, b) / std::max(max_abs(b), 1e-300);
}

}  // namespace

TEST_SUITE("gauge") {

TEST_CASE("nabla0 on the torus") {
    const GradedElement U(ctx(), TorusElement::U(theta));
    const HorizontalForm w = nabla0(U);
    REQUIRE(w.degree == 1);
    CHECK(distance(w.c[0].base, (2 * pi * I) * TorusElement::U(theta)) < 1e-13);
    CHECK(w.c[1].base.max_abs() == 0.0);

    const HorizontalForm z = nabla0(GradedElement(ctx(), TorusElement::scalar(1.0, theta)));
    CHECK(max_abs(z) == 0.0);

    const GradedElement b = torus(3);
    const OneFormB d = d_B(b.base);
    const HorizontalForm n = nabla0(b);
    CHECK(distance(n.c[0].base, I * d.b1) < 1e-12);
    CHECK(distance(n.c[1].base, I * d.b2) < 1e-12);
}

TEST_CASE("nabla0 on a packet") {
    const GradedElement p = packet(1, 5);
    const HorizontalForm w = nabla0(p);
    for (int j = 1; j <= 2; ++j) CHECK(distance(w.c[j - 1], I * partial(j, p)) == 0.0);
}

TEST_CASE("potential shifts") {
    const GradedElement b = torus(7);
    CHECK(distance(apply_potential({2.0, -1.5}, b), nabla0(b)) < 1e-12);

    const GradedElement p = packet(1, 8);
    CHECK(distance(apply_potential({0, 0}, p), nabla0(p)) == 0.0);

    // dtau^1 p = sigma(p) dtau^1, so [i dtau^1, p] = i (sigma(p) - p) dtau^1
    const HorizontalForm extra = apply_potential({1.0, 0.0}, p) - nabla0(p);
    HorizontalForm expect = HorizontalForm::zero(ctx(), 1);
    expect.c[0] = I * (sigma(p) - p);
    CHECK(rel(extra, expect) < 1e-12);
    expect.c[0] = (I * (1 / eps - 1)) * p;
    CHECK(rel(extra, expect) < 1e-12);
}

TEST_CASE("twisted Leibniz of nabla0") {
    const GradedElement p = packet(1, 11), q = packet(-1, 12);
    const HorizontalForm lhs = nabla0(mul_P(p, q));
    const HorizontalForm rhs = right_mul(nabla0(p), q) + left_mul(p, nabla0(q));
    CHECK(rel(lhs, rhs) < 1e-5);
}

TEST_CASE("field strength") {
    CHECK(max_abs(field_strength({}, torus(2))) < 1e-9);

    for (long m : {1L, -1L, 2L}) {
        CAPTURE(m);
        const GradedElement p = packet(m, 20 + m);
        const HorizontalForm F = field_strength({}, p);
        HorizontalForm expect = HorizontalForm::zero(ctx(), 2);
        expect.c[0] = (2 * pi * std::pow(eps, -m) * c_of(m)) * p;
        CHECK(rel(F, expect) < 1e-6);
        CHECK(rel(field_strength({3.0, -2.0}, p), F) < 1e-8);
    }
    const GradedElement p1 = packet(1, 30);
    HorizontalForm expect = HorizontalForm::zero(ctx(), 2);
    expect.c[0] = (2 * pi / eps) * p1;
    CHECK(rel(field_strength({}, p1), expect) < 1e-6);
}

TEST_CASE("volume commutator") {
    const double K = 2 * pi * eps / (eps * eps - 1);
    CHECK(static_cast<double>(curvature_commutator_constant(golden)) == doctest::Approx(K).epsilon(1e-15));
    for (long m : {-2L, -1L, 1L, 2L}) {
        const GradedElement p = packet(m, 40 + m);
        HorizontalForm F = HorizontalForm::zero(ctx(), 2);
        F.c[0] = (2 * pi * std::pow(eps, -m) * c_of(m)) * p;
        // [K vol, p] = K (sigma^2(p) - p) vol is minus the field strength
        CHECK(rel(vol_commutator(K, p), -1.0 * F) < 1e-12);
    }
}

TEST_CASE("curvature eigenvalues") {
    const double table[] = {901.977, 129.197, 16.4496, 0.0, -2.39996, -2.75011, -2.80120};
    for (long m = -3; m <= 3; ++m) {
        const double v = static_cast<double>(curvature_eigenvalue(golden, m).to_long_double());
        CHECK(v == doctest::Approx(std::pow(eps, -m) * c_of(m)).epsilon(1e-13));
        CHECK(-2 * pi * v == doctest::Approx(table[m + 3]).epsilon(1e-5));
    }
}

TEST_CASE("gauge transformations") {
    const GradedElement p = packet(1, 50) + torus(51);
    CHECK(distance(gauge_transform(1.0, p), p) == 0.0);
    const GradedElement g = gauge_transform(-1.0, p);
    CHECK(distance(g.base, p.base) == 0.0);
    CHECK(distance(g.parts.at(1), -1.0 * p.parts.at(1)) == 0.0);

    const cplx z1 = std::polar(1.0, 0.4), z2 = std::polar(1.0, -1.3);
    CHECK(distance(gauge_transform(z1, gauge_transform(z2, p)), gauge_transform(z1 * z2, p)) < 1e-14);

    const GradedElement q = packet(-1, 52);
    CHECK(distance(gauge_transform(z1, mul_P(p, q)), mul_P(gauge_transform(z1, p), gauge_transform(z1, q))) < 1e-9);

    for (cplx z : {I, std::polar(1.0, 2 * pi / 7)})
        for (const GaugePotential& pot : {GaugePotential{}, GaugePotential{0.5, -1.0}})
            CHECK(rel(transformed_potential(z, pot, p), apply_potential(pot, p)) < 1e-12);
}

TEST_CASE("q numbers") {
    CHECK(q_number(0, 0.3L) == 0);
    CHECK(q_number(3, 2.0L) == 7);
    CHECK(q_number(5, 1.0L) == 5);
    CHECK(q_number(-2, 1.0L) == -2);
    CHECK(static_cast<double>(q_number(-1, 2.0L)) == doctest::Approx(-0.5));
}

TEST_CASE("vertical derivative") {
    const long double e = (3 + std::sqrt(5.0L)) / 2;
    GradedElement p = torus(60);
    p.parts.emplace(2, packet(2, 61).parts.at(2));
    p.parts.emplace(1, packet(1, 62).parts.at(1));
    const auto v1 = vertical_derivative(1.0L, p);
    CHECK(std::abs(v1.at(0).left) == 0);
    CHECK(std::abs(v1.at(1).left - std::complex<long double>(0, 2 * std::numbers::pi_v<long double>)) < 1e-15L);
    CHECK(std::abs(v1.at(2).left - std::complex<long double>(0, 4 * std::numbers::pi_v<long double>)) < 1e-15L);

    const auto v = vertical_derivative(e * e, p);
    const std::complex<long double> expect(0, 2 * std::numbers::pi_v<long double> * (1 + e * e));
    CHECK(std::abs(v.at(2).left - expect) < 1e-13L * std::abs(expect));
    CHECK(std::abs(v.at(2).right - expect / (e * e * e * e)) < 1e-13L * std::abs(expect));
}

TEST_CASE("adaptedness") {
    const long double e = (3 + std::sqrt(5.0L)) / 2;
    const AdaptednessReport a = adaptedness_test(golden, e * e, 3);
    CHECK(a.adapted);
    REQUIRE(a.constant.has_value());
    CHECK(std::abs(*a.constant - std::complex<long double>(0, -e)) < 1e-12L);
    for (long double q : {1.0L, e, 1 / e, e * e * e, 2.0L, 0.5L}) {
        CAPTURE(static_cast<double>(q));
        CHECK_FALSE(adaptedness_test(golden, q, 3).adapted);
    }
    CHECK(relative_adaptedness_test(golden, e, 3).adapted);
    for (long double q : {1.0L, e * e, 1 / e, e * e * e, 2.0L, 0.5L}) CHECK_FALSE(relative_adaptedness_test(golden, q, 3).adapted);
}

}  // TEST_SUITE
