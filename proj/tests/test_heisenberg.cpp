#include "qmono/errors.hpp"
#include "qmono/heisenberg.hpp"

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

ContextPtr ctx() {
    static const ContextPtr c = make_context(golden);
    return c;
}

long mod(long k, long n) { return ((k % n) + n) % n; }

// sector-dependent Gaussian with weights 1, 2, 3, ...
cplx bump(double x, long k, long sectors, double w = 1.0, double x0 = 0.0) {
    return cplx(1.0 + mod(k, sectors), 0.25 * mod(k, sectors)) * std::exp(-(x - x0) * (x - x0) / (2 * w * w));
}

HeisenbergElement gaussian(long m, double w = 1.0, double x0 = 0.0) {
    const long s = ctx()->module(m).sectors;
    return HeisenbergElement::from_function(ctx(), m, [=](double x, long k) { return bump(x, k, s, w, x0); });
}

double rel(const HeisenbergElement& a, const HeisenbergElement& b) { return distance(a, b) / b.max_abs(); }
double rel(const GradedElement& a, const GradedElement& b) { return distance(a, b) / max_abs(b); }

double quadrature_norm(const HeisenbergElement& f) {
    const GridSpec& g = f.ctx->grid();
    double s = 0;
    for (long k = 0; k < f.sectors(); ++k)
        for (int i = 0; i < g.N; ++i) s += std::norm(f.at(k, i));
    return std::sqrt(s * 2 * g.L / g.N);
}

}  // namespace

TEST_SUITE("heisenberg") {

TEST_CASE("grid validation") {
    GridSpec g;
    g.N = 1023;
    CHECK_THROWS_AS(g.validate(), ConfigError);
    g.N = 1024;
    g.fd_order = 3;
    CHECK_THROWS_AS(g.validate(), ConfigError);
    CHECK_THROWS_AS(HeisenbergElement(ctx(), 0), GradeZero);
}

TEST_CASE("module data") {
    const ModuleData& m1 = ctx()->module(1);
    CHECK(m1.a == 2);
    CHECK(m1.c == 1);
    CHECK(m1.sectors == 1);
    CHECK(ctx()->module(2).sectors == 3);
    CHECK(ctx()->module(-2).sectors == 3);
    CHECK(ctx()->module(-3).c == -8);
    CHECK(static_cast<double>(ctx()->eps()) == doctest::Approx(eps).epsilon(1e-15));
    CHECK(ctx()->theta() == doctest::Approx(theta).epsilon(1e-15));
}

TEST_CASE("interpolation off the grid") {
    const HeisenbergElement f = gaussian(2);
    const Interpolant F(f);
    for (double x : {-3.1, -0.013, 0.5, 2.77})
        for (long k = 0; k < 3; ++k) CHECK(std::abs(F(x, k) - bump(x, k, 3)) < 1e-9);
    CHECK(std::abs(F(40.0, 0)) == 0.0);
}

TEST_CASE("U actions are unimodular") {
    for (long m : {1L, -1L, 2L}) {
        const HeisenbergElement f = gaussian(m);
        CHECK(right_act(f, Gen::U).l2_norm() == doctest::Approx(f.l2_norm()).epsilon(1e-13));
        CHECK(left_act(Gen::U, f).l2_norm() == doctest::Approx(f.l2_norm()).epsilon(1e-13));
    }
}

TEST_CASE("right V is translation by eps^m / c_m") {
    const HeisenbergElement fv = right_act(gaussian(1), Gen::V);
    const HeisenbergElement shifted =
        HeisenbergElement::from_function(ctx(), 1, [](double x, long) { return bump(x - eps, 0, 1); });
    CHECK(distance(fv, shifted) < 1e-8);

    const HeisenbergElement gv = right_act(gaussian(2), Gen::V);
    const HeisenbergElement g2 = HeisenbergElement::from_function(
        ctx(), 2, [](double x, long k) { return bump(x - eps * eps / 3, k - 1, 3); });
    CHECK(distance(gv, g2) < 1e-8);
}

TEST_CASE("left V is translation by 1 / c_m with sector shift a_m") {
    const HeisenbergElement vf = left_act(Gen::V, gaussian(1));
    const HeisenbergElement shifted =
        HeisenbergElement::from_function(ctx(), 1, [](double x, long) { return bump(x - 1, 0, 1); });
    CHECK(distance(vf, shifted) < 1e-8);

    const HeisenbergElement vg = left_act(Gen::V, gaussian(2));
    const HeisenbergElement g2 = HeisenbergElement::from_function(
        ctx(), 2, [](double x, long k) { return bump(x - 1.0 / 3, k - 5, 3); });
    CHECK(distance(vg, g2) < 1e-8);
}

TEST_CASE("module relations") {
    const cplx e = std::polar(1.0, 2 * pi * theta);
    for (long m : {1L, -1L, 2L}) {
        CAPTURE(m);
        const HeisenbergElement f = gaussian(m, 0.8);
        CHECK(rel(right_act(right_act(f, Gen::V), Gen::U), e * right_act(right_act(f, Gen::U), Gen::V)) < 1e-6);
        // g |> theta = theta, so the left relation has the same phase
        CHECK(rel(left_act(Gen::V, left_act(Gen::U, f)), e * left_act(Gen::U, left_act(Gen::V, f))) < 1e-6);
        CHECK(rel(right_act(left_act(Gen::U, f), Gen::V), left_act(Gen::U, right_act(f, Gen::V))) < 1e-6);
        CHECK(rel(right_act(left_act(Gen::V, f), Gen::U), left_act(Gen::V, right_act(f, Gen::U))) < 1e-6);
        CHECK(rel(right_act(right_act(f, Gen::V), Gen::Vinv), f) < 1e-6);
    }
}

TEST_CASE("sigma") {
    std::mt19937_64 rng(1);
    GradedElement p(ctx(), random_torus(rng, theta, 3, 2));
    p.parts.emplace(1, gaussian(1, 0.6));
    p.parts.emplace(-1, gaussian(-1, 0.6));
    const GradedElement s = sigma(p);
    CHECK(distance(s.base, p.base) == 0.0);
    CHECK(rel(s.parts.at(1), (2 / (3 + std::sqrt(5.0))) * p.parts.at(1)) < 1e-14);
    CHECK(rel(s.parts.at(-1), eps * p.parts.at(-1)) < 1e-14);
    CHECK(rel(sigma(star_P(sigma(star_P(p)))), p) < 1e-8);
}

TEST_CASE("star_P") {
    for (long m : {1L, -1L, 2L}) {
        CAPTURE(m);
        const HeisenbergElement f = gaussian(m, 0.7, 0.2);
        const HeisenbergElement fs = star_P(f);
        CHECK(fs.m == -m);
        // grade 2 compresses by eps^2 before the interpolation back
        CHECK(rel(star_P(fs), f) < (m == 2 ? 2e-6 : 1e-8));
        CHECK(quadrature_norm(fs) == doctest::Approx(std::pow(eps, -0.5 * m) * quadrature_norm(f)).epsilon(1e-8));
    }
    const HeisenbergElement fs = star_P(gaussian(1, 1.3));
    const HeisenbergElement narrow =
        HeisenbergElement::from_function(ctx(), -1, [](double x, long) { return bump(x, 0, 1, 1.3 / eps); });
    CHECK(distance(fs, narrow) < 1e-10);
}

TEST_CASE("star_P window overflow") {
    // mass near x = 10 in grade -1 is sent to eps * 10, outside the window
    CHECK_THROWS_AS(star_P(gaussian(-1, 0.5, 10.0)), WindowOverflow);
}

TEST_CASE("partial derivatives") {
    const HeisenbergElement g = gaussian(1);
    const HeisenbergElement d1 = partial(1, g);
    const HeisenbergElement expect =
        HeisenbergElement::from_function(ctx(), 1, [](double x, long) { return cplx(0, x) * std::exp(-x * x / 2); });
    CHECK(distance(d1, expect) < 1e-9);

    const HeisenbergElement d2 = partial(2, g);
    const HeisenbergElement expect2 = HeisenbergElement::from_function(
        ctx(), 1, [](double x, long) { return 2 * pi / eps * x * std::exp(-x * x / 2); });
    CHECK(distance(d2, expect2) < 1e-12);

    const HeisenbergElement comm = partial(1, partial(2, g)) - partial(2, partial(1, g));
    CHECK(rel(comm, cplx(0, -2 * pi / eps) * g) < 1e-8);

    std::mt19937_64 rng(2);
    const TorusElement b = random_torus(rng, theta, 4, 2);
    for (int j = 1; j <= 2; ++j)
        CHECK(distance(partial(j, GradedElement(ctx(), b)).base, delta(j, b)) < 1e-13);
}

TEST_CASE("products with the unit and torus elements") {
    std::mt19937_64 rng(4);
    const GradedElement one(ctx(), TorusElement::scalar(1.0, theta));
    const GradedElement p(gaussian(1));
    CHECK(rel(mul_P(one, p), p) < 1e-14);
    CHECK(rel(mul_P(p, one), p) < 1e-14);

    const GradedElement b(ctx(), random_torus(rng, theta, 3, 1)), b2(ctx(), random_torus(rng, theta, 3, 1));
    CHECK(rel(mul_P(mul_P(b, p), b2), mul_P(b, mul_P(p, b2))) < 1e-7);
}

TEST_CASE("graded products") {
    std::mt19937_64 rng(6);
    auto packet = [&](long m) { return GradedElement(make_packet(ctx(), m, random_packet(rng, ctx()->module(m).sectors))); };
    const GradedElement p = packet(1), q = packet(1), r = packet(-1);
    Diagnostics diag;
    const GradedElement pq = mul_P(p, q, &diag);
    CHECK(pq.parts.count(2) == 1);
    CHECK(rel(star_P(pq), mul_P(star_P(q), star_P(p), &diag)) < 1e-6);
    CHECK(rel(mul_P(pq, r, &diag), mul_P(p, mul_P(q, r, &diag), &diag)) < 1e-5);
    CHECK(rel(mul_P(mul_P(r, p, &diag), q, &diag), mul_P(r, pq, &diag)) < 1e-5);
    CHECK(diag.warnings.empty());

    // twisted Leibniz on (1, 1) and (-1, 1)
    for (const auto* a : {&p, &r}) {
        const GradedElement aq = mul_P(*a, q, &diag);
        for (int j = 1; j <= 2; ++j) {
            const GradedElement rhs = mul_P(partial(j, *a), sigma(q), &diag) + mul_P(*a, partial(j, q), &diag);
            CHECK(rel(partial(j, aq), rhs) < 1e-5);
        }
    }
    // twisted star
    for (int j = 1; j <= 2; ++j) CHECK(rel(partial(j, star_P(p)), -1.0 * sigma(star_P(partial(j, p)))) < 1e-5);
}

TEST_CASE("opposite grades land in the torus") {
    const GradedElement p(gaussian(1)), q(gaussian(-1));
    const GradedElement pq = mul_P(p, q);
    CHECK(pq.parts.empty());
    CHECK(pq.base.max_abs() > 0.1);
}

}  // TEST_SUITE
