#include "commands.hpp"

#include "qmono/errors.hpp"
#include "qmono/gauge.hpp"

#include <cmath>
#include <future>
#include <numbers>

namespace qmono::cli {

namespace {

double rel(const GradedElement& x, const GradedElement& y) {
    return distance(x, y) / std::max({max_abs(x), max_abs(y), 1e-300});
}

cplx inner(const HeisenbergElement& f, const HeisenbergElement& g) {
    cplx s = 0;
    for (size_t i = 0; i < f.samples.size(); ++i) s += std::conj(f.samples[i]) * g.samples[i];
    return s;
}

struct Sampler {
    ContextPtr ctx;
    std::mt19937_64 rng;

    GradedElement operator()(long m) {
        if (m == 0) return GradedElement(ctx, random_torus(rng, ctx->theta(), 4, 1));
        return GradedElement(make_packet(ctx, m, random_packet(rng, ctx->module(m).sectors)));
    }
};

void heisenberg_suites(Report& r, ContextPtr ctx, const RunConfig& c, double tol, Diagnostics& diag) {
    Sampler S{ctx, std::mt19937_64(c.seed)};
    const double th = ctx->theta();
    const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * th);

    double law = 0;
    for (long m : {1L, -1L, 2L}) {
        const HeisenbergElement f = S(m).parts.begin()->second;
        const HeisenbergElement a = right_act(right_act(f, Gen::V), Gen::U);
        const HeisenbergElement b = e * right_act(right_act(f, Gen::U), Gen::V);
        const HeisenbergElement l = left_act(Gen::V, left_act(Gen::U, f));
        const HeisenbergElement l2 = e * left_act(Gen::U, left_act(Gen::V, f));
        law = std::max({law, distance(a, b) / a.max_abs(), distance(l, l2) / l.max_abs()});
    }
    r.suite("module laws", law, tol);

    double t1 = 0;
    for (auto [m, n] : std::vector<std::pair<long, long>>{{0, 1}, {1, 0}, {1, 1}, {-1, 1}}) {
        const GradedElement p = S(m), q = S(n);
        const GradedElement pq = mul_P(p, q, &diag);
        for (int j = 1; j <= 2; ++j) {
            const GradedElement rhs = mul_P(partial(j, p), sigma(q), &diag) + mul_P(p, partial(j, q), &diag);
            t1 = std::max(t1, rel(partial(j, pq), rhs));
        }
    }
    r.suite("twisted Leibniz", t1, tol);

    double t2 = 0;
    for (long m : {0L, 1L, -1L}) {
        const GradedElement p = S(m);
        for (int j = 1; j <= 2; ++j) {
            GradedElement rhs = sigma(star_P(partial(j, p)));
            rhs *= -1.0;
            t2 = std::max(t2, rel(partial(j, star_P(p)), rhs));
        }
    }
    r.suite("twisted star", t2, tol);

    r.columns({"m", "c_m", "expected", "measured", "rel_error"});
    double t3 = 0;
    const QuadraticIrrational& t = ctx->type();
    for (long m = -c.grades; m <= c.grades; ++m) {
        const GradedElement p = S(m);
        const GradedElement C = partial(1, partial(2, p)) - partial(2, partial(1, p));
        const double ev = static_cast<double>(curvature_eigenvalue(t, m).to_long_double());
        const cplx expected = cplx(0, -2.0 * std::numbers::pi * ev);
        cplx measured = 0;
        double err;
        if (m == 0) {
            err = max_abs(C) / max_abs(p);
        } else {
            const HeisenbergElement& f = p.parts.at(m);
            measured = inner(f, C.parts.at(m)) / inner(f, f);
            err = std::abs(measured - expected) / std::abs(expected);
        }
        t3 = std::max(t3, err);
        r.row({m, unit_power_data(m, t).c.str(), expected.imag(), measured.imag(), err});
    }
    r.suite("curvature eigenvalue [d1,d2] = -2 pi i eps^-m c_m", t3, tol);

    double as = 0;
    for (long g0 = -1; g0 <= 1; ++g0)
        for (long g1 = -1; g1 <= 1; ++g1)
            for (long g2 = -1; g2 <= 1; ++g2) {
        if (std::abs(g0 + g1 + g2) > 2) continue;
        const GradedElement a = S(g0), b = S(g1), d = S(g2);
        as = std::max(as, rel(mul_P(mul_P(a, b, &diag), d, &diag), mul_P(a, mul_P(b, d, &diag), &diag)));
            }
    r.suite("associativity", as, 10 * tol);

    double st = 0;
    for (auto [m, n] : std::vector<std::pair<long, long>>{{1, 1}, {1, -1}, {0, 1}, {-1, -1}}) {
        const GradedElement p = S(m), q = S(n);
        st = std::max({st, rel(star_P(star_P(p)), p),
                       rel(star_P(mul_P(p, q, &diag)), mul_P(star_P(q), star_P(p), &diag))});
    }
    r.suite("star antimultiplicative", st, tol);
}

}  // namespace

Report cmd_heisenberg_verify(const RunConfig& c) {
    const double tol = c.tol.value_or(1e-5);
    const QuadraticIrrational t = parse_theta(c.theta);
    Report r("heisenberg-verify");
    r.set_config({{"theta", c.theta}, {"grid", c.to_json().at("grid")}, {"tol", tol}, {"grades", c.grades},
                  {"seed", c.seed}});
    ContextPtr ctx = make_context(t, c.grid);
    Diagnostics diag;
    try {
        heisenberg_suites(r, ctx, c, tol, diag);
    } catch (const WindowOverflow& e) {
        r.check("grid window", false, e.what());
    }
    for (const auto& w : diag.warnings) r.warn(w);
    r.note("max_tail", diag.max_tail);
    return r;
}

Report cmd_monopole(const RunConfig& c) {
    const double tol = c.tol.value_or(1e-8);
    const QuadraticIrrational t = parse_theta(c.theta);
    if (c.grades < 2) throw ConfigError("monopole needs grades >= 2");
    Report r("monopole");
    r.set_config({{"theta", c.theta}, {"tol", tol}, {"grades", c.grades}, {"q_sweep", c.q_sweep}});

    const long double eps = pell_unit(t.delta).to_long_double();
    const long double c1 = static_cast<long double>(unit_power_data(1, t).c);
    const std::complex<long double> expected(0, -eps * c1);

    struct Result {
        std::string token;
        long double q;
        AdaptednessReport a, rel;
    };
    std::vector<std::future<Result>> jobs;
    for (const auto& token : c.q_sweep) {
        const long double q = parse_q(token, eps);
        if (!(q > 0)) throw ConfigError("q must be positive, got " + token);
        jobs.push_back(std::async(std::launch::async, [&t, &c, tol, token, q] {
            return Result{token, q, adaptedness_test(t, q, c.grades, tol), relative_adaptedness_test(t, q, c.grades, tol)};
        }));
    }

    r.columns({"q", "q_value", "adapted", "relative_adapted", "constant_re", "constant_im", "max_rel_deviation"});
    json sweep = json::array();
    bool only_eps2 = true, only_eps = true, constant_ok = true;
    for (auto& job : jobs) {
        const Result x = job.get();
        const bool at_eps2 = std::abs(x.q - eps * eps) <= 1e-12L * eps * eps;
        const bool at_eps = std::abs(x.q - eps) <= 1e-12L * eps;
        only_eps2 = only_eps2 && x.a.adapted == at_eps2;
        only_eps = only_eps && x.rel.adapted == at_eps;
        json cj = nullptr;
        double re = NAN, im = NAN;
        if (x.a.constant) {
            re = static_cast<double>(x.a.constant->real());
            im = static_cast<double>(x.a.constant->imag());
            cj = {re, im};
            constant_ok = constant_ok && std::abs(*x.a.constant - expected) <= tol * std::abs(expected);
        }
        sweep.push_back({{"q", x.token}, {"q_value", static_cast<double>(x.q)}, {"adapted", x.a.adapted},
                         {"relative_adapted", x.rel.adapted}, {"constant", cj}});
        r.row({x.token, static_cast<double>(x.q), x.a.adapted, x.rel.adapted, re, im,
               static_cast<double>(x.a.max_rel_deviation)});
    }
    r.note("theta", static_cast<double>(t.to_long_double()));
    r.note("epsilon", static_cast<double>(eps));
    r.note("c1", static_cast<double>(c1));
    r.note("q_sweep", sweep);
    r.note("expected_constant", {0.0, static_cast<double>(expected.imag())});
    r.note("curvature_commutator_constant", static_cast<double>(curvature_commutator_constant(t)));
    json ev = json::array();
    for (long m = -c.grades; m <= c.grades; ++m)
        ev.push_back({{"m", m}, {"eps^-m c_m", curvature_eigenvalue(t, m).str()},
                      {"field_strength", static_cast<double>(2 * std::numbers::pi_v<long double> *
                                                             curvature_eigenvalue(t, m).to_long_double())}});
    r.note("field_strength_eigenvalues", ev);

    r.check("adapted iff q = eps^2", only_eps2);
    r.check("relative adapted iff q = eps", only_eps);
    r.check("adapted constant = -i eps c1", constant_ok);
    return r;
}

}  // namespace qmono::cli
