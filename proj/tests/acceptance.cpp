// Acceptance run: one PASS/FAIL line per criterion, INFO lines for supporting numbers.

#include "oracles.hpp"
#include "qmono/gauge.hpp"
#include "qmono/hopf_lazy.hpp"
#include "qmono/json_io.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>

using namespace qmono;

namespace {

constexpr double pi = std::numbers::pi;

struct Criterion {
    int id;
    std::string title;
    double budget;  // seconds
};

int failures = 0;

void info(const std::string& s) { std::printf("INFO  %s\n", s.c_str()); }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

void run(const Criterion& c, const std::function<bool(std::string&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail += std::string(" exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget;
    if (!in_time) detail += " over time budget " + fmt(c.budget) + " s";
    const bool pass = ok && in_time;
    failures += !pass;
    std::printf("%s criterion %d: %s [%.2f s]%s%s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                detail.empty() ? "" : " ", detail.c_str());
    std::fflush(stdout);
}

const QuadraticIrrational golden = classify(Rat(1, 2), Rat(1, 2), 5);

double rel(const GradedElement& a, const GradedElement& b) {
    return distance(a, b) / std::max({max_abs(a), max_abs(b), 1e-300});
}

double rel(const HorizontalForm& a, const HorizontalForm& b) {
    return distance(a, b) / std::max({max_abs(a), max_abs(b), 1e-300});
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

// ---------------------------------------------------------------- 1
bool number_theory(std::string& detail) {
    bool ok = true;
    const QuadraticIrrational types[] = {golden, classify(0, 1, 2), classify(1, 1, 3)};
    for (const auto& t : types) {
        const long D = static_cast<long>(t.delta);
        const auto [u, v] = oracle::pell_scan(D);
        const OrderUnit e = pell_unit(t.delta);
        ok = ok && e.u == u && e.v == v;
        const StabilizerMatrix g = phi(e, t);
        // g |> theta = theta exactly: g21 theta^2 + (g22 - g11) theta - g12 = 0 in Q[sqrt D]
        const FieldElement th = t.value();
        const FieldElement G21(Rat(g.g21), 0, t.delta), G22(Rat(g.g22), 0, t.delta), G11(Rat(g.g11), 0, t.delta),
            G12(Rat(g.g12), 0, t.delta);
        ok = ok && g.det() == 1 && G21 * th * th + (G22 - G11) * th - G12 == FieldElement(0, 0, t.delta);
        const FieldElement eps = e.value();
        for (long m = -6; m <= 6; ++m) {
            const UnitPowerData um = unit_power_data(m, t);
            const FieldElement cm(Rat(um.c), 0, t.delta);
            for (long n = -6; n <= 6; ++n) {
                const UnitPowerData un = unit_power_data(n, t), umn = unit_power_data(m + n, t);
                ok = ok && umn.matrix() == um.matrix() * un.matrix();
                const FieldElement cn(Rat(un.c), 0, t.delta), cmn(Rat(umn.c), 0, t.delta);
                ok = ok && cmn == cm * pow(eps, -n) + pow(eps, m) * cn;
            }
        }
        detail += "D=" + std::to_string(D) + " eps=(" + e.u.str() + "+" + e.v.str() + "sqrt D)/2 Phi=" + g.str() + "; ";
    }
    return ok;
}

// ---------------------------------------------------------------- 2
TorusElement sparse(std::mt19937_64& rng, double th) {
    std::uniform_int_distribution<long> e(-4, 4);
    std::normal_distribution<double> g;
    TorusElement x(th);
    for (int i = 0; i < 5; ++i) x.add_term(e(rng), e(rng), {g(rng), g(rng)});
    return x;
}

bool torus_calculus(std::string& detail) {
    const double th = static_cast<double>(golden.to_long_double());
    double worst = 0;
    const TorusElement U = TorusElement::U(th), V = TorusElement::V(th);
    worst = std::max(worst, distance(V * U, std::polar(1.0, 2 * pi * th) * (U * V)));
    std::mt19937_64 rng(0xA17E);
    for (int i = 0; i < 200; ++i) {
        const TorusElement x = sparse(rng, th), y = sparse(rng, th), z = sparse(rng, th);
        const double scale = x.max_abs() * y.max_abs() * std::max(1.0, z.max_abs());
        worst = std::max(worst, distance((x * y) * z, x * (y * z)) / scale);
        worst = std::max(worst, distance(star(x * y), star(y) * star(x)) / scale);
        const TorusElement ddx = d_B1(d_B(x)).b;
        worst = std::max(worst, ddx.max_abs() / x.max_abs());
        for (int j = 1; j <= 2; ++j)
            worst = std::max(worst, distance(delta(j, x * y), delta(j, x) * y + x * delta(j, y)) / (2 * pi * 8 * scale));
    }
    const TwoFormB vol = wedge(OneFormB::dtau(1, th), OneFormB::dtau(2, th));
    worst = std::max(worst, distance(vol.b, TorusElement::scalar(1.0, th)));
    detail = "max relative residual " + fmt(worst);
    return worst <= 1e-12;
}

// ---------------------------------------------------------------- 3
bool curvature(std::string& detail) {
    GridSpec grid;
    grid.L = 12;
    grid.N = 1024;
    grid.fd_order = 4;
    ContextPtr ctx = make_context(golden, grid);
    Sampler S{ctx, std::mt19937_64(0xA17E)};
    double worst = 0;
    for (long m = -3; m <= 3; ++m) {
        const GradedElement p = S(m);
        const GradedElement C = partial(1, partial(2, p)) - partial(2, partial(1, p));
        const double ev = static_cast<double>(curvature_eigenvalue(golden, m).to_long_double());
        const cplx expected(0, -2 * pi * ev);
        double err;
        cplx measured = 0;
        if (m == 0) {
            err = max_abs(C) / max_abs(p);
        } else {
            const HeisenbergElement& f = p.parts.at(m);
            measured = inner(f, C.parts.at(m)) / inner(f, f);
            err = std::abs(measured - expected) / std::abs(expected);
        }
        worst = std::max(worst, err);
        info("[d1,d2] on P_" + std::to_string(m) + ": expected " + fmt(expected.imag()) + "i measured " +
             fmt(measured.imag()) + "i rel error " + fmt(err));
    }
    detail = "max relative error " + fmt(worst) + " (4th-order FD, N=1024, L=12)";
    return worst <= 1e-5;
}

// ---------------------------------------------------------------- 4
double twist_residual(ContextPtr ctx, Diagnostics& diag) {
    Sampler S{ctx, std::mt19937_64(0xA17E)};
    double t1 = 0;
    for (auto [m, n] : std::vector<std::pair<long, long>>{{0, 1}, {1, 0}, {1, 1}, {-1, 1}}) {
        const GradedElement p = S(m), q = S(n);
        const GradedElement pq = mul_P(p, q, &diag);
        for (int j = 1; j <= 2; ++j) {
            const GradedElement rhs = mul_P(partial(j, p), sigma(q), &diag) + mul_P(p, partial(j, q), &diag);
            t1 = std::max(t1, rel(partial(j, pq), rhs));
        }
    }
    return t1;
}

double star_residual(ContextPtr ctx) {
    Sampler S{ctx, std::mt19937_64(0xA17F)};
    double t2 = 0;
    for (long m : {0L, 1L, -1L}) {
        const GradedElement p = S(m);
        for (int j = 1; j <= 2; ++j) t2 = std::max(t2, rel(partial(j, star_P(p)), -1.0 * sigma(star_P(partial(j, p)))));
    }
    return t2;
}

bool twisted(std::string& detail) {
    ContextPtr ctx = make_context(golden);
    Diagnostics diag;
    const double t1 = twist_residual(ctx, diag), t2 = star_residual(ctx);
    auto associativity = [](ContextPtr c, long gmax, Diagnostics& d) {
        Sampler S{c, std::mt19937_64(0xA180)};
        double worst = 0;
        for (long g0 = -gmax; g0 <= gmax; ++g0)
            for (long g1 = -gmax; g1 <= gmax; ++g1)
                for (long g2 = -gmax; g2 <= gmax; ++g2) {
                    if (std::abs(g0 + g1) > 2 || std::abs(g1 + g2) > 2 || std::abs(g0 + g1 + g2) > 2) continue;
                    const GradedElement a = S(g0), b = S(g1), x = S(g2);
                    worst = std::max(worst, rel(mul_P(mul_P(a, b, &d), x, &d), mul_P(a, mul_P(b, x, &d), &d)));
                }
        return worst;
    };
    info("associativity on grades in [-1,1] at L=12, N=1024: " + fmt(associativity(ctx, 1, diag)));
    // grade 2 factors need a wider and finer window
    GridSpec wide;
    wide.L = 30;
    wide.N = 4096;
    wide.J = 31;
    wide.mode_box = 20;
    Diagnostics wdiag;
    const double as = associativity(make_context(golden, wide), 2, wdiag);
    for (const auto& w : wdiag.warnings) info("warning (L=30 grid): " + w);
    for (const auto& w : diag.warnings) info("warning: " + w);

    GridSpec low;
    low.fd_order = 4;
    low.interp = Interpolation::cubic_spline;
    ContextPtr lctx = make_context(golden, low);
    Diagnostics ldiag;
    info("twist residuals with 4th-order FD and cubic spline: Leibniz " + fmt(twist_residual(lctx, ldiag)) +
         ", star " + fmt(star_residual(lctx)));

    detail = "Leibniz " + fmt(t1) + ", star " + fmt(t2) + ", associativity on grades in [-2,2] at L=30, N=4096 " + fmt(as);
    return t1 <= 1e-5 && t2 <= 1e-5 && as <= 1e-4;
}

// ---------------------------------------------------------------- 5
bool field_strength_check(std::string& detail) {
    ContextPtr ctx = make_context(golden);
    Sampler S{ctx, std::mt19937_64(0xA17E)};
    const double K = static_cast<double>(curvature_commutator_constant(golden));
    double eig = 0, lit = 0, flipped = 0, shift = 0;
    const GaugePotential shifts[] = {{3, -2}, {1, 0}, {0, 1}, {-0.5, 2.5}, {10, 7}};
    for (long m = -2; m <= 2; ++m) {
        const GradedElement p = S(m);
        const HorizontalForm F = field_strength({}, p);
        HorizontalForm expect = HorizontalForm::zero(ctx, 2);
        expect.c[0] = (2 * pi * static_cast<double>(curvature_eigenvalue(golden, m).to_long_double())) * p;
        const HorizontalForm comm = vol_commutator(K, p);
        if (m != 0) {
            eig = std::max(eig, rel(F, expect));
            lit = std::max(lit, rel(F, comm));
            flipped = std::max(flipped, rel(F, -1.0 * comm));
        } else {
            eig = std::max(eig, max_abs(F) / max_abs(p));
            lit = std::max(lit, distance(F, comm) / max_abs(p));
            flipped = std::max(flipped, distance(F, -1.0 * comm) / max_abs(p));
        }
        for (const auto& s : shifts) shift = std::max(shift, rel(field_strength(s, p), F));
    }
    info("F[nabla0] = [p, K vol] (commutator with the opposite sign): residual " + fmt(flipped));
    detail = "eigenvalue " + fmt(eig) + ", F = [K vol, .] residual " + fmt(lit) + ", (s1,s2) invariance " + fmt(shift);
    return eig <= 1e-5 && lit <= 1e-5 && shift <= 1e-8;
}

// ---------------------------------------------------------------- 6
bool monopole(std::string& detail) {
    const long double e = pell_unit(golden.delta).to_long_double();
    const long double c1 = static_cast<long double>(unit_power_data(1, golden).c);
    const std::pair<const char*, long double> sweep[] = {{"1", 1.0L},     {"eps^-1", 1 / e}, {"eps", e},
                                                         {"eps^2", e * e}, {"eps^3", e * e * e}, {"2", 2.0L},
                                                         {"1/2", 0.5L}};
    bool ok = true;
    std::string adapted, relative;
    for (const auto& [name, q] : sweep) {
        const AdaptednessReport a = adaptedness_test(golden, q, 3), r = relative_adaptedness_test(golden, q, 3);
        const bool is_e2 = std::string(name) == "eps^2", is_e = std::string(name) == "eps";
        ok = ok && a.adapted == is_e2 && r.adapted == is_e;
        if (a.adapted) {
            adapted += name;
            const std::complex<long double> want(0, -e * c1);
            ok = ok && a.constant && std::abs(*a.constant - want) <= 1e-12L * std::abs(want);
            info("adapted constant at q = eps^2: " + fmt(static_cast<double>(a.constant->real())) + " + " +
                 fmt(static_cast<double>(a.constant->imag())) + "i, expected -i eps c1 = " +
                 fmt(static_cast<double>(want.imag())) + "i");
        }
        if (r.adapted) relative += name;
    }
    detail = "adapted at {" + adapted + "}, relative adapted at {" + relative + "}";
    return ok;
}

// ---------------------------------------------------------------- 7
bool gauge_triviality(std::string& detail) {
    ContextPtr ctx = make_context(golden);
    Sampler S{ctx, std::mt19937_64(0xA17E)};
    std::vector<GradedElement> vectors;
    for (long m = -2; m <= 2; ++m) vectors.push_back(S(m));
    vectors.push_back(S(1) + S(-1) + S(0));
    double worst = 0;
    for (cplx zeta : {cplx(0, 1), std::polar(1.0, 2 * pi / 7)})
        for (const GaugePotential& pot : {GaugePotential{}, GaugePotential{1.5, -0.5}})
            for (const auto& p : vectors) worst = std::max(worst, rel(transformed_potential(zeta, pot, p), apply_potential(pot, p)));
    detail = "max relative residual " + fmt(worst);
    return worst <= 1e-8;
}

// ---------------------------------------------------------------- 8
bool lazy_cohomology(std::string& detail) {
    using namespace hopf;
    std::vector<ModuleAlgebra> instances;
    const std::filesystem::path dir = QMONO_INSTANCE_DIR;
    for (const char* name : {"cycle", "cycle_trivial", "clock", "cayley"})
        for (int n : {2, 3, 4, 6}) {
            const auto path = dir / (std::string(name) + "_" + std::to_string(n) + ".json");
            instances.push_back(std::filesystem::exists(path) ? io::load_instance(path)
                                : std::string(name) == "cycle"         ? cycle_instance(n)
                                : std::string(name) == "cycle_trivial" ? cycle_instance(n, true)
                                : std::string(name) == "clock"         ? clock_instance(n)
                                                                       : cayley_instance(n));
        }

    std::mt19937_64 rng(0xA17E);
    double gate = 0, mc = 0, cob = 0, hom = 0, act = 0, quad = 0, curv_cob = 0;
    bool dims = true;
    auto md = [](const cmat& a, const cmat& b) { return a.size() ? (a - b).cwiseAbs().maxCoeff() : 0.0; };
    for (const auto& A : instances) {
        gate = std::max({gate, hopf_gate(A.H).worst(), module_algebra_gate(A).worst()});
        const HochschildSpace hs = solve_hochschild_space(A);
        const auto [z, b] = oracle::group_cohomology(A, hs.central_sa);
        dims = dims && z == hs.dim_Z && b == hs.dim_B;
        info(A.name + ": Z=" + std::to_string(hs.dim_Z) + " B=" + std::to_string(hs.dim_B) + " HH=" +
             std::to_string(hs.dim_HH) + " enumerator Z=" + std::to_string(z) + " B=" + std::to_string(b));
        if (!A.dB) continue;

        const ConvolutionElement s = random_unitary_convolution(A, rng), t = random_unitary_convolution(A, rng);
        const ConvolutionElement mu = random_element(A, Target::M, rng, true);
        auto MC = [&](const ConvolutionElement& x) { return mc_cocycle(A, x, false); };
        auto conj = [&](const ConvolutionElement& x, const ConvolutionElement& m) { return conj_action(A, x, m, false); };
        mc = std::max(mc, distance(MC(convolve(A, s, t)), MC(s) + conj(s, MC(t))));

        const auto central = central_selfadjoint_basis(A, Target::B, true);
        std::normal_distribution<double> g;
        cvec x = cvec::Zero(A.B.dim);
        for (const auto& v : central) x += g(rng) * v;
        const cvec ups = exp_i(A.B, x);
        const cvec rhs = -A.M.right.apply(*A.dB * ups, A.B.adj(ups));
        cob = std::max(cob, distance(MC(coboundary_S(A, ups, 1e-9)), coboundary(A, Target::M, rhs)));

        hom = std::max(hom, md(op_gauge(A, convolve(A, s, t)), op_gauge(A, s) * op_gauge(A, t)));
        act = std::max(act, md(gauge_act(A, s, op_potential(A, mu)), op_potential(A, conj(s, mu) + MC(s))));
        for (const auto& c : hs.cocycles) act = std::max(act, check_op_potential(A, c).worst());

        if (A.Omega2 && A.wedge && A.d1) {
            const ConvolutionElement nu = random_element(A, Target::M, rng, true);
            auto F = [&](const ConvolutionElement& m) { return curvature_map(A, m, false); };
            quad = std::max(quad, distance(F(mu + nu) - F(mu) - F(nu), cplx(0, -1) * bracket(A, mu, nu)));
            for (const cvec& a : hs.central_sa)
                curv_cob = std::max(curv_cob, distance(F(coboundary_H(A, a)),
                                                       cplx(0, -1) * coboundary(A, Target::Omega2, *A.d1 * a)));
        }
    }
    detail = "gate " + fmt(gate) + ", dims " + (dims ? "match" : "MISMATCH") + ", MC " + fmt(mc) + ", coboundary eq " +
             fmt(cob) + ", Op hom " + fmt(hom) + ", Op action " + fmt(act) + ", curvature quadratic " + fmt(quad) +
             ", curvature coboundary " + fmt(curv_cob);
    return gate <= 1e-12 && dims && std::max({mc, cob, hom, act, quad, curv_cob}) <= 1e-10;
}

}  // namespace

int main() {
    run({1, "number theory: Pell units, stabilizers, unit power identities", 1}, number_theory);
    run({2, "torus calculus: phases, associativity, star, d^2 = 0, Leibniz, volume form", 1}, torus_calculus);
    run({3, "curvature eigenvalue [d1,d2] = -2 pi i eps^-m c_m on grades -3..3", 10}, curvature);
    run({4, "twisted Leibniz, twisted star and graded associativity", 60}, twisted);
    run({5, "field strength eigenvalue, commutator form and potential independence", 10}, field_strength_check);
    run({6, "q-monopole: adapted only at eps^2, relative adapted only at eps", 1}, monopole);
    run({7, "gauge action fixes nabla0 for zeta in {i, e^(2 pi i/7)}", 10}, gauge_triviality);
    run({8, "lazy cohomology on C[Z_n], n in {2,3,4,6}", 5}, lazy_cohomology);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
