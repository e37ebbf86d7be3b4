#include "oracles.hpp"
#include "qmono/hopf_lazy.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qmono::hopf;
using oracle::apply_tensor;

namespace {

// (f * g)(e_i) = sum over Delta(e_i) = v e_j (x) e_k of v f(e_j) g(e_k), B-valued
ConvolutionElement contract(const ModuleAlgebra& A, const ConvolutionElement& f, const ConvolutionElement& g) {
    ConvolutionElement out = zero(A, Target::B);
    for (const auto& e : A.H.coprod.entries()) out.values[e.i] += e.v * apply_tensor(A.B.mult, f.values[e.j], g.values[e.k]);
    return out;
}

cvec shift(const ModuleAlgebra& A, const cvec& x, int j) { return apply_tensor(A.actB, x, A.H.basis(j)); }

cvec phases(std::initializer_list<double> a) {
    cvec v(static_cast<int>(a.size()));
    int i = 0;
    for (double x : a) v[i++] = std::polar(1.0, x);
    return v;
}

std::vector<cvec> real_delta_basis(int n) {
    std::vector<cvec> out;
    for (int i = 0; i < n; ++i) out.push_back(cvec::Unit(n, i));
    return out;
}

}  // namespace

TEST_SUITE("hopf_lazy") {

TEST_CASE("shipped instances pass the gates") {
    for (int n : {2, 3, 4, 6}) {
        for (const ModuleAlgebra& A : {cycle_instance(n), cycle_instance(n, true), clock_instance(n), cayley_instance(n)}) {
            CAPTURE(A.name);
            CHECK(hopf_gate(A.H).worst() <= 1e-12);
            CHECK(module_algebra_gate(A).worst() <= 1e-12);
        }
    }
}

TEST_CASE("corrupted antipode fails the gate") {
    ModuleAlgebra A = cycle_instance(4);
    A.H.antipode(0, 1) += 0.5;
    CHECK(hopf_gate(A.H).get("antipode") > 0.1);
}

TEST_CASE("convolution against a direct contraction") {
    std::mt19937_64 rng(1);
    for (const ModuleAlgebra& A : {cycle_instance(2), clock_instance(3), cayley_instance(4)}) {
        CAPTURE(A.name);
        const ConvolutionElement f = random_element(A, Target::B, rng, false);
        const ConvolutionElement g = random_element(A, Target::B, rng, false);
        const ConvolutionElement h = random_element(A, Target::B, rng, false);
        CHECK(distance(convolve(A, f, g), contract(A, f, g)) < 1e-12);
        CHECK(distance(convolve(A, convolve(A, f, g), h), contract(A, f, contract(A, g, h))) < 1e-12);
        CHECK(distance(convolve(A, f, unit(A)), f) < 1e-14);
        CHECK(distance(convolve(A, unit(A), f), f) < 1e-14);
        CHECK(distance(conv_star(A, convolve(A, f, g)), convolve(A, conv_star(A, g), conv_star(A, f))) < 1e-12);
        CHECK(distance(conv_star(A, conv_star(A, f)), f) < 1e-14);
        CHECK(distance(conv_star(A, unit(A)), unit(A)) < 1e-14);
    }
}

TEST_CASE("group-like convolution is pointwise") {
    std::mt19937_64 rng(2);
    const ModuleAlgebra A = cycle_instance(2);
    const ConvolutionElement f = random_element(A, Target::B, rng, false);
    const ConvolutionElement g = random_element(A, Target::B, rng, false);
    const ConvolutionElement fg = convolve(A, f, g);
    const ConvolutionElement fs = conv_star(A, f);
    for (int i = 0; i < 2; ++i) {
        CHECK((fg.values[i] - f.values[i].cwiseProduct(g.values[i])).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((fs.values[i] - f.values[i].conjugate()).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("target mismatch") {
    const ModuleAlgebra A = cayley_instance(3);
    CHECK_THROWS_AS(convolve(A, zero(A, Target::M), zero(A, Target::M)), qmono::TargetMismatch);
}

TEST_CASE("Sweedler cocycle on C[Z_3]") {
    const ModuleAlgebra A = cycle_instance(3);
    CHECK(check_sweedler_cocycle(A, unit(A)).worst() < 1e-14);

    auto build = [&](const cvec& w) {
        ConvolutionElement s = zero(A, Target::B);
        s.values[0] = A.B.unit;
        s.values[1] = w;
        s.values[2] = shift(A, w, 1).cwiseProduct(w);
        return s;
    };
    // w R(w) R^2(w) = 1 pointwise: the product of all entries is 1
    const cvec good = phases({0.7, -2.1, 1.4});
    const ConvolutionElement s = build(good);
    CHECK(distance(s, group_sweedler(A, good)) < 1e-14);
    const CheckReport r = check_sweedler_cocycle(A, s);
    CHECK(r.worst() < 1e-12);

    const cvec bad = phases({0.7, -2.1, 1.0});
    const ConvolutionElement t = build(bad);
    const CheckReport rb = check_sweedler_cocycle(A, t);
    CHECK(rb.get("unitary") < 1e-12);
    CHECK(rb.get("cocycle") > 0.1);
    // the violation sits at (g^2, g): sigma(1) against (sigma(g^2) <| g) sigma(g)
    const cvec lhs = t.values[0], rhs = shift(A, t.values[2], 1).cwiseProduct(t.values[1]);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() > 0.1);
    const cvec rhs_good = shift(A, s.values[2], 1).cwiseProduct(s.values[1]);
    CHECK((s.values[0] - rhs_good).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Hochschild cocycle on C[Z_2]") {
    const ModuleAlgebra A = cycle_instance(2);
    CHECK(check_hochschild_cocycle(A, zero(A, Target::M)).worst() == 0.0);
    ConvolutionElement mu = zero(A, Target::M);
    mu.values[1] << 0.8, -0.8;
    CHECK(check_hochschild_cocycle(A, mu).worst() < 1e-14);
    mu.values[1] << 0.8, 0.3;
    CHECK(check_hochschild_cocycle(A, mu).get("cocycle") > 0.5);
    cvec m(2);
    m << 1.5, -0.25;
    CHECK(check_hochschild_cocycle(A, coboundary_H(A, m)).worst() < 1e-14);
    CHECK(max_abs(coboundary_H(A, cvec::Zero(2))) == 0.0);
}

TEST_CASE("Sweedler coboundary") {
    const ModuleAlgebra A = cycle_instance(2);
    cvec ups(2);
    ups << 1.0, -1.0;
    const ConvolutionElement D = coboundary_S(A, ups);
    CHECK((D.values[1] - cvec::Constant(2, -1.0)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((D.values[0] - A.B.unit).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(distance(coboundary_S(A, A.B.unit), unit(A)) < 1e-15);
    CHECK(check_sweedler_cocycle(A, D).worst() < 1e-14);
    CHECK_THROWS_AS(coboundary_S(A, cvec::Constant(2, 2.0)), qmono::NotAdmissible);
}

TEST_CASE("Op of a coboundary is conjugation") {
    const ModuleAlgebra A = cycle_instance(2);
    const CrossedProduct P(A);
    cvec ups(2);
    ups << 1.0, -1.0;
    const cmat G = op_gauge(A, coboundary_S(A, ups));
    const cvec u = P.embed_B(ups), us = P.embed_B(A.B.adj(ups));
    for (int i = 0; i < P.dim_P(); ++i) {
        const cvec e = cvec::Unit(P.dim_P(), i);
        CHECK((G * e - P.mul(P.mul(u, e), us)).cwiseAbs().maxCoeff() < 1e-14);
    }
    CHECK((op_gauge(A, unit(A)) - cmat::Identity(P.dim_P(), P.dim_P())).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("Op of the zero potential is h d_B(b)") {
    const ModuleAlgebra A = clock_instance(3);
    const cmat O = op_potential(A, zero(A, Target::M));
    const int nb = A.B.dim, nm = A.M.dim;
    cmat expect = cmat::Zero(A.H.dim * nm, A.H.dim * nb);
    for (int h = 0; h < A.H.dim; ++h) expect.block(h * nm, h * nb, nm, nb) = *A.dB;
    CHECK((O - expect).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(check_op_potential(A, zero(A, Target::M)).worst() < 1e-12);
}

TEST_CASE("conjugation action") {
    std::mt19937_64 rng(3);
    const ModuleAlgebra A = cycle_instance(4);
    const HochschildSpace hs = solve_hochschild_space(A);
    REQUIRE(!hs.cocycles.empty());
    const ConvolutionElement& mu = hs.cocycles.front();
    CHECK(distance(conj_action(A, unit(A), mu), mu) < 1e-14);
    cvec w(4);
    w << std::polar(1.0, 0.3), std::polar(1.0, 1.1), std::polar(1.0, -0.9), std::polar(1.0, -0.5);
    const ConvolutionElement s = group_sweedler(A, w);
    REQUIRE(check_sweedler_cocycle(A, s).worst() < 1e-12);
    CHECK(distance(conj_action(A, s, mu), mu) < 1e-12);

    const ModuleAlgebra C = clock_instance(3);
    const ConvolutionElement sig = random_unitary_convolution(C, rng), tau = random_unitary_convolution(C, rng);
    const ConvolutionElement nu = random_element(C, Target::M, rng, true);
    CHECK(distance(conj_action(C, convolve(C, sig, tau), nu, false),
                   conj_action(C, sig, conj_action(C, tau, nu, false), false)) < 1e-11);
}

TEST_CASE("Maurer-Cartan cocycle") {
    std::mt19937_64 rng(4);
    const ModuleAlgebra A = cayley_instance(2);
    CHECK(max_abs(mc_cocycle(A, unit(A))) < 1e-15);
    const ConvolutionElement s = random_unitary_convolution(A, rng);
    const ConvolutionElement mc = mc_cocycle(A, s, false);
    for (int i = 0; i < 2; ++i) {
        const cvec expect = -apply_tensor(A.M.right, *A.dB * s.values[i], s.values[i].conjugate());
        CHECK((mc.values[i] - expect).cwiseAbs().maxCoeff() < 1e-13);
    }
    const ModuleAlgebra C = clock_instance(4);
    const ConvolutionElement a = random_unitary_convolution(C, rng), b = random_unitary_convolution(C, rng);
    const ConvolutionElement lhs = mc_cocycle(C, convolve(C, a, b), false);
    const ConvolutionElement rhs = mc_cocycle(C, a, false) + conj_action(C, a, mc_cocycle(C, b, false), false);
    CHECK(distance(lhs, rhs) < 1e-10);
}

TEST_CASE("curvature map") {
    std::mt19937_64 rng(5);
    const ModuleAlgebra A = clock_instance(3);
    CHECK(max_abs(curvature_map(A, zero(A, Target::M))) == 0.0);
    const ConvolutionElement mu = random_element(A, Target::M, rng, true), nu = random_element(A, Target::M, rng, true);
    auto F = [&](const ConvolutionElement& m) { return curvature_map(A, m, false); };
    CHECK(distance(F(mu + nu) - F(mu) - F(nu), cplx(0, -1) * bracket(A, mu, nu)) < 1e-10);
    for (const cvec& a : solve_hochschild_space(A).central_sa)
        CHECK(distance(F(coboundary_H(A, a)), cplx(0, -1) * coboundary(A, Target::Omega2, *A.d1 * a)) < 1e-10);
    const ConvolutionElement s = random_unitary_convolution(A, rng);
    CHECK(distance(F(conj_action(A, s, mu, false) + mc_cocycle(A, s, false)), conj_action(A, s, F(mu), false)) < 1e-10);
}

TEST_CASE("Hochschild dimensions against group cohomology") {
    for (int n : {2, 3, 4, 6}) {
        CAPTURE(n);
        const ModuleAlgebra A = cycle_instance(n);
        const HochschildSpace hs = solve_hochschild_space(A);
        CHECK(hs.central_sa.size() == static_cast<size_t>(n));
        const auto [z, b] = oracle::group_cohomology(A, real_delta_basis(n));
        CHECK(hs.dim_Z == z);
        CHECK(hs.dim_B == b);
        CHECK(z == n - 1);
        CHECK(hs.dim_HH == 0);

        const ModuleAlgebra T = cycle_instance(n, true);
        const HochschildSpace ht = solve_hochschild_space(T);
        const auto [zt, bt] = oracle::group_cohomology(T, real_delta_basis(n));
        CHECK(ht.dim_Z == zt);
        CHECK(ht.dim_B == bt);
        CHECK(zt == 0);

        for (const ModuleAlgebra& X : {clock_instance(n), cayley_instance(n)}) {
            CAPTURE(X.name);
            const HochschildSpace hx = solve_hochschild_space(X);
            const auto [zx, bx] = oracle::group_cohomology(X, hx.central_sa);
            CHECK(hx.dim_Z == zx);
            CHECK(hx.dim_B == bx);
            for (const auto& mu : hx.cocycles) CHECK(check_hochschild_cocycle(X, mu).worst() < 1e-10);
        }
    }
}

TEST_CASE("Op is a homomorphism and intertwines the gauge action") {
    std::mt19937_64 rng(6);
    const ModuleAlgebra A = clock_instance(2);
    const ConvolutionElement s = random_unitary_convolution(A, rng), t = random_unitary_convolution(A, rng);
    CHECK((op_gauge(A, convolve(A, s, t)) - op_gauge(A, s) * op_gauge(A, t)).cwiseAbs().maxCoeff() < 1e-10);
    const ConvolutionElement mu = random_element(A, Target::M, rng, true);
    const cmat lhs = gauge_act(A, s, op_potential(A, mu));
    const cmat rhs = op_potential(A, conj_action(A, s, mu, false) + mc_cocycle(A, s, false));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

}  // TEST_SUITE
