#include "commands.hpp"

#include "qmono/errors.hpp"
#include "qmono/nc_torus.hpp"

#include <cmath>
#include <random>

namespace qmono::cli {

namespace {

std::string unit_str(const OrderUnit& u) {
    return "(" + u.u.str() + " + " + u.v.str() + "*sqrt(" + u.delta.str() + "))/2";
}

// Pell data, Phi and the power table of Phi(eps^m), m in [-M, M].
void unit_tables(Report& r, const QuadraticIrrational& t, long M) {
    const OrderUnit fu = fundamental_unit(t.delta), pu = pell_unit(t.delta);
    const StabilizerMatrix g = phi(pu, t);
    const FieldElement eps = pu.value(), th = t.value();
    r.note("theta", {{"a", t.a.str()}, {"b", t.b.str()}, {"c", t.c.str()}, {"delta", t.delta.str()},
                     {"value", static_cast<double>(t.to_long_double())}});
    r.note("fundamental_unit", {{"u", fu.u.str()}, {"v", fu.v.str()}, {"value", unit_str(fu)},
                                {"norm", norm(fu.value()).str()}});
    r.note("pell_unit", {{"u", pu.u.str()}, {"v", pu.v.str()}, {"value", unit_str(pu)},
                         {"numeric", static_cast<double>(pu.to_long_double())}});
    r.note("phi", g.str());

    r.check("pell_equation", pu.u * pu.u - t.delta * pu.v * pu.v == 4);
    r.check("phi_det_one", g.det() == 1);
    r.check("phi_stabilizes_theta", g.stabilizes(t));
    r.check("phi_inverse_roundtrip", phi_inverse(g, t) == eps);

    r.columns({"m", "a", "b", "c", "d", "eps^m", "c*theta+d"});
    bool unit_rel = true, hom = true, cadd = true;
    std::vector<UnitPowerData> pw;
    for (long m = -M; m <= M; ++m) pw.push_back(unit_power_data(m, t));
    auto P = [&](long m) -> const UnitPowerData& { return pw[m + M]; };
    for (long m = -M; m <= M; ++m) {
        const UnitPowerData& u = P(m);
        const FieldElement lhs = FieldElement(Rat(u.c), 0, t.delta) * th + FieldElement(Rat(u.d), 0, t.delta);
        const FieldElement em = pow(eps, m);
        unit_rel = unit_rel && lhs == em;
        r.row({m, u.a.str(), u.b.str(), u.c.str(), u.d.str(), static_cast<double>(em.to_long_double()),
               static_cast<double>(lhs.to_long_double())});
        for (long n = -M; n <= M; ++n) {
            if (std::abs(m + n) > M) continue;
            hom = hom && P(m).matrix() * P(n).matrix() == P(m + n).matrix();
            const FieldElement rhs = FieldElement(Rat(P(m).c), 0, t.delta) * pow(eps, -n) +
                                     pow(eps, m) * FieldElement(Rat(P(n).c), 0, t.delta);
            cadd = cadd && FieldElement(Rat(P(m + n).c), 0, t.delta) == rhs;
        }
    }
    r.check("unit_relation", unit_rel, "c_m theta + d_m = eps^m");
    r.check("phi_homomorphism", hom);
    r.check("c_addition", cadd, "c_{m+n} = c_m eps^-n + eps^m c_n");
}

}  // namespace

Report cmd_pell(const RunConfig& c) {
    const Int D = c.delta;
    if (!is_valid_discriminant(D))
        throw InvalidDiscriminant(D.str() + " is not a valid discriminant (need D > 0, non-square, D = 0,1 mod 4)");
    // canonical type: theta = (b + sqrt(D))/2 with b = D mod 2
    const Int b = D % 2;
    const QuadraticIrrational t{1, b, (b * b - D) / 4, D};
    Report r("pell");
    r.set_config({{"delta", c.delta}, {"grades", c.grades}});
    unit_tables(r, t, c.grades);
    return r;
}

Report cmd_stabilizer(const RunConfig& c) {
    const QuadraticIrrational t = parse_theta(c.theta);
    Report r("stabilizer");
    r.set_config({{"theta", c.theta}, {"grades", c.grades}});
    unit_tables(r, t, c.grades);
    return r;
}

Report cmd_torus_check(const RunConfig& c) {
    const double tol = c.tol.value_or(1e-12);
    const double th = static_cast<double>(parse_theta(c.theta).to_long_double());
    Report r("torus-check");
    r.set_config({{"theta", c.theta}, {"tol", tol}, {"trials", c.trials}, {"seed", c.seed}});
    std::mt19937_64 rng(c.seed);
    auto rel = [](const TorusElement& x, const TorusElement& y) {
        return distance(x, y) / std::max({x.max_abs(), y.max_abs(), 1e-300});
    };
    auto rel1 = [&](const OneFormB& x, const OneFormB& y) { return std::max(rel(x.b1, y.b1), rel(x.b2, y.b2)); };

    const TorusElement U = TorusElement::U(th), V = TorusElement::V(th);
    r.suite("commutation VU = e(theta) UV", rel(V * U, theta_phase(th, 1) * (U * V)), tol);

    double assoc = 0, anti = 0, invol = 0, dd = 0, leib = 0, dleib = 0, dstar = 0, comm = 0;
    for (int k = 0; k < c.trials; ++k) {
        const TorusElement x = random_torus(rng, th, 5, 3), y = random_torus(rng, th, 5, 3),
                           z = random_torus(rng, th, 5, 3);
        assoc = std::max(assoc, rel(x * (y * z), (x * y) * z));
        anti = std::max(anti, rel(star(x * y), star(y) * star(x)));
        invol = std::max(invol, rel(star(star(x)), x));
        dd = std::max(dd, d_B1(d_B(x)).b.max_abs() / std::max(delta(1, delta(2, x)).max_abs(), 1e-300));
        for (int j = 1; j <= 2; ++j)
            leib = std::max(leib, rel(delta(j, x * y), delta(j, x) * y + x * delta(j, y)));
        const OneFormB lhs = d_B(x * y), a = left_mul(x, d_B(y)), b = right_mul(d_B(x), y);
        dleib = std::max(dleib, rel1(lhs, OneFormB{a.b1 + b.b1, a.b2 + b.b2}));
        // star-derivation convention d(b*) = -d(b)*
        const OneFormB sd = star(d_B(x));
        dstar = std::max(dstar, rel1(d_B(star(x)), OneFormB{-1.0 * sd.b1, -1.0 * sd.b2}));
        comm = std::max(comm, delta(1, delta(2, x)).max_abs() > 0
                                  ? rel(delta(1, delta(2, x)), delta(2, delta(1, x)))
                                  : 0.0);
    }
    r.suite("associativity", assoc, tol);
    r.suite("star antimultiplicative", anti, tol);
    r.suite("star involutive", invol, tol);
    r.suite("d^2 = 0", dd, tol);
    r.suite("delta_j Leibniz", leib, tol);
    r.suite("d_B Leibniz", dleib, tol);
    r.suite("d_B star", dstar, tol);
    r.suite("[delta_1, delta_2] = 0", comm, tol);
    const TwoFormB vol = wedge(OneFormB::dtau(1, th), OneFormB::dtau(2, th));
    r.suite("dtau1 ^ dtau2 = vol", distance(vol.b, TorusElement::scalar(1.0, th)), tol);
    const TwoFormB anti21 = wedge(OneFormB::dtau(2, th), OneFormB::dtau(1, th));
    r.suite("dtau2 ^ dtau1 = -vol", distance(anti21.b, TorusElement::scalar(-1.0, th)), tol);
    return r;
}

}  // namespace qmono::cli
