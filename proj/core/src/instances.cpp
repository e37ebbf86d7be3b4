#include "qmono/hopf_lazy.hpp"

#include <cmath>
#include <numbers>

namespace qmono::hopf {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

FiniteHopf group_algebra(int n) {
    FiniteHopf H;
    H.dim = n;
    H.mult = Tensor3(n, n, n);
    H.coprod = Tensor3(n, n, n);
    H.unit = cvec::Zero(n);
    H.unit[0] = 1.0;
    H.counit = cvec::Ones(n);
    H.antipode = cmat::Zero(n, n);
    H.star = cmat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        H.labels.push_back("g^" + std::to_string(i));
        for (int j = 0; j < n; ++j) H.mult.add(i, j, mod(i + j, n), 1.0);
        H.coprod.add(i, i, i, 1.0);
        H.antipode(mod(-i, n), i) = 1.0;
        H.star(mod(-i, n), i) = 1.0;
    }
    return H;
}

// C(Z_n) on delta functions, generated by x -> x
StarAlgebra functions_on_cycle(int n) {
    StarAlgebra B;
    B.dim = n;
    B.mult = Tensor3(n, n, n);
    B.unit = cvec::Ones(n);
    B.star = cmat::Identity(n, n);
    cvec gen(n);
    for (int x = 0; x < n; ++x) {
        B.labels.push_back("delta_" + std::to_string(x));
        B.mult.add(x, x, x, 1.0);
        gen[x] = static_cast<double>(x);
    }
    B.generators.push_back(gen);
    return B;
}

// (delta_y <| g^j)(x) = delta_y(x + j), so delta_y <| g^j = delta_{y - j}
Tensor3 shift_action(int n, bool trivial) {
    Tensor3 t(n, n, n);
    for (int y = 0; y < n; ++y)
        for (int j = 0; j < n; ++j) t.add(y, j, trivial ? y : mod(y - j, n), 1.0);
    return t;
}

}  // namespace

ModuleAlgebra cycle_instance(int n, bool trivial_action) {
    if (n < 2) throw ConfigError("cycle instance needs n >= 2");
    ModuleAlgebra A;
    A.name = trivial_action ? "cycle_trivial_" + std::to_string(n) : "cycle_" + std::to_string(n);
    A.H = group_algebra(n);
    A.B = functions_on_cycle(n);
    A.actB = shift_action(n, trivial_action);
    A.M.dim = n;
    A.M.left = A.B.mult;
    A.M.right = A.B.mult;
    A.M.star = cmat::Identity(n, n);
    A.M.action = A.actB;
    for (int x = 0; x < n; ++x) A.M.labels.push_back("delta_" + std::to_string(x) + " m");
    A.dB = cmat::Zero(n, n);
    return A;
}

ModuleAlgebra clock_instance(int n) {
    if (n < 2) throw ConfigError("clock instance needs n >= 2");
    const int n2 = n * n;
    const double tau = 2.0 * std::numbers::pi;
    auto omega = [&](int k) { return std::polar(1.0, tau * k / n); };
    auto E = [&](int a, int b) { return mod(a, n) * n + mod(b, n); };

    ModuleAlgebra A;
    A.name = "clock_" + std::to_string(n);
    A.H = group_algebra(n);

    StarAlgebra& B = A.B;
    B.dim = n2;
    B.mult = Tensor3(n2, n2, n2);
    B.unit = cvec::Zero(n2);
    B.star = cmat::Zero(n2, n2);
    cvec C = cvec::Zero(n2), S = cvec::Zero(n2);
    for (int a = 0; a < n; ++a) {
        B.unit[E(a, a)] = 1.0;
        C[E(a, a)] = omega(a);
        S[E(a + 1, a)] = 1.0;
        for (int b = 0; b < n; ++b) {
            B.labels.push_back("E" + std::to_string(a) + std::to_string(b));
            B.star(E(b, a), E(a, b)) = 1.0;
            for (int c = 0; c < n; ++c) B.mult.add(E(a, b), E(b, c), E(a, c), 1.0);
        }
    }
    B.generators = {C, S};

    // E_ab <| g^j = S*^j E_ab S^j = E_{a-j, b-j}
    A.actB = Tensor3(n2, n, n2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int j = 0; j < n; ++j) A.actB.add(E(a, b), j, E(a - j, b - j), 1.0);

    // M = B tau+ (+) B tau-, index s * n^2 + E(a,b) with s = 0 for tau+
    Bimodule& M = A.M;
    M.dim = 2 * n2;
    M.left = Tensor3(n2, 2 * n2, 2 * n2);
    M.right = Tensor3(2 * n2, n2, 2 * n2);
    M.star = cmat::Zero(2 * n2, 2 * n2);
    M.action = Tensor3(2 * n2, n, 2 * n2);
    for (int s = 0; s < 2; ++s)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const int m = s * n2 + E(a, b);
                M.labels.push_back(B.labels[E(a, b)] + (s ? " tau-" : " tau+"));
                M.star((1 - s) * n2 + E(b, a), m) = 1.0;
                for (int c = 0; c < n; ++c) {
                    M.left.add(E(c, a), m, s * n2 + E(c, b), 1.0);
                    M.right.add(m, E(b, c), s * n2 + E(a, c), 1.0);
                }
                for (int j = 0; j < n; ++j) M.action.add(m, j, s * n2 + E(a - j, b - j), omega(s ? j : -j));
            }

    // d E_ab = (w^a - w^b) E_ab tau+ + (w^-a - w^-b) E_ab tau-
    cmat dB = cmat::Zero(2 * n2, n2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            dB(E(a, b), E(a, b)) = omega(a) - omega(b);
            dB(n2 + E(a, b), E(a, b)) = omega(-a) - omega(-b);
        }
    A.dB = dB;

    Bimodule W;
    W.dim = n2;
    W.left = B.mult;
    W.right = B.mult;
    W.star = -B.star;
    W.action = A.actB;
    for (int i = 0; i < n2; ++i) W.labels.push_back(B.labels[i] + " vol");
    A.Omega2 = W;

    // (x tau+) ^ (y tau-) = xy vol, (x tau-) ^ (y tau+) = -xy vol
    Tensor3 wedge(2 * n2, 2 * n2, n2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                wedge.add(E(a, b), n2 + E(b, c), E(a, c), 1.0);
                wedge.add(n2 + E(a, b), E(b, c), E(a, c), -1.0);
            }
    A.wedge = wedge;

    // d(x tau+) = -[C*, x] vol, d(x tau-) = [C, x] vol
    cmat d1 = cmat::Zero(n2, 2 * n2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            d1(E(a, b), E(a, b)) = -(omega(-a) - omega(-b));
            d1(E(a, b), n2 + E(a, b)) = omega(a) - omega(b);
        }
    A.d1 = d1;
    return A;
}

ModuleAlgebra cayley_instance(int n) {
    if (n < 2) throw ConfigError("cayley instance needs n >= 2");
    ModuleAlgebra A;
    A.name = "cayley_" + std::to_string(n);
    A.H = group_algebra(n);
    A.B = functions_on_cycle(n);
    A.actB = shift_action(n, false);

    // R^t(delta_x) = delta_{x-t}; basis delta_x e_s at index si * n + x
    const std::vector<int> steps = n == 2 ? std::vector<int>{1} : std::vector<int>{1, -1};
    const int ns = static_cast<int>(steps.size());
    Bimodule& M = A.M;
    M.dim = ns * n;
    M.left = Tensor3(n, M.dim, M.dim);
    M.right = Tensor3(M.dim, n, M.dim);
    M.star = cmat::Zero(M.dim, M.dim);
    M.action = Tensor3(M.dim, n, M.dim);
    cmat dB = cmat::Zero(M.dim, n);
    for (int si = 0; si < ns; ++si) {
        const int s = steps[si];
        const int sbar = ns == 1 ? 0 : 1 - si;
        for (int x = 0; x < n; ++x) {
            const int m = si * n + x;
            M.labels.push_back("delta_" + std::to_string(x) + " e" + (s > 0 ? "+" : "-"));
            M.left.add(x, m, m, 1.0);
            // (delta_x e_s) delta_y = delta_x R^s(delta_y) e_s, nonzero for y = x + s
            M.right.add(m, mod(x + s, n), m, 1.0);
            // (delta_x e_s)* = R^{-s}(delta_x) e_{-s} = delta_{x+s} e_{-s}
            M.star(sbar * n + mod(x + s, n), m) = 1.0;
            for (int j = 0; j < n; ++j) M.action.add(m, j, si * n + mod(x - j, n), 1.0);
            // d delta_x = sum_s (delta_{x-s} - delta_x) e_s
            dB(si * n + mod(x - s, n), x) += 1.0;
            dB(si * n + x, x) -= 1.0;
        }
    }
    A.dB = dB;
    return A;
}

}  // namespace qmono::hopf
