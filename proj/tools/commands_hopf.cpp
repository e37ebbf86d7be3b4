#include "commands.hpp"

#include "qmono/errors.hpp"
#include "qmono/hopf_lazy.hpp"
#include "qmono/json_io.hpp"

#include <boost/algorithm/string.hpp>

#include <filesystem>
#include <map>
#include <numbers>

namespace qmono::cli {

using namespace hopf;

namespace {

constexpr double kGateTol = 1e-12;

const std::vector<int> kShippedSizes = {2, 3, 4, 6};

ModuleAlgebra make_builtin(const std::string& name, int n) {
    if (name == "cycle") return cycle_instance(n);
    if (name == "cycle_trivial") return cycle_instance(n, true);
    if (name == "clock") return clock_instance(n);
    if (name == "cayley") return cayley_instance(n);
    throw ConfigError("unknown builtin instance '" + name + "' (cycle, cycle_trivial, clock, cayley)");
}

std::vector<ModuleAlgebra> all_builtins() {
    std::vector<ModuleAlgebra> out;
    for (const char* name : {"cycle", "cycle_trivial", "clock", "cayley"})
        for (int n : kShippedSizes) out.push_back(make_builtin(name, n));
    return out;
}

bool group_like(const ModuleAlgebra& A) {
    for (int i = 0; i < A.H.dim; ++i) {
        auto [b, e] = A.H.coprod.row(i);
        if (e - b != 1 || b->j != i || b->k != i || std::abs(b->v - 1.0) > 1e-14) return false;
    }
    // g^j = g^{j-1} g
    for (int j = 1; j < A.H.dim; ++j)
        if ((A.H.mul(A.H.basis(j - 1), A.H.basis(1)) - A.H.basis(j % A.H.dim)).cwiseAbs().maxCoeff() > 1e-14)
            return false;
    return A.H.dim >= 2 && (A.H.mul(A.H.basis(A.H.dim - 1), A.H.basis(1)) - A.H.basis(0)).cwiseAbs().maxCoeff() < 1e-14;
}

Eigen::VectorXd realify(const cvec& v) {
    Eigen::VectorXd x(2 * v.size());
    x << v.real(), v.imag();
    return x;
}

int rank(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    int r = 0;
    for (int i = 0; i < s.size(); ++i) r += s[i] > 1e-9 * std::max(1.0, s[0]);
    return r;
}

// dim Z^1(Z_n, V) and dim B^1(Z_n, V) for V = Z_B(M)_sa with the generator acting by R
std::pair<int, int> group_cohomology(const ModuleAlgebra& A, const std::vector<cvec>& V) {
    const int k = static_cast<int>(V.size());
    if (k == 0) return {0, 0};
    Eigen::MatrixXd basis(2 * A.M.dim, k);
    for (int i = 0; i < k; ++i) basis.col(i) = realify(V[i]);
    Eigen::MatrixXd R(k, k);
    const auto solver = basis.colPivHouseholderQr();
    for (int i = 0; i < k; ++i) R.col(i) = solver.solve(realify(act(A, Target::M, V[i], A.H.basis(1))));
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(k, k), P = Eigen::MatrixXd::Identity(k, k);
    for (int i = 0; i < A.H.dim; ++i) {
        sum += P;
        P = R * P;
    }
    return {k - rank(sum), rank(R - Eigen::MatrixXd::Identity(k, k))};
}

double op_distance(const cmat& a, const cmat& b) { return a.size() ? (a - b).cwiseAbs().maxCoeff() : 0.0; }

// scalar characters plus group_sweedler candidates built from phase vectors; non-lazy candidates are dropped
std::vector<ConvolutionElement> lazy_sweedler_samples(const ModuleAlgebra& A, std::mt19937_64& rng, double tol) {
    std::vector<ConvolutionElement> out;
    if (!group_like(A)) return {unit(A)};
    const int n = A.H.dim;
    for (int k = 0; k < n; ++k) {
        ConvolutionElement s = zero(A, Target::B);
        for (int j = 0; j < n; ++j) s.values[j] = std::polar(1.0, 2 * std::numbers::pi * k * j / n) * A.B.unit;
        out.push_back(s);
    }
    // w_i = omega^{k_i} with sum k_i = 0 mod n
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int trial = 0; trial < 4; ++trial) {
        cvec w = cvec::Zero(A.B.dim);
        int total = 0;
        for (int i = 0; i < A.B.dim; ++i) {
            const int k = i + 1 < A.B.dim ? pick(rng) : (n - total % n) % n;
            total += k;
            w[i] = std::polar(1.0, 2 * std::numbers::pi * k / n);
        }
        try {
            ConvolutionElement s = group_sweedler(A, w);
            if (check_sweedler_cocycle(A, s).passed(tol)) out.push_back(s);
        } catch (const NotAdmissible&) {
        }
    }
    return out;
}

struct Worst {
    std::map<std::string, double> v;
    void add(const std::string& k, double x) { v[k] = std::max(v[k], x); }
};

json run_instance(const ModuleAlgebra& A, std::mt19937_64& rng, double tol, Worst& worst, Report& r) {
    json row = {A.name, A.H.dim, A.B.dim, A.M.dim};
    const CheckReport gh = hopf_gate(A.H), ga = module_algebra_gate(A);
    worst.add("gate", std::max(gh.worst(), ga.worst()));
    if (!gh.passed(kGateTol) || !ga.passed(kGateTol)) {
        std::string bad;
        for (const auto* rep : {&gh, &ga})
            for (auto& [name, v] : rep->items)
                if (v > kGateTol) bad += (bad.empty() ? "" : ", ") + name;
        r.warn(A.name + ": gate failure (" + bad + "), remaining checks skipped");
        for (int i = 0; i < 7; ++i) row.push_back(nullptr);
        return row;
    }

    const HochschildSpace hs = solve_hochschild_space(A);
    row.push_back(hs.dim_Z);
    row.push_back(hs.dim_B);
    row.push_back(hs.dim_HH);
    if (group_like(A)) {
        auto [z, b] = group_cohomology(A, hs.central_sa);
        row.push_back(z);
        row.push_back(b);
        if (z != hs.dim_Z || b != hs.dim_B)
            r.check(A.name + ": dims match group cohomology", false,
                    "solver Z=" + std::to_string(hs.dim_Z) + " B=" + std::to_string(hs.dim_B) +
                        ", enumerator Z=" + std::to_string(z) + " B=" + std::to_string(b));
    } else {
        row.push_back(nullptr);
        row.push_back(nullptr);
    }
    for (const auto* list : {&hs.cocycles, &hs.coboundaries})
        for (const auto& mu : *list) worst.add("Hochschild basis", check_hochschild_cocycle(A, mu).worst());

    const auto lazy = lazy_sweedler_samples(A, rng, tol);
    row.push_back(static_cast<int>(lazy.size()));
    for (const auto& s : lazy) {
        worst.add("lazy Sweedler", check_sweedler_cocycle(A, s).worst());
        worst.add("Op gauge", check_op_gauge(A, s).worst());
    }
    std::vector<ConvolutionElement> pots = hs.cocycles;
    pots.push_back(zero(A, Target::M));
    for (const auto& mu : pots) worst.add("Op potential", check_op_potential(A, mu).worst());

    // identities valid for every unitary sigma; tested on generic elements and on lazy cocycles
    const ConvolutionElement sig = random_unitary_convolution(A, rng), tau = random_unitary_convolution(A, rng);
    const ConvolutionElement mu = random_element(A, Target::M, rng, true), nu = random_element(A, Target::M, rng, true);
    const bool has_d = A.dB.has_value();
    if (has_d) {
        auto mc = [&](const ConvolutionElement& s) { return mc_cocycle(A, s, false); };
        auto conj = [&](const ConvolutionElement& s, const ConvolutionElement& m) { return conj_action(A, s, m, false); };
        worst.add("MC cocycle identity", distance(mc(convolve(A, sig, tau)), mc(sig) + conj(sig, mc(tau))));
        for (const auto& s : lazy)
            worst.add("MC cocycle identity", distance(mc(convolve(A, s, sig)), mc(s) + conj(s, mc(sig))));
        worst.add("Op homomorphism",
                  op_distance(op_gauge(A, convolve(A, sig, tau)), op_gauge(A, sig) * op_gauge(A, tau)));
        worst.add("Op gauge action", op_distance(gauge_act(A, sig, op_potential(A, mu)),
                                                 op_potential(A, conj(sig, mu) + mc(sig))));
        for (const auto& s : lazy)
            for (const auto& m : pots)
                worst.add("Op gauge action",
                          op_distance(gauge_act(A, s, op_potential(A, m)), op_potential(A, conj(s, m) + mc(s))));

        // MC(D upsilon) = D(-d(upsilon) upsilon*) for central unitaries upsilon
        const auto central = central_selfadjoint_basis(A, Target::B, true);
        std::normal_distribution<double> g(0.0, 1.0);
        for (int trial = 0; trial < 2; ++trial) {
            cvec x = cvec::Zero(A.B.dim);
            for (const auto& v : central) x += g(rng) * v;
            const cvec ups = exp_i(A.B, x);
            const ConvolutionElement D = coboundary_S(A, ups, 1e-9);
            worst.add("lazy Sweedler", check_sweedler_cocycle(A, D).worst());
            const cvec v = -A.M.right.apply(*A.dB * ups, A.B.adj(ups));
            worst.add("MC coboundary", distance(mc(D), coboundary(A, Target::M, v)));
        }

        if (A.Omega2 && A.wedge && A.d1) {
            auto F = [&](const ConvolutionElement& m) { return curvature_map(A, m, false); };
            ConvolutionElement br = bracket(A, mu, nu);
            br *= cplx(0, -1);
            worst.add("curvature quadratic defect", distance(F(mu + nu) - F(mu) - F(nu), br));
            worst.add("curvature equivariance", distance(F(conj(sig, mu) + mc(sig)), conj(sig, F(mu))));
            for (const cvec& a : hs.central_sa) {
                ConvolutionElement rhs = coboundary(A, Target::Omega2, *A.d1 * a);
                rhs *= cplx(0, -1);
                worst.add("curvature coboundary", distance(F(coboundary_H(A, a)), rhs));
            }
        }
    }
    return row;
}

}  // namespace

Report cmd_cohomology(const RunConfig& c) {
    const double tol = c.tol.value_or(1e-10);
    std::vector<ModuleAlgebra> instances;
    if (!c.instance.empty()) {
        instances.push_back(io::load_instance(c.instance));
    } else if (!c.builtin.empty()) {
        std::vector<std::string> parts;
        boost::algorithm::split(parts, c.builtin, boost::algorithm::is_any_of(":"));
        if (parts.size() != 2) throw ConfigError("--builtin expects name:n");
        int n = 0;
        try {
            n = std::stoi(parts[1]);
        } catch (const std::exception&) {
            throw ConfigError("--builtin size must be an integer");
        }
        instances.push_back(make_builtin(parts[0], n));
    } else {
        instances = all_builtins();
    }

    Report r("cohomology");
    r.set_config({{"instance", c.instance}, {"builtin", c.builtin}, {"tol", tol}, {"seed", c.seed}});
    r.columns({"instance", "dim_H", "dim_B", "dim_M", "Z", "B", "HH", "Z_group", "B_group", "lazy_samples"});
    std::mt19937_64 rng(c.seed);
    Worst worst;
    for (const auto& A : instances) r.row(run_instance(A, rng, tol, worst, r));
    r.suite("gate", worst.v["gate"], kGateTol);
    for (auto& [name, v] : worst.v)
        if (name != "gate") r.suite(name, v, tol);
    return r;
}

Report cmd_export_instances(const RunConfig& c) {
    Report r("export-instances");
    r.set_config({{"out", c.out_dir}});
    std::filesystem::create_directories(c.out_dir);
    r.columns({"instance", "path"});
    for (const auto& A : all_builtins()) {
        const auto path = std::filesystem::path(c.out_dir) / (A.name + ".json");
        io::save_instance(A, path);
        const ModuleAlgebra back = io::load_instance(path);
        r.row({A.name, path.string()});
        r.check(A.name + " roundtrip", back.H.dim == A.H.dim && back.B.dim == A.B.dim && back.M.dim == A.M.dim);
    }
    return r;
}

}  // namespace qmono::cli
