#include "commands.hpp"

#include "qmono/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace qmono;
using namespace qmono::cli;

namespace {

enum Exit { kPass = 0, kFail = 1, kConfig = 2 };

struct Flags {
    std::string config, theta, grid, q_sweep, format, out, instance, builtin, out_dir;
    double tol = 0;
    long grades = 0, delta = 0;
    int trials = 0;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config, "JSON config file; flags override its keys");
    app->add_option("--format", f.format, "json, csv or pretty (default json)");
    app->add_option("--out", f.out, "write the report to this file instead of stdout");
    app->add_option("--seed", f.seed, "RNG seed for test vectors (default 0xA17E)");
    app->add_option("--tol", f.tol, "tolerance for the command's suites");
}

void add_theta(CLI::App* app, Flags& f) {
    app->add_option("--theta", f.theta, "theta = p + q sqrt(d) as p,q,d (default 1/2,1/2,5)");
}

void add_grades(CLI::App* app, Flags& f) {
    app->add_option("--grades", f.grades, "grade range M, grades in [-M, M] (default 3)");
}

GridSpec parse_grid(const std::string& s, GridSpec g) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
    if (parts.empty() || parts.size() > 3) throw ConfigError("--grid expects L[,N[,J]]");
    try {
        g.L = std::stod(parts[0]);
        if (parts.size() > 1) g.N = std::stoi(parts[1]);
        if (parts.size() > 2) g.J = std::stoi(parts[2]);
    } catch (const std::logic_error&) {
        throw ConfigError("--grid expects numbers L,N,J");
    }
    return g;
}

RunConfig build_config(const CLI::App* sub, const Flags& f) {
    RunConfig c;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw ConfigError("cannot open config " + f.config);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config parse: ") + e.what());
        }
        apply_config(c, j);
    }
    auto given = [&](const char* name) { return sub->get_option_no_throw(name) && sub->count(name) > 0; };
    if (given("--theta")) c.theta = f.theta;
    if (given("--grid")) c.grid = parse_grid(f.grid, c.grid);
    if (given("--tol")) c.tol = f.tol;
    if (given("--q-sweep")) {
        c.q_sweep.clear();
        std::stringstream ss(f.q_sweep);
        for (std::string p; std::getline(ss, p, ',');) c.q_sweep.push_back(p);
    }
    if (given("--grades")) c.grades = f.grades;
    if (given("--format")) c.format = f.format;
    if (given("--out")) c.out = f.out;
    if (given("--seed")) c.seed = f.seed;
    if (given("--delta")) c.delta = f.delta;
    if (given("--trials")) c.trials = f.trials;
    if (given("--instance")) c.instance = f.instance;
    if (given("--builtin")) c.builtin = f.builtin;
    if (given("--out-dir")) c.out_dir = f.out_dir;
    c.validate();
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qmono: q-monopole and lazy cohomology verification suites"};
    app.require_subcommand(1);
    Flags f;

    auto* pell = app.add_subcommand("pell", "Pell unit, Phi matrix and power table for a discriminant");
    pell->add_option("--delta", f.delta, "discriminant D (default 5)");
    add_grades(pell, f);

    auto* stab = app.add_subcommand("stabilizer", "stabilizer data for theta");
    add_theta(stab, f);
    add_grades(stab, f);

    auto* torus = app.add_subcommand("torus-check", "noncommutative torus identities on random pairs");
    add_theta(torus, f);
    torus->add_option("--trials", f.trials, "random triples (default 200)");

    auto* heis = app.add_subcommand("heisenberg-verify", "twisted Leibniz, star, curvature and module suites");
    add_theta(heis, f);
    add_grades(heis, f);
    heis->add_option("--grid", f.grid, "grid L,N,J (default 12,1024,16)");

    auto* mono = app.add_subcommand("monopole", "q-sweep adaptedness and curvature constant");
    add_theta(mono, f);
    add_grades(mono, f);
    mono->add_option("--q-sweep", f.q_sweep, "comma list of q tokens: eps^k, eps, rationals (default 1,eps^-1,eps,eps^2,eps^3,2,1/2)");

    auto* coh = app.add_subcommand("cohomology", "gate, lazy cohomology dimensions and identity residuals");
    coh->add_option("--instance", f.instance, "instance JSON file");
    coh->add_option("--builtin", f.builtin, "builtin instance name:n (cycle, cycle_trivial, clock, cayley)");

    auto* exp = app.add_subcommand("export-instances", "write the shipped instances as JSON");
    exp->add_option("--out-dir", f.out_dir, "output directory (default data/instances)");

    for (auto* s : {pell, stab, torus, heis, mono, coh, exp}) add_common(s, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kConfig;
    }

    const CLI::App* sub = app.get_subcommands().front();
    try {
        const RunConfig c = build_config(sub, f);
        Report r = [&] {
            const std::string n = sub->get_name();
            if (n == "pell") return cmd_pell(c);
            if (n == "stabilizer") return cmd_stabilizer(c);
            if (n == "torus-check") return cmd_torus_check(c);
            if (n == "heisenberg-verify") return cmd_heisenberg_verify(c);
            if (n == "monopole") return cmd_monopole(c);
            if (n == "cohomology") return cmd_cohomology(c);
            return cmd_export_instances(c);
        }();
        const std::string text = r.render(c.format);
        if (c.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(c.out);
            if (!out) throw ConfigError("cannot write " + c.out);
            out << text;
        }
        return r.passed() ? kPass : kFail;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kConfig;
    } catch (const InvalidDiscriminant& e) {
        std::cerr << e.what() << "\n";
        return kConfig;
    } catch (const NonQuadratic& e) {
        std::cerr << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kFail;
    }
}
