#pragma once

#include "report.hpp"

#include "qmono/heisenberg.hpp"
#include "qmono/quad_field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qmono::cli {

struct RunConfig {
    std::string theta = "1/2,1/2,5";  // p,q,d for theta = p + q sqrt(d)
    GridSpec grid;
    std::optional<double> tol;  // per-command default when unset
    std::vector<std::string> q_sweep = {"1", "eps^-1", "eps", "eps^2", "eps^3", "2", "1/2"};
    long grades = 3;
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 0xA17E;
    long delta = 5;
    int trials = 200;
    std::string instance;  // path to a JSON instance
    std::string builtin;   // name:n, e.g. clock:4
    std::string out_dir = "data/instances";

    void validate() const;
    json to_json() const;
};

// Apply keys of a JSON config object on top of cfg.
void apply_config(RunConfig& cfg, const json& j);

QuadraticIrrational parse_theta(const std::string& s);
Rat parse_rational(const std::string& s);
// "eps^k", "eps", or a rational / decimal literal
long double parse_q(const std::string& token, long double eps);

Report cmd_pell(const RunConfig& c);
Report cmd_stabilizer(const RunConfig& c);
Report cmd_torus_check(const RunConfig& c);
Report cmd_heisenberg_verify(const RunConfig& c);
Report cmd_monopole(const RunConfig& c);
Report cmd_cohomology(const RunConfig& c);
Report cmd_export_instances(const RunConfig& c);

}  // namespace qmono::cli
