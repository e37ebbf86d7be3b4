#include "commands.hpp"

#include "qmono/errors.hpp"
#include "qmono/json_io.hpp"

#include <boost/algorithm/string.hpp>

#include <cmath>

namespace qmono::cli {

Rat parse_rational(const std::string& s) {
    const std::string t = boost::algorithm::trim_copy(s);
    try {
        const auto slash = t.find('/');
        if (slash == std::string::npos) return Rat(Int(t));
        Int num(t.substr(0, slash)), den(t.substr(slash + 1));
        if (den == 0) throw ConfigError("zero denominator in '" + s + "'");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw ConfigError("not a rational number: '" + s + "'");
    }
}

QuadraticIrrational parse_theta(const std::string& s) {
    std::vector<std::string> parts;
    boost::algorithm::split(parts, s, boost::algorithm::is_any_of(","));
    if (parts.size() != 3) throw ConfigError("--theta expects p,q,d");
    const Rat d = parse_rational(parts[2]);
    if (boost::multiprecision::denominator(d) != 1) throw ConfigError("d must be an integer");
    return classify(parse_rational(parts[0]), parse_rational(parts[1]), boost::multiprecision::numerator(d));
}

long double parse_q(const std::string& token, long double eps) {
    const std::string t = boost::algorithm::trim_copy(token);
    if (t == "eps") return eps;
    if (boost::algorithm::starts_with(t, "eps^")) {
        try {
            return std::pow(eps, std::stold(t.substr(4)));
        } catch (const std::exception&) {
            throw ConfigError("bad q token '" + token + "'");
        }
    }
    if (t.find('/') != std::string::npos) return static_cast<long double>(parse_rational(t));
    try {
        size_t used = 0;
        long double v = std::stold(t, &used);
        if (used != t.size()) throw ConfigError("bad q token '" + token + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ConfigError("bad q token '" + token + "'");
    }
}

void RunConfig::validate() const {
    if (format != "json" && format != "csv" && format != "pretty")
        throw ConfigError("format must be json, csv or pretty");
    if (grades < 1 || grades > 12) throw ConfigError("grades must be in 1..12");
    if (trials < 1) throw ConfigError("trials must be positive");
    if (tol && !(*tol > 0)) throw ConfigError("tol must be positive");
    if (q_sweep.empty()) throw ConfigError("empty q sweep");
    grid.validate();
}

json RunConfig::to_json() const {
    json j = {{"theta", theta},   {"grid", io::to_json(grid)}, {"q_sweep", q_sweep},
              {"grades", grades}, {"format", format},          {"seed", seed},
              {"delta", delta},   {"trials", trials}};
    if (tol) j["tol"] = *tol;
    if (!instance.empty()) j["instance"] = instance;
    if (!builtin.empty()) j["builtin"] = builtin;
    return j;
}

void apply_config(RunConfig& cfg, const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    try {
        if (j.contains("theta")) {
            const json& t = j.at("theta");
            if (t.is_array()) {
                std::vector<std::string> parts;
                for (const auto& x : t) parts.push_back(x.is_string() ? x.get<std::string>() : x.dump());
                cfg.theta = boost::algorithm::join(parts, ",");
            } else {
                cfg.theta = t.get<std::string>();
            }
        }
        if (j.contains("grid")) cfg.grid = io::grid_from_json(j.at("grid"), cfg.grid);
        if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
        if (j.contains("q_sweep")) {
            cfg.q_sweep.clear();
            for (const auto& x : j.at("q_sweep")) cfg.q_sweep.push_back(x.is_string() ? x.get<std::string>() : x.dump());
        }
        cfg.grades = j.value("grades", cfg.grades);
        cfg.format = j.value("format", cfg.format);
        cfg.out = j.value("out", cfg.out);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.delta = j.value("delta", cfg.delta);
        cfg.trials = j.value("trials", cfg.trials);
        cfg.instance = j.value("instance", cfg.instance);
        cfg.builtin = j.value("builtin", cfg.builtin);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

}  // namespace qmono::cli
