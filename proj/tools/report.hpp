#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace qmono::cli {

using json = nlohmann::json;

// A command result: named pass/fail suites plus one table, rendered as json, csv or pretty.
class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    void set_config(json c) { config_ = std::move(c); }
    void suite(const std::string& name, double residual, double tol);
    // flag-style suite without a numeric residual
    void check(const std::string& name, bool ok, const std::string& detail = "");
    void columns(std::vector<std::string> cols) { columns_ = std::move(cols); }
    void row(json r) { rows_.push_back(std::move(r)); }
    void note(const std::string& key, json v) { extra_[key] = std::move(v); }
    void warn(const std::string& w) { warnings_.push_back(w); }

    bool passed() const;
    json to_json() const;
    std::string render(const std::string& format) const;

private:
    std::string command_;
    json config_ = json::object();
    json suites_ = json::array();
    json extra_ = json::object();
    std::vector<std::string> columns_;
    std::vector<json> rows_;
    std::vector<std::string> warnings_;
};

}  // namespace qmono::cli
