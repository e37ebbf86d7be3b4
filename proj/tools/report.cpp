#include "report.hpp"

#include <iomanip>
#include <sstream>

namespace qmono::cli {

void Report::suite(const std::string& name, double residual, double tol) {
    suites_.push_back({{"name", name}, {"residual", residual}, {"tol", tol}, {"pass", residual <= tol}});
}

void Report::check(const std::string& name, bool ok, const std::string& detail) {
    json s = {{"name", name}, {"pass", ok}};
    if (!detail.empty()) s["detail"] = detail;
    suites_.push_back(std::move(s));
}

bool Report::passed() const {
    for (const auto& s : suites_)
        if (!s.at("pass").get<bool>()) return false;
    return true;
}

json Report::to_json() const {
    json j = {{"command", command_}, {"config", config_}, {"pass", passed()}, {"suites", suites_}};
    if (!columns_.empty()) j["table"] = {{"columns", columns_}, {"rows", rows_}};
    for (auto& [k, v] : extra_.items()) j[k] = v;
    if (!warnings_.empty()) j["warnings"] = warnings_;
    return j;
}

namespace {

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(10) << v.get<double>();
        return os.str();
    }
    return v.dump();
}

std::string csv_cell(const json& v) {
    std::string s = cell(v);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

}  // namespace

std::string Report::render(const std::string& format) const {
    if (format == "json") return to_json().dump(2) + "\n";
    std::ostringstream os;
    if (format == "csv") {
        for (size_t c = 0; c < columns_.size(); ++c) os << (c ? "," : "") << csv_cell(columns_[c]);
        os << "\n";
        for (const auto& r : rows_) {
            for (size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << csv_cell(r[c]);
            os << "\n";
        }
        return os.str();
    }
    os << command_ << "\n";
    for (auto& [k, v] : extra_.items())
        if (!v.is_array()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    if (!columns_.empty()) {
        std::vector<size_t> w(columns_.size());
        for (size_t c = 0; c < columns_.size(); ++c) w[c] = columns_[c].size();
        for (const auto& r : rows_)
            for (size_t c = 0; c < r.size() && c < w.size(); ++c) w[c] = std::max(w[c], cell(r[c]).size());
        for (size_t c = 0; c < columns_.size(); ++c) os << std::left << std::setw(w[c] + 2) << columns_[c];
        os << "\n";
        for (const auto& r : rows_) {
            for (size_t c = 0; c < r.size() && c < w.size(); ++c) os << std::left << std::setw(w[c] + 2) << cell(r[c]);
            os << "\n";
        }
    }
    for (const auto& s : suites_) {
        os << (s.at("pass").get<bool>() ? "PASS " : "FAIL ") << s.at("name").get<std::string>();
        if (s.contains("residual")) os << "  residual " << cell(s.at("residual")) << " (tol " << cell(s.at("tol")) << ")";
        if (s.contains("detail")) os << "  " << s.at("detail").get<std::string>();
        os << "\n";
    }
    for (const auto& w : warnings_) os << "warning: " << w << "\n";
    os << (passed() ? "all suites pass" : "some suites fail") << "\n";
    return os.str();
}

}  // namespace qmono::cli
