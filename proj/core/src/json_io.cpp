#include "qmono/json_io.hpp"

#include <fstream>

namespace qmono::io {

using hopf::cmat;
using hopf::cvec;
using hopf::Tensor3;

namespace {

json cnum(cplx c) { return json::array({c.real(), c.imag()}); }

cplx read_c(const json& re, const json& im) { return {re.get<double>(), im.get<double>()}; }

json tensor_json(const Tensor3& t) {
    json rows = json::array();
    for (const auto& e : t.entries()) rows.push_back({e.i, e.j, e.k, e.v.real(), e.v.imag()});
    return {{"shape", {t.dim0(), t.dim1(), t.dim2()}}, {"entries", rows}};
}

Tensor3 tensor_from(const json& j) {
    const auto& s = j.at("shape");
    Tensor3 t(s.at(0).get<int>(), s.at(1).get<int>(), s.at(2).get<int>());
    for (const auto& r : j.at("entries")) t.add(r.at(0), r.at(1), r.at(2), read_c(r.at(3), r.at(4)));
    return t;
}

json matrix_json(const cmat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int k = 0; k < m.cols(); ++k)
            if (m(i, k) != cplx{}) rows.push_back({i, k, m(i, k).real(), m(i, k).imag()});
    return {{"shape", {m.rows(), m.cols()}}, {"entries", rows}};
}

cmat matrix_from(const json& j) {
    const auto& s = j.at("shape");
    cmat m = cmat::Zero(s.at(0).get<int>(), s.at(1).get<int>());
    for (const auto& r : j.at("entries")) {
        int i = r.at(0), k = r.at(1);
        if (i < 0 || i >= m.rows() || k < 0 || k >= m.cols()) throw ConfigError("matrix entry out of range");
        m(i, k) = read_c(r.at(2), r.at(3));
    }
    return m;
}

json vector_json(const cvec& v) {
    json rows = json::array();
    for (int i = 0; i < v.size(); ++i)
        if (v[i] != cplx{}) rows.push_back({i, v[i].real(), v[i].imag()});
    return {{"size", v.size()}, {"entries", rows}};
}

cvec vector_from(const json& j) {
    cvec v = cvec::Zero(j.at("size").get<int>());
    for (const auto& r : j.at("entries")) {
        int i = r.at(0);
        if (i < 0 || i >= v.size()) throw ConfigError("vector entry out of range");
        v[i] = read_c(r.at(1), r.at(2));
    }
    return v;
}

json bimodule_json(const hopf::Bimodule& X) {
    return {{"dim", X.dim},
            {"labels", X.labels},
            {"left", tensor_json(X.left)},
            {"right", tensor_json(X.right)},
            {"star", matrix_json(X.star)},
            {"action", tensor_json(X.action)}};
}

hopf::Bimodule bimodule_from(const json& j) {
    hopf::Bimodule X;
    X.dim = j.at("dim");
    X.labels = j.value("labels", std::vector<std::string>{});
    X.left = tensor_from(j.at("left"));
    X.right = tensor_from(j.at("right"));
    X.star = matrix_from(j.at("star"));
    X.action = tensor_from(j.at("action"));
    return X;
}

}  // namespace

json to_json(const TorusElement& x) {
    json terms = json::array();
    for (const auto& [mode, c] : x.coeffs) terms.push_back({mode.first, mode.second, c.real(), c.imag()});
    return {{"theta", x.theta}, {"terms", terms}};
}

TorusElement torus_from_json(const json& j) {
    TorusElement x(j.at("theta").get<double>());
    for (const auto& t : j.at("terms")) x.add_term(t.at(0), t.at(1), read_c(t.at(2), t.at(3)));
    return x;
}

json to_json(const HeisenbergElement& f) {
    json sectors = json::array();
    for (long k = 0; k < f.sectors(); ++k) {
        json s = json::array();
        for (int i = 0; i < f.N(); ++i) s.push_back(cnum(f.at(k, i)));
        sectors.push_back(std::move(s));
    }
    return {{"grade", f.m}, {"grid", to_json(f.ctx->grid())}, {"samples", sectors}};
}

HeisenbergElement heisenberg_from_json(const json& j, ContextPtr ctx) {
    GridSpec g = grid_from_json(j.at("grid"));
    if (g.L != ctx->grid().L || g.N != ctx->grid().N) throw GridMismatch("stored element uses a different grid");
    HeisenbergElement f(ctx, j.at("grade").get<long>());
    const auto& s = j.at("samples");
    if (static_cast<long>(s.size()) != f.sectors()) throw GridMismatch("sector count differs");
    for (long k = 0; k < f.sectors(); ++k) {
        if (static_cast<int>(s[k].size()) != f.N()) throw GridMismatch("sample count differs");
        for (int i = 0; i < f.N(); ++i) f.at(k, i) = read_c(s[k][i].at(0), s[k][i].at(1));
    }
    return f;
}

json to_json(const GridSpec& g) {
    return {{"L", g.L},
            {"N", g.N},
            {"J", g.J},
            {"tol", g.tol},
            {"mode_box", g.mode_box},
            {"fd_order", g.fd_order},
            {"interpolation", g.interp == Interpolation::cubic_spline ? "cubic_spline" : "lagrange8"}};
}

GridSpec grid_from_json(const json& j, GridSpec g) {
    g.L = j.value("L", g.L);
    g.N = j.value("N", g.N);
    g.J = j.value("J", g.J);
    g.tol = j.value("tol", g.tol);
    g.mode_box = j.value("mode_box", g.mode_box);
    g.fd_order = j.value("fd_order", g.fd_order);
    if (j.contains("interpolation")) {
        const std::string s = j.at("interpolation");
        if (s == "cubic_spline") g.interp = Interpolation::cubic_spline;
        else if (s == "lagrange8") g.interp = Interpolation::lagrange8;
        else throw ConfigError("unknown interpolation " + s);
    }
    return g;
}

json to_json(const hopf::CheckReport& r) {
    json j = json::object();
    for (const auto& [name, v] : r.items) j[name] = v;
    return j;
}

json to_json(const hopf::ModuleAlgebra& A) {
    json j;
    j["format"] = "qmono-instance-1";
    j["name"] = A.name;
    j["H"] = {{"dim", A.H.dim},
              {"labels", A.H.labels},
              {"mult", tensor_json(A.H.mult)},
              {"unit", vector_json(A.H.unit)},
              {"coproduct", tensor_json(A.H.coprod)},
              {"counit", vector_json(A.H.counit)},
              {"antipode", matrix_json(A.H.antipode)},
              {"star", matrix_json(A.H.star)}};
    json gens = json::array();
    for (const auto& g : A.B.generators) gens.push_back(vector_json(g));
    j["B"] = {{"dim", A.B.dim},
              {"labels", A.B.labels},
              {"mult", tensor_json(A.B.mult)},
              {"unit", vector_json(A.B.unit)},
              {"star", matrix_json(A.B.star)},
              {"generators", gens},
              {"action", tensor_json(A.actB)}};
    j["M"] = bimodule_json(A.M);
    if (A.dB) j["dB"] = matrix_json(*A.dB);
    if (A.Omega2) j["Omega2"] = bimodule_json(*A.Omega2);
    if (A.wedge) j["wedge"] = tensor_json(*A.wedge);
    if (A.d1) j["d1"] = matrix_json(*A.d1);
    return j;
}

hopf::ModuleAlgebra instance_from_json(const json& j) {
    try {
        hopf::ModuleAlgebra A;
        A.name = j.value("name", std::string("unnamed"));
        const json& h = j.at("H");
        A.H.dim = h.at("dim");
        A.H.labels = h.value("labels", std::vector<std::string>{});
        A.H.mult = tensor_from(h.at("mult"));
        A.H.unit = vector_from(h.at("unit"));
        A.H.coprod = tensor_from(h.at("coproduct"));
        A.H.counit = vector_from(h.at("counit"));
        A.H.antipode = matrix_from(h.at("antipode"));
        A.H.star = matrix_from(h.at("star"));
        const json& b = j.at("B");
        A.B.dim = b.at("dim");
        A.B.labels = b.value("labels", std::vector<std::string>{});
        A.B.mult = tensor_from(b.at("mult"));
        A.B.unit = vector_from(b.at("unit"));
        A.B.star = matrix_from(b.at("star"));
        if (b.contains("generators"))
            for (const auto& g : b.at("generators")) A.B.generators.push_back(vector_from(g));
        A.actB = tensor_from(b.at("action"));
        A.M = bimodule_from(j.at("M"));
        if (j.contains("dB")) A.dB = matrix_from(j.at("dB"));
        if (j.contains("Omega2")) A.Omega2 = bimodule_from(j.at("Omega2"));
        if (j.contains("wedge")) A.wedge = tensor_from(j.at("wedge"));
        if (j.contains("d1")) A.d1 = matrix_from(j.at("d1"));
        return A;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed instance: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw ConfigError(std::string("malformed instance: ") + e.what());
    }
}

hopf::ModuleAlgebra load_instance(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot open " + p.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(p.string() + ": " + e.what());
    }
    return instance_from_json(j);
}

void save_instance(const hopf::ModuleAlgebra& A, const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw ConfigError("cannot write " + p.string());
    out << to_json(A).dump(1) << '\n';
}

}  // namespace qmono::io
