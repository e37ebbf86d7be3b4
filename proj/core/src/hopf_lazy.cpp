#include "qmono/hopf_lazy.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <functional>

namespace qmono::hopf {

namespace {

double inf_norm(const cvec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }
double inf_norm(const cmat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

cvec unit_vector(int n, int i) {
    cvec v = cvec::Zero(n);
    v[i] = 1.0;
    return v;
}

const Bimodule& omega2(const ModuleAlgebra& A) {
    if (!A.Omega2) throw TargetMismatch(A.name + ": no 2-forms");
    return *A.Omega2;
}

}  // namespace

// ---------------------------------------------------------------- Tensor3

void Tensor3::add(int i, int j, int k, cplx v) {
    if (i < 0 || i >= n0_ || j < 0 || j >= n1_ || k < 0 || k >= n2_)
        throw std::out_of_range("Tensor3 index out of range");
    if (v == cplx{}) return;
    entries_.push_back({i, j, k, v});
    sorted_ = false;
}

void Tensor3::finalize() const {
    if (sorted_ && offsets_.size() == static_cast<size_t>(n0_ + 1)) return;
    auto& e = entries_;
    std::stable_sort(e.begin(), e.end(), [](const Entry& a, const Entry& b) { return a.i < b.i; });
    offsets_.assign(n0_ + 1, 0);
    for (const Entry& x : e) ++offsets_[x.i + 1];
    for (int i = 0; i < n0_; ++i) offsets_[i + 1] += offsets_[i];
    sorted_ = true;
}

std::pair<const Tensor3::Entry*, const Tensor3::Entry*> Tensor3::row(int i) const {
    finalize();
    const Entry* base = entries_.data();
    return {base + offsets_[i], base + offsets_[i + 1]};
}

cvec Tensor3::apply(const cvec& x, const cvec& y) const {
    cvec out = cvec::Zero(n2_);
    for (int i = 0; i < n0_; ++i) {
        if (x[i] == cplx{}) continue;
        auto [b, e] = row(i);
        for (const Entry* p = b; p != e; ++p) out[p->k] += x[i] * y[p->j] * p->v;
    }
    return out;
}

cvec Tensor3::apply_basis(int i, const cvec& y) const {
    cvec out = cvec::Zero(n2_);
    auto [b, e] = row(i);
    for (const Entry* p = b; p != e; ++p) out[p->k] += y[p->j] * p->v;
    return out;
}

cmat Tensor3::slice(int i) const {
    cmat s = cmat::Zero(n1_, n2_);
    auto [b, e] = row(i);
    for (const Entry* p = b; p != e; ++p) s(p->j, p->k) += p->v;
    return s;
}

// ---------------------------------------------------------------- algebras

cvec FiniteHopf::basis(int i) const { return unit_vector(dim, i); }

cmat FiniteHopf::coproduct(const cvec& x) const {
    cmat out = cmat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
        if (x[i] != cplx{}) out += x[i] * coprod.slice(i);
    return out;
}

cvec StarAlgebra::basis(int i) const { return unit_vector(dim, i); }

std::vector<cvec> StarAlgebra::generating_set() const {
    if (!generators.empty()) return generators;
    std::vector<cvec> out;
    for (int i = 0; i < dim; ++i) out.push_back(basis(i));
    return out;
}

cvec Bimodule::basis(int i) const { return unit_vector(dim, i); }

std::string to_string(Target t) {
    switch (t) {
        case Target::B: return "B";
        case Target::M: return "M";
        case Target::Omega2: return "Omega2";
    }
    return "?";
}

int target_dim(const ModuleAlgebra& A, Target t) {
    switch (t) {
        case Target::B: return A.B.dim;
        case Target::M: return A.M.dim;
        case Target::Omega2: return omega2(A).dim;
    }
    return 0;
}

// ---------------------------------------------------------------- convolution elements

cvec ConvolutionElement::operator()(const cvec& h) const {
    cvec out = cvec::Zero(values.empty() ? 0 : values[0].size());
    for (size_t i = 0; i < values.size(); ++i)
        if (h[i] != cplx{}) out += h[i] * values[i];
    return out;
}

ConvolutionElement& ConvolutionElement::operator+=(const ConvolutionElement& o) {
    if (o.target != target || o.values.size() != values.size())
        throw TargetMismatch("sum of " + to_string(target) + " and " + to_string(o.target));
    for (size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

ConvolutionElement& ConvolutionElement::operator-=(const ConvolutionElement& o) {
    if (o.target != target || o.values.size() != values.size())
        throw TargetMismatch("difference of " + to_string(target) + " and " + to_string(o.target));
    for (size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}

ConvolutionElement& ConvolutionElement::operator*=(cplx s) {
    for (auto& v : values) v *= s;
    return *this;
}

double distance(const ConvolutionElement& f, const ConvolutionElement& g) {
    if (f.target != g.target || f.values.size() != g.values.size())
        throw TargetMismatch("distance between " + to_string(f.target) + " and " + to_string(g.target));
    double d = 0;
    for (size_t i = 0; i < f.values.size(); ++i) d = std::max(d, inf_norm(cvec(f.values[i] - g.values[i])));
    return d;
}

double max_abs(const ConvolutionElement& f) {
    double d = 0;
    for (auto& v : f.values) d = std::max(d, inf_norm(v));
    return d;
}

void CheckReport::add(const std::string& name, double v) {
    for (auto& [n, x] : items)
        if (n == name) {
            x = std::max(x, v);
            return;
        }
    items.emplace_back(name, v);
}

double CheckReport::worst() const {
    double w = 0;
    for (auto& [n, x] : items) w = std::max(w, x);
    return w;
}

double CheckReport::get(const std::string& name) const {
    for (auto& [n, x] : items)
        if (n == name) return x;
    throw std::out_of_range("no report item " + name);
}

// ---------------------------------------------------------------- pointwise operations

cvec act(const ModuleAlgebra& A, Target t, const cvec& v, const cvec& h) {
    switch (t) {
        case Target::B: return A.actB.apply(v, h);
        case Target::M: return A.M.action.apply(v, h);
        case Target::Omega2: return omega2(A).action.apply(v, h);
    }
    return {};
}

cvec adj(const ModuleAlgebra& A, Target t, const cvec& v) {
    switch (t) {
        case Target::B: return A.B.adj(v);
        case Target::M: return A.M.adj(v);
        case Target::Omega2: return omega2(A).adj(v);
    }
    return {};
}

std::pair<Target, cvec> product(const ModuleAlgebra& A, Target ta, const cvec& a, Target tb, const cvec& b) {
    using T = Target;
    if (ta == T::B && tb == T::B) return {T::B, A.B.mul(a, b)};
    if (ta == T::B && tb == T::M) return {T::M, A.M.left.apply(a, b)};
    if (ta == T::M && tb == T::B) return {T::M, A.M.right.apply(a, b)};
    if (ta == T::M && tb == T::M) {
        if (!A.wedge) throw TargetMismatch(A.name + ": no wedge product");
        return {T::Omega2, A.wedge->apply(a, b)};
    }
    if (ta == T::B && tb == T::Omega2) return {T::Omega2, omega2(A).left.apply(a, b)};
    if (ta == T::Omega2 && tb == T::B) return {T::Omega2, omega2(A).right.apply(a, b)};
    throw TargetMismatch("no product " + to_string(ta) + " x " + to_string(tb));
}

ConvolutionElement zero(const ModuleAlgebra& A, Target t) {
    return {t, std::vector<cvec>(A.H.dim, cvec::Zero(target_dim(A, t)))};
}

ConvolutionElement unit(const ModuleAlgebra& A) {
    ConvolutionElement u = zero(A, Target::B);
    for (int i = 0; i < A.H.dim; ++i) u.values[i] = A.H.counit[i] * A.B.unit;
    return u;
}

ConvolutionElement rho(const ModuleAlgebra& A, Target t, const cvec& v) {
    ConvolutionElement r = zero(A, t);
    for (int i = 0; i < A.H.dim; ++i) r.values[i] = act(A, t, v, A.H.basis(i));
    return r;
}

ConvolutionElement coboundary(const ModuleAlgebra& A, Target t, const cvec& v) {
    ConvolutionElement r = rho(A, t, v);
    for (int i = 0; i < A.H.dim; ++i) r.values[i] -= A.H.counit[i] * v;
    return r;
}

ConvolutionElement d_apply(const ModuleAlgebra& A, const ConvolutionElement& f) {
    ConvolutionElement out;
    if (f.target == Target::B) {
        if (!A.dB) throw TargetMismatch(A.name + ": no d_B");
        out.target = Target::M;
        for (auto& v : f.values) out.values.push_back(*A.dB * v);
    } else if (f.target == Target::M) {
        if (!A.d1) throw TargetMismatch(A.name + ": no d on 1-forms");
        out.target = Target::Omega2;
        for (auto& v : f.values) out.values.push_back(*A.d1 * v);
    } else {
        throw TargetMismatch("d of a 2-form valued element");
    }
    return out;
}

ConvolutionElement convolve(const ModuleAlgebra& A, const ConvolutionElement& f, const ConvolutionElement& g) {
    const int n = A.H.dim;
    if (static_cast<int>(f.values.size()) != n || static_cast<int>(g.values.size()) != n)
        throw TargetMismatch("convolution element has wrong H dimension");
    ConvolutionElement out;
    out.values.resize(n);
    bool typed = false;
    for (int i = 0; i < n; ++i) {
        auto [b, e] = A.H.coprod.row(i);
        for (const Tensor3::Entry* p = b; p != e; ++p) {
            auto [t, v] = product(A, f.target, f.values[p->j], g.target, g.values[p->k]);
            if (!typed) {
                out.target = t;
                typed = true;
                for (auto& x : out.values) x = cvec::Zero(v.size());
            }
            out.values[i] += p->v * v;
        }
    }
    if (!typed) {
        // coproduct without entries; still type-check the pair
        auto [t, v] = product(A, f.target, f.values[0], g.target, g.values[0]);
        out.target = t;
        for (auto& x : out.values) x = cvec::Zero(v.size());
    }
    return out;
}

ConvolutionElement conv_star(const ModuleAlgebra& A, const ConvolutionElement& f) {
    ConvolutionElement out = f;
    for (int i = 0; i < A.H.dim; ++i) {
        cvec w = A.H.adj(A.H.antipode.col(i));
        out.values[i] = adj(A, f.target, f(w));
    }
    return out;
}

ConvolutionElement conv_inverse(const ModuleAlgebra& A, const ConvolutionElement& f) {
    if (f.target != Target::B) throw TargetMismatch("inverse of a non B-valued element");
    const int nh = A.H.dim, nb = A.B.dim, n = nh * nb;
    cmat L(n, n);
    ConvolutionElement e = zero(A, Target::B);
    for (int c = 0; c < n; ++c) {
        e.values[c / nb][c % nb] = 1.0;
        ConvolutionElement fe = convolve(A, f, e);
        for (int i = 0; i < nh; ++i) L.block(i * nb, c, nb, 1) = fe.values[i];
        e.values[c / nb][c % nb] = 0.0;
    }
    Eigen::PartialPivLU<cmat> lu(L);
    if (!(lu.rcond() > 1e-13)) throw NotAdmissible("convolution element is not invertible");
    cvec u(n);
    ConvolutionElement one = unit(A);
    for (int i = 0; i < nh; ++i) u.segment(i * nb, nb) = one.values[i];
    cvec x = lu.solve(u);
    ConvolutionElement out = zero(A, Target::B);
    for (int i = 0; i < nh; ++i) out.values[i] = x.segment(i * nb, nb);
    return out;
}

ConvolutionElement bracket(const ModuleAlgebra& A, const ConvolutionElement& mu, const ConvolutionElement& nu) {
    return convolve(A, mu, nu) + convolve(A, nu, mu);
}

// ---------------------------------------------------------------- cocycle checks

CheckReport check_sweedler_cocycle(const ModuleAlgebra& A, const ConvolutionElement& sigma) {
    if (sigma.target != Target::B) throw TargetMismatch("Sweedler cocycle must be B-valued");
    CheckReport r;
    const ConvolutionElement one = unit(A), s_star = conv_star(A, sigma);
    r.add("unitary", std::max(distance(convolve(A, sigma, s_star), one), distance(convolve(A, s_star, sigma), one)));
    r.add("unit", inf_norm(cvec(sigma(A.H.unit) - A.B.unit)));
    double coc = 0;
    for (int i = 0; i < A.H.dim; ++i)
        for (int j = 0; j < A.H.dim; ++j) {
            cvec lhs = sigma(A.H.mult.apply_basis(i, A.H.basis(j)));
            cvec rhs = cvec::Zero(A.B.dim);
            auto [b, e] = A.H.coprod.row(j);
            for (const Tensor3::Entry* p = b; p != e; ++p)
                rhs += p->v * A.B.mul(act(A, Target::B, sigma.values[i], A.H.basis(p->j)), sigma.values[p->k]);
            coc = std::max(coc, inf_norm(cvec(lhs - rhs)));
        }
    r.add("cocycle", coc);
    double cb = 0, cm = 0;
    for (const cvec& b : A.B.generating_set()) {
        ConvolutionElement rb = rho(A, Target::B, b);
        cb = std::max(cb, distance(convolve(A, rb, sigma), convolve(A, sigma, rb)));
    }
    for (int k = 0; k < A.M.dim; ++k) {
        ConvolutionElement rm = rho(A, Target::M, A.M.basis(k));
        cm = std::max(cm, distance(convolve(A, rm, sigma), convolve(A, sigma, rm)));
    }
    r.add("central_B", cb);
    r.add("central_M", cm);
    return r;
}

CheckReport check_hochschild_cocycle(const ModuleAlgebra& A, const ConvolutionElement& mu) {
    if (mu.target != Target::M) throw TargetMismatch("Hochschild cocycle must be M-valued");
    CheckReport r;
    r.add("unit", inf_norm(mu(A.H.unit)));
    r.add("self_adjoint", distance(conv_star(A, mu), mu));
    double cb = 0;
    for (const cvec& b : A.B.generating_set()) {
        ConvolutionElement rb = rho(A, Target::B, b);
        cb = std::max(cb, distance(convolve(A, rb, mu), convolve(A, mu, rb)));
    }
    r.add("central", cb);
    double coc = 0;
    for (int i = 0; i < A.H.dim; ++i)
        for (int j = 0; j < A.H.dim; ++j) {
            cvec lhs = mu(A.H.mult.apply_basis(i, A.H.basis(j)));
            cvec rhs = act(A, Target::M, mu.values[i], A.H.basis(j)) + A.H.counit[i] * mu.values[j];
            coc = std::max(coc, inf_norm(cvec(lhs - rhs)));
        }
    r.add("cocycle", coc);
    return r;
}

ConvolutionElement coboundary_S(const ModuleAlgebra& A, const cvec& upsilon, double tol) {
    const cvec us = A.B.adj(upsilon);
    double bad = std::max(inf_norm(cvec(A.B.mul(upsilon, us) - A.B.unit)),
                          inf_norm(cvec(A.B.mul(us, upsilon) - A.B.unit)));
    for (const cvec& b : A.B.generating_set())
        bad = std::max(bad, inf_norm(cvec(A.B.mul(upsilon, b) - A.B.mul(b, upsilon))));
    for (int k = 0; k < A.M.dim; ++k) {
        cvec m = A.M.basis(k);
        bad = std::max(bad, inf_norm(cvec(A.M.left.apply(upsilon, m) - A.M.right.apply(m, upsilon))));
    }
    if (bad > tol) throw NotAdmissible("upsilon is not a central unitary (violation " + std::to_string(bad) + ")");
    ConvolutionElement out = zero(A, Target::B);
    for (int i = 0; i < A.H.dim; ++i)
        out.values[i] = A.B.mul(act(A, Target::B, upsilon, A.H.basis(i)), us);
    return out;
}

ConvolutionElement coboundary_H(const ModuleAlgebra& A, const cvec& m, double tol) {
    double bad = inf_norm(cvec(A.M.adj(m) - m));
    for (const cvec& b : A.B.generating_set())
        bad = std::max(bad, inf_norm(cvec(A.M.left.apply(b, m) - A.M.right.apply(m, b))));
    if (bad > tol) throw NotAdmissible("m is not central self-adjoint (violation " + std::to_string(bad) + ")");
    return coboundary(A, Target::M, m);
}

namespace {

void require(const CheckReport& r, const std::string& what) {
    if (!r.passed(kTol)) throw NotAdmissible(what + " fails (violation " + std::to_string(r.worst()) + ")");
}

}  // namespace

ConvolutionElement conj_action(const ModuleAlgebra& A, const ConvolutionElement& sigma,
                               const ConvolutionElement& mu, bool validate) {
    if (validate) {
        require(check_sweedler_cocycle(A, sigma), "Sweedler cocycle");
        if (mu.target == Target::M) require(check_hochschild_cocycle(A, mu), "Hochschild cocycle");
    }
    ConvolutionElement out = convolve(A, convolve(A, sigma, mu), conv_inverse(A, sigma));
    if (validate && out.target == Target::M) require(check_hochschild_cocycle(A, out), "conjugated cocycle");
    return out;
}

ConvolutionElement mc_cocycle(const ModuleAlgebra& A, const ConvolutionElement& sigma, bool validate) {
    if (validate) require(check_sweedler_cocycle(A, sigma), "Sweedler cocycle");
    ConvolutionElement out = convolve(A, d_apply(A, sigma), conv_star(A, sigma));
    out *= -1.0;
    return out;
}

ConvolutionElement curvature_map(const ModuleAlgebra& A, const ConvolutionElement& mu, bool validate) {
    if (validate) require(check_hochschild_cocycle(A, mu), "Hochschild cocycle");
    ConvolutionElement f = d_apply(A, mu);
    ConvolutionElement q = bracket(A, mu, mu);
    q *= 0.5;
    f += q;
    f *= cplx(0, -1);
    return f;
}

// ---------------------------------------------------------------- gates

CheckReport hopf_gate(const FiniteHopf& H) {
    CheckReport r;
    const int n = H.dim;
    std::vector<cvec> e;
    for (int i = 0; i < n; ++i) e.push_back(H.basis(i));
    std::vector<cmat> D;
    for (int i = 0; i < n; ++i) D.push_back(H.coprod.slice(i));
    auto prod_tensor = [&](const cmat& X, const cmat& Y) {  // (H (x) H) product
        cmat Z = cmat::Zero(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (X(a, b) == cplx{}) continue;
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        if (Y(c, d) == cplx{}) continue;
                        Z += X(a, b) * Y(c, d) * H.mul(e[a], e[c]) * H.mul(e[b], e[d]).transpose();
                    }
            }
        return Z;
    };

    double assoc = 0, unit = 0, coassoc = 0, counit = 0, dmult = 0, emult = 0, anti = 0;
    double st_inv = 0, st_anti = 0, st_coprod = 0, s_star = 0;
    for (int i = 0; i < n; ++i) {
        unit = std::max({unit, inf_norm(cvec(H.mul(H.unit, e[i]) - e[i])), inf_norm(cvec(H.mul(e[i], H.unit) - e[i]))});
        for (int j = 0; j < n; ++j) {
            cvec ij = H.mul(e[i], e[j]);
            for (int k = 0; k < n; ++k)
                assoc = std::max(assoc, inf_norm(cvec(H.mul(ij, e[k]) - H.mul(e[i], H.mul(e[j], e[k])))));
            dmult = std::max(dmult, inf_norm(cmat(H.coproduct(ij) - prod_tensor(D[i], D[j]))));
            emult = std::max(emult, std::abs(H.eps(ij) - H.eps(e[i]) * H.eps(e[j])));
            st_anti = std::max(st_anti, inf_norm(cvec(H.adj(ij) - H.mul(H.adj(e[j]), H.adj(e[i])))));
        }
        // (Delta (x) id) Delta vs (id (x) Delta) Delta, flattened to n x n^2
        cmat L = cmat::Zero(n, n * n), R = cmat::Zero(n, n * n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (D[i](j, k) == cplx{}) continue;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        L(a, b * n + k) += D[i](j, k) * D[j](a, b);
                        R(j, a * n + b) += D[i](j, k) * D[k](a, b);
                    }
            }
        coassoc = std::max(coassoc, inf_norm(cmat(L - R)));
        cvec c1 = D[i].transpose() * H.counit, c2 = D[i] * H.counit;
        counit = std::max({counit, inf_norm(cvec(c1 - e[i])), inf_norm(cvec(c2 - e[i]))});
        cvec s1 = cvec::Zero(n), s2 = cvec::Zero(n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (D[i](j, k) == cplx{}) continue;
                s1 += D[i](j, k) * H.mul(H.antipode * e[j], e[k]);
                s2 += D[i](j, k) * H.mul(e[j], H.antipode * e[k]);
            }
        cvec target = H.eps(e[i]) * H.unit;
        anti = std::max({anti, inf_norm(cvec(s1 - target)), inf_norm(cvec(s2 - target))});
        st_inv = std::max(st_inv, inf_norm(cvec(H.adj(H.adj(e[i])) - e[i])));
        cvec ei_star = H.adj(e[i]);
        cmat Ds = H.coproduct(ei_star), Dc = cmat::Zero(n, n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (D[i](j, k) != cplx{}) Dc += std::conj(D[i](j, k)) * H.adj(e[j]) * H.adj(e[k]).transpose();
        st_coprod = std::max(st_coprod, inf_norm(cmat(Ds - Dc)));
        cvec x = H.adj(H.antipode * H.adj(H.antipode * e[i]));
        s_star = std::max(s_star, inf_norm(cvec(x - e[i])));
    }
    r.add("associativity", assoc);
    r.add("unit", unit);
    r.add("coassociativity", coassoc);
    r.add("counit", counit);
    r.add("coproduct_multiplicative", dmult);
    r.add("counit_multiplicative", emult);
    r.add("coproduct_unit", inf_norm(cmat(H.coproduct(H.unit) - H.unit * H.unit.transpose())));
    r.add("counit_unit", std::abs(H.eps(H.unit) - 1.0));
    r.add("antipode", anti);
    r.add("star_involutive", st_inv);
    r.add("star_antimultiplicative", st_anti);
    r.add("star_coproduct", st_coprod);
    r.add("antipode_star_involutive", s_star);
    return r;
}

namespace {

void bimodule_checks(const ModuleAlgebra& A, const Bimodule& X, const std::string& tag, CheckReport& r) {
    const StarAlgebra& B = A.B;
    double assoc = 0, unit = 0, equiv = 0, star = 0, act_comp = 0, act_unit = 0, star_act = 0;
    for (int k = 0; k < X.dim; ++k) {
        cvec m = X.basis(k);
        unit = std::max({unit, inf_norm(cvec(X.left.apply(B.unit, m) - m)), inf_norm(cvec(X.right.apply(m, B.unit) - m))});
        star = std::max(star, inf_norm(cvec(X.adj(X.adj(m)) - m)));
        act_unit = std::max(act_unit, inf_norm(cvec(X.action.apply(m, A.H.unit) - m)));
        for (const cvec& b : B.generating_set()) {
            for (const cvec& c : B.generating_set()) {
                assoc = std::max(assoc, inf_norm(cvec(X.left.apply(b, X.left.apply(c, m)) - X.left.apply(B.mul(b, c), m))));
                assoc = std::max(assoc, inf_norm(cvec(X.right.apply(X.right.apply(m, b), c) - X.right.apply(m, B.mul(b, c)))));
            }
            assoc = std::max(assoc, inf_norm(cvec(X.right.apply(X.left.apply(b, m), b) - X.left.apply(b, X.right.apply(m, b)))));
            star = std::max(star, inf_norm(cvec(X.adj(X.left.apply(b, m)) - X.right.apply(X.adj(m), B.adj(b)))));
        }
        for (int i = 0; i < A.H.dim; ++i) {
            cvec h = A.H.basis(i);
            cvec mh = X.action.apply(m, h);
            for (int j = 0; j < A.H.dim; ++j) {
                cvec g = A.H.basis(j);
                act_comp = std::max(act_comp, inf_norm(cvec(X.action.apply(mh, g) - X.action.apply(m, A.H.mul(h, g)))));
            }
            star_act = std::max(star_act, inf_norm(cvec(X.adj(mh) - X.action.apply(X.adj(m), A.H.adj(A.H.antipode * h)))));
            cmat D = A.H.coprod.slice(i);
            for (const cvec& b : B.generating_set()) {
                cvec l = X.action.apply(X.left.apply(b, m), h), rr = X.action.apply(X.right.apply(m, b), h);
                cvec l2 = cvec::Zero(X.dim), r2 = cvec::Zero(X.dim);
                for (int a = 0; a < A.H.dim; ++a)
                    for (int c = 0; c < A.H.dim; ++c) {
                        if (D(a, c) == cplx{}) continue;
                        l2 += D(a, c) * X.left.apply(A.actB.apply(b, A.H.basis(a)), X.action.apply(m, A.H.basis(c)));
                        r2 += D(a, c) * X.right.apply(X.action.apply(m, A.H.basis(a)), A.actB.apply(b, A.H.basis(c)));
                    }
                equiv = std::max({equiv, inf_norm(cvec(l - l2)), inf_norm(cvec(rr - r2))});
            }
        }
    }
    r.add(tag + "_bimodule", assoc);
    r.add(tag + "_unit", unit);
    r.add(tag + "_star", star);
    r.add(tag + "_action", std::max(act_comp, act_unit));
    r.add(tag + "_action_star", star_act);
    r.add(tag + "_equivariant", equiv);
}

}  // namespace

CheckReport module_algebra_gate(const ModuleAlgebra& A) {
    CheckReport r;
    const StarAlgebra& B = A.B;
    const int nb = B.dim, nh = A.H.dim;
    double assoc = 0, unit = 0, st = 0;
    double mod_alg = 0, act_unit = 0, act_comp = 0, act_star = 0, one_act = 0;
    for (int i = 0; i < nb; ++i) {
        cvec b = B.basis(i);
        unit = std::max({unit, inf_norm(cvec(B.mul(B.unit, b) - b)), inf_norm(cvec(B.mul(b, B.unit) - b))});
        st = std::max(st, inf_norm(cvec(B.adj(B.adj(b)) - b)));
        for (int j = 0; j < nb; ++j) {
            cvec c = B.basis(j), bc = B.mul(b, c);
            st = std::max(st, inf_norm(cvec(B.adj(bc) - B.mul(B.adj(c), B.adj(b)))));
            for (const cvec& g : B.generating_set())
                assoc = std::max(assoc, inf_norm(cvec(B.mul(bc, g) - B.mul(b, B.mul(c, g)))));
        }
        act_unit = std::max(act_unit, inf_norm(cvec(A.actB.apply(b, A.H.unit) - b)));
        for (int k = 0; k < nh; ++k) {
            cvec h = A.H.basis(k), bh = A.actB.apply(b, h);
            act_star = std::max(act_star, inf_norm(cvec(B.adj(bh) - A.actB.apply(B.adj(b), A.H.adj(A.H.antipode * h)))));
            for (int l = 0; l < nh; ++l)
                act_comp = std::max(act_comp, inf_norm(cvec(A.actB.apply(bh, A.H.basis(l)) - A.actB.apply(b, A.H.mul(h, A.H.basis(l))))));
            cmat D = A.H.coprod.slice(k);
            for (const cvec& g : B.generating_set()) {
                cvec lhs = A.actB.apply(B.mul(b, g), h), rhs = cvec::Zero(nb);
                for (int a = 0; a < nh; ++a)
                    for (int c = 0; c < nh; ++c)
                        if (D(a, c) != cplx{})
                            rhs += D(a, c) * B.mul(A.actB.apply(b, A.H.basis(a)), A.actB.apply(g, A.H.basis(c)));
                mod_alg = std::max(mod_alg, inf_norm(cvec(lhs - rhs)));
            }
        }
    }
    for (int k = 0; k < nh; ++k)
        one_act = std::max(one_act, inf_norm(cvec(A.actB.apply(B.unit, A.H.basis(k)) - A.H.counit[k] * B.unit)));
    r.add("B_associativity", assoc);
    r.add("B_unit", unit);
    r.add("B_star", st);
    r.add("B_module_algebra", std::max(mod_alg, one_act));
    r.add("B_action", std::max(act_unit, act_comp));
    r.add("B_action_star", act_star);
    bimodule_checks(A, A.M, "M", r);

    if (A.dB) {
        const cmat& d = *A.dB;
        double leib = 0, dstar = 0, dequiv = 0;
        for (int i = 0; i < nb; ++i) {
            cvec b = B.basis(i);
            dstar = std::max(dstar, inf_norm(cvec(d * B.adj(b) + A.M.adj(d * b))));
            for (const cvec& g : B.generating_set())
                leib = std::max(leib, inf_norm(cvec(d * B.mul(b, g) - A.M.right.apply(d * b, g) - A.M.left.apply(b, d * g))));
            for (int k = 0; k < nh; ++k) {
                cvec h = A.H.basis(k);
                dequiv = std::max(dequiv, inf_norm(cvec(d * A.actB.apply(b, h) - A.M.action.apply(d * b, h))));
            }
        }
        r.add("dB_leibniz", leib);
        r.add("dB_star", dstar);
        r.add("dB_equivariant", dequiv);
    }
    if (A.Omega2) {
        bimodule_checks(A, *A.Omega2, "Omega2", r);
        const Bimodule& W = *A.Omega2;
        double bal = 0, wstar = 0, wequiv = 0;
        for (int k = 0; k < A.M.dim; ++k)
            for (int l = 0; l < A.M.dim; ++l) {
                cvec m = A.M.basis(k), n = A.M.basis(l);
                cvec mn = A.wedge->apply(m, n);
                wstar = std::max(wstar, inf_norm(cvec(W.adj(mn) + A.wedge->apply(A.M.adj(n), A.M.adj(m)))));
                for (const cvec& b : B.generating_set()) {
                    bal = std::max(bal, inf_norm(cvec(A.wedge->apply(A.M.right.apply(m, b), n) - A.wedge->apply(m, A.M.left.apply(b, n)))));
                    bal = std::max(bal, inf_norm(cvec(W.left.apply(b, mn) - A.wedge->apply(A.M.left.apply(b, m), n))));
                    bal = std::max(bal, inf_norm(cvec(W.right.apply(mn, b) - A.wedge->apply(m, A.M.right.apply(n, b)))));
                }
                for (int i = 0; i < nh; ++i) {
                    cvec h = A.H.basis(i);
                    cmat D = A.H.coprod.slice(i);
                    cvec rhs = cvec::Zero(W.dim);
                    for (int a = 0; a < nh; ++a)
                        for (int c = 0; c < nh; ++c)
                            if (D(a, c) != cplx{})
                                rhs += D(a, c) * A.wedge->apply(A.M.action.apply(m, A.H.basis(a)), A.M.action.apply(n, A.H.basis(c)));
                    wequiv = std::max(wequiv, inf_norm(cvec(W.action.apply(mn, h) - rhs)));
                }
            }
        r.add("wedge_balanced", bal);
        r.add("wedge_star", wstar);
        r.add("wedge_equivariant", wequiv);
        if (A.d1 && A.dB) {
            const cmat& d = *A.dB;
            const cmat& d1 = *A.d1;
            double dd = inf_norm(cmat(d1 * d));
            double leib = 0, dstar = 0, dequiv = 0;
            for (int k = 0; k < A.M.dim; ++k) {
                cvec m = A.M.basis(k);
                dstar = std::max(dstar, inf_norm(cvec(d1 * A.M.adj(m) + W.adj(d1 * m))));
                for (const cvec& b : B.generating_set()) {
                    leib = std::max(leib, inf_norm(cvec(d1 * A.M.left.apply(b, m) - A.wedge->apply(d * b, m) - W.left.apply(b, d1 * m))));
                    leib = std::max(leib, inf_norm(cvec(d1 * A.M.right.apply(m, b) - W.right.apply(d1 * m, b) + A.wedge->apply(m, d * b))));
                }
                for (int i = 0; i < nh; ++i) {
                    cvec h = A.H.basis(i);
                    dequiv = std::max(dequiv, inf_norm(cvec(d1 * A.M.action.apply(m, h) - W.action.apply(d1 * m, h))));
                }
            }
            r.add("d_squared", dd);
            r.add("d1_leibniz", leib);
            r.add("d1_star", dstar);
            r.add("d1_equivariant", dequiv);
        }
    }
    return r;
}

// ---------------------------------------------------------------- crossed product

int CrossedProduct::dim_W() const { return A_->Omega2 ? A_->H.dim * A_->Omega2->dim : 0; }

namespace {

std::vector<std::pair<int, cplx>> sparse(const cvec& v) {
    std::vector<std::pair<int, cplx>> out;
    for (int i = 0; i < v.size(); ++i)
        if (v[i] != cplx{}) out.emplace_back(i, v[i]);
    return out;
}

}  // namespace

CrossedProduct::PairIndex CrossedProduct::index(const Tensor3& t) {
    PairIndex ix;
    ix.n1 = t.dim1();
    std::vector<Tensor3::Entry> e = t.entries();
    std::stable_sort(e.begin(), e.end(), [](auto& a, auto& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    ix.offsets.assign(static_cast<size_t>(t.dim0()) * t.dim1() + 1, 0);
    for (auto& x : e) {
        ++ix.offsets[static_cast<size_t>(x.i) * t.dim1() + x.j + 1];
        ix.kv.emplace_back(x.k, x.v);
    }
    for (size_t i = 1; i < ix.offsets.size(); ++i) ix.offsets[i] += ix.offsets[i - 1];
    return ix;
}

CrossedProduct::CrossedProduct(const ModuleAlgebra& A) : A_(&A) {
    const int nh = A.H.dim;
    for (int i = 0; i < nh; ++i)
        for (int a = 0; a < nh; ++a) hprod_.push_back(sparse(A.H.mult.apply_basis(i, A.H.basis(a))));
    for (int j = 0; j < A.B.dim; ++j)
        for (int a = 0; a < nh; ++a) actB_.push_back(sparse(A.actB.apply_basis(j, A.H.basis(a))));
    for (int j = 0; j < A.M.dim; ++j)
        for (int a = 0; a < nh; ++a) actM_.push_back(sparse(A.M.action.apply_basis(j, A.H.basis(a))));
    mulB_ = index(A.B.mult);
    left_ = index(A.M.left);
    right_ = index(A.M.right);
    if (A.wedge) wedge_ = index(*A.wedge);
}

// sum_{p,q} x_p y_q (h_i (x) u_j)(h_k (x) v_l) = sum v (h_i h_a) (x) T(u_j <| h_b, v_l)
cvec CrossedProduct::smash(const cvec& x, int nx, const cvec& y, int ny, int nout, const std::vector<Sparse>& act,
                           const PairIndex& T) const {
    const ModuleAlgebra& A = *A_;
    const int nh = A.H.dim;
    cvec out = cvec::Zero(nh * nout);
    const Sparse xs = sparse(x);
    for (int q = 0; q < y.size(); ++q) {
        if (y[q] == cplx{}) continue;
        const int k = q / ny, l = q % ny;
        auto [b, e] = A.H.coprod.row(k);
        for (const auto& [p, xp] : xs) {
            const int i = p / nx, j = p % nx;
            for (const Tensor3::Entry* t = b; t != e; ++t) {
                const Sparse& hh = hprod_[i * nh + t->j];
                const cplx c = xp * y[q] * t->v;
                for (const auto& [u, cu] : act[j * nh + t->k]) {
                    const size_t key = static_cast<size_t>(u) * T.n1 + l;
                    for (int o = T.offsets[key]; o < T.offsets[key + 1]; ++o) {
                        const cplx val = c * cu * T.kv[o].second;
                        for (const auto& [a, ha] : hh) out[a * nout + T.kv[o].first] += val * ha;
                    }
                }
            }
        }
    }
    return out;
}

cvec CrossedProduct::mul(const cvec& x, const cvec& y) const {
    const int nb = A_->B.dim;
    return smash(x, nb, y, nb, nb, actB_, mulB_);
}

cvec CrossedProduct::lmul(const cvec& x, const cvec& w) const {
    return smash(x, A_->B.dim, w, A_->M.dim, A_->M.dim, actB_, left_);
}

cvec CrossedProduct::rmul(const cvec& w, const cvec& x) const {
    return smash(w, A_->M.dim, x, A_->B.dim, A_->M.dim, actM_, right_);
}

cvec CrossedProduct::wedge(const cvec& w1, const cvec& w2) const {
    const ModuleAlgebra& A = *A_;
    if (!A.wedge) throw TargetMismatch(A.name + ": no wedge product");
    return smash(w1, A.M.dim, w2, A.M.dim, omega2(A).dim, actM_, wedge_);
}

cvec CrossedProduct::embed_B(const cvec& b) const {
    const ModuleAlgebra& A = *A_;
    cvec out = cvec::Zero(dim_P());
    for (int i = 0; i < A.H.dim; ++i) out.segment(i * A.B.dim, A.B.dim) = A.H.unit[i] * b;
    return out;
}

cvec CrossedProduct::embed_H(const cvec& h) const {
    const ModuleAlgebra& A = *A_;
    cvec out = cvec::Zero(dim_P());
    for (int i = 0; i < A.H.dim; ++i) out.segment(i * A.B.dim, A.B.dim) = h[i] * A.B.unit;
    return out;
}

cvec CrossedProduct::star_P(const cvec& x) const {
    // (h b)* = b* h* = (1 b*)(h* 1)
    const ModuleAlgebra& A = *A_;
    const int nb = A.B.dim;
    cvec out = cvec::Zero(dim_P());
    for (int p = 0; p < x.size(); ++p) {
        if (x[p] == cplx{}) continue;
        cvec hs = A.H.adj(A.H.basis(p / nb)), bs = A.B.adj(A.B.basis(p % nb));
        out += std::conj(x[p]) * mul(embed_B(bs), embed_H(hs));
    }
    return out;
}

cvec CrossedProduct::star_O(const cvec& w) const {
    const ModuleAlgebra& A = *A_;
    const int nm = A.M.dim;
    cvec out = cvec::Zero(dim_O());
    for (int p = 0; p < w.size(); ++p) {
        if (w[p] == cplx{}) continue;
        cvec hs = A.H.adj(A.H.basis(p / nm)), ms = A.M.adj(A.M.basis(p % nm));
        cvec one_m = cvec::Zero(dim_O());
        for (int i = 0; i < A.H.dim; ++i) one_m.segment(i * nm, nm) = A.H.unit[i] * ms;
        out += std::conj(w[p]) * rmul(one_m, embed_H(hs));
    }
    return out;
}

namespace {

// column (i,j): sum v e_a (x) f(sigma(h_b), u_j)
template <class F>
cmat op_table(const ModuleAlgebra& A, const ConvolutionElement& s, int nin, int nout, F&& f) {
    const int nh = A.H.dim;
    cmat G = cmat::Zero(nh * nout, nh * nin);
    for (int i = 0; i < nh; ++i) {
        auto [b, e] = A.H.coprod.row(i);
        for (int j = 0; j < nin; ++j)
            for (const Tensor3::Entry* t = b; t != e; ++t)
                G.block(t->j * nout, i * nin + j, nout, 1) += t->v * f(s.values[t->k], j);
    }
    return G;
}

}  // namespace

cmat op_gauge(const ModuleAlgebra& A, const ConvolutionElement& sigma) {
    if (sigma.target != Target::B) throw TargetMismatch("Op of a non B-valued element");
    return op_table(A, sigma, A.B.dim, A.B.dim, [&](const cvec& s, int j) { return A.B.mul(s, A.B.basis(j)); });
}

cmat op_gauge_forms(const ModuleAlgebra& A, const ConvolutionElement& sigma) {
    if (sigma.target != Target::B) throw TargetMismatch("Op of a non B-valued element");
    return op_table(A, sigma, A.M.dim, A.M.dim, [&](const cvec& s, int j) { return A.M.left.apply(s, A.M.basis(j)); });
}

cmat op_gauge_two_forms(const ModuleAlgebra& A, const ConvolutionElement& sigma) {
    if (sigma.target != Target::B) throw TargetMismatch("Op of a non B-valued element");
    const Bimodule& W = omega2(A);
    return op_table(A, sigma, W.dim, W.dim, [&](const cvec& s, int j) { return W.left.apply(s, W.basis(j)); });
}

cmat op_potential(const ModuleAlgebra& A, const ConvolutionElement& mu) {
    if (mu.target != Target::M) throw TargetMismatch("Op of a non M-valued element");
    const int nh = A.H.dim, nb = A.B.dim, nm = A.M.dim;
    cmat N = op_table(A, mu, nb, nm, [&](const cvec& m, int j) { return A.M.right.apply(m, A.B.basis(j)); });
    if (A.dB)
        for (int i = 0; i < nh; ++i) N.block(i * nm, i * nb, nm, nb) += *A.dB;
    return N;
}

cmat gauge_act(const ModuleAlgebra& A, const ConvolutionElement& sigma, const cmat& nabla) {
    const Eigen::SparseMatrix<cplx> L = op_gauge_forms(A, sigma).sparseView();
    const Eigen::SparseMatrix<cplx> R = op_gauge(A, conv_inverse(A, sigma)).sparseView();
    return cmat(L * nabla) * R;
}

namespace {

std::vector<cvec> crossed_generators(const ModuleAlgebra& A, const CrossedProduct& P) {
    std::vector<cvec> g;
    for (int i = 0; i < A.H.dim; ++i) g.push_back(P.embed_H(A.H.basis(i)));
    for (const cvec& b : A.B.generating_set()) g.push_back(P.embed_B(b));
    return g;
}

cvec embed_O(const ModuleAlgebra& A, const cvec& m) {
    cvec out = cvec::Zero(A.H.dim * A.M.dim);
    for (int i = 0; i < A.H.dim; ++i) out.segment(i * A.M.dim, A.M.dim) = A.H.unit[i] * m;
    return out;
}

// right H-coaction x -> x_(0) (x) x_(1) on h (x) u, as an (n_h * nu) x n_h matrix
cmat coaction(const ModuleAlgebra& A, const cvec& x, int nu) {
    const int nh = A.H.dim;
    cmat out = cmat::Zero(nh * nu, nh);
    for (int p = 0; p < x.size(); ++p) {
        if (x[p] == cplx{}) continue;
        const int i = p / nu, j = p % nu;
        auto [b, e] = A.H.coprod.row(i);
        for (const Tensor3::Entry* t = b; t != e; ++t) out(t->j * nu + j, t->k) += x[p] * t->v;
    }
    return out;
}

}  // namespace

CheckReport check_op_gauge(const ModuleAlgebra& A, const ConvolutionElement& sigma) {
    CrossedProduct P(A);
    using SpMat = Eigen::SparseMatrix<cplx>;
    const SpMat G = op_gauge(A, sigma).sparseView(), GF = op_gauge_forms(A, sigma).sparseView();
    const auto gens = crossed_generators(A, P);
    CheckReport r;
    double mult = 0, star = 0, fix = 0, fl = 0, fr = 0, fstar = 0;
    for (int p = 0; p < P.dim_P(); ++p) {
        cvec x = unit_vector(P.dim_P(), p), gx = G * x;
        for (const cvec& y : gens) mult = std::max(mult, inf_norm(cvec(G * P.mul(x, y) - P.mul(gx, G * y))));
        star = std::max(star, inf_norm(cvec(G * P.star_P(x) - P.star_P(gx))));
    }
    for (int j = 0; j < A.B.dim; ++j) {
        cvec b = P.embed_B(A.B.basis(j));
        fix = std::max(fix, inf_norm(cvec(G * b - b)));
    }
    for (int q = 0; q < P.dim_O(); ++q) {
        cvec w = unit_vector(P.dim_O(), q), gw = GF * w;
        for (const cvec& y : gens) {
            fl = std::max(fl, inf_norm(cvec(GF * P.lmul(y, w) - P.lmul(G * y, gw))));
            fr = std::max(fr, inf_norm(cvec(GF * P.rmul(w, y) - P.rmul(gw, G * y))));
        }
        fstar = std::max(fstar, inf_norm(cvec(GF * P.star_O(w) - P.star_O(gw))));
    }
    r.add("multiplicative", mult);
    r.add("star", star);
    r.add("fixes_B", fix);
    r.add("forms_left", fl);
    r.add("forms_right", fr);
    r.add("forms_star", fstar);
    const ConvolutionElement inv = conv_inverse(A, sigma);
    r.add("invertible", inf_norm(cmat(G * op_gauge(A, inv) - cmat::Identity(P.dim_P(), P.dim_P()))));
    if (A.Omega2 && A.wedge) {
        const SpMat GW = op_gauge_two_forms(A, sigma).sparseView();
        double deg2 = 0;
        // 1 (x) M generates the forms as a P-bimodule
        std::vector<cvec> ow, gow;
        for (int k = 0; k < A.M.dim; ++k) {
            ow.push_back(embed_O(A, A.M.basis(k)));
            gow.push_back(GF * ow.back());
        }
        for (size_t a = 0; a < ow.size(); ++a)
            for (size_t b = 0; b < ow.size(); ++b)
                deg2 = std::max(deg2, inf_norm(cvec(GW * P.wedge(ow[a], ow[b]) - P.wedge(gow[a], gow[b]))));
        r.add("degree2", deg2);
    }
    return r;
}

CheckReport check_op_potential(const ModuleAlgebra& A, const ConvolutionElement& mu) {
    CrossedProduct P(A);
    const Eigen::SparseMatrix<cplx> N = op_potential(A, mu).sparseView();
    const auto gens = crossed_generators(A, P);
    CheckReport r;
    double der = 0, star = 0, restr = 0, cov = 0;
    for (int p = 0; p < P.dim_P(); ++p) {
        cvec x = unit_vector(P.dim_P(), p), nx = N * x;
        for (const cvec& y : gens)
            der = std::max(der, inf_norm(cvec(N * P.mul(x, y) - P.rmul(nx, y) - P.lmul(x, N * y))));
        star = std::max(star, inf_norm(cvec(N * P.star_P(x) + P.star_O(nx))));
        cov = std::max(cov, inf_norm(cmat(N * coaction(A, x, A.B.dim) - coaction(A, nx, A.M.dim))));
    }
    for (int j = 0; j < A.B.dim; ++j) {
        cvec b = A.B.basis(j);
        cvec db = A.dB ? cvec(*A.dB * b) : cvec::Zero(A.M.dim);
        restr = std::max(restr, inf_norm(cvec(N * P.embed_B(b) - embed_O(A, db))));
    }
    r.add("derivation", der);
    r.add("star_derivation", star);
    r.add("restricts_to_dB", restr);
    r.add("covariant", cov);
    return r;
}

// ---------------------------------------------------------------- real-linear solving

namespace {

// Real kernel of the real-linear map F: R^n -> C^k given column by column.
std::vector<Eigen::VectorXd> real_kernel(int n, const std::function<cvec(const Eigen::VectorXd&)>& F, double tol) {
    std::vector<Eigen::Triplet<double>> trip;
    int rows = -1;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    for (int c = 0; c < n; ++c) {
        e[c] = 1.0;
        cvec v = F(e);
        e[c] = 0.0;
        rows = static_cast<int>(v.size());
        for (int i = 0; i < v.size(); ++i) {
            if (std::abs(v[i].real()) > 1e-15) trip.emplace_back(2 * i, c, v[i].real());
            if (std::abs(v[i].imag()) > 1e-15) trip.emplace_back(2 * i + 1, c, v[i].imag());
        }
    }
    std::vector<Eigen::VectorXd> out;
    if (n == 0) return out;
    Eigen::SparseMatrix<double> S(std::max(2 * rows, 1), n);
    S.setFromTriplets(trip.begin(), trip.end());
    Eigen::MatrixXd G = Eigen::MatrixXd(Eigen::SparseMatrix<double>(S.transpose() * S));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    const double top = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1.0);
    for (int i = 0; i < n; ++i)
        if (es.eigenvalues()[i] <= tol * top) out.push_back(es.eigenvectors().col(i));
    return out;
}

cvec to_complex(const Eigen::VectorXd& x, int offset, int n) {
    cvec v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx(x[offset + 2 * i], x[offset + 2 * i + 1]);
    return v;
}

}  // namespace

std::vector<cvec> central_selfadjoint_basis(const ModuleAlgebra& A, Target t, bool with_M, double tol) {
    const int n = target_dim(A, t);
    const auto gens = A.B.generating_set();
    auto F = [&](const Eigen::VectorXd& x) {
        cvec v = to_complex(x, 0, n);
        std::vector<cvec> parts{cvec(adj(A, t, v) - v)};
        for (const cvec& b : gens) {
            auto [t1, l] = product(A, Target::B, b, t, v);
            auto [t2, rr] = product(A, t, v, Target::B, b);
            parts.push_back(l - rr);
        }
        if (with_M && t == Target::B)
            for (int k = 0; k < A.M.dim; ++k) {
                cvec m = A.M.basis(k);
                parts.push_back(A.M.left.apply(v, m) - A.M.right.apply(m, v));
            }
        Eigen::Index len = 0;
        for (auto& p : parts) len += p.size();
        cvec out(len);
        Eigen::Index o = 0;
        for (auto& p : parts) {
            out.segment(o, p.size()) = p;
            o += p.size();
        }
        return out;
    };
    std::vector<cvec> basis;
    for (const auto& k : real_kernel(2 * n, F, tol)) basis.push_back(to_complex(k, 0, n));
    return basis;
}

HochschildSpace solve_hochschild_space(const ModuleAlgebra& A, double tol) {
    const int nh = A.H.dim, nm = A.M.dim;
    const auto gens = A.B.generating_set();
    std::vector<ConvolutionElement> rho_b;
    for (const cvec& b : gens) rho_b.push_back(rho(A, Target::B, b));
    auto unpack = [&](const Eigen::VectorXd& x) {
        ConvolutionElement mu = zero(A, Target::M);
        for (int i = 0; i < nh; ++i) mu.values[i] = to_complex(x, 2 * i * nm, nm);
        return mu;
    };
    auto F = [&](const Eigen::VectorXd& x) {
        ConvolutionElement mu = unpack(x);
        std::vector<cvec> parts{mu(A.H.unit)};
        ConvolutionElement sa = conv_star(A, mu) - mu;
        for (auto& v : sa.values) parts.push_back(v);
        for (const auto& rb : rho_b) {
            ConvolutionElement c = convolve(A, rb, mu) - convolve(A, mu, rb);
            for (auto& v : c.values) parts.push_back(v);
        }
        for (int i = 0; i < nh; ++i)
            for (int j = 0; j < nh; ++j)
                parts.push_back(mu(A.H.mult.apply_basis(i, A.H.basis(j))) - act(A, Target::M, mu.values[i], A.H.basis(j)) -
                                A.H.counit[i] * mu.values[j]);
        cvec out(static_cast<Eigen::Index>(parts.size()) * nm);
        for (size_t p = 0; p < parts.size(); ++p) out.segment(static_cast<Eigen::Index>(p) * nm, nm) = parts[p];
        return out;
    };
    HochschildSpace hs;
    for (const auto& k : real_kernel(2 * nh * nm, F, tol)) hs.cocycles.push_back(unpack(k));
    hs.dim_Z = static_cast<int>(hs.cocycles.size());

    hs.central_sa = central_selfadjoint_basis(A, Target::M, false, tol);
    if (!hs.central_sa.empty()) {
        Eigen::MatrixXd img(2 * nh * nm, hs.central_sa.size());
        for (size_t c = 0; c < hs.central_sa.size(); ++c) {
            ConvolutionElement d = coboundary(A, Target::M, hs.central_sa[c]);
            for (int i = 0; i < nh; ++i)
                for (int k = 0; k < nm; ++k) {
                    img(2 * (i * nm + k), c) = d.values[i][k].real();
                    img(2 * (i * nm + k) + 1, c) = d.values[i][k].imag();
                }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(img, Eigen::ComputeThinU);
        const auto& sv = svd.singularValues();
        const double top = sv.size() ? std::max(sv[0], 1.0) : 1.0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv[i] > std::sqrt(tol) * top) hs.coboundaries.push_back(unpack(svd.matrixU().col(i)));
    }
    hs.dim_B = static_cast<int>(hs.coboundaries.size());
    hs.dim_HH = hs.dim_Z - hs.dim_B;
    return hs;
}

// ---------------------------------------------------------------- group-algebra helpers

namespace {

void require_group_basis(const ModuleAlgebra& A) {
    for (int i = 0; i < A.H.dim; ++i) {
        auto [b, e] = A.H.coprod.row(i);
        if (e - b != 1 || b->j != i || b->k != i || std::abs(b->v - 1.0) > 1e-14)
            throw NotAdmissible(A.name + ": H basis is not group-like");
    }
}

}  // namespace

ConvolutionElement group_sweedler(const ModuleAlgebra& A, const cvec& w) {
    require_group_basis(A);
    ConvolutionElement s = zero(A, Target::B);
    s.values[0] = A.B.unit;
    for (int j = 1; j < A.H.dim; ++j) s.values[j] = A.B.mul(act(A, Target::B, s.values[j - 1], A.H.basis(1)), w);
    return s;
}

cvec exp_i(const StarAlgebra& B, const cvec& x) {
    int squarings = 0;
    cvec y = x;
    const double scale = x.cwiseAbs().sum();
    while (scale / std::ldexp(1.0, squarings) > 0.25) ++squarings;
    y /= std::ldexp(1.0, squarings);
    cvec term = B.unit, sum = B.unit;
    for (int k = 1; k < 24; ++k) {
        term = B.mul(term, y) * (cplx(0, 1) / static_cast<double>(k));
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = B.mul(sum, sum);
    return sum;
}

ConvolutionElement random_element(const ModuleAlgebra& A, Target t, std::mt19937_64& rng, bool self_adjoint) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ConvolutionElement f = zero(A, t);
    for (auto& v : f.values)
        for (int i = 0; i < v.size(); ++i) v[i] = cplx(u(rng), u(rng));
    if (self_adjoint) {
        ConvolutionElement s = conv_star(A, f);
        f += s;
        f *= 0.5;
    }
    return f;
}

ConvolutionElement random_unitary_convolution(const ModuleAlgebra& A, std::mt19937_64& rng) {
    require_group_basis(A);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ConvolutionElement s = zero(A, Target::B);
    s.values[0] = A.B.unit;
    for (int j = 1; j < A.H.dim; ++j) {
        cvec x(A.B.dim);
        for (int i = 0; i < x.size(); ++i) x[i] = cplx(u(rng), u(rng));
        x = 0.5 * (x + A.B.adj(x));
        s.values[j] = exp_i(A.B, x);
    }
    return s;
}

}  // namespace qmono::hopf
