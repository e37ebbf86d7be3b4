#pragma once

// Lazy Sweedler and Hochschild 1-cohomology of a finite-dimensional Hopf *-algebra H acting
// on a *-algebra B with a *-bimodule M of 1-forms, and the crossed-product Op maps.

#include "qmono/errors.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace qmono::hopf {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;

// Bilinear map C^n0 x C^n1 -> C^n2 given by its nonzero structure constants.
class Tensor3 {
public:
    struct Entry {
        int i, j, k;
        cplx v;
    };

    Tensor3() = default;
    Tensor3(int n0, int n1, int n2) : n0_(n0), n1_(n1), n2_(n2) {}

    void add(int i, int j, int k, cplx v);
    int dim0() const { return n0_; }
    int dim1() const { return n1_; }
    int dim2() const { return n2_; }
    const std::vector<Entry>& entries() const { return entries_; }
    // entries with first index i
    std::pair<const Entry*, const Entry*> row(int i) const;

    cvec apply(const cvec& x, const cvec& y) const;
    cvec apply_basis(int i, const cvec& y) const;
    // n1 x n2 matrix of coefficients with first index i
    cmat slice(int i) const;

private:
    void finalize() const;
    int n0_ = 0, n1_ = 0, n2_ = 0;
    mutable std::vector<Entry> entries_;  // sorted by first index on first row() access
    mutable bool sorted_ = true;
    mutable std::vector<int> offsets_;
};

struct FiniteHopf {
    int dim = 0;
    std::vector<std::string> labels;
    Tensor3 mult;     // (e_i, e_j) -> e_k
    cvec unit;
    Tensor3 coprod;   // Delta(e_i) = sum v e_j (x) e_k
    cvec counit;
    cmat antipode;    // S(x) = antipode * x
    cmat star;        // x* = star * conj(x)

    cvec mul(const cvec& x, const cvec& y) const { return mult.apply(x, y); }
    cvec basis(int i) const;
    cvec adj(const cvec& x) const { return star * x.conjugate(); }
    cmat coproduct(const cvec& x) const;  // (j,k) coefficients
    cplx eps(const cvec& x) const { return counit.cwiseProduct(x).sum(); }
};

struct StarAlgebra {
    int dim = 0;
    std::vector<std::string> labels;
    Tensor3 mult;
    cvec unit;
    cmat star;
    std::vector<cvec> generators;  // generate B as an algebra; empty means the basis

    cvec mul(const cvec& x, const cvec& y) const { return mult.apply(x, y); }
    cvec adj(const cvec& x) const { return star * x.conjugate(); }
    cvec basis(int i) const;
    std::vector<cvec> generating_set() const;
};

// B-bimodule with star and right H-action
struct Bimodule {
    int dim = 0;
    std::vector<std::string> labels;
    Tensor3 left;    // (b, m) -> m
    Tensor3 right;   // (m, b) -> m
    cmat star;
    Tensor3 action;  // (m, h) -> m

    cvec adj(const cvec& x) const { return star * x.conjugate(); }
    cvec basis(int i) const;
};

struct ModuleAlgebra {
    std::string name;
    FiniteHopf H;
    StarAlgebra B;
    Tensor3 actB;  // (b, h) -> b
    Bimodule M;
    std::optional<cmat> dB;           // dim M x dim B
    std::optional<Bimodule> Omega2;
    std::optional<Tensor3> wedge;     // (m, m') -> w
    std::optional<cmat> d1;           // dim Omega2 x dim M
};

enum class Target { B, M, Omega2 };
std::string to_string(Target t);
int target_dim(const ModuleAlgebra& A, Target t);

struct ConvolutionElement {
    Target target = Target::B;
    std::vector<cvec> values;  // one per basis vector of H

    cvec operator()(const cvec& h) const;
    ConvolutionElement& operator+=(const ConvolutionElement& o);
    ConvolutionElement& operator-=(const ConvolutionElement& o);
    ConvolutionElement& operator*=(cplx s);
    friend ConvolutionElement operator+(ConvolutionElement x, const ConvolutionElement& y) { return x += y; }
    friend ConvolutionElement operator-(ConvolutionElement x, const ConvolutionElement& y) { return x -= y; }
    friend ConvolutionElement operator*(cplx s, ConvolutionElement x) { return x *= s; }
};

double distance(const ConvolutionElement& f, const ConvolutionElement& g);
double max_abs(const ConvolutionElement& f);

struct CheckReport {
    std::vector<std::pair<std::string, double>> items;  // condition -> max violation

    void add(const std::string& name, double v);
    double worst() const;
    double get(const std::string& name) const;
    bool passed(double tol) const { return worst() <= tol; }
};

// Pointwise target operations
cvec act(const ModuleAlgebra& A, Target t, const cvec& v, const cvec& h);
cvec adj(const ModuleAlgebra& A, Target t, const cvec& v);
// B.B, B.M, M.B, M^M (wedge), B.Omega2, Omega2.B
std::pair<Target, cvec> product(const ModuleAlgebra& A, Target ta, const cvec& a, Target tb, const cvec& b);

ConvolutionElement zero(const ModuleAlgebra& A, Target t);
ConvolutionElement unit(const ModuleAlgebra& A);
// rho(v)(h) = v <| h
ConvolutionElement rho(const ModuleAlgebra& A, Target t, const cvec& v);
// D(v)(h) = v <| h - v eps(h)
ConvolutionElement coboundary(const ModuleAlgebra& A, Target t, const cvec& v);
// apply d_B (B -> M) or d (M -> Omega2) pointwise
ConvolutionElement d_apply(const ModuleAlgebra& A, const ConvolutionElement& f);

ConvolutionElement convolve(const ModuleAlgebra& A, const ConvolutionElement& f, const ConvolutionElement& g);
ConvolutionElement conv_star(const ModuleAlgebra& A, const ConvolutionElement& f);
// inverse in the B-valued convolution algebra; throws NotAdmissible if singular
ConvolutionElement conv_inverse(const ModuleAlgebra& A, const ConvolutionElement& f);
// graded commutator mu * nu + nu * mu of M-valued elements (Omega2-valued)
ConvolutionElement bracket(const ModuleAlgebra& A, const ConvolutionElement& mu, const ConvolutionElement& nu);

CheckReport check_sweedler_cocycle(const ModuleAlgebra& A, const ConvolutionElement& sigma);
CheckReport check_hochschild_cocycle(const ModuleAlgebra& A, const ConvolutionElement& mu);

constexpr double kTol = 1e-10;

// D upsilon(h) = (upsilon <| h) upsilon*, upsilon unitary and central in B + M
ConvolutionElement coboundary_S(const ModuleAlgebra& A, const cvec& upsilon, double tol = kTol);
// D m(h) = m <| h - m eps(h), m self-adjoint and B-central in M
ConvolutionElement coboundary_H(const ModuleAlgebra& A, const cvec& m, double tol = kTol);

// sigma * mu * sigma^{-1}; validate checks both cocycles and the result
ConvolutionElement conj_action(const ModuleAlgebra& A, const ConvolutionElement& sigma,
                               const ConvolutionElement& mu, bool validate = true);
// MC(sigma)(h) = -d_B sigma(h1) sigma*(h2)
ConvolutionElement mc_cocycle(const ModuleAlgebra& A, const ConvolutionElement& sigma, bool validate = true);
// F[mu] = -i (d mu + 1/2 [mu, mu])
ConvolutionElement curvature_map(const ModuleAlgebra& A, const ConvolutionElement& mu, bool validate = true);

CheckReport hopf_gate(const FiniteHopf& H);
CheckReport module_algebra_gate(const ModuleAlgebra& A);

// Crossed product P = B # H on the basis h_i (x) b_j (index i * dimB + j) and its
// bimodule Omega1_B # H on h_i (x) m_j (index i * dimM + j).
class CrossedProduct {
public:
    explicit CrossedProduct(const ModuleAlgebra& A);

    int dim_P() const { return A_->H.dim * A_->B.dim; }
    int dim_O() const { return A_->H.dim * A_->M.dim; }
    int dim_W() const;  // Omega2_B # H, 0 if absent

    cvec mul(const cvec& x, const cvec& y) const;     // P . P
    cvec lmul(const cvec& x, const cvec& w) const;    // P . O
    cvec rmul(const cvec& w, const cvec& x) const;    // O . P
    cvec wedge(const cvec& w1, const cvec& w2) const; // O ^ O -> W
    cvec star_P(const cvec& x) const;
    cvec star_O(const cvec& w) const;
    cvec embed_B(const cvec& b) const;  // 1 (x) b
    cvec embed_H(const cvec& h) const;  // h (x) 1

private:
    using Sparse = std::vector<std::pair<int, cplx>>;
    // entries of a Tensor3 grouped by (i, j)
    struct PairIndex {
        int n1 = 0;
        std::vector<int> offsets;
        std::vector<std::pair<int, cplx>> kv;
    };
    static PairIndex index(const Tensor3& t);
    cvec smash(const cvec& x, int nx, const cvec& y, int ny, int nout, const std::vector<Sparse>& act,
               const PairIndex& T) const;

    const ModuleAlgebra* A_;
    std::vector<Sparse> hprod_;  // h_i h_a at i * dimH + a
    std::vector<Sparse> actB_;   // b_j <| h_a at j * dimH + a
    std::vector<Sparse> actM_;   // m_j <| h_a at j * dimH + a
    PairIndex mulB_, left_, right_, wedge_;
};

// Op(sigma)(h b) = h1 sigma(h2) b on P, on O and on W
cmat op_gauge(const ModuleAlgebra& A, const ConvolutionElement& sigma);
cmat op_gauge_forms(const ModuleAlgebra& A, const ConvolutionElement& sigma);
cmat op_gauge_two_forms(const ModuleAlgebra& A, const ConvolutionElement& sigma);
// Op(mu)(h b) = h d_B(b) + h1 mu(h2) b, a dim_O x dim_P matrix
cmat op_potential(const ModuleAlgebra& A, const ConvolutionElement& mu);
// Op(sigma) |> nabla = Op(sigma)_* o nabla o Op(sigma)^{-1}
cmat gauge_act(const ModuleAlgebra& A, const ConvolutionElement& sigma, const cmat& nabla);

CheckReport check_op_gauge(const ModuleAlgebra& A, const ConvolutionElement& sigma);
CheckReport check_op_potential(const ModuleAlgebra& A, const ConvolutionElement& mu);

struct HochschildSpace {
    std::vector<ConvolutionElement> cocycles;      // real basis of ZH^1
    std::vector<ConvolutionElement> coboundaries;  // real basis of BH^1
    std::vector<cvec> central_sa;                  // real basis of Z_B(M)_sa
    int dim_Z = 0, dim_B = 0, dim_HH = 0;
};

HochschildSpace solve_hochschild_space(const ModuleAlgebra& A, double tol = 1e-9);
// real basis of the self-adjoint elements of the target commuting with B (and with M if with_M)
std::vector<cvec> central_selfadjoint_basis(const ModuleAlgebra& A, Target t, bool with_M = false,
                                            double tol = 1e-9);

// Group-algebra helpers; the H basis must be g^0, ..., g^{n-1}.
// sigma(g^j) = (sigma(g^{j-1}) <| g) w
ConvolutionElement group_sweedler(const ModuleAlgebra& A, const cvec& w);
// unitary in the convolution algebra, sigma(1) = 1, otherwise random
ConvolutionElement random_unitary_convolution(const ModuleAlgebra& A, std::mt19937_64& rng);
ConvolutionElement random_element(const ModuleAlgebra& A, Target t, std::mt19937_64& rng, bool self_adjoint);
// exp(i x) in B by power series, x self-adjoint
cvec exp_i(const StarAlgebra& B, const cvec& x);

// Shipped instances (H = C[Z_n]).
// cycle: B = C(Z_n) with shift action, M = B, d_B = 0; trivial_action drops the shift
ModuleAlgebra cycle_instance(int n, bool trivial_action = false);
// clock: B = M_n(C), b <| g = S* b S, M = B tau+ + B tau-, d b = [C,b] tau+ + [C*,b] tau-, Omega2 = B vol
ModuleAlgebra clock_instance(int n);
// cayley: B = C(Z_n), M spanned by e_s with e_s b = R^s(b) e_s, d b = sum (R^s b - b) e_s
ModuleAlgebra cayley_instance(int n);

}  // namespace qmono::hopf
