#pragma once

// Grid realization of the basic Heisenberg modules P_m = E(Phi(eps^m), theta) and the
// graded algebra P = sum_m P_m over the noncommutative torus.

#include "qmono/nc_torus.hpp"
#include "qmono/quad_field.hpp"

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace qmono {

enum class Interpolation { cubic_spline, lagrange8 };

struct GridSpec {
    double L = 12.0;
    int N = 1024;
    int J = 16;         // generic product keeps terms with |g argument| <= J
    double tol = 1e-6;
    int mode_box = 10;  // |n1|,|n2| <= mode_box in the degree-zero product
    int fd_order = 8;   // 2, 4, 6 or 8
    Interpolation interp = Interpolation::lagrange8;

    double h() const { return 2.0 * L / N; }
    double x(int i) const { return -L + i * h(); }
    void validate() const;
    bool operator==(const GridSpec&) const = default;
};

struct ModuleData {
    long m = 0;
    long a = 1, b = 0, c = 0, d = 1;  // Phi(eps^m)
    long sectors = 1;                  // |c|
    long double r = 1.0L;              // eps^m = c theta + d
};

class Context {
public:
    Context(QuadraticIrrational t, GridSpec grid);

    const QuadraticIrrational& type() const { return t_; }
    const GridSpec& grid() const { return grid_; }
    double theta() const { return theta_; }
    long double eps() const { return eps_; }
    const ModuleData& module(long m) const;
    long double eps_pow(long m) const { return module(m).r; }

private:
    QuadraticIrrational t_;
    GridSpec grid_;
    double theta_;
    long double eps_;
    long max_grade_;
    std::vector<ModuleData> modules_;
};

using ContextPtr = std::shared_ptr<const Context>;
ContextPtr make_context(const QuadraticIrrational& t, const GridSpec& grid = {});

struct HeisenbergElement {
    long m = 1;
    std::vector<cplx> samples;  // sector-major: samples[k*N + i] = f(x_i, k)
    ContextPtr ctx;

    HeisenbergElement() = default;
    HeisenbergElement(ContextPtr c, long grade);

    static HeisenbergElement from_function(ContextPtr c, long grade,
                                           const std::function<cplx(double, long)>& f);

    long sectors() const { return ctx->module(m).sectors; }
    int N() const { return ctx->grid().N; }
    long sector(long k) const;
    cplx& at(long k, int i) { return samples[sector(k) * N() + i]; }
    cplx at(long k, int i) const { return samples[sector(k) * N() + i]; }
    double max_abs() const;
    double l2_norm() const;

    HeisenbergElement& operator+=(const HeisenbergElement& o);
    HeisenbergElement& operator-=(const HeisenbergElement& o);
    HeisenbergElement& operator*=(cplx s);
    friend HeisenbergElement operator+(HeisenbergElement x, const HeisenbergElement& y) { return x += y; }
    friend HeisenbergElement operator-(HeisenbergElement x, const HeisenbergElement& y) { return x -= y; }
    friend HeisenbergElement operator*(cplx s, HeisenbergElement x) { return x *= s; }
};

// Off-grid evaluation of a HeisenbergElement; zero outside the sampled window.
class Interpolant {
public:
    explicit Interpolant(const HeisenbergElement& f);
    cplx operator()(double x, long k) const;

private:
    const HeisenbergElement* f_;
    double x0_, h_;
    int n_;
    Interpolation kind_;
    std::vector<cplx> second_;  // spline second derivatives, sector-major
};

struct GradedElement {
    ContextPtr ctx;
    TorusElement base;                          // grade 0
    std::map<long, HeisenbergElement> parts;    // grades != 0

    GradedElement() = default;
    explicit GradedElement(ContextPtr c) : ctx(std::move(c)), base(ctx->theta()) {}
    GradedElement(ContextPtr c, TorusElement b);
    GradedElement(HeisenbergElement f);

    std::vector<long> grades() const;
    GradedElement& operator+=(const GradedElement& o);
    GradedElement& operator-=(const GradedElement& o);
    GradedElement& operator*=(cplx s);
    friend GradedElement operator+(GradedElement x, const GradedElement& y) { return x += y; }
    friend GradedElement operator-(GradedElement x, const GradedElement& y) { return x -= y; }
    friend GradedElement operator*(cplx s, GradedElement x) { return x *= s; }
};

// max-abs distance over torus coefficients and grid samples
double distance(const HeisenbergElement& x, const HeisenbergElement& y);
double distance(const GradedElement& x, const GradedElement& y);
double max_abs(const GradedElement& x);

enum class Gen { U, V, Uinv, Vinv };

struct Diagnostics {
    std::vector<std::string> warnings;
    double max_tail = 0.0;
    void warn(const std::string& w, double tail);
};

HeisenbergElement right_act(const HeisenbergElement& f, Gen g);
HeisenbergElement left_act(Gen g, const HeisenbergElement& f);
// f . U^{n1} V^{n2} and U^{n1} V^{n2} . f
HeisenbergElement right_act_monomial(const HeisenbergElement& f, long n1, long n2);
HeisenbergElement left_act_monomial(long n1, long n2, const HeisenbergElement& f);
HeisenbergElement right_act(const HeisenbergElement& f, const TorusElement& b);
HeisenbergElement left_act(const TorusElement& b, const HeisenbergElement& f);

HeisenbergElement star_P(const HeisenbergElement& f);
GradedElement star_P(const GradedElement& p);

// f in P_{-m}, g in P_m
TorusElement mul_opposite(const HeisenbergElement& f, const HeisenbergElement& g, Diagnostics* diag = nullptr);
// f in P_m, g in P_n, m + n != 0
HeisenbergElement mul_generic(const HeisenbergElement& f, const HeisenbergElement& g, Diagnostics* diag = nullptr);
GradedElement mul_P(const GradedElement& p, const GradedElement& q, Diagnostics* diag = nullptr);

GradedElement sigma(const GradedElement& p);
HeisenbergElement partial(int j, const HeisenbergElement& f);
GradedElement partial(int j, const GradedElement& p);

// Schwartz test vectors: (1 + poly1 y + poly2 y^2) exp(-y^2/(2w^2) + i freq x) * weight[k], y = x - center
struct Packet {
    double center = 0.0, width = 0.6, freq = 0.0;
    cplx poly1 = 0.0, poly2 = 0.0;
    std::vector<cplx> sector_weight;  // defaults to 1
};

HeisenbergElement make_packet(ContextPtr c, long m, const Packet& p);
Packet random_packet(std::mt19937_64& rng, long sectors);
TorusElement random_torus(std::mt19937_64& rng, double theta, int terms, long box);

}  // namespace qmono
