#include "qmono/heisenberg.hpp"

#include "qmono/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qmono {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

long to_long(const Int& v) {
    if (v > std::numeric_limits<long>::max() / 4 || v < std::numeric_limits<long>::min() / 4)
        throw ConfigError("unit power entry " + v.str() + " too large");
    return v.convert_to<long>();
}

long mod(long k, long n) {
    long r = k % n;
    return r < 0 ? r + n : r;
}

// e^{2 pi i p / q} for integers, reduced exactly
cplx root_phase(long p, long q) {
    if (q < 0) p = -p, q = -q;
    long r = mod(p, q);
    double a = two_pi * static_cast<double>(r) / static_cast<double>(q);
    return {std::cos(a), std::sin(a)};
}

cplx expi(double a) { return {std::cos(a), std::sin(a)}; }

void same_ctx(const HeisenbergElement& x, const HeisenbergElement& y) {
    if (x.ctx != y.ctx && !(x.ctx->grid() == y.ctx->grid() && x.ctx->theta() == y.ctx->theta()))
        throw GridMismatch("elements built on different contexts");
}

}  // namespace

void GridSpec::validate() const {
    if (!(L > 0)) throw ConfigError("grid half-width L must be positive");
    if (N < 16 || N % 2 != 0) throw ConfigError("grid size N must be even and >= 16");
    if (J < 1) throw ConfigError("j cutoff J must be >= 1");
    if (!(tol > 0)) throw ConfigError("tol must be positive");
    if (mode_box < 0) throw ConfigError("mode box must be >= 0");
    if (fd_order != 2 && fd_order != 4 && fd_order != 6 && fd_order != 8)
        throw ConfigError("fd order must be 2, 4, 6 or 8");
}

Context::Context(QuadraticIrrational t, GridSpec grid) : t_(std::move(t)), grid_(grid) {
    grid_.validate();
    theta_ = static_cast<double>(t_.to_long_double());
    FieldElement e = pell_unit(t_.delta).value();
    eps_ = e.to_long_double();
    max_grade_ = 16;
    for (long m = -max_grade_; m <= max_grade_; ++m) {
        UnitPowerData u = unit_power_data(m, t_);
        ModuleData md;
        md.m = m;
        md.a = to_long(u.a);
        md.b = to_long(u.b);
        md.c = to_long(u.c);
        md.d = to_long(u.d);
        md.sectors = md.c < 0 ? -md.c : md.c;
        if (md.sectors == 0) md.sectors = 1;
        md.r = pow(e, m).to_long_double();
        modules_.push_back(md);
    }
}

const ModuleData& Context::module(long m) const {
    if (m < -max_grade_ || m > max_grade_)
        throw ConfigError("grade " + std::to_string(m) + " outside supported range");
    return modules_[m + max_grade_];
}

ContextPtr make_context(const QuadraticIrrational& t, const GridSpec& grid) {
    return std::make_shared<const Context>(t, grid);
}

HeisenbergElement::HeisenbergElement(ContextPtr c, long grade) : m(grade), ctx(std::move(c)) {
    if (m == 0) throw GradeZero("grade 0 lives in the torus, not on a grid");
    samples.assign(static_cast<size_t>(sectors()) * ctx->grid().N, cplx{});
}

HeisenbergElement HeisenbergElement::from_function(ContextPtr c, long grade,
                                                   const std::function<cplx(double, long)>& f) {
    HeisenbergElement e(std::move(c), grade);
    const GridSpec& g = e.ctx->grid();
    for (long k = 0; k < e.sectors(); ++k)
        for (int i = 0; i < g.N; ++i) e.at(k, i) = f(g.x(i), k);
    return e;
}

long HeisenbergElement::sector(long k) const { return mod(k, sectors()); }

double HeisenbergElement::max_abs() const {
    double r = 0;
    for (auto& v : samples) r = std::max(r, std::abs(v));
    return r;
}

double HeisenbergElement::l2_norm() const {
    double s = 0;
    for (auto& v : samples) s += std::norm(v);
    return std::sqrt(s * ctx->grid().h());
}

HeisenbergElement& HeisenbergElement::operator+=(const HeisenbergElement& o) {
    same_ctx(*this, o);
    if (m != o.m) throw std::invalid_argument("adding elements of different grades");
    for (size_t i = 0; i < samples.size(); ++i) samples[i] += o.samples[i];
    return *this;
}

HeisenbergElement& HeisenbergElement::operator-=(const HeisenbergElement& o) {
    same_ctx(*this, o);
    if (m != o.m) throw std::invalid_argument("subtracting elements of different grades");
    for (size_t i = 0; i < samples.size(); ++i) samples[i] -= o.samples[i];
    return *this;
}

HeisenbergElement& HeisenbergElement::operator*=(cplx s) {
    for (auto& v : samples) v *= s;
    return *this;
}

Interpolant::Interpolant(const HeisenbergElement& f)
    : f_(&f), x0_(f.ctx->grid().x(0)), h_(f.ctx->grid().h()), n_(f.N()), kind_(f.ctx->grid().interp) {
    if (kind_ != Interpolation::cubic_spline) return;
    // natural cubic spline per sector, Thomas algorithm on y'' with unit spacing
    long s = f.sectors();
    second_.assign(f.samples.size(), cplx{});
    std::vector<double> cp(n_);
    std::vector<cplx> dp(n_);
    for (long k = 0; k < s; ++k) {
        const cplx* y = &f.samples[k * n_];
        cplx* m = &second_[k * n_];
        cp[0] = 0;
        dp[0] = 0;
        for (int i = 1; i < n_ - 1; ++i) {
            cplx rhs = 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]);
            double denom = 4.0 - cp[i - 1];
            cp[i] = 1.0 / denom;
            dp[i] = (rhs - dp[i - 1]) / denom;
        }
        m[n_ - 1] = 0;
        for (int i = n_ - 2; i >= 1; --i) m[i] = dp[i] - cp[i] * m[i + 1];
        m[0] = 0;
    }
}

cplx Interpolant::operator()(double x, long k) const {
    double t = (x - x0_) / h_;
    if (!(t >= 0.0) || t > n_ - 1) return {};
    long ks = f_->sector(k);
    const cplx* y = &f_->samples[ks * n_];
    int i = static_cast<int>(std::floor(t));
    if (kind_ == Interpolation::cubic_spline) {
        if (i >= n_ - 1) return y[n_ - 1];
        double b = t - i, a = 1.0 - b;
        const cplx* m = &second_[ks * n_];
        return a * y[i] + b * y[i + 1] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) / 6.0;
    }
    // 8-point Lagrange stencil i-3 .. i+4, zero outside the window
    double b = t - i;
    if (b == 0.0) return y[i];
    cplx acc = 0;
    for (int p = -3; p <= 4; ++p) {
        int idx = i + p;
        if (idx < 0 || idx >= n_) continue;
        double w = 1.0;
        for (int q = -3; q <= 4; ++q)
            if (q != p) w *= (b - q) / static_cast<double>(p - q);
        acc += w * y[idx];
    }
    return acc;
}

GradedElement::GradedElement(ContextPtr c, TorusElement b) : ctx(std::move(c)), base(std::move(b)) {
    if (base.theta != ctx->theta()) throw ThetaMismatch("torus element theta differs from context");
}

GradedElement::GradedElement(HeisenbergElement f) : ctx(f.ctx), base(f.ctx->theta()) {
    long m = f.m;
    parts.emplace(m, std::move(f));
}

std::vector<long> GradedElement::grades() const {
    std::vector<long> g;
    if (!base.empty()) g.push_back(0);
    for (auto& [m, f] : parts) g.push_back(m);
    std::sort(g.begin(), g.end());
    return g;
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
    if (!ctx) ctx = o.ctx, base = TorusElement(o.ctx->theta());
    base += o.base;
    for (auto& [m, f] : o.parts) {
        auto it = parts.find(m);
        if (it == parts.end()) parts.emplace(m, f);
        else it->second += f;
    }
    return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& o) {
    GradedElement neg = o;
    neg *= -1.0;
    return *this += neg;
}

GradedElement& GradedElement::operator*=(cplx s) {
    base *= s;
    for (auto& [m, f] : parts) f *= s;
    return *this;
}

double distance(const HeisenbergElement& x, const HeisenbergElement& y) {
    same_ctx(x, y);
    if (x.m != y.m) throw std::invalid_argument("distance between different grades");
    double r = 0;
    for (size_t i = 0; i < x.samples.size(); ++i) r = std::max(r, std::abs(x.samples[i] - y.samples[i]));
    return r;
}

double max_abs(const GradedElement& x) {
    double r = x.base.max_abs();
    for (auto& [m, f] : x.parts) r = std::max(r, f.max_abs());
    return r;
}

double distance(const GradedElement& x, const GradedElement& y) {
    GradedElement d = x;
    d -= y;
    return max_abs(d);
}

void Diagnostics::warn(const std::string& w, double tail) {
    warnings.push_back(w);
    max_tail = std::max(max_tail, tail);
}

// (U^{n1} V^{n2} . f)(x,k) = e^{2 pi i n1 (x/r - k/c)} f(x - n2/c, k - n2 a)
HeisenbergElement left_act_monomial(long n1, long n2, const HeisenbergElement& f) {
    const ModuleData& md = f.ctx->module(f.m);
    const GridSpec& g = f.ctx->grid();
    HeisenbergElement out(f.ctx, f.m);
    Interpolant in(f);
    double shift = static_cast<double>(n2) / md.c;
    double inv_r = static_cast<double>(1.0L / md.r);
    for (long k = 0; k < out.sectors(); ++k) {
        cplx kphase = root_phase(-n1 * k, md.c);
        long ks = k - n2 * md.a;
        for (int i = 0; i < g.N; ++i) {
            double x = g.x(i);
            cplx v = n2 == 0 ? f.at(k, i) : in(x - shift, ks);
            out.at(k, i) = expi(two_pi * n1 * x * inv_r) * kphase * v;
        }
    }
    return out;
}

// (f . U^{n1} V^{n2})(x,k) = e^{2 pi i n1 (x - n2 r/c - (k - n2) d/c)} f(x - n2 r/c, k - n2)
HeisenbergElement right_act_monomial(const HeisenbergElement& f, long n1, long n2) {
    const ModuleData& md = f.ctx->module(f.m);
    const GridSpec& g = f.ctx->grid();
    HeisenbergElement out(f.ctx, f.m);
    Interpolant in(f);
    double shift = static_cast<double>(static_cast<long double>(n2) * md.r / md.c);
    for (long k = 0; k < out.sectors(); ++k) {
        cplx kphase = root_phase(-n1 * (k - n2) * md.d, md.c);
        for (int i = 0; i < g.N; ++i) {
            double x = g.x(i);
            cplx v = n2 == 0 ? f.at(k, i) : in(x - shift, k - n2);
            out.at(k, i) = expi(two_pi * n1 * (x - shift)) * kphase * v;
        }
    }
    return out;
}

HeisenbergElement right_act(const HeisenbergElement& f, Gen gen) {
    switch (gen) {
        case Gen::U: return right_act_monomial(f, 1, 0);
        case Gen::V: return right_act_monomial(f, 0, 1);
        case Gen::Uinv: return right_act_monomial(f, -1, 0);
        case Gen::Vinv: return right_act_monomial(f, 0, -1);
    }
    return f;
}

HeisenbergElement left_act(Gen gen, const HeisenbergElement& f) {
    switch (gen) {
        case Gen::U: return left_act_monomial(1, 0, f);
        case Gen::V: return left_act_monomial(0, 1, f);
        case Gen::Uinv: return left_act_monomial(-1, 0, f);
        case Gen::Vinv: return left_act_monomial(0, -1, f);
    }
    return f;
}

HeisenbergElement right_act(const HeisenbergElement& f, const TorusElement& b) {
    if (b.theta != f.ctx->theta()) throw ThetaMismatch("torus element theta differs from module");
    HeisenbergElement out(f.ctx, f.m);
    for (auto& [mode, c] : b.coeffs) {
        if (c == cplx{}) continue;
        out += c * right_act_monomial(f, mode.first, mode.second);
    }
    return out;
}

HeisenbergElement left_act(const TorusElement& b, const HeisenbergElement& f) {
    if (b.theta != f.ctx->theta()) throw ThetaMismatch("torus element theta differs from module");
    HeisenbergElement out(f.ctx, f.m);
    for (auto& [mode, c] : b.coeffs) {
        if (c == cplx{}) continue;
        out += c * left_act_monomial(mode.first, mode.second, f);
    }
    return out;
}

// f*(x,k) = conj f(eps^m x, -a_m k), grade m -> -m
HeisenbergElement star_P(const HeisenbergElement& f) {
    const ModuleData& md = f.ctx->module(f.m);
    const GridSpec& g = f.ctx->grid();
    double r = static_cast<double>(md.r);
    // samples of f beyond |x| > L/r are lost by the rescaling
    double reach = g.L * r, lost = 0;
    for (long k = 0; k < f.sectors(); ++k)
        for (int i = 0; i < g.N; ++i)
            if (std::abs(g.x(i)) > reach) lost = std::max(lost, std::abs(f.at(k, i)));
    if (lost > g.tol) {
        std::ostringstream os;
        os << "star on grade " << f.m << " drops samples of size " << lost << " beyond |x| > " << reach;
        throw WindowOverflow(os.str());
    }
    HeisenbergElement out(f.ctx, -f.m);
    Interpolant in(f);
    for (long k = 0; k < out.sectors(); ++k)
        for (int i = 0; i < g.N; ++i) out.at(k, i) = std::conj(in(r * g.x(i), -md.a * k));
    return out;
}

GradedElement star_P(const GradedElement& p) {
    GradedElement out(p.ctx, star(p.base));
    for (auto& [m, f] : p.parts) out.parts.emplace(-m, star_P(f));
    return out;
}

// coefficient of U^{n1} V^{n2}: sum_k int (V^{-n2} U^{-n1} . f)(x/eps^m, k) g(x, -a_m k) dx
// n1 runs over the mode box, n2 outward from 0 until a column vanishes or the shifted
// argument leaves the window
TorusElement mul_opposite(const HeisenbergElement& f, const HeisenbergElement& g, Diagnostics* diag) {
    same_ctx(f, g);
    if (f.m != -g.m) throw std::invalid_argument("mul_opposite needs grades -m and m");
    const long m = g.m;
    const ModuleData& mg = g.ctx->module(m);
    const ModuleData& mf = f.ctx->module(-m);
    const GridSpec& grid = g.ctx->grid();
    const int N = grid.N, B = grid.mode_box;
    const double h = grid.h();
    const double rf = static_cast<double>(mf.r);  // eps^{-m}
    const long n2_max = static_cast<long>(std::ceil(std::abs(mf.c) * grid.L * (1.0 + rf))) + 1;
    Interpolant in(f);

    std::vector<std::vector<cplx>> xphase(2 * B + 1, std::vector<cplx>(N));
    for (int n1 = -B; n1 <= B; ++n1)
        for (int i = 0; i < N; ++i) xphase[n1 + B][i] = expi(-two_pi * n1 * grid.x(i));

    TorusElement out(g.ctx->theta());
    std::vector<cplx> prod(N);
    auto column = [&](long n2) {
        double shift = static_cast<double>(n2) / mf.c;
        double cshift = static_cast<double>(static_cast<long double>(n2) / (mf.c * mf.r));
        double peak = 0;
        for (long k = 0; k < mg.sectors; ++k) {
            long kf = k + n2 * mf.a;
            for (int i = 0; i < N; ++i) prod[i] = in(grid.x(i) * rf + shift, kf) * g.at(-mg.a * k, i);
            for (long n1 = -B; n1 <= B; ++n1) {
                cplx s = 0;
                const cplx* ph = xphase[n1 + B].data();
                for (int i = 0; i < N; ++i) s += ph[i] * prod[i];
                cplx c = s * h * expi(-two_pi * n1 * cshift) * root_phase(n1 * kf, mf.c);
                out.coeffs[{n1, n2}] += c;
            }
        }
        for (long n1 = -B; n1 <= B; ++n1) peak = std::max(peak, std::abs(out.coeff(n1, n2)));
        return peak;
    };
    const double floor = 1e-16 * std::max(1.0, f.max_abs() * g.max_abs());
    double top = column(0);
    for (int dir : {1, -1}) {
        int quiet = 0;
        for (long n2 = dir; std::abs(n2) <= n2_max && quiet < 3; n2 += dir) {
            double c = column(n2);
            top = std::max(top, c);
            quiet = c <= floor + 1e-14 * top ? quiet + 1 : 0;
        }
    }
    double edge = 0;
    for (auto& [mode, c] : out.coeffs)
        if (std::abs(mode.first) == B) edge = std::max(edge, std::abs(c));
    if (diag && edge > grid.tol) {
        std::ostringstream os;
        os << "degree-zero product: mode box " << B << " edge coefficient " << edge;
        diag->warn(os.str(), edge);
    }
    out.prune(1e-15);
    return out;
}

// (f.g)(x,k) = sum_j f(x/eps^n - eps^m (k/c + j/c_m), -j) g(x - tau k + j/c_n, k + a_n j),
// tau = eps^{m+n}/c - eps^n/c_n; terms with |g argument| > J are dropped
HeisenbergElement mul_generic(const HeisenbergElement& f, const HeisenbergElement& g, Diagnostics* diag) {
    same_ctx(f, g);
    const long m = f.m, n = g.m;
    if (m + n == 0) throw std::invalid_argument("mul_generic needs m + n != 0");
    const ModuleData& mm = f.ctx->module(m);
    const ModuleData& mn = f.ctx->module(n);
    const ModuleData& ms = f.ctx->module(m + n);
    const GridSpec& grid = f.ctx->grid();
    const int N = grid.N;
    const double J = grid.J;
    Interpolant inf(f), ing(g);
    const long double rm = mm.r, inv_rn = 1.0L / mn.r;
    const long double tau = ms.r / ms.c - mn.r / mn.c;
    const double step = 1.0 / std::abs(static_cast<double>(mn.c));

    HeisenbergElement out(f.ctx, m + n);
    double tail = 0;
    for (long k = 0; k < out.sectors(); ++k) {
        const long double tk = tau * k;
        long double lo = (tk - grid.L - J) * mn.c, hi = (tk + grid.L + J) * mn.c;
        if (lo > hi) std::swap(lo, hi);
        for (long j = static_cast<long>(std::floor(lo)); j <= static_cast<long>(std::ceil(hi)); ++j) {
            const long double jn = static_cast<long double>(j) / mn.c;
            double sf = static_cast<double>(-rm * (static_cast<long double>(k) / ms.c + static_cast<long double>(j) / mm.c));
            double sg = static_cast<double>(jn - tk);
            long kf = -j, kg = k + mn.a * j;
            for (int i = 0; i < N; ++i) {
                double x = grid.x(i), z = x + sg;
                if (std::abs(z) > J) continue;
                cplx t = inf(static_cast<double>(x * inv_rn) + sf, kf) * ing(z, kg);
                out.at(k, i) += t;
                if (std::abs(z) > J - step) tail = std::max(tail, std::abs(t));
            }
        }
    }
    if (diag && tail > grid.tol) {
        std::ostringstream os;
        os << "generic product of grades " << m << ", " << n << ": cutoff |g argument| <= " << J << " tail term " << tail;
        diag->warn(os.str(), tail);
    }
    return out;
}

GradedElement mul_P(const GradedElement& p, const GradedElement& q, Diagnostics* diag) {
    const ContextPtr& ctx = p.ctx ? p.ctx : q.ctx;
    GradedElement out(ctx);
    out.base = p.base * q.base;
    auto add = [&](HeisenbergElement e) {
        long m = e.m;
        auto it = out.parts.find(m);
        if (it == out.parts.end()) out.parts.emplace(m, std::move(e));
        else it->second += e;
    };
    if (!p.base.empty())
        for (auto& [n, g] : q.parts) add(left_act(p.base, g));
    if (!q.base.empty())
        for (auto& [m, f] : p.parts) add(right_act(f, q.base));
    for (auto& [m, f] : p.parts)
        for (auto& [n, g] : q.parts) {
            if (m + n == 0) out.base += mul_opposite(f, g, diag);
            else add(mul_generic(f, g, diag));
        }
    return out;
}

GradedElement sigma(const GradedElement& p) {
    GradedElement out = p;
    for (auto& [m, f] : out.parts) f *= static_cast<double>(1.0L / p.ctx->eps_pow(m));
    return out;
}

HeisenbergElement partial(int j, const HeisenbergElement& f) {
    const GridSpec& g = f.ctx->grid();
    const ModuleData& md = f.ctx->module(f.m);
    HeisenbergElement out(f.ctx, f.m);
    if (j == 2) {
        double s = static_cast<double>(two_pi * md.c / md.r);
        for (long k = 0; k < f.sectors(); ++k)
            for (int i = 0; i < g.N; ++i) out.at(k, i) = s * g.x(i) * f.at(k, i);
        return out;
    }
    if (j != 1) throw std::invalid_argument("partial index must be 1 or 2");
    static const std::vector<double> w2{0.5}, w4{2.0 / 3, -1.0 / 12}, w6{3.0 / 4, -3.0 / 20, 1.0 / 60},
        w8{4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
    const std::vector<double>& w =
        g.fd_order == 2 ? w2 : g.fd_order == 4 ? w4 : g.fd_order == 6 ? w6 : w8;
    const cplx scale = cplx(0, -1) / g.h();
    for (long k = 0; k < f.sectors(); ++k)
        for (int i = 0; i < g.N; ++i) {
            cplx s = 0;
            for (size_t p = 0; p < w.size(); ++p) {
                int o = static_cast<int>(p) + 1;
                cplx up = i + o < g.N ? f.at(k, i + o) : cplx{};
                cplx dn = i - o >= 0 ? f.at(k, i - o) : cplx{};
                s += w[p] * (up - dn);
            }
            out.at(k, i) = scale * s;
        }
    return out;
}

GradedElement partial(int j, const GradedElement& p) {
    GradedElement out(p.ctx, delta(j, p.base));
    for (auto& [m, f] : p.parts) out.parts.emplace(m, partial(j, f));
    return out;
}

HeisenbergElement make_packet(ContextPtr c, long m, const Packet& p) {
    return HeisenbergElement::from_function(std::move(c), m, [&](double x, long k) {
        double y = x - p.center;
        cplx w = k < static_cast<long>(p.sector_weight.size()) ? p.sector_weight[k] : cplx(1.0);
        return w * (1.0 + p.poly1 * y + p.poly2 * y * y) * std::exp(-y * y / (2 * p.width * p.width)) *
               expi(p.freq * x);
    });
}

Packet random_packet(std::mt19937_64& rng, long sectors) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Packet p;
    p.center = 0.3 * u(rng);
    p.width = 0.65 + 0.1 * u(rng);
    p.freq = 0.5 * u(rng);
    p.poly1 = cplx(0.2 * u(rng), 0.2 * u(rng));
    p.poly2 = cplx(0.05 * u(rng), 0.05 * u(rng));
    for (long k = 0; k < sectors; ++k) p.sector_weight.emplace_back(1.0 + 0.3 * u(rng), 0.3 * u(rng));
    return p;
}

TorusElement random_torus(std::mt19937_64& rng, double theta, int terms, long box) {
    std::uniform_int_distribution<long> idx(-box, box);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TorusElement x(theta);
    for (int t = 0; t < terms; ++t) x.add_term(idx(rng), idx(rng), {u(rng), u(rng)});
    return x;
}

}  // namespace qmono
