/**
 * @file bounds.cpp
 * @brief Ratio tables for the auxiliary Bessel and Kummer estimates.
 */
#include "magres/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "magres/error.hpp"
#include "magres/quadrature.hpp"
#include "magres/specfun.hpp"

namespace magres::bounds {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kNodes = 16;

// ---------------------------------------------------------------------------
// Cylinder functions and lambda-dependent factors
// ---------------------------------------------------------------------------

enum class Cyl { J, Y, JNeg };

struct CylValue {
    double L, D;  // value and z-derivative
};

CylValue cylinder(Cyl kind, double nu, double z) {
    const auto b = specfun::bessel_jy(nu, z);
    switch (kind) {
        case Cyl::J: return {b.j, b.jp};
        case Cyl::Y: return {b.y, b.yp};
        case Cyl::JNeg: {
            const double c = std::cos(nu * kPi), s = std::sin(nu * kPi);
            return {c * b.j - s * b.y, c * b.jp - s * b.yp};
        }
    }
    return {0.0, 0.0};
}

enum class Shape {
    Plain,  // lambda^p L(sqrt(lambda) r)
    Deriv,  // lambda^p d/dr L(sqrt(lambda) r)
    OverR   // lambda^p (nu / r) L(sqrt(lambda) r)
};

struct Factor {
    Cyl kind;
    double nu;
    double power;
    Shape shape;
};

// A factor g and its lambda-derivative written as x0 L + x1 L' and y0 L + y1 L'.
struct Coeffs {
    double x0, x1, y0, y1;
};

Coeffs factor_coeffs(const Factor& f, double lambda, double r) {
    const double sl = std::sqrt(lambda);
    const double z = sl * r;
    const double lp = std::pow(lambda, f.power);
    switch (f.shape) {
        case Shape::Plain: return {lp, 0.0, f.power * lp / lambda, lp * r / (2.0 * sl)};
        case Shape::OverR: {
            const double q = f.nu / r;
            return {q * lp, 0.0, q * f.power * lp / lambda, q * lp * r / (2.0 * sl)};
        }
        case Shape::Deriv: {
            // g = lambda^{p + 1/2} L'(z); L'' = -L'/z - (1 - nu^2/z^2) L.
            const double k = lp * r / 2.0;
            return {0.0, lp * sl, -k * (1.0 - f.nu * f.nu / (z * z)), (f.power + 0.5) * lp / sl - k / z};
        }
    }
    return {0, 0, 0, 0};
}

// Product (u0 L + u1 L')(v0 L + v1 L'), exact or oscillation-averaged.
double product(double u0, double u1, double v0, double v1, const CylValue* c, double z) {
    if (c) return (u0 * c->L + u1 * c->D) * (v0 * c->L + v1 * c->D);
    return (u0 * v0 + u1 * v1) / (kPi * z) - (u0 * v1 + u1 * v0) / (2.0 * kPi * z * z);
}

// The three product pairs of |d_lambda (a(r) b(r'))|^2 = sum_k P_k(r) Q_k(r').
std::array<double, 3> outer_terms(const Factor& a, double lambda, double r, bool averaged) {
    const auto k = factor_coeffs(a, lambda, r);
    const double z = std::sqrt(lambda) * r;
    CylValue c{};
    const CylValue* cp = nullptr;
    if (!averaged) {
        c = cylinder(a.kind, a.nu, z);
        cp = &c;
    }
    return {product(k.y0, k.y1, k.y0, k.y1, cp, z), 2.0 * product(k.y0, k.y1, k.x0, k.x1, cp, z),
            product(k.x0, k.x1, k.x0, k.x1, cp, z)};
}

std::array<double, 3> inner_terms(const Factor& b, double lambda, double r, bool averaged) {
    const auto k = factor_coeffs(b, lambda, r);
    const double z = std::sqrt(lambda) * r;
    CylValue c{};
    const CylValue* cp = nullptr;
    if (!averaged) {
        c = cylinder(b.kind, b.nu, z);
        cp = &c;
    }
    return {product(k.x0, k.x1, k.x0, k.x1, cp, z), product(k.x0, k.x1, k.y0, k.y1, cp, z),
            product(k.y0, k.y1, k.y0, k.y1, cp, z)};
}

// ---------------------------------------------------------------------------
// Panel grid on (1, inf)
// ---------------------------------------------------------------------------

struct Panel {
    double a, b;
    bool averaged;
};

struct PanelGrid {
    std::vector<Panel> panels;
    std::vector<double> x, w;  // reference rule on [-1, 1]
};

PanelGrid make_grid(double lambda, double tail_factor) {
    PanelGrid g;
    const auto ref = quad::gauss_legendre(kNodes);
    g.x = ref.x;
    g.w = ref.w;
    const double sl = std::sqrt(lambda);
    const double e1 = std::max(2.0, 2.0 / sl);
    double a = 1.0;
    while (a < e1) {
        const double b = std::min(2.0 * a, e1);
        g.panels.push_back({a, b, false});
        a = b;
    }
    const double period = kPi / sl;
    const double R = std::max(tail_factor / sl, e1 + period);
    while (a < R) {
        const double b = std::min(a + period, R);
        g.panels.push_back({a, b, false});
        a = b;
    }
    for (int k = 0; k < 40; ++k) {
        g.panels.push_back({a, 2.0 * a, true});
        a *= 2.0;
    }
    return g;
}

// S(i, j) = int_{x_i}^{1} l_j(x) dx for the Lagrange basis on the reference nodes.
const std::vector<double>& cumulative_matrix() {
    static const std::vector<double> S = [] {
        const auto ref = quad::gauss_legendre(kNodes);
        std::vector<double> out(kNodes * kNodes, 0.0);
        for (int i = 0; i < kNodes; ++i) {
            const auto sub = quad::gauss_legendre(kNodes, ref.x[i], 1.0);
            for (int j = 0; j < kNodes; ++j) {
                double sum = 0.0;
                for (int q = 0; q < kNodes; ++q) {
                    double l = 1.0;
                    for (int k = 0; k < kNodes; ++k)
                        if (k != j) l *= (sub.x[q] - ref.x[k]) / (ref.x[j] - ref.x[k]);
                    sum += sub.w[q] * l;
                }
                out[i * kNodes + j] = sum;
            }
        }
        return out;
    }();
    return S;
}

// Sum of the terms beyond the last panel, assuming geometric decay of the
// panel sums.
double geometric_rest(double prev, double last) {
    if (last == 0.0) return 0.0;
    if (prev == 0.0) throw QuadratureError("bound_check: tail extrapolation from a vanishing panel");
    const double q = last / prev;
    if (!(q > 0.0 && q < 0.95)) {
        if (std::abs(last) < 1e-14 * std::abs(prev)) return 0.0;
        throw QuadratureError("bound_check: panel sums do not decay geometrically");
    }
    return last * q / (1.0 - q);
}

double weight(double r, double s) { return std::pow(1.0 + r, -2.0 * s) * r; }

// int_1^inf rho^{-2s} r P(r) dr for the chosen outer term(s).
double single_integral(const Factor& a, double lambda, double s, double tail_factor,
                       const std::function<double(const std::array<double, 3>&)>& pick) {
    const auto g = make_grid(lambda, tail_factor);
    double total = 0.0, prev = 0.0, last = 0.0;
    for (const auto& p : g.panels) {
        const double h = 0.5 * (p.b - p.a), c = 0.5 * (p.a + p.b);
        double sum = 0.0;
        for (int i = 0; i < kNodes; ++i) {
            const double r = c + h * g.x[i];
            sum += g.w[i] * h * weight(r, s) * pick(outer_terms(a, lambda, r, p.averaged));
        }
        total += sum;
        prev = last;
        last = sum;
    }
    return total + geometric_rest(prev, last);
}

// int_1^inf int_r^inf |d_lambda (a(r) b(r'))|^2 rho^{-2s}(r) rho^{-2s}(r') r r' dr' dr.
double triangle_integral(const Factor& a, const Factor& b, double lambda, double s, double tail_factor) {
    const auto g = make_grid(lambda, tail_factor);
    const auto& S = cumulative_matrix();
    const std::size_t np = g.panels.size();
    std::vector<std::array<double, 3>> P(np * kNodes), Q(np * kNodes);
    std::vector<double> rr(np * kNodes), hh(np);
    std::vector<std::array<double, 3>> panel_q(np);
    for (std::size_t p = 0; p < np; ++p) {
        const auto& pn = g.panels[p];
        const double h = 0.5 * (pn.b - pn.a), c = 0.5 * (pn.a + pn.b);
        hh[p] = h;
        panel_q[p] = {0.0, 0.0, 0.0};
        for (int i = 0; i < kNodes; ++i) {
            const double r = c + h * g.x[i];
            const double wr = weight(r, s);
            const std::size_t n = p * kNodes + i;
            rr[n] = r;
            P[n] = outer_terms(a, lambda, r, pn.averaged);
            Q[n] = inner_terms(b, lambda, r, pn.averaged);
            for (auto& v : Q[n]) v *= wr;
            for (int k = 0; k < 3; ++k) panel_q[p][k] += g.w[i] * h * Q[n][k];
        }
    }
    // Suffix sums of the inner integrals, including the extrapolated rest.
    std::vector<std::array<double, 3>> after(np);
    std::array<double, 3> acc{};
    for (int k = 0; k < 3; ++k) acc[k] = geometric_rest(panel_q[np - 2][k], panel_q[np - 1][k]);
    for (std::size_t p = np; p-- > 0;) {
        after[p] = acc;
        for (int k = 0; k < 3; ++k) acc[k] += panel_q[p][k];
    }
    double total = 0.0, prev = 0.0, last = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
        double sum = 0.0;
        for (int i = 0; i < kNodes; ++i) {
            const std::size_t n = p * kNodes + i;
            double val = 0.0;
            for (int k = 0; k < 3; ++k) {
                double inner = after[p][k];
                for (int j = 0; j < kNodes; ++j) inner += hh[p] * S[i * kNodes + j] * Q[p * kNodes + j][k];
                val += P[n][k] * inner;
            }
            sum += g.w[i] * hh[p] * weight(rr[n], s) * val;
        }
        total += sum;
        prev = last;
        last = sum;
    }
    return total + geometric_rest(prev, last);
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

void add_row(BoundReport& rep, std::string label, int level, double level_value, double lhs, double rhs) {
    rep.rows.push_back({std::move(label), level, level_value, lhs, rhs, lhs / rhs});
}

void finalize(BoundReport& rep, double step_tolerance) {
    int levels = 0;
    for (const auto& r : rep.rows) levels = std::max(levels, r.level + 1);
    if (static_cast<int>(rep.level_coordinate.size()) != levels)
        throw DomainError("bound_check: level coordinates do not match the rows");
    rep.level_max.assign(levels, -std::numeric_limits<double>::infinity());
    rep.finite = true;
    rep.within_constant = true;
    const BoundRow* worst = nullptr;
    for (const auto& r : rep.rows) {
        if (!std::isfinite(r.ratio)) rep.finite = false;
        rep.level_max[r.level] = std::max(rep.level_max[r.level], r.ratio);
        if (r.ratio > 1.0 + 1e-12) rep.within_constant = false;
        if (!worst || r.ratio > worst->ratio) worst = &r;
    }
    rep.growth_rate.clear();
    for (int k = 1; k < levels; ++k)
        rep.growth_rate.push_back(std::log(rep.level_max[k] / rep.level_max[k - 1]) /
                                  (rep.level_coordinate[k] - rep.level_coordinate[k - 1]));
    rep.stable = rep.finite;
    const std::size_t ng = rep.growth_rate.size();
    for (std::size_t k = ng >= 2 ? ng - 2 : 0; k < ng; ++k)
        if (!(rep.growth_rate[k] <= step_tolerance)) rep.stable = false;
    rep.passed = rep.finite && (rep.exact ? rep.within_constant : rep.stable);
    std::ostringstream os;
    if (worst) os << "max ratio " << fmt_num(worst->ratio) << " at " << worst->label << ", level " << worst->level;
    if (ng > 0) os << "; final growth rate " << fmt_num(rep.growth_rate.back());
    if (rep.exact && !rep.within_constant) os << "; explicit constant exceeded";
    rep.note = os.str();
}

std::vector<double> log_coordinates(const std::vector<double>& values, bool inverse) {
    std::vector<double> out;
    for (double v : values) out.push_back(inverse ? -std::log(v) : std::log(v));
    return out;
}

std::vector<double> nus_or(const BoundConfig& cfg, std::vector<double> dflt) {
    return cfg.nus.empty() ? dflt : cfg.nus;
}

std::string label_nu(const std::string& name, double nu) { return name + " nu=" + fmt_num(nu); }

// ---------------------------------------------------------------------------
// Bound checks
// ---------------------------------------------------------------------------

BoundReport check_jj(const BoundConfig& cfg) {
    BoundReport rep;
    rep.lemma_id = "lem-jj";
    rep.level_parameter = "lambda";
    rep.level_coordinate = log_coordinates(cfg.lambdas, true);
    for (double nu : nus_or(cfg, {0.0, 0.3, 1.0, 2.0, 3.0, 5.0})) {
        const Factor a{Cyl::J, nu, 0.0, Shape::Plain};
        for (std::size_t l = 0; l < cfg.lambdas.size(); ++l) {
            const double lam = cfg.lambdas[l];
            const double lhs = single_integral(a, lam, cfg.s, cfg.tail_factor,
                                               [](const std::array<double, 3>& t) { return t[2]; });
            const double rhs = (std::pow(lam, nu) + std::pow(lam, 0.5 + cfg.eps)) / (1.0 + nu * nu);
            add_row(rep, label_nu("J^2", nu), static_cast<int>(l), lam, lhs, rhs);
        }
    }
    return rep;
}

struct TriangleForm {
    std::string name;
    Cyl ka;
    double pa;  // multiple of nu in the lambda power carried by the outer factor
    Cyl kb;
    int rhs_kind;  // 1: lambda^{c-1-2nu}(1+nu)^{-2}; 2: 2^{4nu} Gamma(nu)^4; 3: lambda^{eps-1}(1+nu)^{-1}
};

double triangle_rhs(int kind, double lam, double nu, double eps, double c1) {
    switch (kind) {
        case 1: return std::pow(lam, c1 - 1.0 - 2.0 * nu) / ((1.0 + nu) * (1.0 + nu));
        case 2: return std::pow(2.0, 4.0 * nu) * std::pow(specfun::gamma(nu), 4);
        default: return std::pow(lam, eps - 1.0) / (1.0 + nu);
    }
}

const std::vector<TriangleForm>& triangle_forms() {
    static const std::vector<TriangleForm> f{
        {"lambda^-nu J J", Cyl::J, -1.0, Cyl::J, 1},
        {"lambda^nu J_-nu J_-nu", Cyl::JNeg, 1.0, Cyl::JNeg, 2},
        {"lambda^nu Y Y", Cyl::Y, 1.0, Cyl::Y, 2},
        {"J J_-nu", Cyl::J, 0.0, Cyl::JNeg, 3},
        {"J_-nu J", Cyl::JNeg, 0.0, Cyl::J, 3},
        {"J Y", Cyl::J, 0.0, Cyl::Y, 3},
        {"Y J", Cyl::Y, 0.0, Cyl::J, 3},
    };
    return f;
}

BoundReport check_int_jj(const BoundConfig& cfg, bool primed) {
    BoundReport rep;
    rep.lemma_id = primed ? "lem-int-JJ'" : "lem-int-JJ";
    rep.level_parameter = "lambda";
    rep.level_coordinate = log_coordinates(cfg.lambdas, true);
    const std::vector<Shape> shapes = primed ? std::vector<Shape>{Shape::Deriv, Shape::OverR}
                                             : std::vector<Shape>{Shape::Plain};
    for (double nu : nus_or(cfg, {0.3, 0.7, 1.3, 3.0})) {
        for (const auto& form : triangle_forms()) {
            // The derivative variant states no Y replacement.
            if (primed && (form.ka == Cyl::Y || form.kb == Cyl::Y)) continue;
            for (Shape sh : shapes) {
                const Factor a{form.ka, nu, form.pa * nu, Shape::Plain};
                const Factor b{form.kb, nu, 0.0, sh};
                std::string name = form.name;
                if (primed) name += sh == Shape::Deriv ? " (n=1)" : " (n=2)";
                for (std::size_t l = 0; l < cfg.lambdas.size(); ++l) {
                    const double lam = cfg.lambdas[l];
                    const double lhs = triangle_integral(a, b, lam, cfg.s, cfg.tail_factor);
                    const double c1 = primed ? cfg.eps : 2.0 * cfg.eps;
                    add_row(rep, label_nu(name, nu), static_cast<int>(l), lam, lhs,
                            triangle_rhs(form.rhs_kind, lam, nu, cfg.eps, c1));
                }
            }
        }
    }
    return rep;
}

BoundReport check_mixed(const BoundConfig& cfg) {
    BoundReport rep;
    rep.lemma_id = "lem-mixed";
    rep.level_parameter = "lambda";
    rep.level_coordinate = log_coordinates(cfg.lambdas, true);
    auto d2 = [](const std::array<double, 3>& t) { return t[0]; };
    for (double nu : nus_or(cfg, {1.3, 1.7, 2.3, 3.0})) {
        const std::vector<std::pair<std::string, Cyl>> first{{"lambda^(nu/2) J_-nu", Cyl::JNeg},
                                                             {"lambda^(nu/2) Y", Cyl::Y}};
        for (std::size_t l = 0; l < cfg.lambdas.size(); ++l) {
            const double lam = cfg.lambdas[l];
            for (const auto& [name, kind] : first) {
                const Factor a{kind, nu, 0.5 * nu, Shape::Plain};
                const double lhs = single_integral(a, lam, cfg.s, cfg.tail_factor, d2);
                const double g = specfun::gamma(nu - 1.0);
                add_row(rep, label_nu(name, nu), static_cast<int>(l), lam, lhs,
                        std::pow(lam, cfg.eps) * std::pow(4.0, nu) * g * g);
            }
            const Factor a{Cyl::J, nu, 0.5 * nu, Shape::Plain};
            const double lhs = single_integral(a, lam, cfg.s, cfg.tail_factor, d2);
            add_row(rep, label_nu("lambda^(nu/2) J", nu), static_cast<int>(l), lam, lhs,
                    std::pow(lam, nu - 1.5 + cfg.eps));
        }
    }
    return rep;
}

BoundReport check_u() {
    BoundReport rep;
    rep.lemma_id = "lem-U";
    rep.level_parameter = "z";
    rep.exact = true;
    const std::vector<double> zs{0.05, 0.5, 2.0, 10.0};
    rep.level_coordinate = log_coordinates(zs, false);
    for (std::size_t l = 0; l < zs.size(); ++l) {
        const double z = zs[l];
        for (double a : {0.3, 0.7, 1.0, 2.5, 6.0}) {
            const double ga = specfun::gamma(a);
            for (double b : {1.2, 2.0, 4.5}) {
                const double lhs = ga * std::abs(specfun::kummer_u(a, b, z).real());
                const double env = std::exp(z) * std::pow(z, 1.0 - b) * specfun::gamma(b - 1.0);
                const double rhs = a >= 1.0 ? env : std::pow(2.0, b - a - 1.0) / a + std::pow(2.0, 1.0 - a) * env;
                add_row(rep, "Gamma(a)|U| a=" + fmt_num(a) + " b=" + fmt_num(b), static_cast<int>(l), z, lhs, rhs);
            }
            for (double b : {0.5, 1.2, 2.0, 4.5}) {
                const double lhs = ga * a * std::abs(specfun::kummer_u(a + 1.0, b + 1.0, z).real());
                const double rhs = specfun::gamma(b) * std::exp(z) * std::pow(z, -b);
                add_row(rep, "Gamma(a)|U'| a=" + fmt_num(a) + " b=" + fmt_num(b), static_cast<int>(l), z, lhs, rhs);
            }
        }
    }
    return rep;
}

BoundReport check_m() {
    BoundReport rep;
    rep.lemma_id = "lem-M";
    rep.level_parameter = "z";
    rep.exact = true;
    const std::vector<double> zs{0.1, 1.0, 3.0};
    rep.level_coordinate = log_coordinates(zs, false);
    for (std::size_t l = 0; l < zs.size(); ++l) {
        const double z = zs[l];
        for (double alpha : {0.3, 1.7, 2.3}) {
            for (double frac : {0.05, 0.4, 0.75}) {
                const double kappa = alpha * std::sqrt(1.0 - frac);
                for (int m = -6; m <= 6; ++m) {
                    for (int j = 0; j <= 1; ++j) {
                        const double a = 0.5 + j + std::abs(m) + m * alpha / kappa;
                        const double b = 1.0 + j + 2.0 * std::abs(m);
                        const double lhs = std::abs(specfun::kummer_m(a, b, z).value);
                        add_row(rep,
                                "|M| alpha=" + fmt_num(alpha) + " lambda/alpha^2=" + fmt_num(frac) +
                                    " m=" + std::to_string(m) + " j=" + std::to_string(j),
                                static_cast<int>(l), z, lhs, std::exp(2.0 * z));
                    }
                }
            }
        }
    }
    return rep;
}

BoundReport check_der_m() {
    BoundReport rep;
    rep.lemma_id = "lem-der-m";
    rep.level_parameter = "|a|";
    const std::vector<double> amps{0.5, 2.0, 8.0, 32.0};
    rep.level_coordinate = log_coordinates(amps, false);
    for (std::size_t l = 0; l < amps.size(); ++l) {
        for (double sign : {1.0, -1.0}) {
            const double a = sign * amps[l];
            for (double b : {0.5, 1.0, 3.0}) {
                for (double z : {0.1, 1.0, 5.0}) {
                    const double h = 1e-10;
                    const double lhs = std::abs(specfun::kummer_m({a, h}, b, z).value.imag()) / h;
                    const double rhs = specfun::kummer_m(std::abs(a), b, 2.0 * z).real() / (1.0 + std::abs(a));
                    add_row(rep, "|dM/da| a=" + fmt_num(a) + " b=" + fmt_num(b) + " z=" + fmt_num(z),
                            static_cast<int>(l), std::abs(a), lhs, rhs);
                }
            }
        }
    }
    return rep;
}

BoundReport check_der_u() {
    BoundReport rep;
    rep.lemma_id = "lem-der-u";
    rep.level_parameter = "z";
    const std::vector<double> zs{2.0, 0.5, 0.1, 0.02};
    rep.level_coordinate = log_coordinates(zs, true);
    for (std::size_t l = 0; l < zs.size(); ++l) {
        const double z = zs[l];
        for (double a : {0.2, 0.6, 1.0, 3.0, 8.0}) {
            for (double b : {1.5, 2.5, 4.0}) {
                auto gu = [&](double x) { return specfun::gamma(x) * specfun::kummer_u(x, b, z).real(); };
                const double h = 1e-3 * a;
                const double lhs =
                    std::abs((-gu(a + 2 * h) + 8 * gu(a + h) - 8 * gu(a - h) + gu(a - 2 * h)) / (12.0 * h));
                const double rhs =
                    std::pow(2.0, b - a - 1.0) + std::exp(z) * std::pow(z, 1.0 - b) * specfun::gamma(b - 1.0);
                add_row(rep, "|d/da Gamma(a)U| a=" + fmt_num(a) + " b=" + fmt_num(b), static_cast<int>(l), z, lhs,
                        rhs);
            }
        }
    }
    return rep;
}

BoundReport check_product() {
    BoundReport rep;
    rep.lemma_id = "lem-product";
    rep.level_parameter = "nu";
    const std::vector<double> nus{1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
    rep.level_coordinate = log_coordinates(nus, false);
    constexpr int kSamples = 2000;
    for (std::size_t l = 0; l < nus.size(); ++l) {
        const double nu = nus[l];
        for (int j = 0; j <= 2; ++j) {
            double sup = 0.0;
            for (int i = 0; i <= kSamples; ++i) {
                const double t = 1.0 + (nu + j - 1.0) * i / kSamples;
                const auto b0 = specfun::bessel_jy(nu, t);
                const auto bj = specfun::bessel_jy(nu + j, t);
                sup = std::max(sup, b0.j * b0.j + std::abs(bj.j * b0.y) + std::abs(b0.j * bj.y));
            }
            add_row(rep, "sup product j=" + std::to_string(j), static_cast<int>(l), nu, sup, std::pow(nu, -2.0 / 3.0));
        }
    }
    return rep;
}

BoundReport check_jy0() {
    BoundReport rep;
    rep.lemma_id = "lem-jy0";
    rep.level_parameter = "|log10 z|";
    constexpr int kPerDecade = 8;
    for (int k = 0; k < 4; ++k) rep.level_coordinate.push_back(k * std::log(10.0));
    for (int d = -4; d < 4; ++d) {
        const int level = d >= 0 ? d : -d - 1;
        for (int i = 0; i < kPerDecade; ++i) {
            const double z = std::pow(10.0, d + (i + 0.5) / kPerDecade);
            const auto b = specfun::bessel_jy(0.0, z);
            const double m2 = std::min(z * z, 1.0);
            const double m1 = std::min(z, std::sqrt(z));
            add_row(rep, "|J0-1|", level, z, std::abs(b.j - 1.0), m2);
            add_row(rep, "|Y0-(2/pi)(log(z/2)+gamma)|", level, z,
                    std::abs(b.y - 2.0 / kPi * (std::log(z / 2.0) + specfun::kEulerGamma)),
                    (std::abs(std::log(z)) + 1.0) * m2);
            add_row(rep, "|J0'|", level, z, std::abs(b.jp), m1);
            add_row(rep, "|Y0'-2/(pi z)|", level, z, std::abs(b.yp - 2.0 / (kPi * z)), m1);
        }
    }
    return rep;
}

BoundReport check_ik() {
    BoundReport rep;
    rep.lemma_id = "lem-ik";
    rep.level_parameter = "nu";
    rep.exact = true;
    const std::vector<double> nus{0.3, 0.7, 1.7, 4.0, 10.0};
    rep.level_coordinate = log_coordinates(nus, false);
    for (std::size_t l = 0; l < nus.size(); ++l) {
        const double nu = nus[l];
        for (double z : {0.01, 0.3, 3.1, 20.0, 100.0}) {
            const double k = specfun::bessel_ik(nu, z).k;
            for (int j = 0; j <= 1; ++j) {
                const double i = specfun::bessel_ik(nu + j, z).i;
                add_row(rep, "I_{nu+" + std::to_string(j) + "} K_nu z=" + fmt_num(z), static_cast<int>(l), nu, i * k,
                        1.0 / (2.0 * nu));
            }
        }
    }
    return rep;
}

}  // namespace

const std::vector<std::string>& bound_lemma_ids() {
    static const std::vector<std::string> ids{"lem-jj",  "lem-int-JJ", "lem-int-JJ'", "lem-mixed",
                                              "lem-U",   "lem-M",      "lem-der-m",   "lem-der-u",
                                              "lem-product", "lem-jy0", "lem-ik"};
    return ids;
}

BoundReport bound_check(const std::string& id, const BoundConfig& cfg) {
    if (!(cfg.s > 1.5 + cfg.eps) || !(cfg.eps > 0.0 && cfg.eps < 1.0))
        throw DomainError("bound_check: requires s > 3/2 + eps with 0 < eps < 1");
    for (double lam : cfg.lambdas)
        if (!(lam > 0.0 && lam < 1.0)) throw DomainError("bound_check: lambdas must lie in (0, 1)");
    BoundReport rep;
    if (id == "lem-jj") rep = check_jj(cfg);
    else if (id == "lem-int-JJ") rep = check_int_jj(cfg, false);
    else if (id == "lem-int-JJ'") rep = check_int_jj(cfg, true);
    else if (id == "lem-mixed") rep = check_mixed(cfg);
    else if (id == "lem-U") rep = check_u();
    else if (id == "lem-M") rep = check_m();
    else if (id == "lem-der-m") rep = check_der_m();
    else if (id == "lem-der-u") rep = check_der_u();
    else if (id == "lem-product") rep = check_product();
    else if (id == "lem-jy0") rep = check_jy0();
    else if (id == "lem-ik") rep = check_ik();
    else throw DomainError("bound_check: unknown lemma id " + id);
    finalize(rep, cfg.step_tolerance);
    return rep;
}

}  // namespace magres::bounds
