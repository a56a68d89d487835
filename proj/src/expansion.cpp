/**
 * @file expansion.cpp
 * @brief Weighted norms, threshold fits, Nystrom perturbed coefficients and
 *        the Hardy-ratio probe.
 */
#include "magres/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "magres/error.hpp"
#include "magres/quadrature.hpp"

namespace magres::expansion {

namespace {

constexpr double kPi = std::numbers::pi;
using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Mat to_mat(const std::vector<cplx>& v, std::size_t n) {
    return Eigen::Map<const Mat>(v.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

std::vector<cplx> from_mat(const Mat& m) { return std::vector<cplx>(m.data(), m.data() + m.size()); }

// rho^{-s} sqrt(r w): the diagonal that maps grid kernels to L^2 matrices.
std::vector<double> hs_weights(const RadialGrid& g, double s) {
    std::vector<double> om(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) om[i] = std::pow(1.0 + g.r[i], -s) * std::sqrt(g.r[i] * g.w[i]);
    return om;
}

// Rank-one factor h of g1 = c h(r) h(s) with c = prefactor / (2 mu^2).
struct RankOne {
    cplx c;
    std::vector<double> h;
};

RankOne g1_rank_one(const refop::FluxParams& fp, const std::vector<double>& r) {
    const refop::ThresholdChannel ch(fp.alpha, fp.k_star);
    const auto& k = ch.constants();
    const double mu = fp.mu;
    const double den = k.ap + mu * k.a;
    const double rho = (k.ap - mu * k.a) / den;
    RankOne out{refop::g1_prefactor(mu) / (2.0 * mu * mu), std::vector<double>(r.size())};
    for (std::size_t i = 0; i < r.size(); ++i)
        out.h[i] = r[i] <= 1.0 ? 2.0 * mu * ch.v(r[i]) / den : std::pow(r[i], mu) - rho * std::pow(r[i], -mu);
    return out;
}

// k1 = 2 q(r) q(s) for the integer channel.
std::vector<double> k1_factor(int alpha, const std::vector<double>& r) {
    const refop::ThresholdChannel ch(alpha, -alpha);
    const auto& k = ch.constants();
    std::vector<double> q(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        q[i] = r[i] <= 1.0 ? ch.v(r[i]) / k.ap : k.a / k.ap + std::log(r[i]);
    return q;
}

}  // namespace

RadialGrid radial_grid(int n, double r_min, double r_max) {
    if (!(r_min > 0.0 && r_min < 1.0 && r_max > 1.0) || n < 4)
        throw DomainError("radial_grid: need 0 < r_min < 1 < r_max and n >= 4");
    const double l_in = -std::log(r_min), l_out = std::log(r_max);
    const int n_in = std::clamp(static_cast<int>(std::lround(n * l_in / (l_in + l_out))), 2, n - 2);
    RadialGrid g;
    g.r_min = r_min;
    g.r_max = r_max;
    auto add = [&](int k, double t0, double t1) {
        const auto rule = quad::gauss_legendre(k, t0, t1);
        for (int i = 0; i < k; ++i) {
            const double r = std::exp(rule.x[i]);
            g.r.push_back(r);
            g.w.push_back(rule.w[i] * r);
        }
    };
    add(n_in, std::log(r_min), 0.0);
    add(n - n_in, 0.0, std::log(r_max));
    return g;
}

double grid_exactness(const RadialGrid& grid, double nu, double s) {
    auto f = [&](double r) { return std::pow(r, 1.0 + 2.0 * nu) * std::pow(1.0 + r, -2.0 * s); };
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) sum += grid.w[i] * f(grid.r[i]);
    quad::AdaptiveOptions o;
    o.abs_tol = 1e-15;
    o.rel_tol = 1e-12;
    const double ref = quad::integrate(f, std::vector<double>{grid.r_min, 1.0, grid.r_max}, o).value;
    return std::abs(sum - ref) / std::abs(ref);
}

std::string to_string(NormMethod m) {
    return m == NormMethod::HilbertSchmidt ? "hilbert-schmidt" : "schur-holmgren-hybrid";
}

double weighted_norm(const std::vector<cplx>& K, const RadialGrid& grid, double s, NormMethod method) {
    const std::size_t n = grid.size();
    if (K.size() != n * n) throw DomainError("weighted_norm: kernel size does not match the grid");
    const auto om = hs_weights(grid, s);
    if (method == NormMethod::HilbertSchmidt) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sum += std::norm(K[i * n + j]) * om[i] * om[i] * om[j] * om[j];
        return std::sqrt(sum);
    }
    std::vector<double> rho(n), mass(n);
    for (std::size_t i = 0; i < n; ++i) {
        rho[i] = std::pow(1.0 + grid.r[i], -s);
        mass[i] = grid.r[i] * grid.w[i];
    }
    std::vector<double> row(n, 0.0), col(n, 0.0);
    double rest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double a = std::abs(K[i * n + j]);
            if (grid.r[i] < 1.0 && grid.r[j] < 1.0) {
                const double kt = a * rho[i] * rho[j];
                row[i] += kt * mass[j];
                col[j] += kt * mass[i];
            } else {
                rest += a * a * om[i] * om[i] * om[j] * om[j];
            }
        }
    }
    const double m1 = *std::max_element(row.begin(), row.end());
    const double m2 = *std::max_element(col.begin(), col.end());
    return std::sqrt(m1 * m2) + std::sqrt(rest);
}

WeightedNormEstimate weighted_channel_norm(const std::function<cplx(double, double)>& K, int m, double lambda,
                                           double s, NormMethod method, const RadialGrid& grid) {
    if (!(s > 1.0)) throw DomainError("weighted_channel_norm: requires s > 1");
    const std::size_t n = grid.size();
    std::vector<cplx> mat(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mat[i * n + j] = K(grid.r[i], grid.r[j]);
    WeightedNormEstimate e;
    e.s = s;
    e.lambda = lambda;
    e.m = m;
    e.method = method;
    e.value = weighted_norm(mat, grid, s, method);
    return e;
}

double operator_norm_lower_bound(const std::vector<cplx>& K, const RadialGrid& grid, double s, int trials,
                                 unsigned seed) {
    const std::size_t n = grid.size();
    const auto om = hs_weights(grid, s);
    Mat B = to_mat(K, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) B(i, j) *= om[i] * om[j];
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXcd x(n);
        for (std::size_t i = 0; i < n; ++i) x(i) = cplx(nd(rng), nd(rng));
        x.normalize();
        best = std::max(best, (B * x).norm());
    }
    return best;
}

std::vector<cplx> remainder_matrix(double alpha, int m, double lambda, Side side, RemainderMode mode,
                                   const RadialGrid& grid) {
    const auto fp = refop::flux_params(alpha);
    if (fp.tie()) throw UnsupportedRegime("remainder_matrix: mu = 1/2 has no explicit first-order term");
    const std::size_t n = grid.size();
    const refop::ChannelResolvent ch(alpha, m, lambda, side);
    auto R = ch.kernel_matrix(grid.r);
    const auto G0 = refop::ThresholdChannel(alpha, m).g0_matrix(grid.r);
    for (std::size_t i = 0; i < n * n; ++i) R[i] -= G0[i];
    if (mode == RemainderMode::Full) {
        if (!fp.integer_flux && m == fp.k_star) {
            const auto g1 = g1_rank_one(fp, grid.r);
            const cplx c = refop::lambda_power(lambda, fp.mu, side) * g1.c;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) R[i * n + j] -= c * g1.h[i] * g1.h[j];
        } else if (fp.integer_flux && alpha != 0.0 && m == -static_cast<int>(std::lround(alpha))) {
            const auto q = k1_factor(static_cast<int>(std::lround(alpha)), grid.r);
            const cplx c = 2.0 / refop::lambda_log(lambda, side);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) R[i * n + j] -= c * q[i] * q[j];
        }
    }
    return R;
}

double remainder_norm(double alpha, double lambda, Side side, double s, RemainderMode mode, const RadialGrid& grid,
                      int m_span) {
    const auto fp = refop::flux_params(alpha);
    const int k = fp.integer_flux ? -static_cast<int>(std::lround(alpha)) : fp.k_star;
    double sum = 0.0;
    for (int m = k - m_span; m <= k + m_span; ++m) {
        const double v = weighted_norm(remainder_matrix(alpha, m, lambda, side, mode, grid), grid, s,
                                       NormMethod::HilbertSchmidt);
        sum += v * v;
    }
    return std::sqrt(sum);
}

ThresholdFit threshold_fit(double alpha, double s, const std::vector<double>& lambda_grid, Side side,
                           const RadialGrid& grid, int m_span) {
    const auto fp = refop::flux_params(alpha);
    if (fp.integer_flux || fp.tie()) throw UnsupportedRegime("threshold_fit: requires non-integer flux with mu < 1/2");
    if (lambda_grid.size() < 8) throw DomainError("threshold_fit: need at least 8 lambda nodes");
    ThresholdFit out;
    out.alpha = alpha;
    out.mu = fp.mu;
    out.s = s;
    out.side = side;
    out.lambdas = lambda_grid;
    std::vector<double> x, y0, y1;
    double largest = 0.0;
    for (double l : lambda_grid) largest = std::max(largest, std::abs(l));
    for (double l : lambda_grid) {
        const double n0 = remainder_norm(alpha, l, side, s, RemainderMode::ZeroOrder, grid, m_span);
        const double n1 = remainder_norm(alpha, l, side, s, RemainderMode::Full, grid, m_span);
        out.norm_zero_order.push_back(n0);
        out.norm_full.push_back(n1);
        if (std::abs(l) == largest) continue;
        x.push_back(std::abs(l));
        y0.push_back(n0);
        y1.push_back(n1);
    }
    out.fit_zero_order = fit::power_law(x, y0);
    out.fit_full = fit::power_law(x, y1);
    out.exponent_ok = std::abs(out.fit_zero_order.exponent - fp.mu) <= 0.05;
    out.remainder_ok = out.fit_full.exponent >= fp.mu + 0.1;
    out.r_squared_ok = out.fit_zero_order.r_squared >= 0.99 && out.fit_full.r_squared >= 0.99;
    return out;
}

IntegerFit integer_threshold_fit(int alpha, double s, const std::vector<double>& lambda_grid, const RadialGrid& grid,
                                 int m_span) {
    if (alpha == 0) throw DomainError("integer_threshold_fit: alpha must be a nonzero integer");
    IntegerFit out;
    out.alpha = alpha;
    out.s = s;
    out.lambdas = lambda_grid;
    for (double l : lambda_grid) {
        if (!(l > 0.0 && l < 1.0)) throw DomainError("integer_threshold_fit: lambdas must lie in (0, 1)");
        const double L = std::abs(std::log(l));
        const double n0 = remainder_norm(alpha, l, Side::Plus, s, RemainderMode::ZeroOrder, grid, m_span);
        const double n1 = remainder_norm(alpha, l, Side::Plus, s, RemainderMode::Full, grid, m_span);
        out.norm.push_back(n0);
        out.scaled.push_back(n0 * L);
        out.subtracted_scaled.push_back(n1 * L);
    }
    const auto [mn, mx] = std::minmax_element(out.scaled.begin(), out.scaled.end());
    double mean = 0.0;
    for (double v : out.scaled) mean += v;
    mean /= out.scaled.size();
    out.plateau_variation = (*mx - *mn) / mean;
    out.plateau_ok = out.plateau_variation <= 0.1;
    // Order the subtracted values by decreasing lambda and test the last three.
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) pairs.emplace_back(lambda_grid[i], out.subtracted_scaled[i]);
    std::sort(pairs.begin(), pairs.end(), [](auto& a, auto& b) { return a.first > b.first; });
    const std::size_t n = pairs.size();
    out.subtracted_decreasing = n >= 3 && pairs[n - 1].second < pairs[n - 2].second &&
                                pairs[n - 2].second < pairs[n - 3].second;
    return out;
}

BranchCoefficient branch_coefficient(double alpha, double r, double rp, const std::vector<double>& abs_lambdas) {
    const auto fp = refop::flux_params(alpha);
    if (fp.integer_flux || fp.tie()) throw UnsupportedRegime("branch_coefficient: requires 0 < mu < 1/2");
    const int k = fp.k_star;
    const double mu = fp.mu;
    const double g0 = refop::threshold_g0(alpha, k, r, rp);
    auto extract = [&](double sign) {
        std::vector<std::vector<cplx>> cols(4);
        std::vector<cplx> rhs;
        for (double a : abs_lambdas) {
            const double l = sign * a;
            cols[0].push_back(refop::lambda_power(l, mu));
            cols[1].push_back(refop::lambda_power(l, 2.0 * mu));
            cols[2].push_back(refop::lambda_power(l, 3.0 * mu));
            cols[3].push_back(l);
            rhs.push_back(refop::channel_kernel(alpha, k, l, Side::Plus, r, rp) - g0);
        }
        return fit::least_squares(cols, rhs).coef[0];
    };
    BranchCoefficient b;
    b.r = r;
    b.rp = rp;
    b.from_positive = extract(1.0);
    b.from_negative = extract(-1.0);
    b.exact = refop::threshold_g1(fp, r, rp);
    b.rel_diff = std::abs(b.from_positive - b.from_negative) / std::abs(b.from_positive);
    return b;
}

WeightedNormEstimate gradient_remainder_norm(double alpha, int m, double lambda, double s, const RadialGrid& grid) {
    const auto fp = refop::flux_params(alpha);
    if (fp.integer_flux || fp.tie()) throw UnsupportedRegime("gradient_remainder_norm: requires 0 < mu < 1/2");
    const std::size_t n = grid.size();
    const refop::ChannelResolvent ch(alpha, m, lambda, Side::Plus);
    const refop::ThresholdChannel tc(alpha, m);
    const cplx W = ch.wronskian();
    std::vector<refop::SolutionPair> sol(n);
    for (std::size_t i = 0; i < n; ++i) sol[i] = ch.solutions(grid.r[i]);
    const bool on_channel = (m == fp.k_star);
    RankOne g1;
    cplx lp = 0.0;
    std::vector<double> dh(n, 0.0);
    if (on_channel) {
        g1 = g1_rank_one(fp, grid.r);
        lp = refop::lambda_power(lambda, fp.mu) * g1.c;
        for (std::size_t j = 0; j < n; ++j) {
            const double h = 1e-5 * grid.r[j];
            const auto hp = g1_rank_one(fp, {grid.r[j] - h, grid.r[j] + h});
            dh[j] = (hp.h[1] - hp.h[0]) / (2.0 * h);
        }
    }
    const auto om = hs_weights(grid, s);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = grid.r[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double rp = grid.r[j];
            cplx val, dval;
            if (r <= rp) {
                val = sol[i].f * sol[j].phi / W;
                dval = sol[i].f * sol[j].dphi / W;
            } else {
                val = sol[j].f * sol[i].phi / W;
                dval = sol[j].df * sol[i].phi / W;
            }
            const double g0 = tc.g0(r, rp);
            val -= g0;
            if (i == j) {
                // One-sided difference on the side of the analytic branch used above.
                const double h = 1e-5 * rp;
                dval -= (-3.0 * g0 + 4.0 * tc.g0(r, rp + h) - tc.g0(r, rp + 2.0 * h)) / (2.0 * h);
            } else {
                const double h = std::min(1e-5 * rp, 0.3 * std::abs(rp - r));
                dval -= (tc.g0(r, rp + h) - tc.g0(r, rp - h)) / (2.0 * h);
            }
            if (on_channel) {
                val -= lp * g1.h[i] * g1.h[j];
                dval -= lp * g1.h[i] * dh[j];
            }
            const double e = std::norm(dval) + (double(m) * m / (rp * rp)) * std::norm(val);
            sum += e * om[i] * om[i] * om[j] * om[j];
        }
    }
    WeightedNormEstimate est;
    est.s = s;
    est.lambda = lambda;
    est.m = m;
    est.value = std::sqrt(sum);
    return est;
}

NystromResult nystrom_perturbed(double alpha, const gauge::FieldDescriptor& field,
                                const std::function<double(double)>& V, double s, const std::vector<int>& m_set,
                                double lambda_check, const RadialGrid& grid) {
    if (!field.radial) throw CheckFailure("nystrom_perturbed: the field must be radial");
    const gauge::CorrectedGauge gauge(field, alpha);
    const auto fp = refop::flux_params(alpha);
    if (fp.integer_flux || fp.tie()) throw UnsupportedRegime("nystrom_perturbed: requires 0 < mu < 1/2");
    if (V) {
        const double v100 = std::abs(V(100.0)) * std::pow(101.0, 3.0);
        const double v1000 = std::abs(V(1000.0)) * std::pow(1001.0, 3.0);
        if (v1000 > v100 && v1000 > 1e-300)
            throw CheckFailure("nystrom_perturbed: V does not decay faster than (1+r)^-3");
    }
    const std::size_t n = grid.size();
    const auto om = hs_weights(grid, s);
    std::vector<double> a(n), a0(n), sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = grid.r[i];
        a[i] = field.radial_potential ? field.radial_potential(r) : gauge.A({r, 0.0})[1];
        a0[i] = r < 1.0 ? alpha : alpha / r;
        sq[i] = std::sqrt(r * grid.w[i]);
    }
    NystromResult res;
    res.alpha = alpha;
    res.s = s;
    res.lambda_check = lambda_check;
    res.grid = grid;
    const Mat I = Mat::Identity(n, n);
    Mat D = Mat::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) D(i, i) = grid.r[i] * grid.w[i];
    auto weighted_hs = [&](const Mat& K) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sum += std::norm(K(i, j)) * om[i] * om[i] * om[j] * om[j];
        return std::sqrt(sum);
    };
    for (int m : m_set) {
        NystromChannel c;
        c.m = m;
        c.t.resize(n);
        Mat Td = Mat::Zero(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = grid.r[i];
            c.t[i] = (a[i] - a0[i]) * (2.0 * m / r + a[i] + a0[i]) + (V ? V(r) : 0.0);
            Td(i, i) = c.t[i];
        }
        const auto g0v = refop::ThresholdChannel(alpha, m).g0_matrix(grid.r);
        Mat G0(n, n), G1 = Mat::Zero(n, n);
        for (std::size_t i = 0; i < n * n; ++i) G0.data()[i] = g0v[i];
        if (m == fp.k_star) {
            const auto g1 = g1_rank_one(fp, grid.r);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) G1(i, j) = g1.c * g1.h[i] * g1.h[j];
        }
        const Mat A = I + G0 * D * Td;
        const Eigen::PartialPivLU<Mat> luA(A);
        const Mat F0 = luA.solve(G0);
        const Mat Bm = I + D * Td * G0;
        const Mat F1 = luA.solve(Bm.transpose().partialPivLu().solve(G1.transpose()).transpose());
        c.identity_residual = (A * F0 - G0).norm() / G0.norm();
        const Mat lhs = Td * F0;
        const Mat rhs = (I + Td * G0 * D).partialPivLu().solve(Td * G0);
        const double ln = lhs.norm();
        c.duality_residual = ln > 0.0 ? (lhs - rhs).norm() / ln : (rhs.norm() == 0.0 ? 0.0 : 1.0);
        // Smallest singular value of the L^2(r dr) conjugate S A S^{-1}, S = diag(sqrt(r w)).
        Mat As = A;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) As(i, j) *= sq[i] / sq[j];
        const Eigen::JacobiSVD<Mat> svd(As);
        c.margin = svd.singularValues()(svd.singularValues().size() - 1);
        if (c.margin < 1e-6) {
            std::ostringstream os;
            os << "nystrom_perturbed: invertibility margin " << c.margin << " below 1e-6 in channel " << m;
            throw CheckFailure(os.str());
        }
        if (lambda_check > 0.0) {
            const auto rl = refop::ChannelResolvent(alpha, m, lambda_check, Side::Plus).kernel_matrix(grid.r);
            const Mat R = to_mat(rl, n);
            const Mat Fl = (I + R * D * Td).partialPivLu().solve(R);
            const double f0n = weighted_hs(F0);
            c.resolvent_agreement = weighted_hs(Fl - F0) / f0n;
            const cplx lp = refop::lambda_power(lambda_check, fp.mu);
            c.resolvent_agreement_first_order = weighted_hs(Fl - F0 - lp * F1) / f0n;
        }
        c.f1_minus_g1 = weighted_hs(F1 - G1);
        c.G0 = from_mat(G0);
        c.G1 = from_mat(G1);
        c.F0 = from_mat(F0);
        c.F1 = from_mat(F1);
        res.channels.push_back(std::move(c));
    }
    return res;
}

double hardy_ratio(const gauge::CorrectedGauge& gauge, const HardyTrial& trial) {
    if (!(trial.sigma > 0.0)) throw DomainError("hardy_ratio: sigma must be positive");
    const double alpha = gauge.alpha();
    const bool integer = std::abs(alpha - std::round(alpha)) < 1e-8 && std::abs(alpha) > 1e-8;
    const double sg = trial.sigma;
    std::vector<double> edges;
    for (int k = 0; k <= 12; ++k) edges.push_back(sg * 12.0 * k / 12.0);
    const auto rad = quad::composite_gauss_legendre(edges, 16);
    const int nth = 64;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < rad.x.size(); ++i) {
        const double p = rad.x[i];
        const double u = std::exp(-p * p / (2.0 * sg * sg));
        const double grad2 = (p * p / (sg * sg * sg * sg)) * u * u;
        for (int j = 0; j < nth; ++j) {
            const double th = 2.0 * kPi * j / nth;
            const gauge::Vec2 x{trial.cx + p * std::cos(th), trial.cy + p * std::sin(th)};
            const auto A = gauge.A(x);
            const double r2 = x[0] * x[0] + x[1] * x[1];
            double w = 1.0 + r2;
            if (integer && r2 > 0.0) {
                const double lg = 0.5 * std::log(r2);
                w = 1.0 + r2 * lg * lg;
            }
            const double jac = rad.w[i] * p * 2.0 * kPi / nth;
            num += (grad2 + (A[0] * A[0] + A[1] * A[1]) * u * u) * jac;
            den += u * u / w * jac;
        }
    }
    return num / den;
}

HardySweep hardy_sweep(const gauge::CorrectedGauge& gauge, const std::vector<double>& sigmas, double cx, double cy) {
    HardySweep sw;
    for (double sg : sigmas) {
        sw.trials.push_back({cx, cy, sg});
        sw.ratios.push_back(hardy_ratio(gauge, sw.trials.back()));
    }
    sw.minimum = *std::min_element(sw.ratios.begin(), sw.ratios.end());
    sw.slope = fit::power_law(sigmas, sw.ratios).exponent;
    return sw;
}

}  // namespace magres::expansion
