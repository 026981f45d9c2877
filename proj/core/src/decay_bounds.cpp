#include "kronbound/decay_bounds.hpp"

#include "kronbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace kronbound {

namespace {

constexpr double kInvTwoPi = 0.5 * std::numbers::inv_pi;

// r_row r_col R_row^{-e_row} R_col^{-e_col}, with the powers taken in log
// space so large distances and frequencies cannot overflow.
double two_sided_kernel(const ShiftedSpectrumGeometry& g_row, double e_row,
                        const ShiftedSpectrumGeometry& g_col, double e_col) {
    return g_row.r_ratio() * g_col.r_ratio() *
           std::exp(-(e_row * g_row.log_R + e_col * g_col.log_R));
}

IntegralEstimate scaled(IntegralEstimate est, double factor) {
    est.value *= factor;
    est.error *= factor;
    return est;
}

void require_bandwidth(int b) {
    if (b < 1) throw InvalidArgument("bandwidth must be at least 1, got " + std::to_string(b));
}

int positive_mesh_distance(const MeshSeparation& sep, const char* what) {
    const auto nd = sep.mesh_distance();
    if (!nd) throw InapplicableBound(std::string(what) + ": not defined on the diagonal case");
    if (*nd <= 0) throw InapplicableBound(std::string(what) + ": needs mesh distance > 0");
    return *nd;
}

} // namespace

ShiftedSpectrumGeometry geometry_at(const SpectralInterval& spec, double omega) {
    if (spec.degenerate())
        throw InapplicableBound("shifted-spectrum geometry needs lambda_max > lambda_min");
    const double lmin = spec.lambda_min();
    const double lmax = spec.lambda_max();
    const double width = lmax - lmin;

    ShiftedSpectrumGeometry g{};
    g.omega = omega;
    g.width = width;
    g.lambda1 = {lmin, omega};
    g.lambda2 = {lmax, omega};
    g.a = {(lmin + lmax) / width, 2.0 * omega / width};

    const double abs1 = std::hypot(lmin, omega);
    const double abs2 = std::hypot(lmax, omega);
    const double sum = abs1 + abs2;
    g.alpha = sum / width;
    // sum - width = |l1| + lmin + (|l2| - lmax), each term non-negative.
    const double excess = abs1 + lmin + omega * omega / (abs2 + lmax);
    g.alpha_sq_minus_one = excess * (sum + width) / (width * width);

    const double root = std::sqrt(g.alpha_sq_minus_one);
    g.R = g.alpha + root;
    g.log_R = std::log1p(excess / width + root);
    // alpha_R = (R + 1/R)/2 = alpha and beta_R = (R - 1/R)/2 = sqrt(alpha^2 - 1).
    g.alpha_R = g.alpha;
    g.beta_R = root;

    const double cos_psi = std::clamp(g.a.real() / g.alpha_R, -1.0, 1.0);
    const double sin_psi = std::clamp(g.a.imag() / g.beta_R, -1.0, 1.0);
    g.psi = std::atan2(sin_psi, cos_psi);

    // alpha_R^2 - cos^2 = beta_R^2 + (1 - cos)(1 + cos)
    const double q = std::sqrt(g.alpha_sq_minus_one + (1.0 - cos_psi) * (1.0 + cos_psi));
    g.B = g.R / (g.beta_R * q * (g.alpha_R + q));
    return g;
}

double freund_entry_bound(const ShiftedSpectrumGeometry& geom, int dist, int b, FreundMode mode) {
    require_bandwidth(b);
    if (dist < 1)
        throw InapplicableBound("freund_entry_bound: needs l != i; use resolvent_diagonal_bound");
    const double constant =
        mode == FreundMode::Full ? geom.B : 1.0 / (geom.beta_R * geom.beta_R);
    const double exponent = static_cast<double>(dist) / static_cast<double>(b);
    return 2.0 * geom.R / geom.width * constant * std::exp(-exponent * geom.log_R);
}

double resolvent_diagonal_bound(const SpectralInterval& spec, double omega) {
    return 1.0 / std::hypot(spec.lambda_min(), omega);
}

IntegralEstimate integral_entry_bound(const SpectralInterval& spec, const MeshSeparation& sep, int b,
                                      const QuadratureSettings& settings) {
    require_bandwidth(b);
    if (sep.kind == MeshCase::Diagonal)
        return {1.0 / (2.0 * spec.lambda_min()), 0.0, 0, true};
    if (spec.degenerate())
        throw InapplicableBound("integral bound needs lambda_max > lambda_min off the diagonal");

    const double bw = static_cast<double>(b);
    const double e_row = sep.row_distance / bw;
    const double e_col = sep.col_distance / bw;
    const double width = spec.width();

    if (sep.kind == MeshCase::BothDiffer) {
        const Integrand f = [&](double omega) {
            const auto g = geometry_at(spec, omega);
            return two_sided_kernel(g, e_row - 1.0, g, e_col - 1.0);
        };
        return scaled(integrate_real_line(f, settings), kInvTwoPi * (64.0 / (width * width)));
    }

    const double exponent = e_row + e_col - 1.0;
    const double lmin = spec.lambda_min();
    const Integrand f = [&](double omega) {
        const auto g = geometry_at(spec, omega);
        return g.r_ratio() * std::exp(-exponent * g.log_R) / std::hypot(lmin, omega);
    };
    return scaled(integrate_real_line(f, settings), kInvTwoPi * (8.0 / width));
}

IntegralEstimate integral_entry_bound(const SpectralInterval& spec, std::int64_t k, std::int64_t t,
                                      int n, int b, const QuadratureSettings& settings) {
    return integral_entry_bound(spec, mesh_separation(k, t, n), b, settings);
}

double explicit_entry_bound(const SpectralInterval& spec, const MeshSeparation& sep) {
    const int nd = positive_mesh_distance(sep, "explicit_entry_bound");
    const double lmin = spec.lambda_min();
    const double lmax = spec.lambda_max();
    const double width = lmax - lmin;
    const double sq_sum = lmax * lmax + lmin * lmin;
    const double nn = static_cast<double>(nd);
    constexpr double lead = 0.5 / std::numbers::sqrt2;

    if (sep.kind == MeshCase::BothDiffer) {
        // (lmax-lmin)^{n+2} / (lmax^2+lmin^2)^{n/2}, in logs
        const double power = std::exp((nn + 2.0) * std::log(width) - 0.5 * nn * std::log(sq_sum));
        return lead * power * std::sqrt(sq_sum) / ((lmax * lmin) * (lmax * lmin)) / std::sqrt(nn) *
               std::sqrt(2.0 * nn / (nn + 4.0));
    }
    const double power = std::exp((nn + 1.0) * std::log(width) - 0.5 * nn * std::log(sq_sum));
    return lead * power * std::sqrt(sq_sum) / (lmax * lmin * lmin) / std::sqrt(nn) *
           std::sqrt(2.0 * nn / (nn + 2.0));
}

BoundConstants bound_constants(const SpectralInterval& spec) {
    const double kappa = spec.kappa();
    const double root = std::sqrt(kappa * kappa + 1.0);
    BoundConstants c{};
    c.gamma0_case_i = root / (2.0 * spec.lambda_min());
    c.gamma0_case_ii = kappa * root / 2.0;
    c.gamma0 = std::max(c.gamma0_case_i, c.gamma0_case_ii);
    return c;
}

double asymptotic_entry_bound(const SpectralInterval& spec, const MeshSeparation& sep) {
    const int nd = positive_mesh_distance(sep, "asymptotic_entry_bound");
    const auto c = bound_constants(spec);
    const double gamma = sep.kind == MeshCase::BothDiffer ? c.gamma0_case_i : c.gamma0_case_ii;
    return gamma / std::sqrt(static_cast<double>(nd));
}

DemkoConstants demko_constants(const SpectralInterval& spec_S, double max_diagonal) {
    if (!(max_diagonal > 0.0)) throw InvalidArgument("demko bound: diagonal scale must be positive");
    const double lmin = spec_S.lambda_min() / max_diagonal;
    const double lmax = spec_S.lambda_max() / max_diagonal;
    DemkoConstants c{};
    c.kappa = lmax / lmin;
    const double root = std::sqrt(c.kappa);
    c.q = (root - 1.0) / (root + 1.0);
    c.gamma_hat = (1.0 + root) * (1.0 + root) / (2.0 * lmax);
    c.gamma = std::max(1.0 / lmin, c.gamma_hat);
    c.diagonal_scale = max_diagonal;
    return c;
}

double demko_bound(const SpectralInterval& spec_S, int band_S, std::int64_t dist, double max_diagonal) {
    require_bandwidth(band_S);
    if (dist < 0) throw InvalidArgument("demko bound: distance must be non-negative");
    const auto c = demko_constants(spec_S, max_diagonal);
    const double decay = std::pow(c.q, static_cast<double>(dist) / static_cast<double>(band_S));
    return c.gamma * decay / c.diagonal_scale;
}

IntegralEstimate sylvester_integral_bound(const SylvesterSpectraPair& pair, int d_row, int d_col,
                                          const QuadratureSettings& settings) {
    if (d_row < 1 || d_col < 1)
        throw InapplicableBound("sylvester bound needs both grid distances >= 1");
    if (pair.spec1.degenerate() || pair.spec2.degenerate())
        throw InapplicableBound("sylvester bound needs non-degenerate spectra");
    const double e_row = static_cast<double>(d_row) - 1.0;
    const double e_col = static_cast<double>(d_col) - 1.0;
    const Integrand f = [&](double omega) {
        const auto g1 = geometry_at(pair.spec1, omega);
        const auto g2 = geometry_at(pair.spec2, omega);
        return two_sided_kernel(g2, e_row, g1, e_col);
    };
    return scaled(integrate_real_line(f, settings), kInvTwoPi * (64.0 / pair.delta12()));
}

double inverse_cholesky_factor_bound(const SpectralInterval& spec, const MeshSeparation& sep, int band_S) {
    require_bandwidth(band_S);
    const int nd = positive_mesh_distance(sep, "inverse_cholesky_factor_bound");
    return bound_constants(spec).gamma0 * band_S / std::sqrt(static_cast<double>(nd));
}

} // namespace kronbound
