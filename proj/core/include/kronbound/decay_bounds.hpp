#pragma once

#include "kronbound/banded.hpp"
#include "kronbound/quadrature.hpp"

#include <complex>
#include <cstdint>

namespace kronbound {

/// Quantities attached to the purely imaginary shift i*w of a spectrum
/// [lambda_min, lambda_max]: the ellipse through a with foci +-1 and its
/// "radius" R, which sets the decay rate 1/R of the shifted resolvent.
struct ShiftedSpectrumGeometry {
    double omega;
    double width;                  // lambda_max - lambda_min = |lambda2 - lambda1|
    std::complex<double> lambda1;  // lambda_min + i w
    std::complex<double> lambda2;  // lambda_max + i w
    std::complex<double> a;        // (lambda1 + lambda2) / (lambda2 - lambda1)
    double alpha;                  // (|lambda1| + |lambda2|) / |lambda2 - lambda1|
    double alpha_sq_minus_one;     // alpha^2 - 1, formed without cancellation
    double R;                      // alpha + sqrt(alpha^2 - 1)
    double log_R;
    double alpha_R;                // (R + 1/R) / 2
    double beta_R;                 // (R - 1/R) / 2
    double psi;                    // a = alpha_R cos(psi) + i beta_R sin(psi)
    double B;                      // B(a)

    /// R^2 / (R^2 - 1)^2, evaluated as 1 / (4 (alpha^2 - 1)).
    double r_ratio() const { return 0.25 / alpha_sq_minus_one; }
};

/// Throws InapplicableBound for a degenerate spectrum (lambda_min == lambda_max).
ShiftedSpectrumGeometry geometry_at(const SpectralInterval& spec, double omega);

enum class FreundMode {
    Full,       // with B(a)
    Simplified  // with the majorant B(a) <= 1 / beta_R^2
};

/// Bound on |(i w I + M)^{-1}_{l,i}| for l != i, M SPD and b-banded:
///   2R/|lambda1 - lambda2| * B(a) * R^{-dist/b}.
/// dist = 0 throws InapplicableBound; use resolvent_diagonal_bound.
double freund_entry_bound(const ShiftedSpectrumGeometry& geom, int dist, int b,
                          FreundMode mode = FreundMode::Full);

/// 1 / |lambda_min + i w|; bounds every entry of the shifted resolvent.
double resolvent_diagonal_bound(const SpectralInterval& spec, double omega);

/// Integral bound on |(S^{-1})_{k,t}|, S = M (x) I + I (x) M, for an entry
/// with the given mesh separation. The three cases are
///   BothDiffer: (1/2pi) 64/(lmax-lmin)^2 int r(w)^2 R^{-(dr/b + dc/b - 2)} dw
///   OneEqual:   (1/2pi) 8/(lmax-lmin) int r(w) / |lmin + i w| R^{-(dr/b + dc/b - 1)} dw
///   Diagonal:   1 / (2 lambda_min), no quadrature
/// with r = R^2/(R^2-1)^2 and dr, dc the row/column grid distances. The
/// distance ratios dr/b are real numbers, not floored.
IntegralEstimate integral_entry_bound(const SpectralInterval& spec, const MeshSeparation& sep, int b,
                                      const QuadratureSettings& settings = {});
IntegralEstimate integral_entry_bound(const SpectralInterval& spec, std::int64_t k, std::int64_t t,
                                      int n, int b, const QuadratureSettings& settings = {});

/// Closed-form majorants of the tridiagonal (b = 1) integral bounds.
/// Require n2 > 0 (BothDiffer) or n1 > 0 (OneEqual); otherwise throw
/// InapplicableBound.
double explicit_entry_bound(const SpectralInterval& spec, const MeshSeparation& sep);

struct BoundConstants {
    double gamma0_case_i;   // sqrt(kappa^2 + 1) / (2 lambda_min)
    double gamma0_case_ii;  // kappa sqrt(kappa^2 + 1) / 2
    double gamma0;          // the larger of the two
};

BoundConstants bound_constants(const SpectralInterval& spec);

/// gamma0_case_i / sqrt(n2) or gamma0_case_ii / sqrt(n1). Same
/// applicability as explicit_entry_bound.
double asymptotic_entry_bound(const SpectralInterval& spec, const MeshSeparation& sep);

struct DemkoConstants {
    double kappa;
    double q;          // (sqrt(kappa) - 1) / (sqrt(kappa) + 1)
    double gamma_hat;  // (1 + sqrt(kappa))^2 / (2 lambda_max)
    double gamma;      // max(1 / lambda_min, gamma_hat)
    double diagonal_scale;
};

/// Constants of the classical band bound for S / d, where d is the largest
/// diagonal entry of S (the formula assumes a diagonal bounded by one).
DemkoConstants demko_constants(const SpectralInterval& spec_S, double max_diagonal);

/// gamma(S/d) q^{dist/band_S} / d, a bound on |(S^{-1})_{row,col}| with
/// dist = |row - col|.
double demko_bound(const SpectralInterval& spec_S, int band_S, std::int64_t dist, double max_diagonal);

struct SylvesterSpectraPair {
    SpectralInterval spec1;  // M1, acts on the block (column) index
    SpectralInterval spec2;  // M2, acts on the within-block (row) index

    /// (lmax(M1) - lmin(M1)) (lmax(M2) - lmin(M2))
    double delta12() const { return spec1.width() * spec2.width(); }
};

/// Bound on |(S_g^{-1})_{k,t}|, S_g = M1 (x) I + I (x) M2, M1, M2 tridiagonal,
/// for an entry whose row distance (within block, paired with M2) and
/// column distance (across blocks, paired with M1) are both >= 1:
///   (1/2pi) 64/delta12 int r1 r2 R1^{-(d_col-1)} R2^{-(d_row-1)} dw.
IntegralEstimate sylvester_integral_bound(const SylvesterSpectraPair& pair, int d_row, int d_col,
                                          const QuadratureSettings& settings = {});

/// gamma0 * band_S / sqrt(n) for an entry of L^{-T}, S = L L^T, whose mesh
/// distance n is positive.
double inverse_cholesky_factor_bound(const SpectralInterval& spec, const MeshSeparation& sep, int band_S);

} // namespace kronbound
