#pragma once

#include "kronbound/banded.hpp"
#include "kronbound/decay_bounds.hpp"
#include "kronbound/exact_oracle.hpp"
#include "kronbound/quadrature.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kronbound {

/// Everything the bounds need to know about S = M (x) I + I (x) M.
struct KroneckerProblem {
    BandedSymmetricMatrix matrix;
    SpectralInterval spectrum;    // of M
    SpectralInterval spectrum_S;  // of S: twice the extremes of M
    int n;
    int b;
    int band_S;                   // n * b
    double max_diagonal_S;        // 2 * max diag(M)

    /// Computes the spectrum of M; throws NotSpdError if M is not SPD.
    static KroneckerProblem from_matrix(BandedSymmetricMatrix m);

    std::int64_t size() const { return std::int64_t{n} * n; }
};

/// Integral bounds depend on (k, t) only through the grid distances, so a
/// whole problem needs at most n^2 quadratures. The table holds all of them.
class IntegralBoundTable {
public:
    /// threads = 0 picks std::thread::hardware_concurrency().
    static IntegralBoundTable build(const KroneckerProblem& problem, const QuadratureSettings& settings,
                                    unsigned threads = 0);

    const IntegralEstimate& at(int row_distance, int col_distance) const;
    bool all_converged() const;
    int extent() const { return extent_; }

private:
    int extent_ = 0;
    std::vector<IntegralEstimate> values_;
};

struct EntryBoundReport {
    std::int64_t k;
    std::int64_t t;
    GridPoint cell;  // (l, m) of the row index k
    MeshSeparation separation;
    IntegralEstimate integral;
    std::optional<double> explicit_bound;    // b = 1 and mesh distance > 0 only
    std::optional<double> asymptotic_bound;  // same applicability
    double demko;
    std::optional<double> exact_abs;
};

EntryBoundReport entry_report(const KroneckerProblem& problem, const IntegralBoundTable& table,
                              std::int64_t k, std::int64_t t, std::optional<double> exact_abs = {});

/// All n^2 entries of column t, k ascending. `exact_column`, when given, is
/// column t of S^{-1}.
std::vector<EntryBoundReport> column_report(const KroneckerProblem& problem, const IntegralBoundTable& table,
                                            std::int64_t t,
                                            const std::vector<double>* exact_column = nullptr);

/// Tolerances of the per-entry invariants.
struct ReportTolerances {
    double envelope_rel = 1e-6;
    double envelope_abs = 1e-14;
    double chain_rel = 1e-8;
};

/// Human-readable list of violated invariants: exact <= integral (envelope),
/// integral <= explicit <= asymptotic (chain) and exact <= demko. Empty if
/// all hold.
std::vector<std::string> check_report(const EntryBoundReport& r, const ReportTolerances& tol = {});

} // namespace kronbound
