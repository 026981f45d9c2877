#include "kronbound/report.hpp"

#include "kronbound/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace kronbound {

KroneckerProblem KroneckerProblem::from_matrix(BandedSymmetricMatrix m) {
    const auto spec = extreme_eigenvalues(m);
    const int n = m.order();
    const int b = m.bandwidth();
    const double max_diag = 2.0 * m.max_diagonal();
    return KroneckerProblem{std::move(m), spec, kronecker_sum_spectrum(spec, spec), n, b, n * b, max_diag};
}

IntegralBoundTable IntegralBoundTable::build(const KroneckerProblem& problem, const QuadratureSettings& settings,
                                             unsigned threads) {
    settings.validate();
    IntegralBoundTable table;
    table.extent_ = problem.n;
    const std::size_t count = static_cast<std::size_t>(problem.n) * static_cast<std::size_t>(problem.n);
    table.values_.resize(count);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

    // Work items write to fixed slots, so the result is schedule independent.
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (std::size_t idx = next++; idx < count && !failed; idx = next++) {
            const int dr = static_cast<int>(idx / static_cast<std::size_t>(problem.n));
            const int dc = static_cast<int>(idx % static_cast<std::size_t>(problem.n));
            try {
                table.values_[idx] =
                    integral_entry_bound(problem.spectrum, classify_distances(dr, dc), problem.b, settings);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return table;
}

const IntegralEstimate& IntegralBoundTable::at(int row_distance, int col_distance) const {
    if (row_distance < 0 || col_distance < 0 || row_distance >= extent_ || col_distance >= extent_)
        throw InvalidArgument("integral table: distance out of range");
    return values_[static_cast<std::size_t>(row_distance) * static_cast<std::size_t>(extent_) +
                   static_cast<std::size_t>(col_distance)];
}

bool IntegralBoundTable::all_converged() const {
    return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.converged; });
}

EntryBoundReport entry_report(const KroneckerProblem& problem, const IntegralBoundTable& table,
                              std::int64_t k, std::int64_t t, std::optional<double> exact_abs) {
    EntryBoundReport r{};
    r.k = k;
    r.t = t;
    r.cell = grid_of_linear(k, problem.n);
    r.separation = mesh_separation(k, t, problem.n);
    r.integral = table.at(r.separation.row_distance, r.separation.col_distance);
    const auto nd = r.separation.mesh_distance();
    // The closed forms majorize the tridiagonal integrals only.
    if (problem.b == 1 && nd && *nd > 0) {
        r.explicit_bound = explicit_entry_bound(problem.spectrum, r.separation);
        r.asymptotic_bound = asymptotic_entry_bound(problem.spectrum, r.separation);
    }
    r.demko = demko_bound(problem.spectrum_S, problem.band_S, std::abs(k - t), problem.max_diagonal_S);
    r.exact_abs = exact_abs;
    return r;
}

std::vector<EntryBoundReport> column_report(const KroneckerProblem& problem, const IntegralBoundTable& table,
                                            std::int64_t t, const std::vector<double>* exact_column) {
    if (t < 1 || t > problem.size()) throw InvalidArgument("column index out of range");
    if (exact_column && static_cast<std::int64_t>(exact_column->size()) != problem.size())
        throw InvalidArgument("exact column has the wrong length");
    std::vector<EntryBoundReport> rows;
    rows.reserve(static_cast<std::size_t>(problem.size()));
    for (std::int64_t k = 1; k <= problem.size(); ++k) {
        std::optional<double> exact;
        if (exact_column) exact = std::abs((*exact_column)[static_cast<std::size_t>(k - 1)]);
        rows.push_back(entry_report(problem, table, k, t, exact));
    }
    return rows;
}

std::vector<std::string> check_report(const EntryBoundReport& r, const ReportTolerances& tol) {
    std::vector<std::string> issues;
    auto describe = [&](const std::string& what, double lhs, double rhs) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "(k=" << r.k << ", t=" << r.t << ") " << what << ": " << lhs << " > " << rhs;
        issues.push_back(msg.str());
    };
    if (r.exact_abs) {
        const double allowed = r.integral.value * (1.0 + tol.envelope_rel) + tol.envelope_abs;
        if (*r.exact_abs > allowed) describe("exact exceeds integral bound", *r.exact_abs, allowed);
        const double demko_allowed = r.demko * (1.0 + tol.envelope_rel) + tol.envelope_abs;
        if (*r.exact_abs > demko_allowed) describe("exact exceeds demko bound", *r.exact_abs, demko_allowed);
    }
    if (r.explicit_bound) {
        const double allowed = *r.explicit_bound * (1.0 + tol.chain_rel);
        if (r.integral.value > allowed) describe("integral exceeds explicit bound", r.integral.value, allowed);
    }
    if (r.explicit_bound && r.asymptotic_bound) {
        const double allowed = *r.asymptotic_bound * (1.0 + tol.chain_rel);
        if (*r.explicit_bound > allowed) describe("explicit exceeds asymptotic bound", *r.explicit_bound, allowed);
    }
    return issues;
}

} // namespace kronbound
