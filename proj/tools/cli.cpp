#include "cli.hpp"

#include "kronbound/kronbound.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace kronbound::cli {

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs f(i) for i in [0, count) on a few threads; results land in slot i.
template <class F>
auto parallel_map(std::size_t count, F f) -> std::vector<decltype(f(std::size_t{}))> {
    std::vector<decltype(f(std::size_t{}))> results(count);
    const unsigned threads =
        static_cast<unsigned>(std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr failure;
    auto worker = [&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
            try {
                results[i] = f(i);
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
    return results;
}

BandedSymmetricMatrix load_matrix(const RunConfiguration& config) {
    if (config.preset.has_value() == config.matrix_file.has_value())
        throw ConfigError("exactly one of --preset or --matrix-file is required");
    std::optional<BandedSymmetricMatrix> m;
    if (config.preset) {
        if (!config.n) throw ConfigError("--n is required with --preset");
        m = make_preset(*config.preset, *config.n);
    } else {
        m = load_banded_matrix(*config.matrix_file);
        if (config.n && *config.n != m->order())
            throw ConfigError("--n does not match the order of the matrix file");
    }
    if (config.scale_diagonal) {
        for (double d : m->diagonal(0))
            if (!(d > 0.0)) throw NotSpdError("non-positive diagonal entry; matrix is not SPD");
        m = scale_by_diagonal(*m);
    }
    return std::move(*m);
}

std::vector<std::int64_t> resolve_columns(const RunConfiguration& config, const KroneckerProblem& problem,
                                          bool default_all) {
    std::vector<std::int64_t> cols = config.columns;
    if (cols.empty()) {
        if (!default_all) throw ConfigError("at least one --column is required");
        for (std::int64_t t = 1; t <= problem.size(); ++t) cols.push_back(t);
    }
    for (auto t : cols)
        if (t < 1 || t > problem.size())
            throw ConfigError("column " + std::to_string(t) + " outside 1.." + std::to_string(problem.size()));
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    return cols;
}

IntegralBoundTable build_table(const KroneckerProblem& problem, const QuadratureSettings& settings) {
    auto table = IntegralBoundTable::build(problem, settings);
    if (!table.all_converged())
        throw QuadratureNotConverged("quadrature did not converge within the subdivision limit; "
                                     "loosen --tol-abs/--tol-rel");
    return table;
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

void write_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << contents;
    if (!f) throw ConfigError("failed writing " + path.string());
}

std::string bounds_csv(const std::vector<EntryBoundReport>& rows) {
    std::ostringstream csv;
    csv << "k,ell,m,case,exact_abs,integral,explicit,asymptotic,demko\n";
    for (const auto& r : rows) {
        csv << r.k << ',' << r.cell.i << ',' << r.cell.j << ',' << mesh_case_name(r.separation.kind) << ','
            << optional_number(r.exact_abs) << ',' << format_number(r.integral.value) << ','
            << optional_number(r.explicit_bound) << ',' << optional_number(r.asymptotic_bound) << ','
            << format_number(r.demko) << '\n';
    }
    return csv.str();
}

EntryBoundReport divided(EntryBoundReport r, double divisor) {
    r.integral.value /= divisor;
    r.demko /= divisor;
    if (r.explicit_bound) *r.explicit_bound /= divisor;
    if (r.asymptotic_bound) *r.asymptotic_bound /= divisor;
    return r;
}

struct FigureSpec {
    Preset preset;
    std::int64_t column;
    bool demko;
};

FigureSpec figure_spec(const std::string& name) {
    if (name == "ex0") return {Preset::DiagonallyDominant, 55, true};
    if (name == "ex1") return {Preset::FdLaplacian, 35, false};
    if (name == "ex2") return {Preset::Legendre, 35, false};
    if (name == "penta") return {Preset::NinePoint, 55, false};
    throw ConfigError("unknown figure '" + name + "' (expected ex0, ex1, ex2 or penta)");
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

int cmd_bounds(const RunConfiguration& config, std::ostream& out) {
    auto problem = KroneckerProblem::from_matrix(load_matrix(config));
    const auto columns = resolve_columns(config, problem, false);
    const auto table = build_table(problem, config.quadrature);
    const auto factor = cholesky(assemble_kronecker_sum(problem.matrix, problem.matrix));

    const auto files = parallel_map(columns.size(), [&](std::size_t idx) {
        const auto exact = inverse_column(factor, columns[idx]);
        return bounds_csv(column_report(problem, table, columns[idx], &exact));
    });
    for (std::size_t idx = 0; idx < columns.size(); ++idx) {
        const auto path = config.out / ("column_" + std::to_string(columns[idx]) + ".csv");
        write_file(path, files[idx]);
        out << "wrote " << path.string() << '\n';
    }
    return kPass;
}

int cmd_verify(const RunConfiguration& config, std::ostream& out) {
    auto problem = KroneckerProblem::from_matrix(load_matrix(config));
    const auto columns = resolve_columns(config, problem, true);
    const auto table = build_table(problem, config.quadrature);
    const auto factor = cholesky(assemble_kronecker_sum(problem.matrix, problem.matrix));
    const GridShape grid = GridShape::square(problem.n);
    const double divisor = config.bound_divisor;

    struct ColumnResult {
        std::vector<std::string> issues;
        std::map<MeshCase, double> worst_ratio;
        double worst_demko_ratio = 0.0;
        double worst_cholesky_ratio = 0.0;
        double residual = 0.0;
    };

    const auto results = parallel_map(columns.size(), [&](std::size_t idx) {
        const std::int64_t t = columns[idx];
        ColumnResult res;
        const auto exact = inverse_column(factor, t);
        res.residual = lyapunov_residual(problem.matrix, problem.matrix, reshape_column(exact, grid), t);
        if (res.residual > 1e-10) {
            std::ostringstream msg;
            msg << "(t=" << t << ") Lyapunov residual " << res.residual << " > 1e-10";
            res.issues.push_back(msg.str());
        }
        const auto linv = inverse_transpose_factor_column(factor, t);
        for (auto r : column_report(problem, table, t, &exact)) {
            r = divided(r, divisor);
            for (auto& issue : check_report(r)) res.issues.push_back(std::move(issue));

            const auto mirrored = divided(entry_report(problem, table, r.t, r.k), divisor);
            if (mirrored.integral.value != r.integral.value || mirrored.demko != r.demko ||
                mirrored.explicit_bound != r.explicit_bound || mirrored.asymptotic_bound != r.asymptotic_bound)
                res.issues.push_back("(k=" + std::to_string(r.k) + ", t=" + std::to_string(t) +
                                     ") bounds not symmetric in (k, t)");

            auto& worst = res.worst_ratio[r.separation.kind];
            worst = std::max(worst, *r.exact_abs / r.integral.value);
            res.worst_demko_ratio = std::max(res.worst_demko_ratio, *r.exact_abs / r.demko);

            const auto nd = r.separation.mesh_distance();
            if (r.k <= t && nd && *nd > 0) {
                const double bound =
                    inverse_cholesky_factor_bound(problem.spectrum, r.separation, problem.band_S) / divisor;
                const double value = std::abs(linv[static_cast<std::size_t>(r.k - 1)]);
                res.worst_cholesky_ratio = std::max(res.worst_cholesky_ratio, value / bound);
                if (value > bound * (1.0 + 1e-12)) {
                    std::ostringstream msg;
                    msg.precision(17);
                    msg << "(k=" << r.k << ", t=" << t << ") inverse Cholesky factor entry " << value
                        << " exceeds " << bound;
                    res.issues.push_back(msg.str());
                }
            }
        }
        return res;
    });

    std::map<MeshCase, double> worst_ratio;
    double worst_demko = 0.0, worst_chol = 0.0, worst_residual = 0.0;
    std::size_t violations = 0;
    for (const auto& res : results) {
        for (const auto& [kind, ratio] : res.worst_ratio) worst_ratio[kind] = std::max(worst_ratio[kind], ratio);
        worst_demko = std::max(worst_demko, res.worst_demko_ratio);
        worst_chol = std::max(worst_chol, res.worst_cholesky_ratio);
        worst_residual = std::max(worst_residual, res.residual);
        for (const auto& issue : res.issues) {
            if (violations < 50) out << "VIOLATION " << issue << '\n';
            ++violations;
        }
    }

    out << "matrix: n=" << problem.n << " b=" << problem.b << " lambda_min=" << format_number(problem.spectrum.lambda_min())
        << " lambda_max=" << format_number(problem.spectrum.lambda_max()) << '\n';
    out << "columns checked: " << columns.size() << '\n';
    for (const auto& [kind, ratio] : worst_ratio)
        out << "worst exact/integral (" << mesh_case_name(kind) << "): " << format_number(ratio) << '\n';
    out << "worst exact/demko: " << format_number(worst_demko) << '\n';
    out << "worst |L^-T|/cholesky bound: " << format_number(worst_chol) << '\n';
    out << "max Lyapunov residual: " << format_number(worst_residual) << '\n';
    out << (violations == 0 ? "PASS" : "FAIL") << " (" << violations << " violations)\n";
    return violations == 0 ? kPass : kPropertyViolation;
}

int cmd_figure(const RunConfiguration& config, std::ostream& out) {
    const auto spec = figure_spec(config.figure);
    const int n = 10;
    auto problem = KroneckerProblem::from_matrix(scale_by_diagonal(make_preset(spec.preset, n)));
    const auto table = build_table(problem, config.quadrature);
    const auto exact = inverse_column(assemble_kronecker_sum(problem.matrix, problem.matrix), spec.column);
    const auto rows = column_report(problem, table, spec.column, &exact);

    const auto& diag = rows[static_cast<std::size_t>(spec.column - 1)];
    auto emit = [&](bool normalize) {
        const double exact_scale = normalize ? *diag.exact_abs : 1.0;
        const double integral_scale = normalize ? diag.integral.value : 1.0;
        const double demko_scale = normalize ? diag.demko : 1.0;
        std::ostringstream csv;
        csv << "k,ell,m,case,exact,integral" << (spec.demko ? ",demko" : "") << '\n';
        for (const auto& r : rows) {
            csv << r.k << ',' << r.cell.i << ',' << r.cell.j << ',' << mesh_case_name(r.separation.kind) << ','
                << format_number(*r.exact_abs / exact_scale) << ','
                << format_number(r.integral.value / integral_scale);
            if (spec.demko) csv << ',' << format_number(r.demko / demko_scale);
            csv << '\n';
        }
        return csv.str();
    };

    const auto path = config.out / (config.figure + ".csv");
    write_file(path, emit(true));
    out << "wrote " << path.string() << '\n';
    if (config.figure == "ex0") {
        const auto raw = config.out / (config.figure + "_unnormalized.csv");
        write_file(raw, emit(false));
        out << "wrote " << raw.string() << '\n';
    }
    return kPass;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entry bounds for inverses of Kronecker sums of banded SPD matrices"};
    app.require_subcommand(1);

    RunConfiguration config;
    std::string preset, matrix_file;
    int n = 0;

    auto add_matrix_options = [&](CLI::App* sub) {
        sub->add_option("--preset", preset, "fd-laplacian | dd | legendre | ninepoint");
        sub->add_option("--matrix-file", matrix_file, "banded matrix text file");
        sub->add_option("--n", n, "order of M")->check(CLI::PositiveNumber);
        sub->add_flag("--scale-diag", config.scale_diagonal, "apply D^-1/2 M D^-1/2 first");
        sub->add_option("--column", config.columns, "column t of S^-1 (repeatable)");
    };
    auto add_common_options = [&](CLI::App* sub) {
        sub->add_option("--tol-abs", config.quadrature.abs_tol, "quadrature absolute tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--tol-rel", config.quadrature.rel_tol, "quadrature relative tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-subdivisions", config.quadrature.max_subdivisions,
                        "quadrature panel limit")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", config.out, "output directory");
    };

    auto* bounds = app.add_subcommand("bounds", "write per-column bound reports as CSV");
    add_matrix_options(bounds);
    add_common_options(bounds);

    auto* verify = app.add_subcommand("verify", "check every bound against the exact inverse");
    add_matrix_options(verify);
    add_common_options(verify);
    verify->add_option("--bound-divisor", config.bound_divisor)->group("")->check(CLI::PositiveNumber);

    auto* figure = app.add_subcommand("figure", "reproduce a figure dataset as CSV");
    figure->add_option("name", config.figure, "ex0 | ex1 | ex2 | penta")->required();
    add_common_options(figure);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    for (auto* sub : {bounds, verify}) {
        if (!sub->parsed()) continue;
        if (sub->count("--preset")) config.preset = preset;
        if (sub->count("--matrix-file")) config.matrix_file = matrix_file;
        if (sub->count("--n")) config.n = n;
    }

    try {
        if (bounds->parsed()) return cmd_bounds(config, out);
        if (verify->parsed()) return cmd_verify(config, out);
        return cmd_figure(config, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const NotSpdError& e) {
        err << "error: " << e.what() << '\n';
        return kNotSpd;
    } catch (const QuadratureNotConverged& e) {
        err << "error: " << e.what() << '\n';
        return kQuadratureFailure;
    } catch (const QuadratureError& e) {
        err << "error: " << e.what() << '\n';
        return kQuadratureFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
}

} // namespace kronbound::cli
