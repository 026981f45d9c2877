#include "kronbound/banded.hpp"

#include "kronbound/eigen.hpp"
#include "kronbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace kronbound {

BandedSymmetricMatrix::BandedSymmetricMatrix(std::vector<std::vector<double>> diagonals)
    : diagonals_(std::move(diagonals)) {
    if (diagonals_.empty() || diagonals_.front().empty())
        throw InvalidArgument("banded matrix: order must be at least 1");
    const std::size_t n = diagonals_.front().size();
    if (diagonals_.size() > n)
        throw InvalidArgument("banded matrix: bandwidth must be smaller than the order");
    for (std::size_t d = 0; d < diagonals_.size(); ++d) {
        if (diagonals_[d].size() != n - d) {
            std::ostringstream msg;
            msg << "banded matrix: diagonal " << d << " has " << diagonals_[d].size()
                << " entries, expected " << n - d;
            throw InvalidArgument(msg.str());
        }
        for (double v : diagonals_[d])
            if (!std::isfinite(v)) throw InvalidArgument("banded matrix: non-finite entry");
    }
}

std::span<const double> BandedSymmetricMatrix::diagonal(int d) const {
    if (d < 0 || d > bandwidth()) throw InvalidArgument("banded matrix: diagonal index out of range");
    return diagonals_[static_cast<std::size_t>(d)];
}

double BandedSymmetricMatrix::entry(int i, int j) const {
    const int n = order();
    if (i < 1 || i > n || j < 1 || j > n) throw InvalidArgument("banded matrix: entry index out of range");
    const int d = std::abs(i - j);
    if (d > bandwidth()) return 0.0;
    return diagonals_[static_cast<std::size_t>(d)][static_cast<std::size_t>(std::min(i, j) - 1)];
}

double BandedSymmetricMatrix::max_diagonal() const {
    return *std::max_element(diagonals_.front().begin(), diagonals_.front().end());
}

DenseMatrix BandedSymmetricMatrix::to_dense() const {
    const auto n = static_cast<std::size_t>(order());
    DenseMatrix a(n, n);
    for (std::size_t d = 0; d < diagonals_.size(); ++d)
        for (std::size_t r = 0; r + d < n; ++r) {
            a(r, r + d) = diagonals_[d][r];
            a(r + d, r) = diagonals_[d][r];
        }
    return a;
}

Preset parse_preset(std::string_view name) {
    if (name == "fd-laplacian") return Preset::FdLaplacian;
    if (name == "dd") return Preset::DiagonallyDominant;
    if (name == "legendre") return Preset::Legendre;
    if (name == "ninepoint") return Preset::NinePoint;
    throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

std::string_view preset_name(Preset p) {
    switch (p) {
    case Preset::FdLaplacian: return "fd-laplacian";
    case Preset::DiagonallyDominant: return "dd";
    case Preset::Legendre: return "legendre";
    case Preset::NinePoint: return "ninepoint";
    }
    return "?";
}

BandedSymmetricMatrix make_tridiagonal(int n, double diag, double offdiag) {
    if (n < 1) throw InvalidArgument("tridiagonal matrix: order must be at least 1");
    if (n == 1) return BandedSymmetricMatrix(std::vector<std::vector<double>>{{diag}});
    return BandedSymmetricMatrix({std::vector<double>(static_cast<std::size_t>(n), diag),
                                  std::vector<double>(static_cast<std::size_t>(n - 1), offdiag)});
}

BandedSymmetricMatrix make_preset(Preset p, int n) {
    const int min_order = p == Preset::NinePoint ? 3 : 2;
    if (n < min_order) {
        std::ostringstream msg;
        msg << "preset " << preset_name(p) << " needs n >= " << min_order << ", got " << n;
        throw InvalidArgument(msg.str());
    }
    const auto un = static_cast<std::size_t>(n);
    switch (p) {
    case Preset::FdLaplacian: return make_tridiagonal(n, 2.0, -1.0);
    case Preset::DiagonallyDominant: return make_tridiagonal(n, 2.0, -0.5);
    case Preset::Legendre: {
        std::vector<double> gamma(un), delta(un - 1);
        for (std::size_t idx = 0; idx < un; ++idx) {
            const double k = static_cast<double>(idx + 1);
            gamma[idx] = 2.0 / ((4.0 * k - 3.0) * (4.0 * k + 1.0));
            if (idx + 1 < un)
                delta[idx] = -1.0 / ((4.0 * k + 1.0) * std::sqrt((4.0 * k - 1.0) * (4.0 * k + 3.0)));
        }
        return BandedSymmetricMatrix({std::move(gamma), std::move(delta)});
    }
    case Preset::NinePoint:
        return BandedSymmetricMatrix({std::vector<double>(un, 15.0 / 6.0),
                                      std::vector<double>(un - 1, -4.0 / 3.0),
                                      std::vector<double>(un - 2, 1.0 / 12.0)});
    }
    throw InvalidArgument("unknown preset");
}

BandedSymmetricMatrix make_preset(std::string_view name, int n) {
    return make_preset(parse_preset(name), n);
}

BandedSymmetricMatrix scale_by_diagonal(const BandedSymmetricMatrix& m) {
    const auto main = m.diagonal(0);
    std::vector<double> root(main.size());
    for (std::size_t i = 0; i < main.size(); ++i) {
        if (!(main[i] > 0.0))
            throw InvalidArgument("scale_by_diagonal: non-positive diagonal entry at row " +
                                  std::to_string(i + 1));
        root[i] = std::sqrt(main[i]);
    }
    std::vector<std::vector<double>> diagonals;
    diagonals.emplace_back(main.size(), 1.0);
    for (int d = 1; d <= m.bandwidth(); ++d) {
        const auto src = m.diagonal(d);
        std::vector<double> out(src.size());
        for (std::size_t r = 0; r < src.size(); ++r)
            out[r] = src[r] / (root[r] * root[r + static_cast<std::size_t>(d)]);
        diagonals.push_back(std::move(out));
    }
    return BandedSymmetricMatrix(std::move(diagonals));
}

namespace {

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
}

std::vector<double> parse_numbers(const std::string& line) {
    std::istringstream ss(line);
    std::vector<double> out;
    std::string token;
    while (ss >> token) {
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end == token.c_str() || *end != '\0')
            throw InvalidArgument("matrix file: cannot parse number '" + token + "'");
        out.push_back(v);
    }
    return out;
}

} // namespace

BandedSymmetricMatrix read_banded_matrix(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) throw InvalidArgument("matrix file: empty input");
    std::istringstream header(line);
    long n = 0, b = -1;
    if (!(header >> n >> b)) throw InvalidArgument("matrix file: header must be 'n b'");
    std::string extra;
    if (header >> extra) throw InvalidArgument("matrix file: trailing data on header line");
    if (n < 1) throw InvalidArgument("matrix file: order must be at least 1");
    if (b < 0 || b >= n) throw InvalidArgument("matrix file: need 0 <= b < n");

    std::vector<std::vector<double>> diagonals;
    for (long d = 0; d <= b; ++d) {
        if (!next_content_line(in, line))
            throw InvalidArgument("matrix file: missing diagonal " + std::to_string(d));
        auto values = parse_numbers(line);
        if (static_cast<long>(values.size()) != n - d)
            throw InvalidArgument("matrix file: diagonal " + std::to_string(d) + " has " +
                                  std::to_string(values.size()) + " entries, expected " +
                                  std::to_string(n - d));
        diagonals.push_back(std::move(values));
    }
    if (next_content_line(in, line)) throw InvalidArgument("matrix file: unexpected trailing lines");
    return BandedSymmetricMatrix(std::move(diagonals));
}

BandedSymmetricMatrix load_banded_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open matrix file " + path.string());
    return read_banded_matrix(in);
}

void write_banded_matrix(std::ostream& out, const BandedSymmetricMatrix& m) {
    out << m.order() << ' ' << m.bandwidth() << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (int d = 0; d <= m.bandwidth(); ++d) {
        const auto diag = m.diagonal(d);
        for (std::size_t i = 0; i < diag.size(); ++i) out << (i ? " " : "") << diag[i];
        out << '\n';
    }
}

SpectralInterval::SpectralInterval(double lambda_min, double lambda_max)
    : lambda_min_(lambda_min), lambda_max_(lambda_max) {
    if (!(lambda_min > 0.0) || !std::isfinite(lambda_max))
        throw NotSpdError("spectral interval: lambda_min must be positive");
    if (!(lambda_max >= lambda_min))
        throw InvalidArgument("spectral interval: lambda_max < lambda_min");
}

EigenvalueRange eigenvalue_range(const BandedSymmetricMatrix& m) {
    std::vector<double> eig;
    if (m.bandwidth() <= 1) {
        TridiagonalForm t;
        const auto d0 = m.diagonal(0);
        t.diag.assign(d0.begin(), d0.end());
        if (m.bandwidth() == 1) {
            const auto d1 = m.diagonal(1);
            t.offdiag.assign(d1.begin(), d1.end());
        } else {
            t.offdiag.assign(d0.size() - 1, 0.0);
        }
        eig = tridiagonal_eigenvalues(std::move(t));
    } else {
        eig = symmetric_eigenvalues(m.to_dense());
    }
    return {eig.front(), eig.back()};
}

SpectralInterval extreme_eigenvalues(const BandedSymmetricMatrix& m) {
    const auto range = eigenvalue_range(m);
    if (!(range.min > 0.0)) {
        std::ostringstream msg;
        msg << "matrix is not positive definite (lambda_min = " << range.min << ")";
        throw NotSpdError(msg.str());
    }
    return {range.min, range.max};
}

SpectralInterval kronecker_sum_spectrum(const SpectralInterval& s1, const SpectralInterval& s2) {
    return {s1.lambda_min() + s2.lambda_min(), s1.lambda_max() + s2.lambda_max()};
}

GridPoint grid_of_linear(std::int64_t t, GridShape shape) {
    if (shape.rows < 1 || shape.cols < 1) throw InvalidArgument("grid: extents must be positive");
    if (t < 1 || t > shape.size())
        throw InvalidArgument("linear index " + std::to_string(t) + " outside 1.." +
                              std::to_string(shape.size()));
    const std::int64_t block = (t - 1) / shape.rows;
    return {static_cast<int>(t - shape.rows * block), static_cast<int>(block + 1), shape.rows};
}

GridPoint grid_of_linear(std::int64_t t, int n) { return grid_of_linear(t, GridShape::square(n)); }

std::int64_t linear_of_grid(int i, int j, GridShape shape) {
    if (i < 1 || i > shape.rows || j < 1 || j > shape.cols)
        throw InvalidArgument("grid index (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") out of range");
    return i + std::int64_t{shape.rows} * (j - 1);
}

std::int64_t linear_of_grid(int i, int j, int n) { return linear_of_grid(i, j, GridShape::square(n)); }

std::string_view mesh_case_name(MeshCase c) {
    switch (c) {
    case MeshCase::BothDiffer: return "BothDiffer";
    case MeshCase::OneEqual: return "OneEqual";
    case MeshCase::Diagonal: return "Diagonal";
    }
    return "?";
}

std::optional<int> MeshSeparation::mesh_distance() const {
    switch (kind) {
    case MeshCase::BothDiffer: return n2;
    case MeshCase::OneEqual: return n1;
    case MeshCase::Diagonal: return std::nullopt;
    }
    return std::nullopt;
}

MeshSeparation classify_distances(int row_distance, int col_distance) {
    if (row_distance < 0 || col_distance < 0) throw InvalidArgument("mesh distances must be non-negative");
    MeshSeparation sep{MeshCase::Diagonal, row_distance, col_distance, std::nullopt, std::nullopt};
    if (row_distance != 0 && col_distance != 0) {
        sep.kind = MeshCase::BothDiffer;
        sep.n2 = row_distance + col_distance - 2;
    } else if (row_distance != 0 || col_distance != 0) {
        sep.kind = MeshCase::OneEqual;
        sep.n1 = row_distance + col_distance - 1;
    }
    return sep;
}

MeshSeparation mesh_separation(std::int64_t k, std::int64_t t, GridShape shape) {
    const auto a = grid_of_linear(k, shape);
    const auto b = grid_of_linear(t, shape);
    return classify_distances(std::abs(a.i - b.i), std::abs(a.j - b.j));
}

MeshSeparation mesh_separation(std::int64_t k, std::int64_t t, int n) {
    return mesh_separation(k, t, GridShape::square(n));
}

} // namespace kronbound
