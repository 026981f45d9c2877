#pragma once

#include "kronbound/dense.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kronbound {

/// Symmetric b-banded matrix stored by diagonals.
///
/// diagonal(d) holds the n-d entries M(i, i+d), i = 1..n-d, for d = 0..b.
/// Entries with |i-j| > b are exactly zero and only one triangle is kept,
/// so the matrix is symmetric by construction. Positive definiteness is not
/// checked here; extreme_eigenvalues() does that on demand.
///
/// Element access uses the 1-based indices of the grid formulas.
class BandedSymmetricMatrix {
public:
    explicit BandedSymmetricMatrix(std::vector<std::vector<double>> diagonals);

    int order() const { return static_cast<int>(diagonals_.front().size()); }
    int bandwidth() const { return static_cast<int>(diagonals_.size()) - 1; }

    std::span<const double> diagonal(int d) const;

    /// Entry (i, j), 1-based.
    double entry(int i, int j) const;

    double max_diagonal() const;

    DenseMatrix to_dense() const;

    friend bool operator==(const BandedSymmetricMatrix&, const BandedSymmetricMatrix&) = default;

private:
    std::vector<std::vector<double>> diagonals_;
};

enum class Preset { FdLaplacian, DiagonallyDominant, Legendre, NinePoint };

/// "fd-laplacian", "dd", "legendre", "ninepoint".
Preset parse_preset(std::string_view name);
std::string_view preset_name(Preset p);

/// fd-laplacian: tridiag(-1, 2, -1)
/// dd:           tridiag(-0.5, 2, -0.5)
/// legendre:     tridiag(delta_k, gamma_k, delta_k) from the Babuska-Shen basis
/// ninepoint:    pentadiag(1/12, -4/3, 15/6, -4/3, 1/12)
BandedSymmetricMatrix make_preset(Preset p, int n);
BandedSymmetricMatrix make_preset(std::string_view name, int n);

/// Constant-coefficient symmetric tridiagonal matrix.
BandedSymmetricMatrix make_tridiagonal(int n, double diag, double offdiag);

/// Symmetric Jacobi scaling D^{-1/2} M D^{-1/2}, D = diag(M).
BandedSymmetricMatrix scale_by_diagonal(const BandedSymmetricMatrix& m);

/// Text format: first line "n b", then b+1 lines; line d holds the n-d
/// entries of diagonal d, main diagonal first.
BandedSymmetricMatrix read_banded_matrix(std::istream& in);
BandedSymmetricMatrix load_banded_matrix(const std::filesystem::path& path);
void write_banded_matrix(std::ostream& out, const BandedSymmetricMatrix& m);

/// Extreme eigenvalues of an SPD matrix, with kappa = lambda_max / lambda_min.
class SpectralInterval {
public:
    SpectralInterval(double lambda_min, double lambda_max);

    double lambda_min() const { return lambda_min_; }
    double lambda_max() const { return lambda_max_; }
    double kappa() const { return lambda_max_ / lambda_min_; }
    double width() const { return lambda_max_ - lambda_min_; }
    bool degenerate() const { return lambda_max_ == lambda_min_; }

    friend bool operator==(const SpectralInterval&, const SpectralInterval&) = default;

private:
    double lambda_min_;
    double lambda_max_;
};

struct EigenvalueRange {
    double min;
    double max;
};

/// Smallest and largest eigenvalue, no definiteness requirement.
EigenvalueRange eigenvalue_range(const BandedSymmetricMatrix& m);

/// Throws NotSpdError if lambda_min <= 0.
SpectralInterval extreme_eigenvalues(const BandedSymmetricMatrix& m);

/// Spectrum of M1 (x) I + I (x) M2: the extremes add.
SpectralInterval kronecker_sum_spectrum(const SpectralInterval& s1, const SpectralInterval& s2);

/// Shape of the grid a linear index of a Kronecker sum lives on:
/// `rows` is the within-block extent, `cols` the number of blocks.
struct GridShape {
    int rows;
    int cols;

    static GridShape square(int n) { return {n, n}; }
    std::int64_t size() const { return std::int64_t{rows} * cols; }
};

/// Cell (i, j) of the grid, i = row (within block), j = column (block).
struct GridPoint {
    int i;
    int j;
    int n;

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// j = floor((t-1)/n) + 1, i = t - n floor((t-1)/n)
GridPoint grid_of_linear(std::int64_t t, int n);
GridPoint grid_of_linear(std::int64_t t, GridShape shape);

/// i + n (j-1)
std::int64_t linear_of_grid(int i, int j, int n);
std::int64_t linear_of_grid(int i, int j, GridShape shape);

enum class MeshCase { BothDiffer, OneEqual, Diagonal };

std::string_view mesh_case_name(MeshCase c);

/// Grid-distance classification of an entry (k, t) of the inverse.
///
/// With (l, m) the cell of k and (i, j) the cell of t:
///   BothDiffer  l != i and m != j, n2 = |l-i| + |m-j| - 2
///   OneEqual    exactly one of l == i, m == j, n1 = |l-i| + |m-j| - 1
///   Diagonal    l == i and m == j
struct MeshSeparation {
    MeshCase kind;
    int row_distance;  // |l - i|
    int col_distance;  // |m - j|
    std::optional<int> n1;
    std::optional<int> n2;

    int raw_distance() const { return row_distance + col_distance; }

    /// n2 for BothDiffer, n1 for OneEqual, nothing for Diagonal.
    std::optional<int> mesh_distance() const;

    friend bool operator==(const MeshSeparation&, const MeshSeparation&) = default;
};

MeshSeparation classify_distances(int row_distance, int col_distance);
MeshSeparation mesh_separation(std::int64_t k, std::int64_t t, int n);
MeshSeparation mesh_separation(std::int64_t k, std::int64_t t, GridShape shape);

} // namespace kronbound
