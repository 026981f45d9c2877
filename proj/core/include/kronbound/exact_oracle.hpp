#pragma once

#include "kronbound/banded.hpp"
#include "kronbound/dense.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace kronbound {

/// Largest Kronecker-sum order the dense oracle will assemble.
inline constexpr std::int64_t kMaxDenseOrder = 10'000;

/// S = M1 (x) I_{n2} + I_{n1} (x) M2, of order n1 n2.
///
/// With vec stacking columns, S vec(X) = vec(M2 X + X M1) for X of size
/// n2 x n1: rows of the grid are indexed through M2 and columns (blocks)
/// through M1. Throws InvalidArgument above kMaxDenseOrder.
DenseMatrix assemble_kronecker_sum(const BandedSymmetricMatrix& m1, const BandedSymmetricMatrix& m2);

/// Grid of a Kronecker sum: rows = order(M2), cols = order(M1).
GridShape kronecker_grid(const BandedSymmetricMatrix& m1, const BandedSymmetricMatrix& m2);

/// Lower-triangular L with positive diagonal and L L^T = A.
class CholeskyFactor {
public:
    explicit CholeskyFactor(DenseMatrix lower);

    const DenseMatrix& lower() const { return lower_; }
    std::size_t order() const { return lower_.rows(); }

    /// Solves L L^T x = rhs.
    std::vector<double> solve(std::span<const double> rhs) const;
    /// Solves L y = rhs.
    std::vector<double> forward(std::span<const double> rhs) const;
    /// Solves L^T x = rhs.
    std::vector<double> backward(std::span<const double> rhs) const;

private:
    DenseMatrix lower_;
};

/// Throws InvalidArgument for a non-symmetric input and NotSpdError on a
/// non-positive pivot.
CholeskyFactor cholesky(const DenseMatrix& a);

/// Column t (1-based) of A^{-1}, by two triangular solves.
std::vector<double> inverse_column(const CholeskyFactor& factor, std::int64_t t);
std::vector<double> inverse_column(const DenseMatrix& a, std::int64_t t);

/// Inverse of vec: x of length rows*cols stacked by columns.
DenseMatrix reshape_column(std::span<const double> x, GridShape shape);

/// || M2 X + X M1 - e_i e_j^T ||_F, (i, j) the grid cell of t. X must be
/// order(M2) x order(M1).
double lyapunov_residual(const BandedSymmetricMatrix& m1, const BandedSymmetricMatrix& m2,
                         const DenseMatrix& x, std::int64_t t);

/// Column t of L^{-T}; entries below the diagonal (k > t) are zero.
std::vector<double> inverse_transpose_factor_column(const CholeskyFactor& factor, std::int64_t t);

/// (L^{-T})_{k,t}, 1-based.
double inverse_transpose_factor_entry(const CholeskyFactor& factor, std::int64_t k, std::int64_t t);

} // namespace kronbound
