#pragma once

#include "kronbound/dense.hpp"

#include <vector>

namespace kronbound {

/// Symmetric tridiagonal matrix: diag has n entries, offdiag has n-1.
struct TridiagonalForm {
    std::vector<double> diag;
    std::vector<double> offdiag;
};

/// Orthogonal similarity reduction of a symmetric matrix to tridiagonal form
/// by Householder reflections. Eigenvalues are preserved, vectors are not
/// accumulated.
TridiagonalForm householder_tridiagonalize(DenseMatrix a);

/// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
/// iteration, returned in ascending order.
std::vector<double> tridiagonal_eigenvalues(TridiagonalForm t);

/// All eigenvalues of a dense symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& a);

} // namespace kronbound
