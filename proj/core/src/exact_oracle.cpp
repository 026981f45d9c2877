#include "kronbound/exact_oracle.hpp"

#include "kronbound/errors.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace kronbound {

namespace {

void check_index(std::int64_t t, std::size_t order, const char* what) {
    if (t < 1 || t > static_cast<std::int64_t>(order)) {
        std::ostringstream msg;
        msg << what << ": index " << t << " outside 1.." << order;
        throw InvalidArgument(msg.str());
    }
}

} // namespace

GridShape kronecker_grid(const BandedSymmetricMatrix& m1, const BandedSymmetricMatrix& m2) {
    return {m2.order(), m1.order()};
}

DenseMatrix assemble_kronecker_sum(const BandedSymmetricMatrix& m1, const BandedSymmetricMatrix& m2) {
    const GridShape shape = kronecker_grid(m1, m2);
    if (shape.size() > kMaxDenseOrder)
        throw InvalidArgument("kronecker sum of order " + std::to_string(shape.size()) +
                              " exceeds the dense limit " + std::to_string(kMaxDenseOrder));
    const auto rows = static_cast<std::size_t>(shape.rows);
    const auto cols = static_cast<std::size_t>(shape.cols);
    DenseMatrix s(rows * cols, rows * cols);

    // M1 (x) I: couples blocks p, q at equal within-block offset r.
    for (std::size_t p = 0; p < cols; ++p)
        for (std::size_t q = 0; q < cols; ++q) {
            const double v = m1.entry(static_cast<int>(p + 1), static_cast<int>(q + 1));
            if (v == 0.0) continue;
            for (std::size_t r = 0; r < rows; ++r) s(p * rows + r, q * rows + r) += v;
        }
    // I (x) M2: block diagonal copies of M2.
    for (std::size_t p = 0; p < cols; ++p)
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < rows; ++c) {
                const double v = m2.entry(static_cast<int>(r + 1), static_cast<int>(c + 1));
                if (v != 0.0) s(p * rows + r, p * rows + c) += v;
            }
    return s;
}

CholeskyFactor::CholeskyFactor(DenseMatrix lower) : lower_(std::move(lower)) {
    if (!lower_.square()) throw InvalidArgument("cholesky factor must be square");
    for (std::size_t i = 0; i < lower_.rows(); ++i) {
        if (!(lower_(i, i) > 0.0)) throw InvalidArgument("cholesky factor needs a positive diagonal");
        for (std::size_t j = i + 1; j < lower_.cols(); ++j)
            if (lower_(i, j) != 0.0) throw InvalidArgument("cholesky factor must be lower triangular");
    }
}

std::vector<double> CholeskyFactor::forward(std::span<const double> rhs) const {
    const std::size_t n = order();
    if (rhs.size() != n) throw InvalidArgument("triangular solve: size mismatch");
    std::vector<double> y(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n; ++i) {
        double s = y[i];
        const auto row = lower_.row(i);
        for (std::size_t j = 0; j < i; ++j) s -= row[j] * y[j];
        y[i] = s / row[i];
    }
    return y;
}

std::vector<double> CholeskyFactor::backward(std::span<const double> rhs) const {
    const std::size_t n = order();
    if (rhs.size() != n) throw InvalidArgument("triangular solve: size mismatch");
    std::vector<double> x(rhs.begin(), rhs.end());
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= lower_(j, ii) * x[j];
        x[ii] = s / lower_(ii, ii);
    }
    return x;
}

std::vector<double> CholeskyFactor::solve(std::span<const double> rhs) const {
    return backward(forward(rhs));
}

CholeskyFactor cholesky(const DenseMatrix& a) {
    if (!a.is_symmetric()) throw InvalidArgument("cholesky: matrix is not symmetric");
    const std::size_t n = a.rows();
    DenseMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = a(j, j);
        for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
        if (!(pivot > 0.0)) {
            std::ostringstream msg;
            msg << "cholesky: non-positive pivot " << pivot << " at column " << j + 1
                << "; matrix is not positive definite";
            throw NotSpdError(msg.str());
        }
        const double diag = std::sqrt(pivot);
        l(j, j) = diag;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / diag;
        }
    }
    return CholeskyFactor(std::move(l));
}

std::vector<double> inverse_column(const CholeskyFactor& factor, std::int64_t t) {
    check_index(t, factor.order(), "inverse_column");
    std::vector<double> e(factor.order(), 0.0);
    e[static_cast<std::size_t>(t - 1)] = 1.0;
    return factor.solve(e);
}

std::vector<double> inverse_column(const DenseMatrix& a, std::int64_t t) {
    return inverse_column(cholesky(a), t);
}

DenseMatrix reshape_column(std::span<const double> x, GridShape shape) {
    if (static_cast<std::int64_t>(x.size()) != shape.size())
        throw InvalidArgument("reshape_column: length does not match the grid");
    const auto rows = static_cast<std::size_t>(shape.rows);
    const auto cols = static_cast<std::size_t>(shape.cols);
    DenseMatrix out(rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r) out(r, c) = x[c * rows + r];
    return out;
}

double lyapunov_residual(const BandedSymmetricMatrix& m1, const BandedSymmetricMatrix& m2,
                         const DenseMatrix& x, std::int64_t t) {
    const GridShape shape = kronecker_grid(m1, m2);
    if (x.rows() != static_cast<std::size_t>(shape.rows) || x.cols() != static_cast<std::size_t>(shape.cols))
        throw InvalidArgument("lyapunov_residual: X must be order(M2) x order(M1)");
    const auto cell = grid_of_linear(t, shape);
    const int rows = shape.rows;
    const int cols = shape.cols;
    const int b1 = m1.bandwidth();
    const int b2 = m2.bandwidth();

    double sum = 0.0;
    for (int r = 1; r <= rows; ++r)
        for (int c = 1; c <= cols; ++c) {
            double v = 0.0;
            for (int p = std::max(1, r - b2); p <= std::min(rows, r + b2); ++p)
                v += m2.entry(r, p) * x(static_cast<std::size_t>(p - 1), static_cast<std::size_t>(c - 1));
            for (int q = std::max(1, c - b1); q <= std::min(cols, c + b1); ++q)
                v += x(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(q - 1)) * m1.entry(q, c);
            if (r == cell.i && c == cell.j) v -= 1.0;
            sum += v * v;
        }
    return std::sqrt(sum);
}

std::vector<double> inverse_transpose_factor_column(const CholeskyFactor& factor, std::int64_t t) {
    check_index(t, factor.order(), "inverse_transpose_factor_column");
    std::vector<double> e(factor.order(), 0.0);
    e[static_cast<std::size_t>(t - 1)] = 1.0;
    auto col = factor.backward(e);
    // L^T is upper triangular, so is its inverse; clear rounding below row t.
    for (std::size_t k = static_cast<std::size_t>(t); k < col.size(); ++k) col[k] = 0.0;
    return col;
}

double inverse_transpose_factor_entry(const CholeskyFactor& factor, std::int64_t k, std::int64_t t) {
    check_index(k, factor.order(), "inverse_transpose_factor_entry");
    check_index(t, factor.order(), "inverse_transpose_factor_entry");
    if (k > t) return 0.0;
    return inverse_transpose_factor_column(factor, t)[static_cast<std::size_t>(k - 1)];
}

} // namespace kronbound
