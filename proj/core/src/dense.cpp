#include "kronbound/dense.hpp"

#include "kronbound/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kronbound {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix eye(n, n);
    for (std::size_t i = 0; i < n; ++i) eye(i, i) = 1.0;
    return eye;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

double DenseMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (double v : row(r)) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

double DenseMatrix::norm_frobenius() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

bool DenseMatrix::is_symmetric(double rel_tol) const {
    if (!square()) return false;
    double scale = 0.0;
    for (double v : data_) scale = std::max(scale, std::abs(v));
    const double tol = rel_tol * scale;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r + 1; c < cols_; ++c)
            if (std::abs((*this)(r, c) - (*this)(c, r)) > tol) return false;
    return true;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: inner dimensions differ");
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw InvalidArgument("matrix sum: dimensions differ");
    DenseMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw InvalidArgument("matrix difference: dimensions differ");
    DenseMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
}

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x) {
    if (x.size() != a.cols()) throw InvalidArgument("matrix-vector product: size mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        double s = 0.0;
        const auto row = a.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) s += row[c] * x[c];
        y[r] = s;
    }
    return y;
}

} // namespace kronbound
