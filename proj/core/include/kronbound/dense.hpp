#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kronbound {

/// Row-major dense matrix with 0-based element access.
///
/// Only used at desk scale (the oracle and the eigensolver); nothing here is
/// tuned for speed.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> data() const { return data_; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    DenseMatrix transpose() const;

    /// max_i sum_j |a_ij|
    double norm_inf() const;
    double norm_frobenius() const;

    /// True if |a_ij - a_ji| <= rel_tol * max|a| for all pairs.
    bool is_symmetric(double rel_tol = 1e-14) const;

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x);

} // namespace kronbound
