#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracdiff {

/// Row-major dense matrix; used as the direct solver and as a test oracle.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static DenseMatrix identity(std::size_t n);
    /// Symmetric Toeplitz matrix with the given first column.
    static DenseMatrix symmetric_toeplitz(std::span<const double> first_col);
    /// Circulant matrix C_ij = c_{(i-j) mod n}.
    static DenseMatrix circulant(std::span<const double> first_col);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<double> multiply(std::span<const double> v) const;
    DenseMatrix multiply(const DenseMatrix& other) const;
    DenseMatrix transpose() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// LU factorisation with partial pivoting.
class LuFactorization {
public:
    /// Throws SingularMatrix on a zero pivot and InvalidArgument if n > max_dimension.
    explicit LuFactorization(DenseMatrix a, std::size_t max_dimension = 2048);

    std::size_t size() const noexcept { return lu_.rows(); }
    void solve_in_place(std::span<double> b) const;
    std::vector<double> solve(std::span<const double> b) const;

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
};

std::vector<double> solve_dense(const DenseMatrix& a, std::span<const double> rhs,
                                std::size_t max_dimension = 2048);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(const DenseMatrix& a, double tol = 1e-14, std::size_t max_sweeps = 100);

/// Singular values (descending) from the eigenvalues of A^T A.
std::vector<double> singular_values(const DenseMatrix& a);

/// min_i (|a_ii| - sum_{j != i} |a_ij|)
double dense_dominance_gap(const DenseMatrix& a);

/// max_{i != j} |a_ij - a_ji|
double asymmetry(const DenseMatrix& a);

}  // namespace fracdiff
