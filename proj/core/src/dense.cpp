#include "fracdiff/dense.hpp"

#include "fracdiff/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracdiff {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::symmetric_toeplitz(std::span<const double> c) {
    const std::size_t n = c.size();
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = c[i > j ? i - j : j - i];
    }
    return m;
}

DenseMatrix DenseMatrix::circulant(std::span<const double> c) {
    const std::size_t n = c.size();
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = c[(i + n - j) % n];
    }
    return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> v) const {
    detail::require_size(v.size(), cols_, "DenseMatrix::multiply");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        const auto r = row(i);
        for (std::size_t j = 0; j < cols_; ++j) s += r[j] * v[j];
        out[i] = s;
    }
    return out;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& b) const {
    detail::require_size(b.rows_, cols_, "DenseMatrix::multiply (matrix)");
    DenseMatrix out(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a * b(k, j);
        }
    }
    return out;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

LuFactorization::LuFactorization(DenseMatrix a, std::size_t max_dimension) : lu_(std::move(a)) {
    const std::size_t n = lu_.rows();
    detail::require(lu_.cols() == n, "LU: matrix must be square");
    detail::require(n <= max_dimension,
                    "LU: dimension " + std::to_string(n) + " exceeds cap " + std::to_string(max_dimension));
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::fabs(lu_(i, k)) > std::fabs(lu_(piv, k))) piv = i;
        }
        if (!(std::fabs(lu_(piv, k)) > 0.0)) {
            throw SingularMatrix("LU: zero pivot in column " + std::to_string(k));
        }
        if (piv != k) {
            std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(piv).begin());
            std::swap(perm_[k], perm_[piv]);
        }
        const double inv = 1.0 / lu_(k, k);
        auto rk = lu_.row(k);
        for (std::size_t i = k + 1; i < n; ++i) {
            auto ri = lu_.row(i);
            const double f = ri[k] * inv;
            ri[k] = f;
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) ri[j] -= f * rk[j];
        }
    }
}

void LuFactorization::solve_in_place(std::span<double> b) const {
    const std::size_t n = size();
    detail::require_size(b.size(), n, "LU solve");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = lu_.row(i);
        double s = y[i];
        for (std::size_t j = 0; j < i; ++j) s -= r[j] * y[j];
        y[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        const auto r = lu_.row(i);
        double s = y[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= r[j] * y[j];
        y[i] = s / r[i];
    }
    std::copy(y.begin(), y.end(), b.begin());
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
    std::vector<double> x(b.begin(), b.end());
    solve_in_place(x);
    return x;
}

std::vector<double> solve_dense(const DenseMatrix& a, std::span<const double> rhs, std::size_t max_dimension) {
    detail::require_size(rhs.size(), a.rows(), "solve_dense");
    return LuFactorization(a, max_dimension).solve(rhs);
}

std::vector<double> jacobi_eigenvalues(const DenseMatrix& input, double tol, std::size_t max_sweeps) {
    const std::size_t n = input.rows();
    detail::require(input.cols() == n, "jacobi_eigenvalues: matrix must be square");
    DenseMatrix a = input;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = a(j, i) = avg;
        }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) total += a(i, j) * a(i, j);
    }
    const double threshold = tol * tol * std::max(total, 1e-300);

    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
        }
        if (off <= threshold) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::hypot(theta, 1.0));
                const double c = 1.0 / std::hypot(t, 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

std::vector<double> singular_values(const DenseMatrix& a) {
    auto eig = jacobi_eigenvalues(a.transpose().multiply(a));
    std::vector<double> sv(eig.size());
    for (std::size_t i = 0; i < eig.size(); ++i) sv[i] = std::sqrt(std::max(eig[eig.size() - 1 - i], 0.0));
    return sv;
}

double dense_dominance_gap(const DenseMatrix& a) {
    double gap = INFINITY;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j != i) off += std::fabs(a(i, j));
        }
        gap = std::min(gap, std::fabs(a(i, i)) - off);
    }
    return gap;
}

double asymmetry(const DenseMatrix& a) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i + 1; j < a.cols(); ++j) worst = std::max(worst, std::fabs(a(i, j) - a(j, i)));
    }
    return worst;
}

}  // namespace fracdiff
