#pragma once

#include "fracdiff/fft.hpp"
#include "fracdiff/ifl.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fracdiff {

struct ToeplitzWorkspace {
    std::vector<cplx> buffer;
};

/// Symmetric Toeplitz matrix applied through a circulant embedding of
/// power-of-two length >= 2n-1. The embedding spectrum is computed once.
class ToeplitzOperator {
public:
    explicit ToeplitzOperator(std::vector<double> first_col);

    std::size_t size() const noexcept { return col_.size(); }
    std::size_t embed_length() const noexcept { return fft_.size(); }
    std::span<const double> first_column() const noexcept { return col_; }
    std::span<const cplx> spectrum() const noexcept { return spectrum_; }

    void apply(std::span<const double> v, std::span<double> out, ToeplitzWorkspace& ws) const;
    std::vector<double> apply(std::span<const double> v) const;

private:
    std::vector<double> col_;
    Radix2Fft fft_;
    std::vector<cplx> spectrum_;
};

inline std::vector<double> toeplitz_matvec(const ToeplitzOperator& op, std::span<const double> v) {
    return op.apply(v);
}

/// Strang circulant first column: keep a_1..a_{floor((N+1)/2)}, then mirror
/// a_{floor(N/2)} down to a_2, with N = n + 1.
std::vector<double> strang_first_column(std::span<const double> first_col);

struct PreconditionerWorkspace {
    std::vector<cplx> data;
    DftWorkspace dft;
};

/// P = shift I + kappa_bar s(A), diagonalised by the length-n DFT.
class CirculantPreconditioner {
public:
    /// `circulant_col` is the first column of a symmetric circulant matrix
    /// (typically the Strang column). Throws ConstructionFailure if the
    /// transform is not real or any eigenvalue of P is non-positive.
    CirculantPreconditioner(std::span<const double> circulant_col, double shift, double kappa_bar);

    /// Same circulant part with new scalar coefficients; reuses eigenvalues.
    CirculantPreconditioner with_coefficients(double shift, double kappa_bar) const;

    std::size_t size() const noexcept { return lambda_.size(); }
    double shift() const noexcept { return shift_; }
    double kappa_bar() const noexcept { return kappa_bar_; }
    /// Eigenvalues of the circulant part, in DFT order.
    std::span<const double> lambda() const noexcept { return lambda_; }
    std::span<const double> total_eigs() const noexcept { return total_; }

    /// out = P^{-1} v
    void solve(std::span<const double> v, std::span<double> out, PreconditionerWorkspace& ws) const;
    std::vector<double> solve(std::span<const double> v) const;
    /// out = P v
    void apply(std::span<const double> v, std::span<double> out, PreconditionerWorkspace& ws) const;
    /// out = P^{-1/2} v; P is symmetric positive definite.
    void inverse_sqrt(std::span<const double> v, std::span<double> out, PreconditionerWorkspace& ws) const;

private:
    CirculantPreconditioner() = default;

    std::shared_ptr<const Dft> dft_;
    std::vector<double> lambda_;
    std::vector<double> total_;
    double shift_ = 0.0;
    double kappa_bar_ = 0.0;

    void finish(double shift, double kappa_bar);
    void diagonal_apply(std::span<const double> v, std::span<double> out, PreconditionerWorkspace& ws,
                        double (*scale)(double)) const;
};

CirculantPreconditioner build_preconditioner(const IflDiscretization& d, double shift, double kappa_bar);

inline std::vector<double> precond_solve(const CirculantPreconditioner& p, std::span<const double> v) {
    return p.solve(v);
}

}  // namespace fracdiff
