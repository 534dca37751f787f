#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fracdiff {

/// out = M v
using LinearOperator = std::function<void(std::span<const double> v, std::span<double> out)>;
/// out = P^{-1} v; an empty function means no preconditioning.
using Preconditioner = std::function<void(std::span<const double> v, std::span<double> out)>;

struct KrylovReport {
    std::size_t iterations = 0;
    double final_relative_residual = 0.0;
    bool converged = false;
    std::string breakdown;  // empty unless the recurrence broke down
};

struct KrylovResult {
    std::vector<double> x;
    KrylovReport report;
};

/// Preconditioned conjugate gradients from the zero vector. Stops when
/// ||b - Mx||_2 / ||b||_2 < tol. max_iters = 0 means 10 n.
KrylovResult solve_cg(const LinearOperator& op, const Preconditioner& precond, std::span<const double> rhs,
                      double tol = 1e-10, std::size_t max_iters = 0);

/// Right-preconditioned BiCGSTAB from the zero vector, same stopping rule.
/// Every full iteration (two operator applications) counts as one.
KrylovResult solve_bicgstab(const LinearOperator& op, const Preconditioner& precond,
                            std::span<const double> rhs, double tol = 1e-10, std::size_t max_iters = 0);

/// ||b - Mx||_2 / ||b||_2 evaluated from scratch.
double relative_residual(const LinearOperator& op, std::span<const double> x, std::span<const double> rhs);

}  // namespace fracdiff
