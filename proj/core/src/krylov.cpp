#include "fracdiff/krylov.hpp"

#include "fracdiff/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracdiff {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void apply_or_copy(const Preconditioner& p, std::span<const double> v, std::span<double> out) {
    if (p) {
        p(v, out);
    } else {
        std::copy(v.begin(), v.end(), out.begin());
    }
}

// r = b - M x; returns ||r||_2
double true_residual(const LinearOperator& op, std::span<const double> x, std::span<const double> b,
                     std::span<double> r) {
    op(x, r);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - r[i];
    return norm2(r);
}

constexpr double kTiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

}  // namespace

double relative_residual(const LinearOperator& op, std::span<const double> x, std::span<const double> rhs) {
    detail::require_size(x.size(), rhs.size(), "relative_residual");
    std::vector<double> r(rhs.size());
    const double bn = norm2(rhs);
    const double rn = true_residual(op, x, rhs, r);
    return bn > 0.0 ? rn / bn : rn;
}

KrylovResult solve_cg(const LinearOperator& op, const Preconditioner& precond, std::span<const double> b,
                      double tol, std::size_t max_iters) {
    const std::size_t n = b.size();
    detail::require(tol > 0.0, "solve_cg: tol must be positive");
    if (max_iters == 0) max_iters = 10 * n;

    KrylovResult out;
    out.x.assign(n, 0.0);
    auto& rep = out.report;
    const double bn = norm2(b);
    if (bn == 0.0) {
        rep.converged = true;
        return out;
    }

    std::vector<double> r(b.begin(), b.end()), z(n), p(n), q(n);
    apply_or_copy(precond, r, z);
    p = z;
    double rz = dot(r, z);

    for (std::size_t it = 1; it <= max_iters; ++it) {
        op(p, q);
        const double curvature = dot(p, q);
        if (!(curvature > 0.0)) {
            rep.iterations = it;
            rep.breakdown = "non-positive curvature p'Mp; operator or preconditioner is not SPD";
            rep.final_relative_residual = norm2(r) / bn;
            return out;
        }
        const double a = rz / curvature;
        for (std::size_t i = 0; i < n; ++i) {
            out.x[i] += a * p[i];
            r[i] -= a * q[i];
        }
        rep.iterations = it;
        rep.final_relative_residual = norm2(r) / bn;
        if (rep.final_relative_residual < tol) {
            // Guard against drift of the recursively updated residual.
            rep.final_relative_residual = true_residual(op, out.x, b, r) / bn;
            if (rep.final_relative_residual < tol) {
                rep.converged = true;
                return out;
            }
        }
        apply_or_copy(precond, r, z);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    return out;
}

KrylovResult solve_bicgstab(const LinearOperator& op, const Preconditioner& precond, std::span<const double> b,
                            double tol, std::size_t max_iters) {
    const std::size_t n = b.size();
    detail::require(tol > 0.0, "solve_bicgstab: tol must be positive");
    if (max_iters == 0) max_iters = 10 * n;

    KrylovResult out;
    out.x.assign(n, 0.0);
    auto& x = out.x;
    auto& rep = out.report;
    const double bn = norm2(b);
    if (bn == 0.0) {
        rep.converged = true;
        return out;
    }

    std::vector<double> r(b.begin(), b.end()), r_hat(r), p(n, 0.0), v(n, 0.0), p_hat(n), s(n), s_hat(n), t(n);
    double rho = 1.0, alpha = 1.0, omega = 1.0;

    for (std::size_t it = 1; it <= max_iters; ++it) {
        rep.iterations = it;
        const double rho_new = dot(r_hat, r);
        if (std::fabs(rho_new) <= kTiny * bn) {
            rep.breakdown = "rho vanished";
            rep.final_relative_residual = norm2(r) / bn;
            return out;
        }
        const double beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);

        apply_or_copy(precond, p, p_hat);
        op(p_hat, v);
        const double rv = dot(r_hat, v);
        if (std::fabs(rv) <= kTiny * bn) {
            rep.breakdown = "r_hat'v vanished";
            rep.final_relative_residual = norm2(r) / bn;
            return out;
        }
        alpha = rho / rv;
        for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];

        if (norm2(s) / bn < tol) {
            for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p_hat[i];
            rep.final_relative_residual = true_residual(op, x, b, r) / bn;
            if (rep.final_relative_residual < tol) {
                rep.converged = true;
                return out;
            }
            // The recurrence drifted; restart from the true residual.
            r_hat = r;
            rho = alpha = omega = 1.0;
            std::fill(p.begin(), p.end(), 0.0);
            std::fill(v.begin(), v.end(), 0.0);
            continue;
        }

        apply_or_copy(precond, s, s_hat);
        op(s_hat, t);
        const double tt = dot(t, t);
        omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p_hat[i] + omega * s_hat[i];
            r[i] = s[i] - omega * t[i];
        }
        rep.final_relative_residual = norm2(r) / bn;
        if (rep.final_relative_residual < tol) {
            rep.final_relative_residual = true_residual(op, x, b, r) / bn;
            if (rep.final_relative_residual < tol) {
                rep.converged = true;
                return out;
            }
            r_hat = r;
            rho = alpha = omega = 1.0;
            std::fill(p.begin(), p.end(), 0.0);
            std::fill(v.begin(), v.end(), 0.0);
            continue;
        }
        if (omega == 0.0) {
            rep.breakdown = "omega vanished";
            return out;
        }
    }
    return out;
}

}  // namespace fracdiff
