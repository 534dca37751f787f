#pragma once

#include "fracdiff/time_mesh.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fracdiff {

/// Sum-of-exponentials approximation t^{-gamma} ~ sum_j w_j exp(-s_j t) on [delta, T].
struct SoeApproximation {
    double gamma = 0.5;
    double epsilon = 1e-10;
    double delta = 0.0;
    double final_time = 1.0;
    std::vector<double> nodes;    // s_j > 0
    std::vector<double> weights;  // w_j > 0

    std::size_t size() const noexcept { return nodes.size(); }

    double evaluate(double t) const;
    /// Same sum accumulated in extended precision; used to measure the
    /// approximation error without adding summation round-off on top.
    long double evaluate_extended(double t) const;
};

struct SoeOptions {
    std::size_t max_nodes = 256;
    /// Points of the log-spaced grid used for the a-posteriori check.
    std::size_t validation_points = 2000;
    /// Relative floor (in units of t^{-gamma}) below which double storage of
    /// the nodes makes the absolute tolerance unreachable.
    double roundoff_floor = 8.0 * 2.220446049250313e-16;
};

/// Composite quadrature of t^{-gamma} = Gamma(gamma)^{-1} int_0^inf e^{-ts} s^{gamma-1} ds:
/// Gauss-Jacobi on [0, 2^l0] and Gauss-Legendre in log s on every dyadic
/// interval [2^l, 2^{l+1}] up to the cutoff where e^{-s delta} is negligible.
/// Node counts are picked per interval and the result is validated on a
/// log grid of [delta, T]. Throws ConstructionFailure when the tolerance
/// cannot be met within `max_nodes`.
SoeApproximation build_soe(double gamma, double epsilon, double delta, double final_time,
                           const SoeOptions& options = {});

/// Point of worst absolute error on a log-spaced grid of [delta, T].
struct SoeErrorSample {
    double t = 0.0;
    double error = 0.0;
};

std::vector<SoeErrorSample> soe_error_profile(const SoeApproximation& soe, std::size_t points);
double soe_max_error(const SoeApproximation& soe, std::size_t points);

/// b^{(m,gamma)}_k, k = 1..m (b[k-1]); b_m is the exact L1 weight a^{(m,gamma)}_m.
std::vector<double> fast_coefficients(const SoeApproximation& soe, const GradedMesh& mesh,
                                      std::size_t level);

/// Per-exponential history accumulators W_j (N_exp x n) of the fast Caputo
/// derivative. After m pushes
///   W_j[i] = sum_{k<=m} (du^k_i / tau_k) int_{t_{k-1}}^{t_k} e^{-s_j (t_m - s)} ds.
class FastHistory {
public:
    FastHistory(const SoeApproximation& soe, std::size_t dimension);

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t level() const noexcept { return level_; }
    std::size_t exponentials() const noexcept { return soe_.size(); }
    const SoeApproximation& soe() const noexcept { return soe_; }

    std::span<const double> accumulator(std::size_t j) const;

    /// W_j <- e^{-s_j tau} W_j + (delta_u / tau)(1 - e^{-s_j tau}) / s_j.
    void push(std::span<const double> delta_u, double tau);

    /// sum_j w_j e^{-s_j tau} W_j, i.e. sum_{k<m} b_k (u^k - u^{k-1}) for the next level.
    void history_term(double tau, std::span<double> out) const;
    std::vector<double> history_term(double tau) const;

    /// Multiply-adds spent in push/history_term so far.
    std::uint64_t operation_count() const noexcept { return ops_; }
    /// Number of stored history values (N_exp * n).
    std::size_t stored_values() const noexcept { return data_.size(); }

private:
    SoeApproximation soe_;
    std::size_t dimension_;
    std::size_t level_ = 0;
    std::vector<double> data_;
    mutable std::vector<double> decay_;
    mutable double decay_tau_ = -1.0;
    mutable std::uint64_t ops_ = 0;

    void refresh_decay(double tau) const;
};

/// Known part of the fast Caputo derivative at the next level:
///   (1/Gamma(1-gamma)) [a_mm u^{m-1} - sum_j w_j e^{-s_j tau_m} W_j],
/// so that FC D^gamma u^m = a_mm u^m / Gamma(1-gamma) - result.
std::vector<double> fast_caputo_rhs(const FastHistory& history, double a_mm,
                                    std::span<const double> u_prev, double gamma, double tau_m);

}  // namespace fracdiff
