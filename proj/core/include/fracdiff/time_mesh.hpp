#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracdiff {

/// Temporal grid t_m = (m/M)^r T, m = 0..M, refined towards t = 0.
class GradedMesh {
public:
    GradedMesh(std::size_t steps, double grading, double final_time);

    std::size_t steps() const noexcept { return steps_; }
    double grading() const noexcept { return grading_; }
    double final_time() const noexcept { return final_time_; }

    /// Grid points t_0..t_M.
    std::span<const double> times() const noexcept { return times_; }
    double time(std::size_t m) const { return times_.at(m); }

    /// Step sizes, steps()[m-1] = t_m - t_{m-1}.
    std::span<const double> step_sizes() const noexcept { return tau_; }
    /// tau_m for 1 <= m <= M.
    double tau(std::size_t m) const { return tau_.at(m - 1); }

private:
    std::size_t steps_;
    double grading_;
    double final_time_;
    std::vector<double> times_;
    std::vector<double> tau_;
};

/// Throws InvalidArgument if M = 0, r < 1 or T <= 0.
GradedMesh build_mesh(std::size_t steps, double grading, double final_time);

/// L1 weights a^{(m,gamma)}_k, k = 1..m, of the Caputo derivative at level m.
struct L1Weights {
    double gamma = 0.5;
    std::size_t level = 0;
    std::vector<double> a;  // a[k-1] holds a_k

    double at(std::size_t k) const { return a.at(k - 1); }
};

/// Closed form of (1/tau_k) * int_{t_{k-1}}^{t_k} (t_m - s)^{-gamma} ds.
L1Weights l1_weights(const GradedMesh& mesh, double gamma, std::size_t level);

/// Single weight a^{(m,gamma)}_k without materialising the whole level.
double l1_weight(const GradedMesh& mesh, double gamma, std::size_t level, std::size_t k);

/// (1/Gamma(1-gamma)) [a_m u^m - sum_{k=1}^{m-1} (a_{k+1}-a_k) u^k - a_1 u^0].
/// `history` holds u^0..u^{m-1}.
std::vector<double> caputo_l1_apply(std::span<const std::vector<double>> history,
                                    std::span<const double> current, const L1Weights& weights);

/// Gamma(1 - gamma) evaluated through lgamma.
double caputo_gamma_factor(double gamma);

}  // namespace fracdiff
