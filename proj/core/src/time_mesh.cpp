#include "fracdiff/time_mesh.hpp"

#include "fracdiff/error.hpp"

#include <cmath>
#include <string>

namespace fracdiff {

GradedMesh::GradedMesh(std::size_t steps, double grading, double final_time)
    : steps_(steps), grading_(grading), final_time_(final_time) {
    detail::require(steps >= 1, "graded mesh: M must be positive");
    detail::require(grading >= 1.0, "graded mesh: grading exponent r must be >= 1");
    detail::require(final_time > 0.0, "graded mesh: final time T must be positive");

    times_.resize(steps + 1);
    for (std::size_t m = 0; m <= steps; ++m) {
        const double frac = static_cast<double>(m) / static_cast<double>(steps);
        times_[m] = std::pow(frac, grading) * final_time;
    }
    times_[0] = 0.0;
    times_[steps] = final_time;

    tau_.resize(steps);
    for (std::size_t m = 1; m <= steps; ++m) tau_[m - 1] = times_[m] - times_[m - 1];
}

GradedMesh build_mesh(std::size_t steps, double grading, double final_time) {
    return GradedMesh(steps, grading, final_time);
}

namespace {

void check_level(const GradedMesh& mesh, double gamma, std::size_t level) {
    detail::require(gamma > 0.0 && gamma < 1.0, "L1 weights: gamma must lie in (0,1)");
    detail::require(level >= 1 && level <= mesh.steps(),
                    "L1 weights: level " + std::to_string(level) + " outside [1, M]");
}

// x^p - y^p with x = y + d, d > 0, without cancellation when d << y.
double power_increment(double y, double d, double p) {
    if (y <= 0.0) return std::pow(d, p);
    return std::pow(y, p) * std::expm1(p * std::log1p(d / y));
}

}  // namespace

double l1_weight(const GradedMesh& mesh, double gamma, std::size_t level, std::size_t k) {
    check_level(mesh, gamma, level);
    detail::require(k >= 1 && k <= level, "L1 weights: index k outside [1, m]");
    const auto t = mesh.times();
    const double p = 1.0 - gamma;
    const double tau = t[k] - t[k - 1];
    const double gap = t[level] - t[k];  // exactly zero for k = m
    return power_increment(gap, tau, p) / (tau * p);
}

L1Weights l1_weights(const GradedMesh& mesh, double gamma, std::size_t level) {
    check_level(mesh, gamma, level);
    L1Weights w;
    w.gamma = gamma;
    w.level = level;
    w.a.resize(level);
    const auto t = mesh.times();
    const double p = 1.0 - gamma;
    for (std::size_t k = 1; k <= level; ++k) {
        const double tau = t[k] - t[k - 1];
        w.a[k - 1] = power_increment(t[level] - t[k], tau, p) / (tau * p);
    }
    return w;
}

double caputo_gamma_factor(double gamma) {
    return std::exp(std::lgamma(1.0 - gamma));
}

std::vector<double> caputo_l1_apply(std::span<const std::vector<double>> history,
                                    std::span<const double> current, const L1Weights& weights) {
    const std::size_t m = weights.level;
    detail::require_size(history.size(), m, "caputo_l1_apply history");
    detail::require_size(weights.a.size(), m, "caputo_l1_apply weights");
    const std::size_t n = current.size();
    for (const auto& u : history) detail::require_size(u.size(), n, "caputo_l1_apply vector");

    const auto& a = weights.a;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[m - 1] * current[i] - a[0] * history[0][i];
    for (std::size_t k = 1; k < m; ++k) {
        const double c = a[k] - a[k - 1];
        const auto& u = history[k];
        for (std::size_t i = 0; i < n; ++i) out[i] -= c * u[i];
    }
    const double scale = 1.0 / caputo_gamma_factor(weights.gamma);
    for (double& v : out) v *= scale;
    return out;
}

}  // namespace fracdiff
