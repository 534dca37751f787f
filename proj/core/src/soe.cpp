#include "fracdiff/soe.hpp"

#include "fracdiff/error.hpp"
#include "fracdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracdiff {

double SoeApproximation::evaluate(double t) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) sum += weights[j] * std::exp(-nodes[j] * t);
    return sum;
}

long double SoeApproximation::evaluate_extended(double t) const {
    long double sum = 0.0L;
    const long double tl = t;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        sum += static_cast<long double>(weights[j]) * std::exp(-static_cast<long double>(nodes[j]) * tl);
    }
    return sum;
}

namespace {

constexpr std::size_t kReferenceNodes = 48;
constexpr std::size_t kDesignPoints = 160;

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = lo;
        return grid;
    }
    const double ratio = std::log(hi / lo);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

struct Panel {
    std::vector<long double> s;
    std::vector<long double> w;
};

// Gauss-Jacobi panel for int_0^{S0} e^{-ts} s^{gamma-1} ds / Gamma(gamma).
Panel jacobi_panel(std::size_t n, long double gamma, long double s0, long double inv_gamma_fn) {
    const auto rule = gauss_jacobi(n, 0.0L, gamma - 1.0L);
    Panel p;
    const long double half = s0 / 2.0L;
    const long double scale = std::pow(half, gamma) * inv_gamma_fn;
    for (std::size_t i = 0; i < n; ++i) {
        p.s.push_back(half * (1.0L + rule.nodes[i]));
        p.w.push_back(scale * rule.weights[i]);
    }
    return p;
}

// Gauss-Legendre in x = log s on [l log 2, (l+1) log 2].
Panel dyadic_panel(std::size_t n, long double gamma, int level, long double inv_gamma_fn) {
    const auto rule = gauss_legendre(n);
    Panel p;
    const long double ln2 = std::log(2.0L);
    const long double lo = static_cast<long double>(level) * ln2;
    const long double half = ln2 / 2.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double x = lo + half * (1.0L + rule.nodes[i]);
        p.s.push_back(std::exp(x));
        p.w.push_back(half * rule.weights[i] * std::exp(gamma * x) * inv_gamma_fn);
    }
    return p;
}

long double panel_sum(const Panel& p, long double t) {
    long double sum = 0.0L;
    for (std::size_t i = 0; i < p.s.size(); ++i) sum += p.w[i] * std::exp(-p.s[i] * t);
    return sum;
}

template <class MakePanel>
Panel choose_panel(MakePanel make, const std::vector<double>& grid, long double budget) {
    const Panel ref = make(kReferenceNodes);
    std::vector<long double> ref_vals(grid.size());
    long double peak = 0.0L;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ref_vals[i] = panel_sum(ref, grid[i]);
        peak = std::max(peak, ref_vals[i]);
    }
    if (peak <= budget) return {};  // panel contributes nothing visible on [delta, T]
    for (std::size_t n = 1; n < kReferenceNodes; ++n) {
        Panel cand = make(n);
        long double worst = 0.0L;
        for (std::size_t i = 0; i < grid.size() && worst <= budget; ++i) {
            worst = std::max(worst, std::fabs(panel_sum(cand, grid[i]) - ref_vals[i]));
        }
        if (worst <= budget) return cand;
    }
    return ref;
}

}  // namespace

std::vector<SoeErrorSample> soe_error_profile(const SoeApproximation& soe, std::size_t points) {
    detail::require(points >= 2, "soe_error_profile: need at least two points");
    std::vector<SoeErrorSample> out;
    out.reserve(points);
    for (double t : log_grid(soe.delta, soe.final_time, points)) {
        const long double exact = std::pow(static_cast<long double>(t), -static_cast<long double>(soe.gamma));
        out.push_back({t, static_cast<double>(std::fabs(exact - soe.evaluate_extended(t)))});
    }
    return out;
}

double soe_max_error(const SoeApproximation& soe, std::size_t points) {
    double worst = 0.0;
    for (const auto& s : soe_error_profile(soe, points)) worst = std::max(worst, s.error);
    return worst;
}

SoeApproximation build_soe(double gamma, double epsilon, double delta, double final_time,
                           const SoeOptions& options) {
    detail::require(gamma > 0.0 && gamma < 1.0, "build_soe: gamma must lie in (0,1)");
    detail::require(epsilon > 0.0, "build_soe: epsilon must be positive");
    detail::require(final_time > 0.0, "build_soe: final time must be positive");
    if (!(delta > 0.0) || !(delta < final_time)) {
        throw ConstructionFailure("build_soe: need 0 < delta < T, got delta=" + std::to_string(delta) +
                                  ", T=" + std::to_string(final_time));
    }

    const long double g = gamma;
    const long double inv_gamma_fn = std::exp(-std::lgamma(g));
    const int l0 = static_cast<int>(std::floor(std::log2(1.0 / final_time)));
    const long double s0 = std::ldexp(1.0L, l0);

    // Upper cutoff: Gamma(g)^{-1} int_S^inf e^{-delta s} s^{g-1} ds <= (delta S)^{g-1} e^{-delta S} / (delta^g Gamma(g)).
    const long double tail_budget = epsilon / 8.0;
    int l_max = l0;
    for (;; ++l_max) {
        const long double big_s = std::ldexp(1.0L, l_max);
        const long double x = static_cast<long double>(delta) * big_s;
        const long double tail = std::pow(x, g - 1.0L) * std::exp(-x) /
                                 std::pow(static_cast<long double>(delta), g) * inv_gamma_fn;
        if (x > 1.0L && tail <= tail_budget) break;
        if (l_max > l0 + 2000) throw ConstructionFailure("build_soe: cutoff search diverged");
    }

    const auto design = log_grid(delta, final_time, kDesignPoints);

    long double share = 0.25L;
    for (int attempt = 0; attempt < 5; ++attempt, share /= 4.0L) {
        const long double budget = share * epsilon;
        std::vector<Panel> panels;
        panels.push_back(choose_panel([&](std::size_t n) { return jacobi_panel(n, g, s0, inv_gamma_fn); },
                                      design, budget));
        for (int l = l0; l < l_max; ++l) {
            panels.push_back(choose_panel([&](std::size_t n) { return dyadic_panel(n, g, l, inv_gamma_fn); },
                                          design, budget));
        }

        SoeApproximation soe;
        soe.gamma = gamma;
        soe.epsilon = epsilon;
        soe.delta = delta;
        soe.final_time = final_time;
        for (const auto& p : panels) {
            for (std::size_t i = 0; i < p.s.size(); ++i) {
                soe.nodes.push_back(static_cast<double>(p.s[i]));
                soe.weights.push_back(static_cast<double>(p.w[i]));
            }
        }
        if (soe.size() > options.max_nodes) break;

        bool ok = true;
        for (const auto& sample : soe_error_profile(soe, options.validation_points)) {
            const double allowed =
                std::max(epsilon, options.roundoff_floor * std::pow(sample.t, -gamma));
            if (!(sample.error <= allowed)) {
                ok = false;
                break;
            }
        }
        if (ok) return soe;
    }
    throw ConstructionFailure("build_soe: tolerance " + std::to_string(epsilon) + " not reached within " +
                              std::to_string(options.max_nodes) + " exponentials");
}

std::vector<double> fast_coefficients(const SoeApproximation& soe, const GradedMesh& mesh,
                                      std::size_t level) {
    detail::require(level >= 1 && level <= mesh.steps(), "fast_coefficients: level outside [1, M]");
    const auto t = mesh.times();
    std::vector<double> b(level, 0.0);
    for (std::size_t k = 1; k < level; ++k) {
        const double tau = t[k] - t[k - 1];
        const double gap = t[level] - t[k];
        double sum = 0.0;
        for (std::size_t j = 0; j < soe.size(); ++j) {
            const double s = soe.nodes[j];
            sum += soe.weights[j] * std::exp(-s * gap) * (-std::expm1(-s * tau)) / (s * tau);
        }
        b[k - 1] = sum;
    }
    b[level - 1] = l1_weight(mesh, soe.gamma, level, level);
    return b;
}

FastHistory::FastHistory(const SoeApproximation& soe, std::size_t dimension)
    : soe_(soe), dimension_(dimension), data_(soe.size() * dimension, 0.0), decay_(soe.size()) {}

std::span<const double> FastHistory::accumulator(std::size_t j) const {
    detail::require(j < soe_.size(), "FastHistory: exponential index out of range");
    return {data_.data() + j * dimension_, dimension_};
}

void FastHistory::refresh_decay(double tau) const {
    if (tau == decay_tau_) return;
    for (std::size_t j = 0; j < soe_.size(); ++j) decay_[j] = std::exp(-soe_.nodes[j] * tau);
    decay_tau_ = tau;
}

void FastHistory::push(std::span<const double> delta_u, double tau) {
    detail::require_size(delta_u.size(), dimension_, "FastHistory::push");
    detail::require(tau > 0.0, "FastHistory::push: tau must be positive");
    refresh_decay(tau);
    for (std::size_t j = 0; j < soe_.size(); ++j) {
        const double s = soe_.nodes[j];
        const double decay = decay_[j];
        const double gain = -std::expm1(-s * tau) / (s * tau);
        double* w = data_.data() + j * dimension_;
        for (std::size_t i = 0; i < dimension_; ++i) w[i] = decay * w[i] + gain * delta_u[i];
    }
    ops_ += 2 * soe_.size() * dimension_;
    ++level_;
}

void FastHistory::history_term(double tau, std::span<double> out) const {
    detail::require_size(out.size(), dimension_, "FastHistory::history_term");
    refresh_decay(tau);
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t j = 0; j < soe_.size(); ++j) {
        const double c = soe_.weights[j] * decay_[j];
        const double* w = data_.data() + j * dimension_;
        for (std::size_t i = 0; i < dimension_; ++i) out[i] += c * w[i];
    }
    ops_ += soe_.size() * dimension_;
}

std::vector<double> FastHistory::history_term(double tau) const {
    std::vector<double> out(dimension_);
    history_term(tau, out);
    return out;
}

std::vector<double> fast_caputo_rhs(const FastHistory& history, double a_mm,
                                    std::span<const double> u_prev, double gamma, double tau_m) {
    detail::require_size(u_prev.size(), history.dimension(), "fast_caputo_rhs");
    auto out = history.history_term(tau_m);
    const double scale = 1.0 / caputo_gamma_factor(gamma);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * (a_mm * u_prev[i] - out[i]);
    return out;
}

}  // namespace fracdiff
