#include "fracdiff/error.hpp"
#include "fracdiff/soe.hpp"
#include "fracdiff/time_mesh.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fracdiff;

namespace {

// Worst |t^{-gamma} - SOE(t)| on a log grid, both sides in long double.
double measured_error(const SoeApproximation& soe, std::size_t points) {
    long double worst = 0.0L;
    const long double lo = std::log((long double)soe.delta), hi = std::log((long double)soe.final_time);
    for (std::size_t i = 0; i < points; ++i) {
        const long double t = std::exp(lo + (hi - lo) * i / (points - 1));
        long double sum = 0.0L;
        for (std::size_t j = 0; j < soe.size(); ++j) sum += (long double)soe.weights[j] * std::exp(-(long double)soe.nodes[j] * t);
        worst = std::max(worst, std::fabs(std::pow(t, -(long double)soe.gamma) - sum));
    }
    return static_cast<double>(worst);
}

}  // namespace

struct SoeCase {
    double gamma;
    double epsilon;
    double delta;
};

class SoeAccuracy : public ::testing::TestWithParam<SoeCase> {};

TEST_P(SoeAccuracy, MeetsToleranceOnLogGrid) {
    const auto c = GetParam();
    const auto soe = build_soe(c.gamma, c.epsilon, c.delta, 1.0);
    EXPECT_LE(soe.size(), 256u);
    EXPECT_LE(measured_error(soe, 10000), c.epsilon);
    for (std::size_t j = 0; j < soe.size(); ++j) {
        EXPECT_GT(soe.nodes[j], 0.0);
        EXPECT_GT(soe.weights[j], 0.0);
    }
}

INSTANTIATE_TEST_SUITE_P(Kernels, SoeAccuracy,
                         ::testing::Values(SoeCase{0.5, 1e-10, 1.0 / 256}, SoeCase{0.5, 1e-10, 1.0 / 65536},
                                           SoeCase{0.8, 1e-9, 1.0 / 256}, SoeCase{0.8, 1e-9, 1.0 / 16777216.0},
                                           SoeCase{0.2, 1e-8, 1e-6}, SoeCase{0.5, 1e-10, 6e-9}),
                         [](const auto& info) { return "case" + std::to_string(info.index); });

TEST(Soe, ProfileReportsEveryPoint) {
    const auto soe = build_soe(0.5, 1e-8, 1e-4, 1.0);
    const auto profile = soe_error_profile(soe, 50);
    ASSERT_EQ(profile.size(), 50u);
    EXPECT_DOUBLE_EQ(profile.front().t, 1e-4);
    EXPECT_DOUBLE_EQ(profile.back().t, 1.0);
    EXPECT_LE(soe_max_error(soe, 500), 1e-8);
}

TEST(Soe, RejectsBadParameters) {
    EXPECT_THROW(build_soe(0.5, 1e-10, 2.0, 1.0), ConstructionFailure);
    EXPECT_THROW(build_soe(0.0, 1e-10, 1e-3, 1.0), InvalidArgument);
    EXPECT_THROW(build_soe(0.5, 0.0, 1e-3, 1.0), InvalidArgument);
    SoeOptions tight;
    tight.max_nodes = 5;
    EXPECT_THROW(build_soe(0.5, 1e-12, 1e-8, 1.0, tight), ConstructionFailure);
}

TEST(FastCoefficients, CloseToL1Weights) {
    // b_k averages the SOE kernel over [t_{k-1}, t_k] where t_m - s >= tau_1 = delta.
    const double gamma = 0.6, eps = 1e-10;
    const GradedMesh mesh(64, 2.0, 1.0);
    const auto soe = build_soe(gamma, eps, mesh.tau(1), 1.0);
    for (std::size_t m : {2u, 10u, 64u}) {
        const auto b = fast_coefficients(soe, mesh, m);
        const auto a = l1_weights(mesh, gamma, m);
        EXPECT_EQ(b[m - 1], a.at(m));
        for (std::size_t k = 1; k < m; ++k) EXPECT_NEAR(b[k - 1], a.at(k), eps * 1.01) << "m=" << m << " k=" << k;
    }
}

TEST(FastHistory, RecurrenceMatchesDirectSum) {
    const double gamma = 0.7;
    const GradedMesh mesh(32, 3.0, 1.0);
    const auto soe = build_soe(gamma, 1e-9, mesh.tau(1), 1.0);
    const std::size_t n = 5;
    std::vector<std::vector<double>> u{oracle::random_vector(n, 1)};
    FastHistory hist(soe, n);
    for (std::size_t m = 1; m <= 32; ++m) {
        // history term at level m from b-coefficients, accumulated directly
        const auto b = fast_coefficients(soe, mesh, m);
        std::vector<long double> direct(n, 0.0L);
        for (std::size_t k = 1; k < m; ++k) {
            for (std::size_t i = 0; i < n; ++i) direct[i] += (long double)b[k - 1] * (u[k][i] - u[k - 1][i]);
        }
        const auto fast = hist.history_term(mesh.tau(m));
        double scale = 0.0, diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            scale = std::max(scale, std::fabs((double)direct[i]));
            diff = std::max(diff, std::fabs(fast[i] - (double)direct[i]));
        }
        if (m > 1) {
            EXPECT_LE(diff, 1e-12 * scale) << "m=" << m;
        }

        u.push_back(oracle::random_vector(n, 100 + m));
        std::vector<double> du(n);
        for (std::size_t i = 0; i < n; ++i) du[i] = u[m][i] - u[m - 1][i];
        hist.push(du, mesh.tau(m));
        EXPECT_EQ(hist.level(), m);
    }
    EXPECT_EQ(hist.stored_values(), soe.size() * n);
}

TEST(FastHistory, ConstantWorkPerLevel) {
    const GradedMesh mesh(50, 2.0, 1.0);
    const auto soe = build_soe(0.5, 1e-10, mesh.tau(1), 1.0);
    FastHistory hist(soe, 7);
    std::vector<std::uint64_t> per_level;
    const std::vector<double> du(7, 0.1);
    for (std::size_t m = 1; m <= 50; ++m) {
        const auto before = hist.operation_count();
        hist.history_term(mesh.tau(m));
        hist.push(du, mesh.tau(m));
        per_level.push_back(hist.operation_count() - before);
    }
    for (auto ops : per_level) EXPECT_EQ(ops, per_level.front());
}

TEST(FastHistory, FastCaputoCloseToL1) {
    const double gamma = 0.5, eps = 1e-10;
    const GradedMesh mesh(40, 2.0, 1.0);
    const auto soe = build_soe(gamma, eps, mesh.tau(1), 1.0);
    const std::size_t n = 3;
    std::vector<std::vector<double>> u;
    for (std::size_t m = 0; m <= 40; ++m) {
        const double t = mesh.time(m);
        u.push_back({std::pow(t, gamma) + 1.0, std::sin(t), t * t});
    }
    FastHistory hist(soe, n);
    for (std::size_t m = 1; m <= 40; ++m) {
        const double a_mm = l1_weight(mesh, gamma, m, m);
        const auto known = fast_caputo_rhs(hist, a_mm, u[m - 1], gamma, mesh.tau(m));
        std::vector<double> fc(n);
        for (std::size_t i = 0; i < n; ++i) fc[i] = a_mm * u[m][i] / caputo_gamma_factor(gamma) - known[i];
        const auto l1 = caputo_l1_apply(std::span(u).subspan(0, m), u[m], l1_weights(mesh, gamma, m));
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(fc[i], l1[i], 10 * eps) << "m=" << m;
        std::vector<double> du(n);
        for (std::size_t i = 0; i < n; ++i) du[i] = u[m][i] - u[m - 1][i];
        hist.push(du, mesh.tau(m));
    }
}
