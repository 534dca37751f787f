#include "fracdiff/error.hpp"
#include "fracdiff/time_mesh.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fracdiff;

TEST(GradedMesh, NodesFollowPowerLaw) {
    const GradedMesh mesh(8, 2.0, 2.0);
    ASSERT_EQ(mesh.times().size(), 9u);
    EXPECT_EQ(mesh.time(0), 0.0);
    EXPECT_EQ(mesh.time(8), 2.0);
    EXPECT_DOUBLE_EQ(mesh.time(4), 0.5);
    EXPECT_DOUBLE_EQ(mesh.tau(1), 2.0 / 64.0);
    double sum = 0.0;
    for (double tau : mesh.step_sizes()) sum += tau;
    EXPECT_NEAR(sum, 2.0, 1e-15);
}

TEST(GradedMesh, StepsGrowWithGrading) {
    const GradedMesh mesh(32, 3.0, 1.0);
    for (std::size_t m = 2; m <= 32; ++m) EXPECT_GT(mesh.tau(m), mesh.tau(m - 1));
}

TEST(GradedMesh, RejectsBadParameters) {
    EXPECT_THROW(GradedMesh(0, 1.0, 1.0), InvalidArgument);
    EXPECT_THROW(GradedMesh(4, 0.5, 1.0), InvalidArgument);
    EXPECT_THROW(GradedMesh(4, 1.0, 0.0), InvalidArgument);
}

TEST(L1Weights, UniformLastWeight) {
    const GradedMesh mesh(10, 1.0, 1.0);
    const double gamma = 0.3;
    const double tau = 0.1;
    EXPECT_NEAR(l1_weight(mesh, gamma, 7, 7), std::pow(tau, -gamma) / (1.0 - gamma), 1e-13);
}

TEST(L1Weights, MatchQuadratureOfKernel) {
    for (double r : {1.0, 2.0, 3.0}) {
        for (double gamma : {0.2, 0.5, 0.8}) {
            const GradedMesh mesh(40, r, 1.0);
            const auto t = mesh.times();
            for (std::size_t m : {1u, 2u, 17u, 40u}) {
                const auto w = l1_weights(mesh, gamma, m);
                for (std::size_t k = 1; k <= m; ++k) {
                    const long double gap = static_cast<long double>(t[m]) - t[k];
                    const long double integral = oracle::tanh_sinh(
                        [&](long double, long double, long double db) { return std::pow(gap + db, -(long double)gamma); },
                        t[k - 1], t[k]);
                    const double expect = static_cast<double>(integral / (t[k] - t[k - 1]));
                    EXPECT_NEAR(w.at(k), expect, 1e-11 * expect) << "r=" << r << " gamma=" << gamma << " m=" << m
                                                                  << " k=" << k;
                }
            }
        }
    }
}

TEST(L1Weights, IncreaseTowardsCurrentLevel) {
    const GradedMesh mesh(64, 2.0, 1.0);
    const auto w = l1_weights(mesh, 0.6, 64);
    for (std::size_t k = 2; k <= 64; ++k) EXPECT_GT(w.at(k), w.at(k - 1));
    EXPECT_DOUBLE_EQ(w.at(64), l1_weight(mesh, 0.6, 64, 64));
}

TEST(L1Weights, ExactForPiecewiseLinearData) {
    // The L1 formula integrates piecewise linear interpolants exactly, and u(t) = t is its own interpolant.
    const double gamma = 0.4;
    const GradedMesh mesh(20, 2.0, 1.0);
    std::vector<std::vector<double>> history;
    for (std::size_t m = 0; m < 20; ++m) history.push_back({mesh.time(m)});
    const std::vector<double> current{mesh.time(20)};
    const auto d = caputo_l1_apply(history, current, l1_weights(mesh, gamma, 20));
    EXPECT_NEAR(d[0], 1.0 / std::tgamma(2.0 - gamma), 1e-12);
}

TEST(L1Weights, RejectsBadIndices) {
    const GradedMesh mesh(5, 1.0, 1.0);
    EXPECT_THROW(l1_weights(mesh, 0.5, 0), InvalidArgument);
    EXPECT_THROW(l1_weights(mesh, 0.5, 6), InvalidArgument);
    EXPECT_THROW(l1_weight(mesh, 0.5, 3, 4), InvalidArgument);
    EXPECT_THROW(l1_weights(mesh, 1.0, 3), InvalidArgument);
}
