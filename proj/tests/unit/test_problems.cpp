#include "fracdiff/error.hpp"
#include "fracdiff/problems.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fracdiff;

TEST(Hypergeometric, TerminatingValues) {
    EXPECT_DOUBLE_EQ(hypergeom_terminating(1.25, 1, 0.25), 0.375);
    for (int s : {0, 1, 4}) EXPECT_EQ(hypergeom_terminating(0.7, s, 0.0), 1.0);
    // 2F1(5/4, -3; 1/2; 1/2) = -35/64
    EXPECT_NEAR(hypergeom_terminating(1.25, 3, 0.5), -35.0 / 64.0, 1e-15);
    EXPECT_THROW(hypergeom_terminating(1.0, -1, 0.5), InvalidArgument);
}

TEST(ExactLaplacian, PrefactorAndSymmetry) {
    EXPECT_NEAR(exact_ifl_of_bump(1, 1.0, 0.0), 1.5, 1e-14);
    for (double x : {0.1, 0.5, 0.93}) EXPECT_DOUBLE_EQ(exact_ifl_of_bump(3, 1.3, x), exact_ifl_of_bump(3, 1.3, -x));
    const double pref = std::exp(0.7 * std::log(2.0) + std::lgamma(0.85) + std::lgamma(3.0 + 0.35) -
                                 0.5 * std::log(std::acos(-1.0)) - std::lgamma(3.0));
    EXPECT_NEAR(exact_ifl_of_bump(2, 0.7, 0.0), pref, 1e-14 * pref);
}

TEST(BumpProfile, BoundaryAndOutside) {
    EXPECT_EQ(bump_profile(3, 1.5, 1.0), 0.0);
    EXPECT_EQ(bump_profile(3, 1.5, -1.2), 0.0);
    EXPECT_NEAR(bump_profile(1, 1.0, 0.5), std::pow(0.75, 1.5), 1e-15);
}

TEST(Source, BoundaryAndInitialTime) {
    for (auto kind : {KappaKind::example1, KappaKind::example2}) {
        const int s = kind == KappaKind::example1 ? 3 : 1;
        const double alpha = 1.5, gamma = 0.5, t = 0.3;
        const double at_one = example_source(kind, s, alpha, gamma, 1.0, t);
        EXPECT_NEAR(at_one,
                    example_kappa(kind, 1.0, t) * exact_ifl_of_bump(s, alpha, 1.0) * (std::pow(t, gamma) + 1.0),
                    1e-13 * std::fabs(at_one));
        const double x = 0.4;
        EXPECT_NEAR(example_source(kind, s, alpha, gamma, x, 0.0),
                    std::tgamma(1.0 + gamma) * bump_profile(s, alpha, x) +
                        example_kappa(kind, x, 0.0) * exact_ifl_of_bump(s, alpha, x),
                    1e-13);
    }
    EXPECT_THROW(example_source(KappaKind::example1, 3, 1.5, 0.5, 1.5, 0.0), InvalidArgument);
}

TEST(Source, CaputoOfTimeFactor) {
    // D^gamma (t^gamma + 1) = Gamma(1+gamma): evaluate the Caputo integral of gamma s^{gamma-1} independently.
    for (double gamma : {0.3, 0.5, 0.8}) {
        const long double t = 0.7L;
        const long double g = gamma;
        const long double integral = oracle::tanh_sinh(
            [&](long double, long double da, long double db) { return std::pow(db, -g) * g * std::pow(da, g - 1.0L); },
            0.0L, t, 10);
        const double caputo = static_cast<double>(integral / std::tgamma(1.0L - g));
        EXPECT_NEAR(caputo, std::tgamma(1.0 + gamma), 1e-10);
    }
}

TEST(ManufacturedCase, RegistryAndConsistency) {
    EXPECT_EQ(case_names().size(), 2u);
    const auto c1 = make_case("example1", 1.5, 0.5);
    EXPECT_EQ(c1.s, 3);
    const auto c2 = make_case("example2", 1.9, 0.8);
    EXPECT_EQ(c2.s, 1);
    EXPECT_EQ(make_case("example1", 1.5, 0.5, 2).s, 2);
    EXPECT_THROW(make_case("example3", 1.5, 0.5), InvalidArgument);
    EXPECT_THROW(make_case("example1", 2.5, 0.5), InvalidArgument);

    for (const auto& c : {c1, c2}) {
        const auto p = c.spec();
        for (double x : {-0.9, -0.2, 0.0, 0.6}) {
            EXPECT_EQ(p.exact(x, 0.0), p.initial(x));
            EXPECT_GT(p.kappa(x, 0.5), 0.0);
        }
        EXPECT_NEAR(p.kappa(0.0, 0.0), c.kind == KappaKind::example1 ? std::exp(1.0) : 7.0 * (std::log(5.0) + 1.0) / 4.0,
                    1e-14);
    }
}
