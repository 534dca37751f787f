#include "fracdiff/problems.hpp"

#include "fracdiff/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fracdiff {

double hypergeom_terminating(double a, int s, double x2) {
    detail::require(s >= 0, "hypergeom_terminating: s must be a non-negative integer");
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < s; ++k) {
        term *= (a + k) * (k - s) / ((0.5 + k) * (k + 1.0)) * x2;
        sum += term;
    }
    return sum;
}

double bump_profile(int s, double alpha, double x) {
    const double ax = std::fabs(x);
    if (ax >= 1.0) return 0.0;
    return std::exp((s + alpha / 2.0) * std::log1p(-x * x));
}

double exact_ifl_of_bump(int s, double alpha, double x) {
    detail::require(std::fabs(x) <= 1.0 + 1e-12, "exact_ifl_of_bump: |x| must not exceed 1");
    const double log_const = alpha * std::numbers::ln2 + std::lgamma((alpha + 1.0) / 2.0) +
                             std::lgamma(s + 1.0 + alpha / 2.0) - 0.5 * std::log(std::numbers::pi) -
                             std::lgamma(s + 1.0);
    return std::exp(log_const) * hypergeom_terminating((alpha + 1.0) / 2.0, s, x * x);
}

double example_kappa(KappaKind kind, double x, double t) {
    switch (kind) {
        case KappaKind::example1:
            return (1.0 + t) * std::exp(0.8 * x + 1.0);
        case KappaKind::example2:
            return 7.0 * (std::log(5.0 + 2.0 * x + t) + std::cos(x * t)) / 4.0;
    }
    throw InvalidArgument("example_kappa: unknown kind");
}

double example_source(KappaKind kind, int s, double alpha, double gamma, double x, double t) {
    detail::require(std::fabs(x) <= 1.0 + 1e-12, "example_source: x outside [-1, 1]");
    detail::require(t >= 0.0, "example_source: t must be non-negative");
    const double time_part = std::pow(t, gamma) + 1.0;
    return std::tgamma(1.0 + gamma) * bump_profile(s, alpha, x) +
           example_kappa(kind, x, t) * exact_ifl_of_bump(s, alpha, x) * time_part;
}

ProblemSpec ManufacturedCase::spec() const {
    ProblemSpec p;
    p.name = name;
    p.gamma = gamma;
    p.alpha = alpha;
    p.l = 1.0;
    p.T = 1.0;
    const auto k = kind;
    const int s_ = s;
    const double a = alpha, g = gamma;
    p.kappa = [k](double x, double t) { return example_kappa(k, x, t); };
    p.source = [k, s_, a, g](double x, double t) { return example_source(k, s_, a, g, x, t); };
    p.initial = [s_, a](double x) { return bump_profile(s_, a, x); };
    p.exact = [s_, a, g](double x, double t) { return bump_profile(s_, a, x) * (std::pow(t, g) + 1.0); };
    p.kappa_x_independent = false;
    return p;
}

ManufacturedCase make_case(std::string_view name, double alpha, double gamma, int s) {
    detail::require(alpha > 0.0 && alpha < 2.0, "make_case: alpha must lie in (0,2)");
    detail::require(gamma > 0.0 && gamma < 1.0, "make_case: gamma must lie in (0,1)");
    ManufacturedCase c;
    c.name = std::string(name);
    c.alpha = alpha;
    c.gamma = gamma;
    if (name == "example1") {
        c.kind = KappaKind::example1;
        c.s = 3;
    } else if (name == "example2") {
        c.kind = KappaKind::example2;
        c.s = 1;
    } else {
        throw InvalidArgument("unknown case '" + std::string(name) + "' (expected example1 or example2)");
    }
    if (s > 0) c.s = s;
    return c;
}

std::vector<std::string> case_names() { return {"example1", "example2"}; }

}  // namespace fracdiff
