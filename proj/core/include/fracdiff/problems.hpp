#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fracdiff {

/// D_t^gamma u = -kappa(x,t) (-Laplace)^{alpha/2} u + f on (-l, l) x (0, T],
/// u = 0 outside (-l, l), u(x, 0) = initial(x).
struct ProblemSpec {
    std::string name;
    double gamma = 0.5;
    double alpha = 1.5;
    double l = 1.0;
    double T = 1.0;
    std::function<double(double, double)> kappa;
    std::function<double(double, double)> source;
    std::function<double(double)> initial;
    std::function<double(double, double)> exact;  // empty when unknown
    /// kappa depends on t only; enables CG and the spectral clustering checks.
    bool kappa_x_independent = false;
};

/// 2F1(a, -s; 1/2; x2) for integer s >= 0 (a polynomial of degree s in x2).
double hypergeom_terminating(double a, int s, double x2);

/// (1 - x^2)^{s + alpha/2} inside [-1, 1], zero outside.
double bump_profile(int s, double alpha, double x);

/// Exact (-Laplace)^{alpha/2} of bump_profile at |x| <= 1.
double exact_ifl_of_bump(int s, double alpha, double x);

enum class KappaKind { example1, example2 };

double example_kappa(KappaKind kind, double x, double t);

/// Source term making (1-x^2)^{s+alpha/2} (t^gamma + 1) an exact solution.
double example_source(KappaKind kind, int s, double alpha, double gamma, double x, double t);

struct ManufacturedCase {
    std::string name;
    KappaKind kind = KappaKind::example1;
    int s = 3;
    double alpha = 1.5;
    double gamma = 0.5;

    ProblemSpec spec() const;
};

/// "example1" (kappa = (1+t) e^{0.8x+1}, s = 3) or "example2"
/// (kappa = 7[ln(5+2x+t) + cos(xt)]/4, s = 1). A positive `s` overrides the default.
ManufacturedCase make_case(std::string_view name, double alpha, double gamma, int s = 0);
std::vector<std::string> case_names();

}  // namespace fracdiff
