#pragma once

#include <cstddef>
#include <vector>

namespace fracdiff {

/// Gauss rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta, nodes ascending.
/// Extended precision is kept so that callers can build kernels whose error
/// target sits close to double round-off.
struct GaussRule {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};

/// Golub-Welsch construction from the Jacobi three-term recurrence.
/// Requires n >= 1, alpha > -1, beta > -1.
GaussRule gauss_jacobi(std::size_t n, long double alpha, long double beta);

inline GaussRule gauss_legendre(std::size_t n) { return gauss_jacobi(n, 0.0L, 0.0L); }

}  // namespace fracdiff
