#include "fracdiff/quadrature.hpp"

#include "fracdiff/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fracdiff {

namespace {

// Implicit QL on a symmetric tridiagonal matrix. Only the first row of the
// eigenvector matrix is tracked since Golub-Welsch needs nothing else.
void tridiagonal_ql(std::vector<long double>& d, std::vector<long double>& e,
                    std::vector<long double>& z0) {
    const std::size_t n = d.size();
    const long double eps = std::numeric_limits<long double>::epsilon();
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m = l;
        do {
            for (m = l; m + 1 < n; ++m) {
                const long double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (++iter > 200) throw ConstructionFailure("Golub-Welsch: QL iteration did not converge");
                long double g = (d[l + 1] - d[l]) / (2.0L * e[l]);
                long double r = std::hypot(g, 1.0L);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                long double s = 1.0L, c = 1.0L, p = 0.0L;
                bool deflated = false;
                for (std::size_t ii = m; ii-- > l;) {
                    const long double f = s * e[ii];
                    const long double b = c * e[ii];
                    r = std::hypot(f, g);
                    e[ii + 1] = r;
                    if (r == 0.0L) {
                        d[ii + 1] -= p;
                        e[m] = 0.0L;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[ii + 1] - p;
                    r = (d[ii] - g) * s + 2.0L * c * b;
                    p = s * r;
                    d[ii + 1] = g + p;
                    g = c * r - b;
                    const long double zf = z0[ii + 1];
                    z0[ii + 1] = s * z0[ii] + c * zf;
                    z0[ii] = c * z0[ii] - s * zf;
                }
                if (deflated) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0L;
            }
        } while (m != l);
    }
}

}  // namespace

GaussRule gauss_jacobi(std::size_t n, long double alpha, long double beta) {
    detail::require(n >= 1, "gauss_jacobi: need at least one node");
    detail::require(alpha > -1.0L && beta > -1.0L, "gauss_jacobi: exponents must exceed -1");

    const long double ab = alpha + beta;
    std::vector<long double> diag(n), off(n, 0.0L), z0(n, 0.0L);
    for (std::size_t k = 0; k < n; ++k) {
        const long double kk = static_cast<long double>(k);
        const long double s = 2.0L * kk + ab;
        diag[k] = (k == 0) ? (beta - alpha) / (ab + 2.0L)
                           : (beta * beta - alpha * alpha) / (s * (s + 2.0L));
    }
    for (std::size_t k = 1; k < n; ++k) {
        const long double kk = static_cast<long double>(k);
        const long double s = 2.0L * kk + ab;
        long double b2;
        if (k == 1) {
            b2 = 4.0L * (1.0L + alpha) * (1.0L + beta) / ((2.0L + ab) * (2.0L + ab) * (3.0L + ab));
        } else {
            b2 = 4.0L * kk * (kk + alpha) * (kk + beta) * (kk + ab) /
                 (s * s * (s + 1.0L) * (s - 1.0L));
        }
        off[k - 1] = std::sqrt(b2);
    }
    z0[0] = 1.0L;

    tridiagonal_ql(diag, off, z0);

    const long double log_mu0 = (ab + 1.0L) * std::log(2.0L) + std::lgamma(alpha + 1.0L) +
                                std::lgamma(beta + 1.0L) - std::lgamma(ab + 2.0L);
    const long double mu0 = std::exp(log_mu0);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return diag[i] < diag[j]; });

    GaussRule rule;
    rule.nodes.reserve(n);
    rule.weights.reserve(n);
    for (auto i : order) {
        rule.nodes.push_back(diag[i]);
        rule.weights.push_back(mu0 * z0[i] * z0[i]);
    }
    return rule;
}

}  // namespace fracdiff
