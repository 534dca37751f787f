#include "fracdiff/ifl.hpp"

#include "fracdiff/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace fracdiff {

double normalization_constant(double alpha) {
    detail::require(alpha > 0.0 && alpha < 2.0, "normalization constant: alpha must lie in (0,2)");
    const double log_c = (alpha - 1.0) * std::numbers::ln2 + std::log(alpha) +
                         std::lgamma((alpha + 1.0) / 2.0) - 0.5 * std::log(std::numbers::pi) -
                         std::lgamma(1.0 - alpha / 2.0);
    return std::exp(log_c);
}

IflDiscretization build_ifl(double alpha, double mu, double l, std::size_t N) {
    detail::require(alpha > 0.0 && alpha < 2.0, "IFL: alpha must lie in (0,2)");
    detail::require(mu > alpha && mu <= 2.0, "IFL: mu must lie in (alpha, 2]");
    detail::require(l > 0.0, "IFL: half-width l must be positive");
    detail::require(N >= 3, "IFL: need at least 3 intervals");

    IflDiscretization d;
    d.alpha = alpha;
    d.mu = mu;
    d.nu = mu - alpha;
    d.kappa_mu = (mu == 2.0) ? 2 : 1;
    d.l = l;
    d.N = N;
    d.h = 2.0 * l / static_cast<double>(N);
    d.c_norm = normalization_constant(alpha);
    d.scale = d.c_norm / (d.nu * std::pow(d.h, alpha));

    const double nu = d.nu;
    const double C = d.scale;
    const double near = std::pow(2.0, nu) + d.kappa_mu - 1.0;
    auto ring = [&](double k) { return (std::pow(k + 1.0, nu) - std::pow(k - 1.0, nu)) / std::pow(k, mu); };

    // Kahan summation: terms decay like l^{-1-alpha} and the dominance margin is O(N^{-alpha}).
    double sum = 0.0, carry = 0.0;
    for (std::size_t k = 2; k + 1 <= N; ++k) {
        const double y = ring(static_cast<double>(k)) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    const double Nd = static_cast<double>(N);
    const double far = (std::pow(Nd, nu) - std::pow(Nd - 1.0, nu)) / std::pow(Nd, mu) +
                       2.0 * nu / (alpha * std::pow(Nd, alpha));

    const std::size_t n = N - 1;
    d.first_col.resize(n);
    d.first_col[0] = C * (sum + far + near);
    if (n >= 2) d.first_col[1] = -C * near / 2.0;
    for (std::size_t k = 2; k < n; ++k) d.first_col[k] = -C * ring(static_cast<double>(k)) / 2.0;
    return d;
}

IflDiscretization build_ifl(double alpha, double l, std::size_t N) {
    return build_ifl(alpha, 1.0 + alpha / 2.0, l, N);
}

double toeplitz_dominance_gap(std::span<const double> first_col) {
    const std::size_t n = first_col.size();
    detail::require(n >= 1, "dominance gap: empty column");
    // prefix[k] = sum_{j=1}^{k} |first_col[j]|
    std::vector<double> prefix(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) prefix[k] = prefix[k - 1] + std::fabs(first_col[k]);
    double gap = INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
        const double off = prefix[i] + prefix[n - 1 - i];
        gap = std::min(gap, std::fabs(first_col[0]) - off);
    }
    return gap;
}

double diagonal_dominance_gap(const IflDiscretization& d) { return toeplitz_dominance_gap(d.first_col); }

void write_first_column_csv(std::ostream& out, const IflDiscretization& d) {
    out << "# alpha=" << d.alpha << " mu=" << d.mu << " l=" << d.l << " N=" << d.N << '\n';
    out << "k,value\n";
    out << std::setprecision(17);
    for (std::size_t k = 0; k < d.first_col.size(); ++k) out << k + 1 << ',' << d.first_col[k] << '\n';
}

}  // namespace fracdiff
