#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace fracdiff {

/// c_{1,alpha} = 2^{alpha-1} alpha Gamma((alpha+1)/2) / (sqrt(pi) Gamma(1 - alpha/2)).
double normalization_constant(double alpha);

/// Finite-difference integral fractional Laplacian on (-l, l) with N intervals.
/// The matrix acts on the N-1 interior nodes and is symmetric Toeplitz, so
/// only its first column is stored.
struct IflDiscretization {
    double alpha = 1.0;
    double mu = 1.5;
    double nu = 0.5;       // mu - alpha
    int kappa_mu = 1;      // 2 when mu == 2
    double l = 1.0;
    std::size_t N = 0;
    double h = 0.0;
    double c_norm = 0.0;
    double scale = 0.0;    // c_norm / (nu h^alpha)
    std::vector<double> first_col;

    std::size_t dimension() const noexcept { return first_col.size(); }
    /// Interior grid point x_i, i = 1..N-1.
    double node(std::size_t i) const { return -l + static_cast<double>(i) * h; }
};

/// Throws InvalidArgument unless 0 < alpha < 2, alpha < mu <= 2, l > 0 and N >= 3.
IflDiscretization build_ifl(double alpha, double mu, double l, std::size_t N);
/// Same with the default splitting mu = 1 + alpha/2.
IflDiscretization build_ifl(double alpha, double l, std::size_t N);

/// min_i (|a_ii| - sum_{j != i} |a_ij|) of the symmetric Toeplitz matrix with
/// the given first column, in O(n).
double toeplitz_dominance_gap(std::span<const double> first_col);
double diagonal_dominance_gap(const IflDiscretization& d);

/// Writes "k,value" rows of the first column (k is 1-based).
void write_first_column_csv(std::ostream& out, const IflDiscretization& d);

}  // namespace fracdiff
