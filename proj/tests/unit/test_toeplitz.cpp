#include "fracdiff/dense.hpp"
#include "fracdiff/error.hpp"
#include "fracdiff/fft.hpp"
#include "fracdiff/toeplitz.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fracdiff;

namespace {

std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed) {
    const auto re = oracle::random_vector(n, seed);
    const auto im = oracle::random_vector(n, seed + 7);
    std::vector<cplx> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = {re[i], im[i]};
    return z;
}

}  // namespace

TEST(Dft, MatchesDirectTransformAllLengths) {
    for (std::size_t n = 1; n <= 64; ++n) {
        const auto x = random_complex(n, n);
        const auto ref = oracle::dft(x);
        auto y = x;
        Dft(n).forward(y);
        double scale = 0.0, err = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            scale = std::max(scale, (double)std::abs(ref[k]));
            err = std::max(err, (double)std::abs(std::complex<long double>(y[k].real(), y[k].imag()) - ref[k]));
        }
        EXPECT_LE(err, 1e-12 * scale) << "n=" << n;
    }
}

TEST(Dft, RoundTripNonPowerOfTwo) {
    for (std::size_t n : {3u, 63u, 127u, 255u, 1000u}) {
        const auto x = random_complex(n, 3 * n);
        auto y = x;
        const Dft dft(n);
        DftWorkspace ws;
        dft.forward(y, ws);
        dft.inverse(y, ws);
        for (std::size_t k = 0; k < n; ++k) EXPECT_LE(std::abs(y[k] - x[k]), 1e-12) << "n=" << n;
    }
}

TEST(Dft, LibraryDirectTransformAgreesWithOracle) {
    const auto x = random_complex(12, 5);
    const auto a = direct_dft(x);
    const auto b = oracle::dft(x);
    for (std::size_t k = 0; k < 12; ++k) EXPECT_LE(std::abs(std::complex<long double>(a[k].real(), a[k].imag()) - b[k]), 1e-13);
}

TEST(Radix2Fft, RejectsOtherLengths) { EXPECT_THROW(Radix2Fft(12), InvalidArgument); }

TEST(ToeplitzOperator, TridiagonalByHand) {
    const ToeplitzOperator op({2.0, -1.0, 0.0});
    const auto y = op.apply(std::vector<double>{1.0, 1.0, 1.0});
    EXPECT_NEAR(y[0], 1.0, 1e-15);
    EXPECT_NEAR(y[1], 0.0, 1e-15);
    EXPECT_NEAR(y[2], 1.0, 1e-15);
}

TEST(ToeplitzOperator, UnitVectorGivesColumn) {
    const auto col = oracle::random_vector(77, 9);
    const ToeplitzOperator op(col);
    EXPECT_GE(op.embed_length(), 2 * 77 - 1);
    std::vector<double> e1(77, 0.0);
    e1[0] = 1.0;
    const auto y = op.apply(e1);
    for (std::size_t i = 0; i < 77; ++i) EXPECT_NEAR(y[i], col[i], 1e-12 * oracle::max_abs(col));
}

TEST(ToeplitzOperator, MatchesDenseMultiply) {
    for (std::size_t n : {1u, 2u, 31u, 200u, 511u, 512u}) {
        const auto col = oracle::random_vector(n, n + 1);
        const auto v = oracle::random_vector(n, n + 2);
        const auto ref = oracle::dense_toeplitz_multiply(col, v);
        const auto y = toeplitz_matvec(ToeplitzOperator(col), v);
        EXPECT_LE(oracle::max_abs_diff(y, ref), 1e-11 * oracle::max_abs(ref)) << "n=" << n;
    }
}

TEST(ToeplitzOperator, DimensionMismatch) {
    const ToeplitzOperator op({1.0, 0.5});
    EXPECT_THROW(op.apply(std::vector<double>{1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST(StrangColumn, IndexPattern) {
    const std::vector<double> a5{1, 2, 3, 4, 5};
    EXPECT_EQ(strang_first_column(a5), (std::vector<double>{1, 2, 3, 3, 2}));
    const std::vector<double> a4{1, 2, 3, 4};
    EXPECT_EQ(strang_first_column(a4), (std::vector<double>{1, 2, 3, 2}));
    const std::vector<double> a2{1, 2};
    EXPECT_EQ(strang_first_column(a2), (std::vector<double>{1, 2}));
    const std::vector<double> a1{1};
    EXPECT_THROW(strang_first_column(a1), InvalidArgument);
}

TEST(StrangColumn, IsSymmetricCirculant) {
    for (std::size_t n : {6u, 7u, 63u, 64u}) {
        const auto c = strang_first_column(oracle::random_vector(n, n));
        for (std::size_t k = 1; k < n; ++k) EXPECT_EQ(c[k], c[n - k]) << "n=" << n << " k=" << k;
    }
}

TEST(CirculantPreconditioner, IdentityColumn) {
    std::vector<double> e1(10, 0.0);
    e1[0] = 1.0;
    const CirculantPreconditioner p(e1, 1.0, 1.0);
    for (double e : p.total_eigs()) EXPECT_NEAR(e, 2.0, 1e-14);
    const auto v = oracle::random_vector(10, 4);
    const auto z = p.solve(v);
    for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(z[i], v[i] / 2.0, 1e-14);
}

TEST(CirculantPreconditioner, StrangEigenvaluesInGershgorinDisc) {
    for (double alpha : {0.4, 1.1, 1.5, 1.9}) {
        for (std::size_t N : {8u, 33u, 128u}) {
            const auto d = build_ifl(alpha, 1.0, N);
            const auto p = build_preconditioner(d, 1.0, 1.0);
            const double a11 = d.first_col[0];
            for (double lam : p.lambda()) {
                EXPECT_GT(lam, 0.0);
                EXPECT_LT(lam, 2.0 * a11);
            }
        }
    }
}

TEST(CirculantPreconditioner, EigenvaluesMatchDenseCirculant) {
    const auto d = build_ifl(1.5, 1.75, 1.0, 32);
    const auto c = strang_first_column(d.first_col);
    const CirculantPreconditioner p(c, 0.0, 1.0);
    auto lam = std::vector<double>(p.lambda().begin(), p.lambda().end());
    std::sort(lam.begin(), lam.end());
    const auto eig = jacobi_eigenvalues(DenseMatrix::circulant(c));
    ASSERT_EQ(eig.size(), lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) EXPECT_NEAR(lam[i], eig[i], 1e-10 * d.first_col[0]);
}

TEST(CirculantPreconditioner, SolveMatchesDenseLu) {
    const std::size_t n = 100;
    // SPD circulant: strictly dominant symmetric column
    auto c = oracle::random_vector(n, 11, -0.5, 0.5);
    for (std::size_t k = 1; k < n; ++k) c[n - k] = c[k];
    c[0] = 60.0;
    const double shift = 0.7, kbar = 1.3;
    const CirculantPreconditioner p(c, shift, kbar);
    std::vector<std::vector<double>> dense(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dense[i][j] = kbar * c[(i + n - j) % n] + (i == j ? shift : 0.0);
    const auto v = oracle::random_vector(n, 12);
    const auto ref = oracle::gauss_solve(dense, v);
    const auto z = precond_solve(p, v);
    EXPECT_LE(oracle::max_abs_diff(z, ref) / oracle::max_abs(ref), 1e-11);
}

TEST(CirculantPreconditioner, InverseThenForwardIsIdentity) {
    const auto d = build_ifl(1.9, 1.0, 256);
    const auto p = build_preconditioner(d, 3.5, 2.2);
    const auto v = oracle::random_vector(255, 21);
    PreconditionerWorkspace ws;
    std::vector<double> z(255), back(255);
    p.solve(v, z, ws);
    p.apply(z, back, ws);
    EXPECT_LE(oracle::max_abs_diff(back, v), 1e-12 * oracle::max_abs(v));
    // ||P^{-1}||_2 <= 1 / (shift + kbar min lambda)
    const double bound = 1.0 / (3.5 + 2.2 * *std::min_element(p.lambda().begin(), p.lambda().end()));
    EXPECT_LE(oracle::norm2(z), bound * oracle::norm2(v) * (1 + 1e-12));
}

TEST(CirculantPreconditioner, RejectsNonPositiveSpectrum) {
    const std::vector<double> c{-1.0, 0.1, 0.1};
    EXPECT_THROW(CirculantPreconditioner(c, 0.5, 1.0), ConstructionFailure);
    const std::vector<double> asym{1.0, 0.3, 0.1, 0.0};
    EXPECT_THROW(CirculantPreconditioner(asym, 0.5, 1.0), ConstructionFailure);
}

TEST(CirculantPreconditioner, ReusedEigenvalues) {
    const auto d = build_ifl(1.5, 1.0, 64);
    const auto p = build_preconditioner(d, 1.0, 1.0);
    const auto q = p.with_coefficients(4.0, 0.5);
    for (std::size_t k = 0; k < q.size(); ++k) EXPECT_DOUBLE_EQ(q.total_eigs()[k], 4.0 + 0.5 * p.lambda()[k]);
}
