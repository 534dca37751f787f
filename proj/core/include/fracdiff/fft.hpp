#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fracdiff {

using cplx = std::complex<double>;

/// In-place radix-2 transform of a power-of-two length.
/// forward: X_k = sum_j x_j e^{-2 pi i jk/n}; inverse includes the 1/n factor.
class Radix2Fft {
public:
    explicit Radix2Fft(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    void forward(std::span<cplx> data) const;
    void inverse(std::span<cplx> data) const;

private:
    std::size_t n_;
    std::size_t log2n_;
    std::vector<cplx> twiddle_;  // e^{-2 pi i k/n}, k < n/2
    std::vector<std::size_t> bitrev_;

    void transform(std::span<cplx> data, bool inverse) const;
};

/// Scratch space for Dft; one per concurrent caller.
struct DftWorkspace {
    std::vector<cplx> buffer;
};

/// DFT of arbitrary length: radix-2 when n is a power of two, Bluestein
/// chirp-z on top of a power-of-two core otherwise.
class Dft {
public:
    explicit Dft(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    bool is_power_of_two() const noexcept { return bluestein_len_ == 0; }

    void forward(std::span<cplx> data, DftWorkspace& ws) const;
    void inverse(std::span<cplx> data, DftWorkspace& ws) const;
    void forward(std::span<cplx> data) const;
    void inverse(std::span<cplx> data) const;

private:
    std::size_t n_;
    std::size_t bluestein_len_ = 0;
    Radix2Fft core_;
    std::vector<cplx> chirp_;       // e^{-i pi k^2 / n}
    std::vector<cplx> chirp_hat_;   // transform of the conjugate chirp filter

    void bluestein(std::span<cplx> data, bool inverse, DftWorkspace& ws) const;
};

std::size_t next_power_of_two(std::size_t n);

/// O(n^2) reference transform.
std::vector<cplx> direct_dft(std::span<const cplx> x, bool inverse = false);

}  // namespace fracdiff
