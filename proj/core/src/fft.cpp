#include "fracdiff/fft.hpp"

#include "fracdiff/error.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace fracdiff {

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

namespace {

// Plain product; std::complex operator* carries inf/nan recovery that is
// several times slower and never needed here.
inline cplx mul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t core_length(std::size_t n) {
    detail::require(n >= 1, "Dft: length must be positive");
    return power_of_two(n) ? n : next_power_of_two(2 * n - 1);
}

// e^{-2 pi i num/den} with the angle reduced exactly before the trig call.
cplx unit_root(std::size_t num, std::size_t den) {
    num %= den;
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

Radix2Fft::Radix2Fft(std::size_t n) : n_(n), log2n_(0) {
    detail::require(power_of_two(n), "Radix2Fft: length must be a power of two");
    while ((std::size_t{1} << log2n_) < n) ++log2n_;
    twiddle_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) twiddle_[k] = unit_root(k, n);
    bitrev_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < log2n_; ++b) r |= ((i >> b) & 1u) << (log2n_ - 1 - b);
        bitrev_[i] = r;
    }
}

void Radix2Fft::transform(std::span<cplx> a, bool inverse) const {
    detail::require_size(a.size(), n_, "Radix2Fft");
    for (std::size_t i = 0; i < n_; ++i) {
        if (i < bitrev_[i]) std::swap(a[i], a[bitrev_[i]]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n_ / len;
        for (std::size_t start = 0; start < n_; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const cplx w = inverse ? std::conj(twiddle_[k * stride]) : twiddle_[k * stride];
                const cplx u = a[start + k];
                const cplx v = mul(a[start + k + half], w);
                a[start + k] = u + v;
                a[start + k + half] = u - v;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n_);
        for (auto& z : a) z *= inv;
    }
}

void Radix2Fft::forward(std::span<cplx> data) const { transform(data, false); }
void Radix2Fft::inverse(std::span<cplx> data) const { transform(data, true); }

Dft::Dft(std::size_t n)
    : n_(n), bluestein_len_(power_of_two(n) ? 0 : core_length(n)),
      core_(core_length(n)) {
    if (bluestein_len_ == 0) return;
    const std::size_t m = bluestein_len_;
    chirp_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the phase argument small for large k.
        chirp_[k] = unit_root((k * k) % (2 * n), 2 * n);
    }
    chirp_hat_.assign(m, cplx{});
    chirp_hat_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) {
        chirp_hat_[k] = std::conj(chirp_[k]);
        chirp_hat_[m - k] = std::conj(chirp_[k]);
    }
    core_.forward(chirp_hat_);
}

void Dft::bluestein(std::span<cplx> x, bool inverse, DftWorkspace& ws) const {
    const std::size_t m = bluestein_len_;
    auto& buf = ws.buffer;
    buf.assign(m, cplx{});
    // The inverse transform is the conjugate of the forward transform of conj(x).
    for (std::size_t k = 0; k < n_; ++k) buf[k] = mul(inverse ? std::conj(x[k]) : x[k], chirp_[k]);
    core_.forward(buf);
    for (std::size_t k = 0; k < m; ++k) buf[k] = mul(buf[k], chirp_hat_[k]);
    core_.inverse(buf);
    for (std::size_t k = 0; k < n_; ++k) {
        const cplx y = mul(buf[k], chirp_[k]);
        x[k] = inverse ? std::conj(y) / static_cast<double>(n_) : y;
    }
}

void Dft::forward(std::span<cplx> data, DftWorkspace& ws) const {
    detail::require_size(data.size(), n_, "Dft::forward");
    if (bluestein_len_ == 0) {
        core_.forward(data);
    } else {
        bluestein(data, false, ws);
    }
}

void Dft::inverse(std::span<cplx> data, DftWorkspace& ws) const {
    detail::require_size(data.size(), n_, "Dft::inverse");
    if (bluestein_len_ == 0) {
        core_.inverse(data);
    } else {
        bluestein(data, true, ws);
    }
}

void Dft::forward(std::span<cplx> data) const {
    DftWorkspace ws;
    forward(data, ws);
}

void Dft::inverse(std::span<cplx> data) const {
    DftWorkspace ws;
    inverse(data, ws);
}

std::vector<cplx> direct_dft(std::span<const cplx> x, bool inverse) {
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx sum{};
        for (std::size_t j = 0; j < n; ++j) {
            const cplx w = unit_root(j * k, n);
            sum += x[j] * (inverse ? std::conj(w) : w);
        }
        out[k] = inverse ? sum / static_cast<double>(n) : sum;
    }
    return out;
}

}  // namespace fracdiff
