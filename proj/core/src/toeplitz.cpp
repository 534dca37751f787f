#include "fracdiff/toeplitz.hpp"

#include "fracdiff/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracdiff {

ToeplitzOperator::ToeplitzOperator(std::vector<double> first_col)
    : col_(std::move(first_col)), fft_(next_power_of_two(col_.empty() ? 1 : 2 * col_.size() - 1)) {
    detail::require(!col_.empty(), "ToeplitzOperator: empty first column");
    const std::size_t n = col_.size();
    const std::size_t L = fft_.size();
    spectrum_.assign(L, cplx{});
    spectrum_[0] = col_[0];
    for (std::size_t k = 1; k < n; ++k) {
        spectrum_[k] = col_[k];
        spectrum_[L - k] = col_[k];
    }
    fft_.forward(spectrum_);
    // The embedding column is symmetric, so its transform is real; drop the round-off.
    for (auto& z : spectrum_) z = {z.real(), 0.0};
}

void ToeplitzOperator::apply(std::span<const double> v, std::span<double> out, ToeplitzWorkspace& ws) const {
    const std::size_t n = col_.size();
    detail::require_size(v.size(), n, "ToeplitzOperator::apply (input)");
    detail::require_size(out.size(), n, "ToeplitzOperator::apply (output)");
    auto& buf = ws.buffer;
    buf.assign(fft_.size(), cplx{});
    for (std::size_t i = 0; i < n; ++i) buf[i] = v[i];
    fft_.forward(buf);
    for (std::size_t k = 0; k < buf.size(); ++k) buf[k] *= spectrum_[k].real();
    fft_.inverse(buf);
    for (std::size_t i = 0; i < n; ++i) out[i] = buf[i].real();
}

std::vector<double> ToeplitzOperator::apply(std::span<const double> v) const {
    ToeplitzWorkspace ws;
    std::vector<double> out(col_.size());
    apply(v, out, ws);
    return out;
}

std::vector<double> strang_first_column(std::span<const double> a) {
    const std::size_t n = a.size();
    detail::require(n >= 2, "strang_first_column: need n >= 2");
    const std::size_t N = n + 1;
    std::vector<double> c;
    c.reserve(n);
    for (std::size_t k = 0; k < (N + 1) / 2; ++k) c.push_back(a[k]);
    for (std::size_t k = N / 2; k >= 2 && c.size() < n; --k) c.push_back(a[k - 1]);
    return c;
}

CirculantPreconditioner::CirculantPreconditioner(std::span<const double> col, double shift, double kappa_bar) {
    const std::size_t n = col.size();
    detail::require(n >= 1, "CirculantPreconditioner: empty column");
    dft_ = std::make_shared<const Dft>(n);
    std::vector<cplx> z(col.begin(), col.end());
    dft_->forward(z);
    double scale = 0.0;
    for (const auto& v : z) scale = std::max(scale, std::abs(v));
    lambda_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (std::fabs(z[k].imag()) > 1e-10 * std::max(scale, 1e-300)) {
            throw ConstructionFailure("circulant preconditioner: spectrum is not real (column not symmetric)");
        }
        lambda_[k] = z[k].real();
    }
    finish(shift, kappa_bar);
}

CirculantPreconditioner CirculantPreconditioner::with_coefficients(double shift, double kappa_bar) const {
    CirculantPreconditioner p;
    p.dft_ = dft_;
    p.lambda_ = lambda_;
    p.finish(shift, kappa_bar);
    return p;
}

void CirculantPreconditioner::finish(double shift, double kappa_bar) {
    detail::require(shift >= 0.0 && std::isfinite(shift), "preconditioner: shift must be finite and >= 0");
    detail::require(kappa_bar > 0.0 && std::isfinite(kappa_bar), "preconditioner: kappa_bar must be positive");
    shift_ = shift;
    kappa_bar_ = kappa_bar;
    total_.resize(lambda_.size());
    for (std::size_t k = 0; k < lambda_.size(); ++k) {
        total_[k] = shift + kappa_bar * lambda_[k];
        if (!(total_[k] > 0.0)) {
            throw ConstructionFailure("circulant preconditioner: eigenvalue " + std::to_string(total_[k]) +
                                      " is not positive");
        }
    }
}

void CirculantPreconditioner::diagonal_apply(std::span<const double> v, std::span<double> out,
                                             PreconditionerWorkspace& ws, double (*scale)(double)) const {
    const std::size_t n = lambda_.size();
    detail::require_size(v.size(), n, "CirculantPreconditioner (input)");
    detail::require_size(out.size(), n, "CirculantPreconditioner (output)");
    ws.data.assign(v.begin(), v.end());
    dft_->forward(ws.data, ws.dft);
    for (std::size_t k = 0; k < n; ++k) ws.data[k] *= scale(total_[k]);
    dft_->inverse(ws.data, ws.dft);
    for (std::size_t i = 0; i < n; ++i) out[i] = ws.data[i].real();
}

void CirculantPreconditioner::solve(std::span<const double> v, std::span<double> out,
                                    PreconditionerWorkspace& ws) const {
    diagonal_apply(v, out, ws, [](double e) { return 1.0 / e; });
}

std::vector<double> CirculantPreconditioner::solve(std::span<const double> v) const {
    PreconditionerWorkspace ws;
    std::vector<double> out(size());
    solve(v, out, ws);
    return out;
}

void CirculantPreconditioner::apply(std::span<const double> v, std::span<double> out,
                                    PreconditionerWorkspace& ws) const {
    diagonal_apply(v, out, ws, [](double e) { return e; });
}

void CirculantPreconditioner::inverse_sqrt(std::span<const double> v, std::span<double> out,
                                           PreconditionerWorkspace& ws) const {
    diagonal_apply(v, out, ws, [](double e) { return 1.0 / std::sqrt(e); });
}

CirculantPreconditioner build_preconditioner(const IflDiscretization& d, double shift, double kappa_bar) {
    detail::require(shift > 0.0, "build_preconditioner: shift must be positive");
    return CirculantPreconditioner(strang_first_column(d.first_col), shift, kappa_bar);
}

}  // namespace fracdiff
