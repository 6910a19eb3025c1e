#include "ewt/ewt1d.hpp"

#include "ewt/fft.hpp"

#include <algorithm>
#include <cmath>

namespace ewt {

double beta(double x)
{
    if (x <= 0.0) {
        return 0.0;
    }
    if (x >= 1.0) {
        return 1.0;
    }
    // Same polynomial expanded around 1/2, where it is 1/2 plus an odd
    // function; beta(x) + beta(1 - x) = 1 then holds to rounding.
    const double u = x - 0.5;
    const double u2 = u * u;
    return 0.5 + u * (35.0 / 16.0 + u2 * (-35.0 / 4.0 + u2 * (21.0 - 20.0 * u2)));
}

double choose_gamma(const BoundarySet& boundaries)
{
    const auto w = boundaries.values();
    const std::size_t n_bands = boundaries.bands();
    if (n_bands < 2) {
        return 0.99;
    }
    double bound = 1.0;
    for (std::size_t n = 1; n + 1 <= n_bands; ++n) {
        bound = std::min(bound, (w[n + 1] - w[n]) / (w[n + 1] + w[n]));
    }
    return std::min(0.99 * bound, 0.99);
}

void check_transitions(const BoundarySet& boundaries, double gamma)
{
    if (!(gamma > 0.0) || !(gamma < 1.0)) {
        throw InvalidArgument("gamma must lie in (0, 1)");
    }
    const auto w = boundaries.values();
    // The last boundary, pi, carries no transition.
    for (std::size_t n = 1; n + 2 <= boundaries.bands(); ++n) {
        if ((1.0 + gamma) * w[n] > (1.0 - gamma) * w[n + 1]) {
            throw InvalidArgument("transition areas around boundaries " + std::to_string(n) + " and " +
                                  std::to_string(n + 1) + " overlap for gamma " + std::to_string(gamma));
        }
    }
}

double band_window(const BoundarySet& boundaries, double gamma, std::size_t band, double abs_omega)
{
    const std::size_t n_bands = boundaries.bands();
    if (band >= n_bands) {
        throw InvalidArgument("band index out of range");
    }
    if (n_bands == 1) {
        return 1.0;
    }
    const auto w = boundaries.values();
    const double a = std::abs(abs_omega);
    constexpr double half_pi = kPi / 2.0;

    const bool has_upper = band + 1 < n_bands;
    if (has_upper) {
        const double up = w[band + 1];
        if (a >= (1.0 - gamma) * up) {
            if (a > (1.0 + gamma) * up) {
                return 0.0;
            }
            return std::cos(half_pi * beta((a - (1.0 - gamma) * up) / (2.0 * gamma * up)));
        }
    }
    if (band == 0) {
        return 1.0;
    }
    const double lo = w[band];
    if (a >= (1.0 + gamma) * lo) {
        return 1.0;
    }
    if (a >= (1.0 - gamma) * lo) {
        return std::sin(half_pi * beta((a - (1.0 - gamma) * lo) / (2.0 * gamma * lo)));
    }
    return 0.0;
}

FilterBank1D build_bank_on_axis(const BoundarySet& boundaries, double gamma, std::span<const double> abs_omega)
{
    check_transitions(boundaries, gamma);
    FilterBank1D bank;
    bank.length = abs_omega.size();
    bank.gamma = gamma;
    bank.boundaries = boundaries;
    bank.masks.assign(boundaries.bands(), std::vector<double>(abs_omega.size()));
    for (std::size_t n = 0; n < boundaries.bands(); ++n) {
        for (std::size_t k = 0; k < abs_omega.size(); ++k) {
            bank.masks[n][k] = band_window(boundaries, gamma, n, abs_omega[k]);
        }
    }
    return bank;
}

FilterBank1D build_bank_1d(const BoundarySet& boundaries, double gamma, std::size_t length)
{
    if (length < 2) {
        throw InvalidArgument("filter bank length must be >= 2");
    }
    // Evaluate the lower half and mirror so masks are exactly even.
    std::vector<double> abs_omega(length);
    for (std::size_t k = 0; k <= length / 2; ++k) {
        abs_omega[k] = std::abs(bin_frequency(k, length));
        abs_omega[mirror_bin(k, length)] = abs_omega[k];
    }
    return build_bank_on_axis(boundaries, gamma, abs_omega);
}

double frame_deviation(const FilterBank1D& bank)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < bank.length; ++k) {
        double s = 0.0;
        for (const auto& m : bank.masks) {
            s += m[k] * m[k];
        }
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

std::vector<double> filter_real(std::span<const double> x, std::span<const double> mask)
{
    if (x.size() != mask.size()) {
        throw InvalidArgument("signal length " + std::to_string(x.size()) + " does not match mask length " +
                              std::to_string(mask.size()));
    }
    std::vector<Complex> spec = dft1(x);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        spec[k] *= mask[k];
    }
    return idft1_real(spec);
}

EwtCoeffs1D ewt1d_forward(const Signal1D& signal, const FilterBank1D& bank)
{
    if (signal.size() != bank.length) {
        throw InvalidArgument("signal length " + std::to_string(signal.size()) + " does not match bank length " +
                              std::to_string(bank.length));
    }
    const std::vector<Complex> spec = dft1(signal.samples());
    EwtCoeffs1D out;
    for (const auto& mask : bank.masks) {
        std::vector<Complex> band(spec.size());
        for (std::size_t k = 0; k < spec.size(); ++k) {
            band[k] = spec[k] * mask[k];
        }
        out.bands.push_back(idft1_real(band));
    }
    return out;
}

Signal1D ewt1d_inverse(const EwtCoeffs1D& coeffs, const FilterBank1D& bank)
{
    if (coeffs.bands.size() != bank.bands()) {
        throw InvalidArgument("coefficient band count does not match the bank");
    }
    std::vector<Complex> acc(bank.length);
    for (std::size_t n = 0; n < bank.bands(); ++n) {
        if (coeffs.bands[n].size() != bank.length) {
            throw InvalidArgument("band " + std::to_string(n) + " has the wrong length");
        }
        const std::vector<Complex> spec = dft1(std::span<const double>(coeffs.bands[n]));
        for (std::size_t k = 0; k < bank.length; ++k) {
            acc[k] += spec[k] * bank.masks[n][k];
        }
    }
    return Signal1D(idft1_real(acc));
}

}  // namespace ewt
