#pragma once

// Pseudo-polar Fourier transform on a concentric-squares grid.
//
// For an N x N image (N even) the grid has 2N lines through the origin,
// each sampled at the signed radii r_j = pi j / N, j = -N..N:
//   basically vertical,   i = 0..N-1 : (w1, w2) = (s r_j, r_j),  s = -1 + 2i/N
//   basically horizontal, i = N..2N-1: (w1, w2) = (r_j, s r_j),  s = 1 - 2(i-N)/N
// w1 is the frequency along the row index x1, w2 along the column index x2.
// The line angle theta = atan2(w1, w2) then increases strictly with i over
// [-pi/4, 3pi/4).

#include "ewt/core.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ewt {

class PPGrid {
public:
    explicit PPGrid(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    std::size_t angles() const noexcept { return 2 * n_; }
    std::size_t radii() const noexcept { return 2 * n_ + 1; }
    std::size_t node_count() const noexcept { return angles() * radii(); }

    /// Slope of line i within its sector.
    double slope(std::size_t i) const;
    bool vertical_sector(std::size_t i) const noexcept { return i < n_; }
    /// Angle of line i in [-pi/4, 3pi/4).
    double theta(std::size_t i) const;
    /// r_j for j in [-N, N].
    double radius(long j) const noexcept;
    /// (w1, w2) of node (i, j).
    std::pair<double, double> node(std::size_t i, long j) const;

private:
    std::size_t n_;
};

PPGrid pp_grid(std::size_t n);

/// Complex samples on a PPGrid. Row i is angle i, column j + N is radius j.
struct PPArray {
    std::size_t n = 0;
    ComplexMatrix values;

    Complex& at(std::size_t i, long j) { return values(i, static_cast<std::size_t>(j + static_cast<long>(n))); }
    const Complex& at(std::size_t i, long j) const
    {
        return values(i, static_cast<std::size_t>(j + static_cast<long>(n)));
    }
};

/// Angle of frequency (w1, w2) reduced modulo pi into [-pi/4, 3pi/4).
double frequency_angle(double w1, double w2);

/// P(i, j) = sum_{x1, x2} f(x1, x2) exp(-i (x1 w1 + x2 w2)).
PPArray ppfft(const RealMatrix& image, const PPGrid& grid);
PPArray ppfft(const Image& image, const PPGrid& grid);
PPArray ppfft(const ComplexMatrix& image, const PPGrid& grid);

/// out(x1, x2) = sum_{i, j} P(i, j) exp(+i (x1 w1 + x2 w2)).
ComplexMatrix ppfft_adjoint(const PPArray& p, const PPGrid& grid);

struct SolverReport {
    std::size_t iterations = 0;
    double residual = 0.0;         // ||P - A x|| / ||P||
    double normal_residual = 0.0;  // ||A^H (P - A x)|| / ||A^H P||
    bool converged = true;
};

struct PPInverse {
    RealMatrix image;
    SolverReport report;
};

/// Least-squares real image x minimizing ||ppfft(x) - P||, by conjugate
/// gradients on the normal equations (CGLS). Stops when the normal
/// residual falls below `tol` or after `maxiter` iterations.
PPInverse ppfft_inverse(const PPArray& p, const PPGrid& grid, double tol = 1e-10, std::size_t maxiter = 300);

/// Mean of |P| over every angle and over +-j, for j = 0..N (omega = pi j / N).
std::vector<double> radial_mean_spectrum(const PPArray& p);

/// Mean of |P| per angle over the radii with |r_j| in [lo, hi], j != 0.
/// Throws InvalidArgument when no radius falls in the band.
std::vector<double> angular_mean_spectrum(const PPArray& p, std::optional<std::pair<double, double>> band = std::nullopt);

/// Centered even square crop of side min(rows, cols) (rounded down to even).
RealMatrix centered_square_crop(const RealMatrix& image);

/// EWTC payload plus a JSON sidecar describing the grid.
void save_pparray(const PPArray& p, const std::string& path_stem);

}  // namespace ewt
