#include "ewt/pseudopolar.hpp"

#include "ewt/io.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>

namespace ewt {

namespace {

// exp(-i pi m / N^2) for m in [0, 2 N^2); every phase of the grid is one
// of these, so the transform never accumulates argument rounding.
class RootTable {
public:
    explicit RootTable(std::size_t n) : n_(static_cast<long long>(n)), period_(2 * n_ * n_), roots_(period_)
    {
        for (long long m = 0; m < period_; ++m) {
            const double angle = -kPi * static_cast<double>(m) / static_cast<double>(n_ * n_);
            roots_[static_cast<std::size_t>(m)] = {std::cos(angle), std::sin(angle)};
        }
    }

    // exp(-i pi a / N^2)
    const Complex& fine(long long a) const { return roots_[static_cast<std::size_t>(wrap(a))]; }
    // exp(-i pi a / N)
    const Complex& coarse(long long a) const { return roots_[static_cast<std::size_t>(wrap(a * n_))]; }

private:
    long long wrap(long long a) const
    {
        const long long r = a % period_;
        return r < 0 ? r + period_ : r;
    }

    long long n_;
    long long period_;
    std::vector<Complex> roots_;
};

void check_square(std::size_t rows, std::size_t cols, const PPGrid& grid)
{
    if (rows != grid.n() || cols != grid.n()) {
        throw InvalidArgument("pseudo-polar transform needs a " + std::to_string(grid.n()) + "x" +
                              std::to_string(grid.n()) + " image, got " + std::to_string(rows) + "x" +
                              std::to_string(cols));
    }
}

void check_array(const PPArray& p, const PPGrid& grid)
{
    if (p.n != grid.n() || p.values.rows() != grid.angles() || p.values.cols() != grid.radii()) {
        throw InvalidArgument("pseudo-polar array does not match the grid");
    }
}

// Integer numerator c_i such that the in-line slope is c_i / N.
long long slope_numerator(std::size_t i, long long n)
{
    const auto ii = static_cast<long long>(i);
    return ii < n ? 2 * ii - n : 3 * n - 2 * ii;
}

double norm2(std::span<const Complex> v)
{
    double s = 0.0;
    for (const Complex& z : v) {
        s += std::norm(z);
    }
    return s;
}

}  // namespace

PPGrid::PPGrid(std::size_t n) : n_(n)
{
    if (n < 4 || n % 2 != 0) {
        throw InvalidArgument("pseudo-polar grid size must be even and >= 4, got " + std::to_string(n));
    }
}

double PPGrid::slope(std::size_t i) const
{
    if (i >= angles()) {
        throw InvalidArgument("angle index out of range");
    }
    return static_cast<double>(slope_numerator(i, static_cast<long long>(n_))) / static_cast<double>(n_);
}

double PPGrid::theta(std::size_t i) const
{
    const double s = slope(i);
    return vertical_sector(i) ? std::atan(s) : std::atan2(1.0, s);
}

double PPGrid::radius(long j) const noexcept { return kPi * static_cast<double>(j) / static_cast<double>(n_); }

std::pair<double, double> PPGrid::node(std::size_t i, long j) const
{
    const double r = radius(j);
    const double s = slope(i);
    return vertical_sector(i) ? std::pair{s * r, r} : std::pair{r, s * r};
}

PPGrid pp_grid(std::size_t n) { return PPGrid(n); }

double frequency_angle(double w1, double w2)
{
    if (w1 == 0.0 && w2 == 0.0) {
        return 0.0;
    }
    double t = std::atan2(w1, w2);
    while (t < -kPi / 4.0) {
        t += kPi;
    }
    while (t >= 3.0 * kPi / 4.0) {
        t -= kPi;
    }
    return t;
}

PPArray ppfft(const ComplexMatrix& f, const PPGrid& grid)
{
    check_square(f.rows(), f.cols(), grid);
    const std::size_t n = grid.n();
    const auto nn = static_cast<long long>(n);
    const long nl = static_cast<long>(n);
    const RootTable roots(n);
    PPArray out{n, ComplexMatrix(grid.angles(), grid.radii())};

    // g(j, x1) = sum_x2 f(x1, x2) e^{-i x2 r_j};  h(j, x2) = sum_x1 f(x1, x2) e^{-i x1 r_j}
    ComplexMatrix g(grid.radii(), n);
    ComplexMatrix h(grid.radii(), n);
    for (long j = -nl; j <= nl; ++j) {
        const auto jr = static_cast<std::size_t>(j + nl);
        for (std::size_t a = 0; a < n; ++a) {
            Complex sg{};
            Complex sh{};
            for (std::size_t b = 0; b < n; ++b) {
                const Complex& e = roots.coarse(static_cast<long long>(b) * j);
                sg += f(a, b) * e;
                sh += f(b, a) * e;
            }
            g(jr, a) = sg;
            h(jr, a) = sh;
        }
    }
    for (std::size_t i = 0; i < grid.angles(); ++i) {
        const long long c = slope_numerator(i, nn);
        const ComplexMatrix& line = grid.vertical_sector(i) ? g : h;
        for (long j = -nl; j <= nl; ++j) {
            const auto jr = static_cast<std::size_t>(j + nl);
            Complex s{};
            for (std::size_t x = 0; x < n; ++x) {
                s += line(jr, x) * roots.fine(static_cast<long long>(x) * j * c);
            }
            out.at(i, j) = s;
        }
    }
    return out;
}

PPArray ppfft(const RealMatrix& image, const PPGrid& grid)
{
    ComplexMatrix z(image.rows(), image.cols());
    for (std::size_t k = 0; k < image.size(); ++k) {
        z[k] = image[k];
    }
    return ppfft(z, grid);
}

PPArray ppfft(const Image& image, const PPGrid& grid) { return ppfft(image.pixels(), grid); }

ComplexMatrix ppfft_adjoint(const PPArray& p, const PPGrid& grid)
{
    check_array(p, grid);
    const std::size_t n = grid.n();
    const auto nn = static_cast<long long>(n);
    const long nl = static_cast<long>(n);
    const RootTable roots(n);

    // u(j, x1): vertical lines folded over angle; v(j, x2): horizontal lines.
    ComplexMatrix u(grid.radii(), n);
    ComplexMatrix v(grid.radii(), n);
    for (std::size_t i = 0; i < grid.angles(); ++i) {
        const long long c = slope_numerator(i, nn);
        ComplexMatrix& acc = grid.vertical_sector(i) ? u : v;
        for (long j = -nl; j <= nl; ++j) {
            const auto jr = static_cast<std::size_t>(j + nl);
            const Complex pij = p.at(i, j);
            for (std::size_t x = 0; x < n; ++x) {
                acc(jr, x) += pij * std::conj(roots.fine(static_cast<long long>(x) * j * c));
            }
        }
    }
    ComplexMatrix out(n, n);
    for (long j = -nl; j <= nl; ++j) {
        const auto jr = static_cast<std::size_t>(j + nl);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                const Complex e = std::conj(roots.coarse(static_cast<long long>(b) * j));
                out(a, b) += u(jr, a) * e;
                out(b, a) += v(jr, a) * e;
            }
        }
    }
    return out;
}

PPInverse ppfft_inverse(const PPArray& p, const PPGrid& grid, double tol, std::size_t maxiter)
{
    check_array(p, grid);
    if (!(tol > 0.0)) {
        throw InvalidArgument("solver tolerance must be positive");
    }
    const std::size_t n = grid.n();
    PPInverse result{RealMatrix(n, n), {}};
    const double p_norm = std::sqrt(norm2(p.values.values()));
    if (p_norm == 0.0) {
        return result;
    }

    auto normal = [&](const PPArray& r) {
        const ComplexMatrix a = ppfft_adjoint(r, grid);
        RealMatrix s(n, n);
        for (std::size_t k = 0; k < s.size(); ++k) {
            s[k] = a[k].real();
        }
        return s;
    };

    RealMatrix& x = result.image;
    PPArray r = p;
    RealMatrix s = normal(r);
    RealMatrix dir = s;
    double gamma = sum_of_squares(s.values());
    const double s0 = std::sqrt(gamma);
    double normal_res = 1.0;
    std::size_t it = 0;
    while (it < maxiter && normal_res >= tol && gamma > 0.0) {
        const PPArray q = ppfft(dir, grid);
        const double qq = norm2(q.values.values());
        if (!(qq > 0.0)) {
            break;
        }
        const double alpha = gamma / qq;
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] += alpha * dir[k];
        }
        for (std::size_t k = 0; k < r.values.size(); ++k) {
            r.values[k] -= alpha * q.values[k];
        }
        s = normal(r);
        const double gamma_new = sum_of_squares(s.values());
        ++it;
        normal_res = std::sqrt(gamma_new) / s0;
        const double ratio = gamma_new / gamma;
        gamma = gamma_new;
        for (std::size_t k = 0; k < dir.size(); ++k) {
            dir[k] = s[k] + ratio * dir[k];
        }
    }
    if (!all_finite(x.values())) {
        throw NumericalError("pseudo-polar inversion diverged");
    }
    result.report.iterations = it;
    result.report.normal_residual = normal_res;
    result.report.residual = std::sqrt(norm2(r.values.values())) / p_norm;
    result.report.converged = normal_res < tol;
    return result;
}

std::vector<double> radial_mean_spectrum(const PPArray& p)
{
    const long nl = static_cast<long>(p.n);
    const std::size_t angles = p.values.rows();
    std::vector<double> out(p.n + 1);
    for (long j = 0; j <= nl; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < angles; ++i) {
            s += std::abs(p.at(i, j));
            if (j != 0) {
                s += std::abs(p.at(i, -j));
            }
        }
        out[static_cast<std::size_t>(j)] = s / static_cast<double>(j == 0 ? angles : 2 * angles);
    }
    return out;
}

std::vector<double> angular_mean_spectrum(const PPArray& p, std::optional<std::pair<double, double>> band)
{
    const long nl = static_cast<long>(p.n);
    const double lo = band ? band->first : 0.0;
    const double hi = band ? band->second : kPi;
    if (band && (!(lo >= 0.0) || !(hi >= lo) || hi > kPi + 1e-12)) {
        throw InvalidArgument("angular profile band must satisfy 0 <= lo <= hi <= pi");
    }
    constexpr double slack = 1e-12;
    std::vector<long> used;
    for (long j = 1; j <= nl; ++j) {
        const double r = kPi * static_cast<double>(j) / static_cast<double>(nl);
        if (r >= lo - slack && r <= hi + slack) {
            used.push_back(j);
        }
    }
    if (used.empty()) {
        throw InvalidArgument("no pseudo-polar radius falls inside the angular profile band");
    }
    std::vector<double> out(p.values.rows());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (long j : used) {
            s += std::abs(p.at(i, j)) + std::abs(p.at(i, -j));
        }
        out[i] = s / static_cast<double>(2 * used.size());
    }
    return out;
}

RealMatrix centered_square_crop(const RealMatrix& image)
{
    const std::size_t side = std::min(image.rows(), image.cols()) & ~std::size_t{1};
    if (side < 4) {
        throw InvalidArgument("image too small for a pseudo-polar transform (needs an even side >= 4)");
    }
    if (side == image.rows() && side == image.cols()) {
        return image;
    }
    const std::size_t r0 = (image.rows() - side) / 2;
    const std::size_t c0 = (image.cols() - side) / 2;
    RealMatrix out(side, side);
    for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t c = 0; c < side; ++c) {
            out(r, c) = image(r0 + r, c0 + c);
        }
    }
    return out;
}

void save_pparray(const PPArray& p, const std::string& path_stem)
{
    save_complex_matrix(p.values, path_stem + ".ewtc");
    const nlohmann::json sidecar{{"N", p.n}, {"sector_layout", "BV+BH"}, {"radii", 2 * p.n + 1}};
    std::ofstream out(path_stem + ".json");
    out << sidecar.dump(2) << "\n";
    if (!out) {
        throw FormatError("cannot write " + path_stem + ".json", 0);
    }
}

}  // namespace ewt
