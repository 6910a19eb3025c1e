#include "ewt/tensor.hpp"

#include "ewt/fft.hpp"

#include <cmath>

namespace ewt {

namespace {

RealMatrix transpose(const RealMatrix& m)
{
    RealMatrix t(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            t(c, r) = m(r, c);
        }
    }
    return t;
}

Spectrum1D mean_row_magnitude(const RealMatrix& image)
{
    const std::size_t len = image.cols();
    if (len < 4) {
        throw InvalidArgument("averaged spectrum needs at least 4 samples per line");
    }
    std::vector<double> acc(len / 2 + 1);
    for (std::size_t r = 0; r < image.rows(); ++r) {
        const std::vector<Complex> spec = dft1(image.row(r));
        for (std::size_t k = 0; k < acc.size(); ++k) {
            acc[k] += std::abs(spec[k]);
        }
    }
    for (double& v : acc) {
        v /= static_cast<double>(image.rows());
    }
    return Spectrum1D(std::move(acc), 2.0 * kPi / static_cast<double>(len));
}

// Applies `masks` to every row of each plane: out_n = rows of `in` filtered by mask n.
std::vector<RealMatrix> split_rows(const RealMatrix& in, const FilterBank1D& bank)
{
    std::vector<RealMatrix> out(bank.bands(), RealMatrix(in.rows(), in.cols()));
    std::vector<Complex> band(in.cols());
    for (std::size_t r = 0; r < in.rows(); ++r) {
        const std::vector<Complex> spec = dft1(in.row(r));
        for (std::size_t n = 0; n < bank.bands(); ++n) {
            for (std::size_t k = 0; k < band.size(); ++k) {
                band[k] = spec[k] * bank.masks[n][k];
            }
            const std::vector<double> filtered = idft1_real(band);
            std::copy(filtered.begin(), filtered.end(), out[n].row(r).begin());
        }
    }
    return out;
}

// Adjoint of split_rows: sum_n rows of in[n] filtered by mask n.
RealMatrix merge_rows(const std::vector<const RealMatrix*>& in, const FilterBank1D& bank)
{
    const std::size_t rows = in.front()->rows();
    const std::size_t cols = in.front()->cols();
    RealMatrix out(rows, cols);
    std::vector<Complex> acc(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        std::fill(acc.begin(), acc.end(), Complex{});
        for (std::size_t n = 0; n < bank.bands(); ++n) {
            const std::vector<Complex> spec = dft1(in[n]->row(r));
            for (std::size_t k = 0; k < cols; ++k) {
                acc[k] += spec[k] * bank.masks[n][k];
            }
        }
        const std::vector<double> merged = idft1_real(acc);
        std::copy(merged.begin(), merged.end(), out.row(r).begin());
    }
    return out;
}

}  // namespace

Spectrum1D row_mean_spectrum(const RealMatrix& image) { return mean_row_magnitude(image); }

Spectrum1D col_mean_spectrum(const RealMatrix& image) { return mean_row_magnitude(transpose(image)); }

TensorDetection tensor_detect(const RealMatrix& image, std::size_t row_bands, std::size_t col_bands,
                              const DetectConfig& cfg)
{
    DetectConfig row_cfg = cfg;
    row_cfg.bands = row_bands;
    DetectConfig col_cfg = cfg;
    col_cfg.bands = col_bands;
    auto tagged = [](const char* geometry, auto&& fn) {
        try {
            return fn();
        } catch (const DetectionError& e) {
            throw DetectionError(std::string(geometry) + ": " + e.what());
        }
    };
    Detection row = tagged("rows", [&] { return detect_boundaries(row_mean_spectrum(image), row_cfg); });
    Detection col = tagged("cols", [&] { return detect_boundaries(col_mean_spectrum(image), col_cfg); });
    return {std::move(row), std::move(col)};
}

TensorBanks tensor_banks(const BoundarySet& row, double row_gamma, const BoundarySet& col, double col_gamma,
                         std::size_t rows, std::size_t cols)
{
    return {build_bank_1d(row, row_gamma, cols), build_bank_1d(col, col_gamma, rows)};
}

SubbandSet tensor_forward(const RealMatrix& image, const TensorBanks& banks)
{
    if (image.cols() != banks.row.length || image.rows() != banks.col.length) {
        throw InvalidArgument("image shape does not match the tensor banks");
    }
    SubbandSet out;
    const std::vector<RealMatrix> row_planes = split_rows(image, banks.row);
    for (std::size_t n = 0; n < row_planes.size(); ++n) {
        const std::vector<RealMatrix> col_planes = split_rows(transpose(row_planes[n]), banks.col);
        for (std::size_t m = 0; m < col_planes.size(); ++m) {
            out.planes.push_back(transpose(col_planes[m]));
            out.labels.push_back({n, m});
        }
    }
    return out;
}

RealMatrix tensor_inverse(const SubbandSet& coeffs, const TensorBanks& banks)
{
    const std::size_t nr = banks.row.bands();
    const std::size_t nc = banks.col.bands();
    if (coeffs.planes.size() != nr * nc) {
        throw InvalidArgument("expected " + std::to_string(nr * nc) + " tensor planes, got " +
                              std::to_string(coeffs.planes.size()));
    }
    for (const RealMatrix& p : coeffs.planes) {
        if (p.cols() != banks.row.length || p.rows() != banks.col.length) {
            throw InvalidArgument("tensor plane shape does not match the banks");
        }
    }
    std::vector<RealMatrix> row_planes;
    for (std::size_t n = 0; n < nr; ++n) {
        std::vector<RealMatrix> cols_t;
        for (std::size_t m = 0; m < nc; ++m) {
            cols_t.push_back(transpose(coeffs.planes[n * nc + m]));
        }
        std::vector<const RealMatrix*> refs;
        for (const RealMatrix& c : cols_t) {
            refs.push_back(&c);
        }
        row_planes.push_back(transpose(merge_rows(refs, banks.col)));
    }
    std::vector<const RealMatrix*> refs;
    for (const RealMatrix& p : row_planes) {
        refs.push_back(&p);
    }
    return merge_rows(refs, banks.row);
}

FilterBank2D tensor_view(const TensorBanks& banks)
{
    FilterBank2D bank;
    bank.kind = BankKind::tensor;
    bank.rows = banks.col.length;
    bank.cols = banks.row.length;
    for (std::size_t n = 0; n < banks.row.bands(); ++n) {
        for (std::size_t m = 0; m < banks.col.bands(); ++m) {
            RealMatrix mask(bank.rows, bank.cols);
            for (std::size_t r = 0; r < bank.rows; ++r) {
                for (std::size_t c = 0; c < bank.cols; ++c) {
                    mask(r, c) = banks.col.masks[m][r] * banks.row.masks[n][c];
                }
            }
            bank.masks.push_back(std::move(mask));
            bank.labels.push_back({n, m});
        }
    }
    return bank;
}

}  // namespace ewt
