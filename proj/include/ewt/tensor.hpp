#pragma once

// Separable 2D EWT: one row bank shared by all rows, one column bank
// shared by all columns, both detected on averaged 1D spectra.
//
// Plane (n, m) holds row band n and column band m and is stored at index
// n * col_bands + m.

#include "ewt/boundaries.hpp"
#include "ewt/ewt1d.hpp"
#include "ewt/filter_bank_2d.hpp"

namespace ewt {

/// Mean over rows of |dft1(row)| on bins 0..cols/2 (omega step 2 pi / cols).
Spectrum1D row_mean_spectrum(const RealMatrix& image);
/// Mean over columns of |dft1(column)| on bins 0..rows/2.
Spectrum1D col_mean_spectrum(const RealMatrix& image);

struct TensorDetection {
    Detection row;
    Detection col;
};

TensorDetection tensor_detect(const RealMatrix& image, std::size_t row_bands, std::size_t col_bands,
                              const DetectConfig& cfg);

struct TensorBanks {
    FilterBank1D row;  // length = cols, filters along each row
    FilterBank1D col;  // length = rows, filters along each column
};

TensorBanks tensor_banks(const BoundarySet& row, double row_gamma, const BoundarySet& col, double col_gamma,
                         std::size_t rows, std::size_t cols);

/// Filters every row with the row bank, then every column of each result
/// with the column bank.
SubbandSet tensor_forward(const RealMatrix& image, const TensorBanks& banks);
/// Columns first, then rows.
RealMatrix tensor_inverse(const SubbandSet& coeffs, const TensorBanks& banks);

/// The same decomposition as a FilterBank2D of outer-product masks.
FilterBank2D tensor_view(const TensorBanks& banks);

}  // namespace ewt
