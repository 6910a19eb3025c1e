#pragma once

// On-disk formats.
//
// Images: binary PGM ("P5"), 8-bit (maxval < 256) or 16-bit big-endian.
// Written files always use the canonical header "P5\n<cols> <rows>\n<maxval>\n".
//
// Matrix container: "EWTM" | u32 rows | u32 cols | rows*cols f64, all
// little-endian, row-major. Complex matrices use "EWTC" with interleaved
// (re, im) pairs.

#include "ewt/core.hpp"

#include <filesystem>

namespace ewt {

struct PgmImage {
    Image image;
    unsigned maxval;
};

PgmImage read_pgm(const std::filesystem::path& path);

/// Pixel values are rounded and clamped to [0, maxval].
void write_pgm(const RealMatrix& pixels, const std::filesystem::path& path, unsigned maxval = 255);

inline Image load_image(const std::filesystem::path& path) { return read_pgm(path).image; }
inline void save_image(const Image& image, const std::filesystem::path& path, unsigned maxval = 255)
{
    write_pgm(image.pixels(), path, maxval);
}

void save_matrix(const RealMatrix& m, const std::filesystem::path& path);
RealMatrix load_matrix(const std::filesystem::path& path);

void save_complex_matrix(const ComplexMatrix& m, const std::filesystem::path& path);
ComplexMatrix load_complex_matrix(const std::filesystem::path& path);

/// Affine rescale of `values` onto [0, 255]; constant planes map to 0.
RealMatrix preview_scale(const RealMatrix& values);

}  // namespace ewt
