#include "ewt/filter_bank_2d.hpp"

#include "ewt/fft.hpp"

#include <algorithm>
#include <cmath>

namespace ewt {

std::string to_string(BankKind kind)
{
    switch (kind) {
    case BankKind::tensor: return "tensor";
    case BankKind::littlewood_paley: return "littlewood_paley";
    case BankKind::curvelet_I: return "curvelet_I";
    case BankKind::curvelet_II: return "curvelet_II";
    }
    return "unknown";
}

RealMatrix symmetric_mask(std::size_t rows, std::size_t cols, const std::function<double(double, double)>& f)
{
    RealMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t mr = mirror_bin(r, rows);
        for (std::size_t c = 0; c < cols; ++c) {
            const std::size_t mc = mirror_bin(c, cols);
            if (std::pair{mr, mc} < std::pair{r, c}) {
                out(r, c) = out(mr, mc);
            } else {
                out(r, c) = f(bin_frequency(r, rows), bin_frequency(c, cols));
            }
        }
    }
    return out;
}

RealMatrix frame_sum(const FilterBank2D& bank)
{
    RealMatrix sum(bank.rows, bank.cols);
    for (const RealMatrix& m : bank.masks) {
        for (std::size_t k = 0; k < sum.size(); ++k) {
            sum[k] += m[k] * m[k];
        }
    }
    return sum;
}

double frame_deviation(const FilterBank2D& bank)
{
    const RealMatrix sum = frame_sum(bank);
    double worst = 0.0;
    for (double v : sum.values()) {
        worst = std::max(worst, std::abs(v - 1.0));
    }
    return worst;
}

SubbandSet analyze(const RealMatrix& image, const FilterBank2D& bank)
{
    if (image.rows() != bank.rows || image.cols() != bank.cols) {
        throw InvalidArgument("image is " + std::to_string(image.rows()) + "x" + std::to_string(image.cols()) +
                              " but the bank was built for " + std::to_string(bank.rows) + "x" +
                              std::to_string(bank.cols));
    }
    const ComplexPlane spec = dft2(image);
    SubbandSet out;
    out.labels = bank.labels;
    ComplexMatrix band(bank.rows, bank.cols);
    for (const RealMatrix& mask : bank.masks) {
        for (std::size_t k = 0; k < band.size(); ++k) {
            band[k] = spec.values[k] * mask[k];
        }
        out.planes.push_back(idft2_real(band));
    }
    return out;
}

RealMatrix synthesize(const SubbandSet& subbands, const FilterBank2D& bank)
{
    if (subbands.planes.size() != bank.size()) {
        throw InvalidArgument("got " + std::to_string(subbands.planes.size()) + " subbands for a bank of " +
                              std::to_string(bank.size()));
    }
    ComplexMatrix acc(bank.rows, bank.cols);
    for (std::size_t b = 0; b < bank.size(); ++b) {
        const RealMatrix& plane = subbands.planes[b];
        if (plane.rows() != bank.rows || plane.cols() != bank.cols) {
            throw InvalidArgument("subband " + std::to_string(b) + " has the wrong shape");
        }
        const ComplexPlane spec = dft2(plane);
        const RealMatrix& mask = bank.masks[b];
        for (std::size_t k = 0; k < acc.size(); ++k) {
            acc[k] += spec.values[k] * mask[k];
        }
    }
    return idft2_real(acc);
}

}  // namespace ewt
