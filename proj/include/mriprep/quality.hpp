#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "mriprep/image.hpp"

namespace mriprep {

inline constexpr double kPsnrPeak = 255.0;
inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

struct Fidelity {
    double mse;
    double rmse;
    double psnr_db;  ///< kInfinitePsnr when mse == 0
};

struct SsimParams {
    static constexpr int kWindow = 11;
    static constexpr double kSigma = 1.5;
    static constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
    static constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);
};

/// Normalized 1-D Gaussian taps; the 2-D window is their outer product.
std::array<double, SsimParams::kWindow> ssim_gaussian_taps();

double psnr_from_mse(double mse) noexcept;
Fidelity fidelity(const GrayImage& ref, const GrayImage& test);

/// Mean local SSIM over the fully overlapping windows. Both sides >= 11.
double ssim(const GrayImage& ref, const GrayImage& test);

struct QualityReport {
    std::string image_id;
    double mse;
    double rmse;
    double psnr_db;
    double ssim;
};

struct QualityPair {
    std::string image_id;
    GrayImage reference;
    GrayImage processed;
};

/// One report per pair, in input order. Pairs are evaluated in parallel.
std::vector<QualityReport> verify_batch(const std::vector<QualityPair>& pairs);

/// CSV with header image_id,mse,rmse,psnr_db,ssim; infinite PSNR prints as `inf`.
std::string quality_csv(const std::vector<QualityReport>& reports);

}  // namespace mriprep
