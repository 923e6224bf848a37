#pragma once

#include "freqsynth/raster.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace freqsynth {

/// Negative Pearson correlation: -cov(f, fhat) / (sigma_f * sigma_fhat).
/// Batch losses are plain sums of this over the batch index.
double npcc(const Raster& fhat, const Raster& f);

/// Analytic d npcc / d fhat, per pixel.
Raster npcc_gradient(const Raster& fhat, const Raster& f);

/// Monotone intensity remap of fhat so its empirical quantiles equal the
/// reference's. Ranking is preserved with ties broken by pixel index; a
/// constant input maps to the reference median.
Raster histogram_match(const Raster& fhat, const Raster& reference);

/// Peak signal-to-noise ratio in dB. Range defaults to max(f) - min(f);
/// identical images report +infinity.
double psnr(const Raster& fhat, const Raster& f,
            std::optional<double> data_range = std::nullopt);

/// Mean SSIM with an 11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03,
/// evaluated over fully interior windows.
double ssim(const Raster& fhat, const Raster& f,
            std::optional<double> data_range = std::nullopt);

struct MetricRow {
    std::string image_id;
    double npcc = 0.0;
    double psnr_db = 0.0;
    double ssim = 0.0;
    double psnr_db_hm = 0.0;  // after histogram matching to the ground truth
    double ssim_hm = 0.0;
};

struct MetricReport {
    std::vector<MetricRow> rows;
    MetricRow mean() const;
};

/// "image_id,npcc,psnr_db,ssim,psnr_db_hm,ssim_hm" rows plus a final MEAN row.
void write_metrics_csv(const MetricReport& report, const std::filesystem::path& path);

}  // namespace freqsynth
