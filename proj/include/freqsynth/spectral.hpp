#pragma once

#include "freqsynth/raster.hpp"

#include <filesystem>
#include <vector>

namespace freqsynth {

/// Per-bin mean squared spectral magnitude over an ensemble.
struct PowerMap {
    int height = 0;
    int width = 0;
    std::vector<double> power;  // row-major, DC-centered

    double at(int y, int x) const { return power[static_cast<std::size_t>(y) * width + x]; }
};

enum class PsdKind { Diagonal, Radial };

struct PsdProfile {
    std::vector<double> frequencies;  // cycles/pixel, strictly increasing
    std::vector<double> power;
    PsdKind kind = PsdKind::Radial;
};

/// Radial spectral filter T(u,v) = r^p with r in cycles/pixel; T(DC) is 0
/// for p > 0 and 1 for p = 0.
std::vector<double> modulation_filter(int n, double p);

/// Spectral pre-modulation of a training target: real(idft2(dft2(f) * T)).
Raster premodulate(const Raster& f, double p);

/// Inverse filter off DC; DC stays 0, so the round trip recovers the input
/// minus its mean.
Raster demodulate(const Raster& ftilde, double p);

PowerMap ensemble_psd(const std::vector<Raster>& images);

/// Values along the main diagonal from DC to the corner; frequency
/// coordinate r = sqrt(2) * |u|. Main diagonal only (recorded in CSV output).
PsdProfile diagonal_cross_section(const PowerMap& psd);

/// Radially averaged profile using bin-center rounding to integer radius.
PsdProfile radial_average(const PowerMap& psd);

/// Least-squares slope of log10(power) vs log10(r) over radially averaged
/// bins with r in [rmin, rmax] cycles/pixel. Requires >= 4 bins in range.
double radial_slope_fit(const PowerMap& psd, double rmin, double rmax);

/// CSV export: comment line recording the cross-section convention, then
/// "freq_cyc_per_px,power" rows at full precision.
void write_psd_csv(const PsdProfile& profile, const std::filesystem::path& path);

}  // namespace freqsynth
