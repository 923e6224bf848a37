#pragma once

#include <cmath>
#include <complex>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace freqsynth {

/// Thrown when a file on disk does not match its declared format.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 2-D real-valued image grid with a physical pixel pitch. Carries objects,
/// measurements and reconstructions alike; values are dimensionless
/// intensities or radians for phase objects.
struct Raster {
    int height = 0;
    int width = 0;
    double pitch = 1.0;  // meters per pixel
    std::vector<double> data;  // row-major, top-left origin

    Raster() = default;
    Raster(int h, int w, double pitch_m = 1.0, double fill = 0.0)
        : height(h), width(w), pitch(pitch_m),
          data(static_cast<std::size_t>(h) * static_cast<std::size_t>(w), fill) {}

    double& at(int y, int x) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return data.size(); }
};

/// 2-D complex frequency grid, DC at bin (height/2, width/2).
struct Spectrum {
    int height = 0;
    int width = 0;
    double du = 0.0;  // cycles/meter per bin, vertical axis
    double dv = 0.0;  // cycles/meter per bin, horizontal axis
    std::vector<std::complex<double>> data;  // row-major, DC-centered

    Spectrum() = default;
    Spectrum(int h, int w, double du_, double dv_)
        : height(h), width(w), du(du_), dv(dv_),
          data(static_cast<std::size_t>(h) * static_cast<std::size_t>(w)) {}

    std::complex<double>& at(int y, int x) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::complex<double> at(int y, int x) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::size_t size() const { return data.size(); }
};

/// DC-centered per-bin spatial frequencies in cycles/pixel for an n-point
/// axis: bin k maps to (k - floor(n/2)) / n.
struct FrequencyGrid {
    int n = 0;

    double axis(int k) const { return static_cast<double>(k - n / 2) / n; }
    int center() const { return n / 2; }
    double radius(int ky, int kx) const {
        const double u = axis(ky);
        const double v = axis(kx);
        return std::sqrt(u * u + v * v);
    }
};

FrequencyGrid frequency_grid(int n);

/// Unitary forward DFT (1/sqrt(hw)), output DC-centered.
Spectrum dft2(const Raster& img);

/// Inverse of dft2. The imaginary residue of the inverse transform must stay
/// below 1e-9 max-abs (it is discarded); anything larger signals a
/// non-Hermitian spectrum and throws.
Raster idft2(const Spectrum& spec);

/// FloatRaster file format (.fras): magic "FRAS", version 1, u32 LE height,
/// u32 LE width, f64 LE pitch, then h*w f32 LE values row-major.
void write_raster(const Raster& img, const std::filesystem::path& path);
Raster read_raster(const std::filesystem::path& path);

namespace detail {

/// In-place unitary 2-D complex transform on a DC-centered grid;
/// sign = -1 forward, +1 inverse. Used for complex field propagation.
void fft2_centered(std::vector<std::complex<double>>& data, int h, int w, int sign);

}  // namespace detail

}  // namespace freqsynth
