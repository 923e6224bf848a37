#include "freqsynth/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace freqsynth {

std::vector<double> modulation_filter(int n, double p) {
    if (n < 2) throw std::invalid_argument("modulation_filter: n must be >= 2");
    if (p < 0.0) throw std::invalid_argument("modulation_filter: p must be >= 0");
    const FrequencyGrid grid = frequency_grid(n);
    std::vector<double> t(static_cast<std::size_t>(n) * n);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            const double r = grid.radius(y, x);
            double value;
            if (r == 0.0) {
                value = (p == 0.0) ? 1.0 : 0.0;
            } else {
                value = std::pow(r, p);
            }
            t[static_cast<std::size_t>(y) * n + x] = value;
        }
    }
    return t;
}

Raster premodulate(const Raster& f, double p) {
    if (p < 0.0) {
        throw std::invalid_argument("premodulate: p must be >= 0 (use demodulate)");
    }
    if (f.height != f.width) {
        throw std::invalid_argument("premodulate: square grids only");
    }
    Spectrum spec = dft2(f);
    const std::vector<double> t = modulation_filter(f.height, p);
    for (std::size_t i = 0; i < spec.data.size(); ++i) spec.data[i] *= t[i];
    return idft2(spec);
}

Raster demodulate(const Raster& ftilde, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("demodulate: p must be > 0");
    if (ftilde.height != ftilde.width) {
        throw std::invalid_argument("demodulate: square grids only");
    }
    Spectrum spec = dft2(ftilde);
    const std::vector<double> t = modulation_filter(ftilde.height, p);
    for (std::size_t i = 0; i < spec.data.size(); ++i) {
        spec.data[i] = (t[i] == 0.0) ? 0.0 : spec.data[i] / t[i];
    }
    return idft2(spec);
}

PowerMap ensemble_psd(const std::vector<Raster>& images) {
    if (images.empty()) throw std::invalid_argument("ensemble_psd: empty ensemble");
    const int h = images.front().height;
    const int w = images.front().width;
    PowerMap map;
    map.height = h;
    map.width = w;
    map.power.assign(static_cast<std::size_t>(h) * w, 0.0);
    for (const Raster& img : images) {
        if (img.height != h || img.width != w) {
            throw std::invalid_argument("ensemble_psd: shape mismatch in ensemble");
        }
        const Spectrum spec = dft2(img);
        for (std::size_t i = 0; i < spec.data.size(); ++i) {
            map.power[i] += std::norm(spec.data[i]);
        }
    }
    const double inv = 1.0 / static_cast<double>(images.size());
    for (double& v : map.power) v *= inv;
    return map;
}

PsdProfile diagonal_cross_section(const PowerMap& psd) {
    if (psd.height != psd.width) {
        throw std::invalid_argument("diagonal_cross_section: map must be square");
    }
    const int n = psd.height;
    const int c = n / 2;
    const int len = n - c;  // ceil(n/2)
    PsdProfile profile;
    profile.kind = PsdKind::Diagonal;
    profile.frequencies.reserve(len);
    profile.power.reserve(len);
    for (int k = 0; k < len; ++k) {
        profile.frequencies.push_back(std::sqrt(2.0) * k / n);
        profile.power.push_back(psd.at(c + k, c + k));
    }
    return profile;
}

PsdProfile radial_average(const PowerMap& psd) {
    if (psd.height != psd.width) {
        throw std::invalid_argument("radial_average: map must be square");
    }
    const int n = psd.height;
    const int c = n / 2;
    std::vector<double> sum;
    std::vector<int> count;
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            const double rbins = std::hypot(y - c, x - c);
            const int bin = static_cast<int>(std::lround(rbins));
            if (bin >= static_cast<int>(sum.size())) {
                sum.resize(bin + 1, 0.0);
                count.resize(bin + 1, 0);
            }
            sum[bin] += psd.at(y, x);
            count[bin] += 1;
        }
    }
    PsdProfile profile;
    profile.kind = PsdKind::Radial;
    for (std::size_t bin = 0; bin < sum.size(); ++bin) {
        if (count[bin] == 0) continue;
        profile.frequencies.push_back(static_cast<double>(bin) / n);
        profile.power.push_back(sum[bin] / count[bin]);
    }
    return profile;
}

double radial_slope_fit(const PowerMap& psd, double rmin, double rmax) {
    if (!(rmin > 0.0) || !(rmin < rmax) || !(rmax <= 0.5)) {
        throw std::invalid_argument("radial_slope_fit: need 0 < rmin < rmax <= 0.5");
    }
    const PsdProfile profile = radial_average(psd);
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < profile.frequencies.size(); ++i) {
        const double r = profile.frequencies[i];
        if (r < rmin || r > rmax) continue;
        if (!(profile.power[i] > 0.0)) continue;
        lx.push_back(std::log10(r));
        ly.push_back(std::log10(profile.power[i]));
    }
    if (lx.size() < 4) {
        throw std::invalid_argument("radial_slope_fit: fewer than 4 radial bins in range");
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    return sxy / sxx;
}

void write_psd_csv(const PsdProfile& profile, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_psd_csv: cannot open " + path.string());
    os << "# cross-section: "
       << (profile.kind == PsdKind::Diagonal ? "main diagonal only" : "radial average")
       << "\n";
    os << "freq_cyc_per_px,power\n";
    char buf[64];
    for (std::size_t i = 0; i < profile.frequencies.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", profile.frequencies[i],
                      profile.power[i]);
        os << buf;
    }
}

}  // namespace freqsynth
