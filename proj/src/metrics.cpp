#include "freqsynth/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace freqsynth {

namespace {

struct CenteredStats {
    std::vector<double> a;  // f - mean(f)
    std::vector<double> b;  // fhat - mean(fhat)
    double sab = 0.0;
    double sa = 0.0;  // sqrt(sum a^2)
    double sb = 0.0;  // sqrt(sum b^2)
};

CenteredStats centered_stats(const Raster& fhat, const Raster& f) {
    if (fhat.height != f.height || fhat.width != f.width) {
        throw std::invalid_argument("npcc: shape mismatch");
    }
    const std::size_t count = f.size();
    double mf = 0.0, mh = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        mf += f.data[i];
        mh += fhat.data[i];
    }
    mf /= static_cast<double>(count);
    mh /= static_cast<double>(count);

    CenteredStats s;
    s.a.resize(count);
    s.b.resize(count);
    double saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        s.a[i] = f.data[i] - mf;
        s.b[i] = fhat.data[i] - mh;
        s.sab += s.a[i] * s.b[i];
        saa += s.a[i] * s.a[i];
        sbb += s.b[i] * s.b[i];
    }
    if (!(saa > 0.0) || !(sbb > 0.0)) {
        throw std::invalid_argument("npcc: zero-variance input");
    }
    s.sa = std::sqrt(saa);
    s.sb = std::sqrt(sbb);
    return s;
}

/// Gaussian window taps, normalized to sum 1.
std::vector<double> gaussian_window(int size, double sigma) {
    std::vector<double> w(size);
    const int c = size / 2;
    double total = 0.0;
    for (int i = 0; i < size; ++i) {
        w[i] = std::exp(-0.5 * (i - c) * (i - c) / (sigma * sigma));
        total += w[i];
    }
    for (double& v : w) v /= total;
    return w;
}

double resolve_range(const Raster& f, std::optional<double> data_range) {
    if (data_range) {
        if (!(*data_range > 0.0)) {
            throw std::invalid_argument("metrics: data range must be > 0");
        }
        return *data_range;
    }
    const auto [lo, hi] = std::minmax_element(f.data.begin(), f.data.end());
    const double range = *hi - *lo;
    if (!(range > 0.0)) {
        throw std::invalid_argument("metrics: degenerate reference, supply a data range");
    }
    return range;
}

}  // namespace

double npcc(const Raster& fhat, const Raster& f) {
    const CenteredStats s = centered_stats(fhat, f);
    return -s.sab / (s.sa * s.sb);
}

Raster npcc_gradient(const Raster& fhat, const Raster& f) {
    const CenteredStats s = centered_stats(fhat, f);
    Raster grad(fhat.height, fhat.width, fhat.pitch);
    const double inv_ab = 1.0 / (s.sa * s.sb);
    const double coef = s.sab / (s.sa * s.sb * s.sb * s.sb);
    for (std::size_t i = 0; i < grad.data.size(); ++i) {
        grad.data[i] = -s.a[i] * inv_ab + coef * s.b[i];
    }
    return grad;
}

Raster histogram_match(const Raster& fhat, const Raster& reference) {
    if (fhat.height != reference.height || fhat.width != reference.width) {
        throw std::invalid_argument("histogram_match: shape mismatch");
    }
    const std::size_t count = fhat.size();
    std::vector<double> ref_sorted = reference.data;
    std::sort(ref_sorted.begin(), ref_sorted.end());

    Raster out(fhat.height, fhat.width, fhat.pitch);
    const auto [lo, hi] = std::minmax_element(fhat.data.begin(), fhat.data.end());
    if (*lo == *hi) {
        // degenerate distribution: map to the reference median
        const double median = (count % 2 == 1)
                                  ? ref_sorted[count / 2]
                                  : 0.5 * (ref_sorted[count / 2 - 1] + ref_sorted[count / 2]);
        std::fill(out.data.begin(), out.data.end(), median);
        return out;
    }

    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&fhat](std::size_t i, std::size_t j) {
        return fhat.data[i] < fhat.data[j];
    });
    for (std::size_t rank = 0; rank < count; ++rank) {
        out.data[order[rank]] = ref_sorted[rank];
    }
    return out;
}

double psnr(const Raster& fhat, const Raster& f, std::optional<double> data_range) {
    if (fhat.height != f.height || fhat.width != f.width) {
        throw std::invalid_argument("psnr: shape mismatch");
    }
    double mse = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double d = fhat.data[i] - f.data[i];
        mse += d * d;
    }
    mse /= static_cast<double>(f.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    const double range = resolve_range(f, data_range);
    return 10.0 * std::log10(range * range / mse);
}

double ssim(const Raster& fhat, const Raster& f, std::optional<double> data_range) {
    if (fhat.height != f.height || fhat.width != f.width) {
        throw std::invalid_argument("ssim: shape mismatch");
    }
    constexpr int kWindow = 11;
    if (f.height < kWindow || f.width < kWindow) {
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");
    }
    const double range = resolve_range(f, data_range);
    const double c1 = (0.01 * range) * (0.01 * range);
    const double c2 = (0.03 * range) * (0.03 * range);
    const std::vector<double> w = gaussian_window(kWindow, 1.5);

    // separable weighted moments; windows fully inside the image
    const int h = f.height, width = f.width;
    const int oh = h - kWindow + 1, ow = width - kWindow + 1;
    auto filter = [&](const std::vector<double>& src, int sh, int sw,
                      std::vector<double>& tmp, std::vector<double>& dst) {
        // horizontal pass: sh x (sw - 10)
        const int tw = sw - kWindow + 1;
        tmp.assign(static_cast<std::size_t>(sh) * tw, 0.0);
        for (int y = 0; y < sh; ++y) {
            for (int x = 0; x < tw; ++x) {
                double acc = 0.0;
                for (int k = 0; k < kWindow; ++k) {
                    acc += w[k] * src[static_cast<std::size_t>(y) * sw + x + k];
                }
                tmp[static_cast<std::size_t>(y) * tw + x] = acc;
            }
        }
        // vertical pass: (sh - 10) x tw
        const int th = sh - kWindow + 1;
        dst.assign(static_cast<std::size_t>(th) * tw, 0.0);
        for (int y = 0; y < th; ++y) {
            for (int x = 0; x < tw; ++x) {
                double acc = 0.0;
                for (int k = 0; k < kWindow; ++k) {
                    acc += w[k] * tmp[static_cast<std::size_t>(y + k) * tw + x];
                }
                dst[static_cast<std::size_t>(y) * tw + x] = acc;
            }
        }
    };

    const std::size_t count = f.size();
    std::vector<double> xx(count), yy(count), xy(count);
    for (std::size_t i = 0; i < count; ++i) {
        xx[i] = f.data[i] * f.data[i];
        yy[i] = fhat.data[i] * fhat.data[i];
        xy[i] = f.data[i] * fhat.data[i];
    }
    std::vector<double> tmp, mu_x, mu_y, m_xx, m_yy, m_xy;
    filter(f.data, h, width, tmp, mu_x);
    filter(fhat.data, h, width, tmp, mu_y);
    filter(xx, h, width, tmp, m_xx);
    filter(yy, h, width, tmp, m_yy);
    filter(xy, h, width, tmp, m_xy);

    double total = 0.0;
    const std::size_t windows = static_cast<std::size_t>(oh) * ow;
    for (std::size_t i = 0; i < windows; ++i) {
        const double var_x = m_xx[i] - mu_x[i] * mu_x[i];
        const double var_y = m_yy[i] - mu_y[i] * mu_y[i];
        const double cov = m_xy[i] - mu_x[i] * mu_y[i];
        const double num = (2.0 * mu_x[i] * mu_y[i] + c1) * (2.0 * cov + c2);
        const double den = (mu_x[i] * mu_x[i] + mu_y[i] * mu_y[i] + c1) * (var_x + var_y + c2);
        total += num / den;
    }
    return total / static_cast<double>(windows);
}

MetricRow MetricReport::mean() const {
    MetricRow m;
    m.image_id = "MEAN";
    if (rows.empty()) return m;
    for (const MetricRow& r : rows) {
        m.npcc += r.npcc;
        m.psnr_db += r.psnr_db;
        m.ssim += r.ssim;
        m.psnr_db_hm += r.psnr_db_hm;
        m.ssim_hm += r.ssim_hm;
    }
    const double inv = 1.0 / static_cast<double>(rows.size());
    m.npcc *= inv;
    m.psnr_db *= inv;
    m.ssim *= inv;
    m.psnr_db_hm *= inv;
    m.ssim_hm *= inv;
    return m;
}

void write_metrics_csv(const MetricReport& report, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_metrics_csv: cannot open " + path.string());
    os << "image_id,npcc,psnr_db,ssim,psnr_db_hm,ssim_hm\n";
    char buf[256];
    auto emit = [&](const MetricRow& r) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.image_id.c_str(), r.npcc, r.psnr_db, r.ssim, r.psnr_db_hm,
                      r.ssim_hm);
        os << buf;
    };
    for (const MetricRow& r : report.rows) emit(r);
    emit(report.mean());
}

}  // namespace freqsynth
