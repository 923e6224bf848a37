#include "freqsynth/raster.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <tuple>

namespace freqsynth {

namespace {

std::mutex g_plan_mutex;

// Plans are cached per (h, w, sign). They are created once on fftw_malloc'd
// scratch and executed with the new-array interface on per-call fftw_malloc
// buffers, which share the planner's alignment, so concurrent transforms of
// the same size never contend.
struct CachedPlan {
    fftw_plan plan = nullptr;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
};

fftw_plan plan_for(int h, int w, int sign) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    static std::map<std::tuple<int, int, int>, CachedPlan> cache;
    auto key = std::make_tuple(h, w, sign);
    auto it = cache.find(key);
    if (it == cache.end()) {
        CachedPlan entry;
        const std::size_t count = static_cast<std::size_t>(h) * w;
        entry.in = fftw_alloc_complex(count);
        entry.out = fftw_alloc_complex(count);
        entry.plan = fftw_plan_dft_2d(h, w, entry.in, entry.out, sign, FFTW_ESTIMATE);
        it = cache.emplace(key, entry).first;
    }
    return it->second.plan;
}

struct FftwBuffer {
    fftw_complex* ptr;
    explicit FftwBuffer(std::size_t count) : ptr(fftw_alloc_complex(count)) {}
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string(what) + ": non-finite value");
        }
    }
}

void require_finite(const std::vector<std::complex<double>>& v, const char* what) {
    for (const auto& x : v) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            throw std::invalid_argument(std::string(what) + ": non-finite value");
        }
    }
}

template <typename F>
void put_le(std::ostream& os, F value) {
    char buf[sizeof(F)];
    std::memcpy(buf, &value, sizeof(F));
    os.write(buf, sizeof(F));
}

template <typename F>
F get_le(std::istream& is) {
    char buf[sizeof(F)];
    is.read(buf, sizeof(F));
    F value;
    std::memcpy(&value, buf, sizeof(F));
    return value;
}

}  // namespace

namespace detail {

void fft2_centered(std::vector<std::complex<double>>& data, int h, int w, int sign) {
    const std::size_t count = static_cast<std::size_t>(h) * w;
    if (data.size() != count) throw std::invalid_argument("fft2_centered: size mismatch");
    fftw_plan plan = plan_for(h, w, sign);

    FftwBuffer in(count), out(count);
    // unshift: standard layout index j reads centered index (j + c) mod n
    const int cy = h / 2, cx = w / 2;
    for (int y = 0; y < h; ++y) {
        const int sy = (y + cy) % h;
        for (int x = 0; x < w; ++x) {
            const int sx = (x + cx) % w;
            const auto& z = data[static_cast<std::size_t>(sy) * w + sx];
            in.ptr[static_cast<std::size_t>(y) * w + x][0] = z.real();
            in.ptr[static_cast<std::size_t>(y) * w + x][1] = z.imag();
        }
    }
    fftw_execute_dft(plan, in.ptr, out.ptr);
    const double scale = 1.0 / std::sqrt(static_cast<double>(count));
    // reshift: centered index s holds standard index (s - c) mod n
    for (int s = 0; s < h; ++s) {
        const int y = ((s - cy) % h + h) % h;
        for (int t = 0; t < w; ++t) {
            const int x = ((t - cx) % w + w) % w;
            const auto* z = out.ptr[static_cast<std::size_t>(y) * w + x];
            data[static_cast<std::size_t>(s) * w + t] = {z[0] * scale, z[1] * scale};
        }
    }
}

}  // namespace detail

FrequencyGrid frequency_grid(int n) {
    if (n < 2) throw std::invalid_argument("frequency_grid: n must be >= 2");
    return FrequencyGrid{n};
}

Spectrum dft2(const Raster& img) {
    if (img.height < 2 || img.width < 2) {
        throw std::invalid_argument("dft2: raster must be at least 2x2");
    }
    require_finite(img.data, "dft2");
    Spectrum spec(img.height, img.width, 1.0 / (img.height * img.pitch),
                  1.0 / (img.width * img.pitch));
    for (std::size_t i = 0; i < img.data.size(); ++i) spec.data[i] = img.data[i];
    detail::fft2_centered(spec.data, spec.height, spec.width, FFTW_FORWARD);
    return spec;
}

Raster idft2(const Spectrum& spec) {
    if (spec.height < 2 || spec.width < 2) {
        throw std::invalid_argument("idft2: spectrum must be at least 2x2");
    }
    require_finite(spec.data, "idft2");
    std::vector<std::complex<double>> field = spec.data;
    detail::fft2_centered(field, spec.height, spec.width, FFTW_BACKWARD);

    double residue = 0.0;
    for (const auto& z : field) residue = std::max(residue, std::abs(z.imag()));
    if (residue > 1e-9) {
        throw std::invalid_argument(
            "idft2: imaginary residue " + std::to_string(residue) +
            " exceeds 1e-9; spectrum is not Hermitian");
    }
    const double pitch = spec.du > 0.0 ? 1.0 / (spec.du * spec.height) : 1.0;
    Raster img(spec.height, spec.width, pitch);
    for (std::size_t i = 0; i < field.size(); ++i) img.data[i] = field[i].real();
    return img;
}

void write_raster(const Raster& img, const std::filesystem::path& path) {
    if (img.height < 2 || img.width < 2 || img.pitch <= 0.0) {
        throw std::invalid_argument("write_raster: invalid raster geometry");
    }
    require_finite(img.data, "write_raster");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_raster: cannot open " + path.string());
    os.write("FRAS", 4);
    os.put(1);
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(img.height));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(img.width));
    put_le<double>(os, img.pitch);
    for (double v : img.data) put_le<float>(os, static_cast<float>(v));
    if (!os) throw std::runtime_error("write_raster: write failed for " + path.string());
}

Raster read_raster(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_raster: cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "FRAS", 4) != 0) {
        throw FormatError("read_raster: bad magic in " + path.string());
    }
    const int version = is.get();
    if (version != 1) {
        throw FormatError("read_raster: unsupported version " + std::to_string(version));
    }
    const auto h = get_le<std::uint32_t>(is);
    const auto w = get_le<std::uint32_t>(is);
    const auto pitch = get_le<double>(is);
    if (!is || h < 2 || w < 2 || !(pitch > 0.0)) {
        throw FormatError("read_raster: invalid header in " + path.string());
    }
    Raster img(static_cast<int>(h), static_cast<int>(w), pitch);
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        const float v = get_le<float>(is);
        if (!is) {
            throw FormatError("read_raster: truncated payload in " + path.string() +
                              " (header advertises " + std::to_string(h) + "x" +
                              std::to_string(w) + ")");
        }
        if (!std::isfinite(v)) {
            throw FormatError("read_raster: non-finite value in " + path.string());
        }
        img.data[i] = v;
    }
    return img;
}

}  // namespace freqsynth
