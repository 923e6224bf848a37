#include "freqsynth/forward.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace freqsynth {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ForwardConfig ForwardConfig::dli(int n, double b, double pitch) {
    if (n < 2) throw std::invalid_argument("ForwardConfig: n must be >= 2");
    if (b < 1.0) throw std::invalid_argument("ForwardConfig: DLI needs b >= 1");
    if (!(pitch > 0.0)) throw std::invalid_argument("ForwardConfig: pitch must be > 0");
    ForwardConfig cfg;
    cfg.kind = ForwardKind::DLI;
    cfg.n = n;
    cfg.b = b;
    cfg.pitch = pitch;
    return cfg;
}

ForwardConfig ForwardConfig::qpr(int n, double lambda, double z, double pitch) {
    if (n < 2) throw std::invalid_argument("ForwardConfig: n must be >= 2");
    if (!(lambda > 0.0)) throw std::invalid_argument("ForwardConfig: lambda must be > 0");
    if (!(z > 0.0)) throw std::invalid_argument("ForwardConfig: z must be > 0");
    if (!(pitch > 0.0)) throw std::invalid_argument("ForwardConfig: pitch must be > 0");
    ForwardConfig cfg;
    cfg.kind = ForwardKind::QPR;
    cfg.n = n;
    cfg.lambda = lambda;
    cfg.z = z;
    cfg.pitch = pitch;
    const double bound = cfg.fresnel_z_bound();
    if (!(z < bound)) {
        throw std::invalid_argument(
            "ForwardConfig: sampling criterion violated, z = " + std::to_string(z) +
            " m must be below n*pitch^2/lambda = " + std::to_string(bound) + " m");
    }
    return cfg;
}

double tri(double t) { return std::max(0.0, 1.0 - std::abs(t)); }

Raster dli_forward(const Raster& f, const ForwardConfig& cfg) {
    if (cfg.kind != ForwardKind::DLI) {
        throw std::invalid_argument("dli_forward: config kind is not DLI");
    }
    if (f.height != cfg.n || f.width != cfg.n) {
        throw std::invalid_argument("dli_forward: raster does not match configured n");
    }
    for (double v : f.data) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("dli_forward: values must lie in [0, 1]");
        }
    }

    const int n = cfg.n;
    const int m = n + 1;  // blur acts on the odd grid
    const int c = n / 2;
    Spectrum spec = dft2(f);
    for (int y = 0; y < n; ++y) {
        // cycles per period; the even grid's unpaired Nyquist row acts at |k| = n/2
        const double k = std::abs(y - c);
        const double hy = tri(cfg.b * k / m);
        for (int x = 0; x < n; ++x) {
            const double l = std::abs(x - c);
            spec.at(y, x) *= hy * tri(cfg.b * l / m);
        }
    }
    Raster g = idft2(spec);
    for (double& v : g.data) {
        if (v < 0.0) {
            if (v < -1e-6) {
                throw std::runtime_error(
                    "dli_forward: negative excursion " + std::to_string(v) +
                    " exceeds the 1e-6 clamp budget");
            }
            v = 0.0;
        }
    }
    return g;
}

std::vector<std::complex<double>> fresnel_propagate(
    const std::vector<std::complex<double>>& field, int n, double pitch,
    double lambda, double z) {
    if (static_cast<int>(field.size()) != n * n) {
        throw std::invalid_argument("fresnel_propagate: field size mismatch");
    }
    std::vector<std::complex<double>> spec = field;
    detail::fft2_centered(spec, n, n, -1);
    const int c = n / 2;
    const double df = 1.0 / (n * pitch);  // cycles/meter per bin
    for (int y = 0; y < n; ++y) {
        const double u = (y - c) * df;
        for (int x = 0; x < n; ++x) {
            const double v = (x - c) * df;
            const double phase = -kPi * lambda * z * (u * u + v * v);
            spec[static_cast<std::size_t>(y) * n + x] *=
                std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    detail::fft2_centered(spec, n, n, +1);
    return spec;
}

Raster qpr_forward(const Raster& phase, const ForwardConfig& cfg) {
    if (cfg.kind != ForwardKind::QPR) {
        throw std::invalid_argument("qpr_forward: config kind is not QPR");
    }
    if (phase.height != cfg.n || phase.width != cfg.n) {
        throw std::invalid_argument("qpr_forward: raster does not match configured n");
    }
    for (double v : phase.data) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("qpr_forward: non-finite phase value");
        }
    }
    const int n = cfg.n;
    std::vector<std::complex<double>> field(phase.data.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        field[i] = {std::cos(phase.data[i]), std::sin(phase.data[i])};
    }
    field = fresnel_propagate(field, n, cfg.pitch, cfg.lambda, cfg.z);
    Raster g(n, n, cfg.pitch);
    for (std::size_t i = 0; i < field.size(); ++i) g.data[i] = std::norm(field[i]);
    return g;
}

Raster normalize_measurement(const Raster& g, const Raster& background) {
    if (g.height != background.height || g.width != background.width) {
        throw std::invalid_argument("normalize_measurement: shape mismatch");
    }
    double mean = 0.0;
    for (double v : background.data) mean += v;
    mean /= static_cast<double>(background.size());
    if (!(mean > 0.0)) {
        throw std::invalid_argument("normalize_measurement: background mean must be > 0");
    }
    Raster out(g.height, g.width, g.pitch);
    for (std::size_t i = 0; i < g.data.size(); ++i) {
        out.data[i] = (g.data[i] - background.data[i]) / mean;
    }
    return out;
}

}  // namespace freqsynth
