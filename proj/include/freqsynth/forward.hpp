#pragma once

#include "freqsynth/raster.hpp"

namespace freqsynth {

enum class ForwardKind { DLI, QPR };

/// Physical parameters of an imaging scenario. Constructed through the
/// factories below, which enforce the invariants (notably the Fresnel
/// transfer-function sampling criterion z < n*pitch^2/lambda for QPR).
struct ForwardConfig {
    ForwardKind kind = ForwardKind::DLI;
    int n = 64;            // grid size in pixels
    double b = 7.0;        // nominal resolving ability in pixels (DLI)
    double lambda = 0.0;   // wavelength, meters (QPR)
    double z = 0.0;        // propagation distance, meters (QPR)
    double pitch = 1e-5;   // meters per pixel

    static ForwardConfig dli(int n, double b, double pitch = 1e-5);
    static ForwardConfig qpr(int n, double lambda, double z, double pitch);

    /// Upper bound on z for which the transfer-function method is valid.
    double fresnel_z_bound() const { return n * pitch * pitch / lambda; }
};

/// tri(t) = max(0, 1 - |t|); the 2-D transfer function is the separable
/// product tri(bu) * tri(bv).
double tri(double t);

/// Incoherent diffraction-limited measurement: the sinc^2 blur applied as
/// the triangular transfer function on the odd (n+1)-point grid. Exact
/// trigonometric resampling makes the whole chain the per-bin filter
/// tri(b*k/(n+1)) * tri(b*l/(n+1)) on cycles-per-period indices (k, l).
Raster dli_forward(const Raster& f, const ForwardConfig& cfg);

/// Lensless quantitative phase measurement g = |ASP(exp(i*phase))|^2 where
/// ASP multiplies the field spectrum by exp(-i*pi*lambda*z*(u^2+v^2)) with
/// u, v in cycles/meter.
Raster qpr_forward(const Raster& phase, const ForwardConfig& cfg);

/// (g - background) / mean(background); background is the zero-phase
/// measurement of the same configuration.
Raster normalize_measurement(const Raster& g, const Raster& background);

/// Fresnel (angular spectrum) propagation of a complex field sampled on an
/// n x n grid of the given pitch. Unitary; propagating z then -z is exact.
std::vector<std::complex<double>> fresnel_propagate(
    const std::vector<std::complex<double>>& field, int n, double pitch,
    double lambda, double z);

}  // namespace freqsynth
