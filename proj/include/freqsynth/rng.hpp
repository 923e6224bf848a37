#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace freqsynth {

/// Seeded random source with self-contained uniform/normal draws so that
/// streams are bit-reproducible (std::normal_distribution is
/// implementation-defined; Box-Muller below is not).
class Rng {
public:
    explicit Rng(std::uint64_t seed)
        : gen_(splitmix(seed)), fork_base_(splitmix(seed ^ 0xda3e39cb94b95bdbULL)) {}

    std::uint64_t bits() { return gen_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; caches the second deviate.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.28318530717958647692 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform integer in [0, bound).
    std::uint64_t integer(std::uint64_t bound) { return gen_() % bound; }

    /// Independent child stream; distinct tags give distinct streams.
    Rng fork(std::uint64_t tag) const {
        return Rng(fork_base_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
    }

    /// Fisher-Yates shuffle driven by this stream.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[integer(i)]);
        }
    }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 gen_;
    std::uint64_t fork_base_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace freqsynth
