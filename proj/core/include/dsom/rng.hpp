#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace dsom {

/// Deterministic 64-bit generator (splitmix64 core). All randomness in the
/// library flows from one root seed through named substreams, so components
/// draw independently and a run is fully reproducible from (seed, data).
/// Self-contained on purpose: results are identical across standard libraries
/// and platforms, which std::normal_distribution does not guarantee.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Substream for an independent component, e.g. Rng::stream(seed, "init").
    static Rng stream(std::uint64_t seed, std::string_view name) {
        std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
        for (char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        Rng r(seed ^ h);
        r.next_u64();  // decorrelate nearby seeds
        r.next_u64();
        return r;
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), unbiased.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    /// Standard normal via Box-Muller.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite
        const double u1 = double((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dsom
