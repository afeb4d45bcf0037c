#pragma once

#include <cstdint>
#include <random>

namespace heatobs {

// Seeded generator with platform-independent real draws. The standard
// distributions are implementation-defined, so reals are built from the raw
// 64-bit stream directly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller.
    double normal();

    // Independent stream for member `index` of an ensemble.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

private:
    std::mt19937_64 engine_;
};

}  // namespace heatobs
