#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace peid {

// Round to `digits` significant decimal digits (used when a report format
// pins its precision).
double round_sig(double x, int digits);

// Digamma function, real argument > 0.
double digamma(double x);

// Deterministic stream derivation: mixes a master seed with a stream index
// so parallel substreams cannot collide or depend on evaluation order.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

// Seeded generator with explicit floating point transforms. The transforms
// are written out here (instead of std::*_distribution) so that identical
// seeds give bit-identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform on [0, 1)
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // standard normal via Box-Muller; consumes two uniforms per pair
    double normal();

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// FNV-1a 64-bit digest, hex-encoded; used for input fingerprints in run
// manifests.
std::string fnv1a_hex(std::string_view bytes);

} // namespace peid
