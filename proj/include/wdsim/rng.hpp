#ifndef WDSIM_RNG_HPP
#define WDSIM_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace wdsim {

// Deterministic, platform-independent randomness built on the SplitMix64
// finalizer. Everything stochastic in a run is keyed by a path of integers
// (run seed, stream tag, occurrence index, ...) so that draws are
// order-insensitive and two strategies sampling the same phase under the
// same run seed observe the same value (common random numbers).

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr uint64_t mix64(uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr uint64_t combine(uint64_t h, uint64_t v) {
    return mix64(h ^ (v + kGolden + (h << 6) + (h >> 2)));
}

inline uint64_t derive_key(std::initializer_list<uint64_t> parts) {
    uint64_t h = 0x57444C53u; // arbitrary domain constant
    for (uint64_t p : parts) h = combine(h, p);
    return h;
}

// Uniform double in [0, 1) from 53 high bits.
constexpr double unit_double(uint64_t bits) {
    return double(bits >> 11) * 0x1.0p-53;
}

// Stream tags separating independent uses of the same run seed.
enum : uint64_t {
    kStreamPhase = 1,   // phase duration sampling
    kStreamLoss = 2,    // per-chunk delivery draws
    kStreamAddress = 3, // DHCP address picks
    kStreamControl = 4, // control channel delivery draws
    kStreamRun = 5,     // master seed -> per-run seed derivation
};

inline uint64_t run_seed(uint64_t master_seed, uint64_t run_index) {
    return derive_key({master_seed, kStreamRun, run_index});
}

// Sequential generator over a keyed starting point; used where a bounded
// but data-dependent number of draws is needed (rejection sampling,
// address retry loops).
class Prng {
  public:
    explicit Prng(uint64_t key) : state_(mix64(key)) {}

    uint64_t next() {
        state_ += kGolden;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double unit() { return unit_double(next()); }

    // Uniform integer in [0, n).
    uint64_t below(uint64_t n) { return next() % n; }

  private:
    uint64_t state_;
};

} // namespace wdsim

#endif
