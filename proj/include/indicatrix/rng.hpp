#ifndef INDICATRIX_RNG_HPP
#define INDICATRIX_RNG_HPP

#include <cstdint>

namespace indicatrix {

// splitmix64; used both as a standalone generator and to derive
// independent substream seeds from (seed, index) pairs.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return (next() >> 11) * 0x1.0p-53; }
};

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    SplitMix64 g(seed ^ (a * 0xd1342543de82ef95ULL) ^ (b * 0xaf251af3b0f025b5ULL));
    g.next();
    return g.next();
}

} // namespace indicatrix

#endif
