#ifndef SIEGEL_RNG_HPP
#define SIEGEL_RNG_HPP

#include <cmath>
#include <cstdint>

namespace siegel {

/// Counter-based generator: output i of stream (seed, stream) is a pure
/// function of (seed, stream, i), so disjoint blocks of a Monte-Carlo run
/// can be handed to workers in any order and still reproduce bit-for-bit.
/// Mixing is the splitmix64 finalizer over a Weyl sequence.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ mix(stream + 0x632BE59BD9B4E019ULL))), ctr_(0) {}

    std::uint64_t next_u64() {
        std::uint64_t v = key_ + (++ctr_) * 0x9E3779B97F4A7C15ULL;
        return mix(v);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1].
    double next_double_pos() { return 1.0 - next_double(); }

    /// Standard normal, Box-Muller, one spare value cached.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_double_pos();
        const double u2 = next_double();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925286766559 * u2;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

private:
    std::uint64_t key_;
    std::uint64_t ctr_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace siegel

#endif
