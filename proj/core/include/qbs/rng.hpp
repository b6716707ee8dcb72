#ifndef QBS_RNG_HPP
#define QBS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace qbs {

/// Mixes a 64-bit value into a well-distributed seed (splitmix64 finalizer).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic random stream with a bit-portable output sequence.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard, and the uniform/normal mappings below are implemented here
/// instead of relying on std::*_distribution (whose output is
/// implementation-defined). Identical seeds therefore produce identical
/// draws on every platform.
///
/// Stream splitting: substream(tag) seeds a child generator with
/// splitmix64(seed ^ splitmix64(tag)), so independent components
/// (e.g. matrix generation vs. outcome sampling) can share one user seed
/// without overlapping streams.
class PortableRng {
  public:
    explicit PortableRng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    /// Child stream derived from this stream's seed and a tag.
    PortableRng substream(std::uint64_t tag) const {
        return PortableRng(seed_ ^ splitmix64(tag));
    }

    /// Uniform draw in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal draw (Box-Muller, pair cached).
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        // u1 in (0,1] so the log is finite.
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.28318530717958647692 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    std::uint64_t raw() { return engine_(); }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace qbs

#endif  // QBS_RNG_HPP
