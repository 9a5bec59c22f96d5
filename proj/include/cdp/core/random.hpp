#pragma once

#include <cstdint>

namespace cdp {

namespace detail {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 output function (Steele, Lea & Flood 2014). Pure, so the same
// input always yields the same 64-bit value on every platform.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += kGoldenGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Counter-based deterministic random stream.
///
/// Every draw is a pure function of (seed, cursor): value = splitmix64(seed ^
/// splitmix64(cursor)). Restoring the cursor replays the sequence bit-exactly,
/// which is what determinized scenario planning and reproducible benchmarks
/// rely on. Child streams are rekeyed from the parent seed and a caller-chosen
/// key, so they are independent of the parent's continuation.
class RandomStream {
  public:
    RandomStream() = default;
    explicit RandomStream(std::uint64_t seed, std::uint64_t cursor = 0)
        : seed_(seed), cursor_(cursor) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t cursor() const { return cursor_; }
    void setCursor(std::uint64_t c) { cursor_ = c; }

    std::uint64_t nextU64() {
        return detail::splitmix64(seed_ ^ detail::splitmix64(cursor_++));
    }

    /// Uniform double in [0, 1) with 53 bits of mantissa.
    double nextUnit() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Multiply-shift, no modulo bias to speak
    /// of at the bounds used here, and identical on every platform.
    std::uint32_t nextBelow(std::uint32_t bound) {
        const std::uint64_t hi = nextU64() >> 32;
        return static_cast<std::uint32_t>((hi * bound) >> 32);
    }

    bool nextBool(double prob) { return nextUnit() < prob; }

    /// Independent stream derived from this stream's seed and `key`. Does not
    /// advance the parent cursor.
    RandomStream child(std::uint64_t key) const {
        return RandomStream(
            detail::splitmix64(seed_ + detail::splitmix64(key ^ 0xD1B54A32D192ED03ull)));
    }

  private:
    std::uint64_t seed_ = 0;
    std::uint64_t cursor_ = 0;
};

}  // namespace cdp
