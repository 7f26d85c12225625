#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., Random123 family).
// Stateless: each output block is a pure function of (key, counter), so a
// shot batch can be partitioned across workers by counter range and merge
// bit-identical to a serial run. Streams are split by folding a stream index
// into the key.

#include <array>
#include <cmath>
#include <cstdint>

namespace qskew {

class Philox {
public:
    /// key0 = low/high words of the 64-bit seed; stream selects an
    /// independent sequence for the same seed (setting index, worker lane...).
    Philox(std::uint64_t seed, std::uint64_t stream = 0)
        : k0_(static_cast<std::uint32_t>(seed)),
          k1_(static_cast<std::uint32_t>(seed >> 32) ^ static_cast<std::uint32_t>(stream) ^
              static_cast<std::uint32_t>(stream >> 32) * 0x9E3779B9u) {}

    std::array<std::uint32_t, 4> block(std::uint64_t counter) const {
        std::uint32_t c0 = static_cast<std::uint32_t>(counter);
        std::uint32_t c1 = static_cast<std::uint32_t>(counter >> 32);
        std::uint32_t c2 = 0, c3 = 0;
        std::uint32_t k0 = k0_, k1 = k1_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c0;
            const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            c0 = n0;
            c1 = lo1;
            c2 = n2;
            c3 = lo0;
            k0 += kW0;
            k1 += kW1;
        }
        return {c0, c1, c2, c3};
    }

    /// Two 64-bit words per block.
    std::uint64_t word64(std::uint64_t index) const {
        const auto b = block(index >> 1);
        const int lane = static_cast<int>(index & 1) * 2;
        return (static_cast<std::uint64_t>(b[lane]) << 32) | b[lane + 1];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform(std::uint64_t index) const {
        return static_cast<double>(word64(index) >> 11) * 0x1.0p-53;
    }

private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;

    std::uint32_t k0_, k1_;
};

/// Sequential convenience wrapper: a Philox stream consumed as an ordinary
/// generator (for the random ensembles, where per-draw addressing is not
/// needed but seeded determinism is).
class PhiloxSequence {
public:
    explicit PhiloxSequence(std::uint64_t seed, std::uint64_t stream = 0)
        : gen_(seed, stream) {}

    double uniform() { return gen_.uniform(next_++); }

    /// Standard normal via Box-Muller (one value per call, pairs drawn lazily).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

private:
    Philox gen_;
    std::uint64_t next_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qskew
