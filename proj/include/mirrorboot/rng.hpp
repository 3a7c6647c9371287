#pragma once

#include <cstdint>
#include <limits>

namespace mirrorboot {

namespace detail {

struct U128 {
    std::uint64_t lo;
    std::uint64_t hi;
};

inline U128 mul_wide(std::uint64_t a, std::uint64_t b) noexcept {
    const unsigned __int128 p =
        static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    return {static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(p >> 64)};
}

// 64-bit finalizer from SplitMix64, used to derive sub-seeds.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

// Counter-based Philox4x64-10 stream.
//
// A stream is identified by (seed, stream index); equal pairs replay the
// same sequence and distinct indices select disjoint keyed permutations,
// so replications can be assigned streams in any order, from any thread.
// The raw 64-bit output matches numpy.random.Philox(key=[seed, stream]).
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : key0_(seed), key1_(stream) {}

    std::uint64_t seed() const noexcept { return key0_; }
    std::uint64_t stream() const noexcept { return key1_; }

    std::uint64_t next_u64() noexcept {
        if (pos_ == 4) refill();
        return buffer_[pos_++];
    }

    // Uniform on the open interval (0, 1); every value has the form
    // (k + 1/2) * 2^-53, so 0 and 1 are never produced and the grid is
    // symmetric under u -> 1 - u.
    double next_unit() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Unbiased integer in [0, bound) by multiply-shift with rejection
    // (Lemire 2018). bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        detail::U128 m = detail::mul_wide(next_u64(), bound);
        if (m.lo < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (m.lo < threshold) m = detail::mul_wide(next_u64(), bound);
        }
        return m.hi;
    }

private:
    static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
    static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

    void refill() noexcept {
        if (++ctr_[0] == 0)
            if (++ctr_[1] == 0)
                if (++ctr_[2] == 0) ++ctr_[3];

        std::uint64_t c0 = ctr_[0], c1 = ctr_[1], c2 = ctr_[2], c3 = ctr_[3];
        std::uint64_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            if (round != 0) {
                k0 += kWeyl0;
                k1 += kWeyl1;
            }
            const detail::U128 p0 = detail::mul_wide(kMul0, c0);
            const detail::U128 p1 = detail::mul_wide(kMul1, c2);
            c0 = p1.hi ^ c1 ^ k0;
            c1 = p1.lo;
            c2 = p0.hi ^ c3 ^ k1;
            c3 = p0.lo;
        }
        buffer_[0] = c0;
        buffer_[1] = c1;
        buffer_[2] = c2;
        buffer_[3] = c3;
        pos_ = 0;
    }

    std::uint64_t key0_;
    std::uint64_t key1_;
    std::uint64_t ctr_[4] = {0, 0, 0, 0};
    std::uint64_t buffer_[4] = {0, 0, 0, 0};
    int pos_ = 4;
};

// Deterministically folds a label (grid cell index, run id, ...) into a
// master seed, giving a fresh seed whose streams do not collide with the
// parent's.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t label) noexcept {
    return detail::mix64(master_seed ^ detail::mix64(label));
}

} // namespace mirrorboot
