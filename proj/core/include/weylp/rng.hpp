#pragma once

#include <cmath>
#include <cstdint>

namespace weylp {

// Addressable random stream: (master_seed, stream_index) fully determines the
// generated sequence. Streams with distinct indices are statistically
// independent; results never depend on how streams are scheduled over threads.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    RngStream substream(std::uint64_t offset) const {
        return RngStream{master_seed, stream_index + offset};
    }
    friend bool operator==(const RngStream&, const RngStream&) = default;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace detail

// xoshiro256++, state derived from (master_seed, stream_index) via SplitMix64.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(RngStream stream) {
        std::uint64_t sm = stream.master_seed + 0x9E3779B97F4A7C15ULL * (stream.stream_index + 1);
        for (auto& s : state_) s = detail::splitmix64(sm);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl(state_[3], 45);
        return result;
    }

    // Uniform on (-1, 1), zero excluded from the open endpoints by construction.
    double next_symmetric() {
        // 53 significand bits, then shift to (-1,1).
        return 2.0 * ((next_u64() >> 11) * 0x1.0p-53) - 1.0;
    }

  private:
    std::uint64_t state_[4];
};

// Standard normals via the Marsaglia polar method.
class GaussianStream {
  public:
    explicit GaussianStream(RngStream stream) : engine_(stream) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = engine_.next_symmetric();
            v = engine_.next_symmetric();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    void fill(double* dst, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) dst[i] = next();
    }

  private:
    Xoshiro256pp engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace weylp
