#pragma once

#include <cstdint>

namespace fastfood {

// splitmix64 finalizer; bijective on 64-bit words.
inline uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// Identifies one deterministic draw stream. Equal (master_seed, stream_id)
// reproduce bit-identical sequences regardless of thread schedule; distinct
// stream_ids give statistically independent streams.
struct SeedSpec {
    uint64_t master_seed = 0;
    uint64_t stream_id = 0;

    SeedSpec substream(uint64_t tag) const {
        return {master_seed,
                mix64(stream_id ^ (0x9e3779b97f4a7c15ULL * (tag + 1)))};
    }
};

// Counter-based generator: word i is a pure function of (seed, i), so draws
// can be produced out of order or in parallel without shared state.
class CounterRng {
 public:
    explicit CounterRng(SeedSpec s)
        : key_(mix64(mix64(s.master_seed ^ 0x6a09e667f3bcc909ULL) ^
                     s.stream_id)) {}

    uint64_t word_at(uint64_t ctr) const {
        return mix64(mix64(key_ + 0x9e3779b97f4a7c15ULL * ctr) ^
                     0xbb67ae8584caa73bULL);
    }
    // Uniform on (0,1), exclusive of both ends (bucket centers).
    double uniform_at(uint64_t ctr) const {
        return (static_cast<double>(word_at(ctr) >> 11) + 0.5) *
               (1.0 / 9007199254740992.0);
    }

    uint64_t next_u64() { return word_at(ctr_++); }
    double next_uniform() { return uniform_at(ctr_++); }
    // Uniform integer in [0, bound) via multiply-shift; bias < bound/2^64.
    uint64_t next_below(uint64_t bound) {
        unsigned __int128 m =
            static_cast<unsigned __int128>(next_u64()) * bound;
        return static_cast<uint64_t>(m >> 64);
    }

    uint64_t counter() const { return ctr_; }
    void seek(uint64_t ctr) { ctr_ = ctr; }

 private:
    uint64_t key_;
    uint64_t ctr_ = 0;
};

}  // namespace fastfood
