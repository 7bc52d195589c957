#pragma once

#include <cstdint>

namespace tvsph {

// Counter-based generator: every variate is a pure function of
// (seed, stream, counter), so sample i of stream s is reproducible
// regardless of how work is partitioned across threads.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    static std::uint64_t hash(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t counter) {
        // splitmix64 finalizer applied to a mixed key
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1) +
                          0xbf58476d1ce4e5b9ULL * (counter + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static double uniform(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t counter) {
        return (hash(seed, stream, counter) >> 11) * 0x1.0p-53;
    }

    // next value in this stream
    double next() { return uniform(seed_, stream_, counter_++); }

    std::uint64_t next_u64() { return hash(seed_, stream_, counter_++); }

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace tvsph
