#pragma once

#include <cstdint>

namespace collatz {

// Counter-based generator: value(i) = mix(seed, stream, i) with the SplitMix64
// finalizer.  Streams are independent lanes for sharded Monte Carlo; (seed,
// stream, counter) fully determines every draw, so runs are bit-reproducible
// and shards can be evaluated in any order.
class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t stream = 0) : seed_(seed), stream_(stream), ctr_(0) {}

    CounterRng split(uint64_t stream) const { return CounterRng(seed_, stream); }

    uint64_t next_u64() { return at(ctr_++); }

    // uniform in [0, 1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    // geometric on {0,1,2,...} with success probability 1/2
    unsigned long next_geometric() {
        unsigned long g = 0;
        while (true) {
            uint64_t bits = next_u64();
            for (int i = 0; i < 64; ++i) {
                if ((bits >> i) & 1) return g;
                ++g;
            }
        }
    }

    uint64_t at(uint64_t counter) const {
        uint64_t z = seed_ + 0x9E3779B97F4A7C15ULL * (counter + 1) +
                     0xBF58476D1CE4E5B9ULL * (stream_ + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t seed() const { return seed_; }
    uint64_t stream() const { return stream_; }

  private:
    uint64_t seed_, stream_, ctr_;
};

}  // namespace collatz
