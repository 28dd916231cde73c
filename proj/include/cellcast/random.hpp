#pragma once

#include <cstdint>
#include <random>

namespace cellcast {

/// Deterministic random stream derived from a (master seed, stream index)
/// pair. Distinct indices give statistically independent substreams; the
/// same pair always reproduces the same sequence.
///
/// Uniform variates are produced directly from the 64-bit engine output so
/// coordinates and thinning decisions do not depend on the standard
/// library's distribution implementations. Poisson counts use
/// std::poisson_distribution.
class RandomStream
{
  public:
    using engine_type = std::mt19937_64;

    RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

    /// Child stream keyed by this stream's seed material and `index`.
    RandomStream substream(std::uint64_t index) const;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Uniform on [0, upper).
    double uniform(double upper);

    bool bernoulli(double p);

    std::uint64_t poisson(double mean);

    std::uint64_t master_seed() const { return master_; }
    std::uint64_t stream_index() const { return index_; }

  private:
    std::uint64_t master_;
    std::uint64_t index_;
    engine_type engine_;
};

/// SplitMix64 finalizer; used to decorrelate seed material.
std::uint64_t mix64(std::uint64_t x);

} // namespace cellcast
