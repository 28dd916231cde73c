#include "cellcast/random.hpp"

namespace cellcast {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    return mix64(master ^ mix64(index + 0x632be59bd9b4e019ULL));
}

} // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_(master_seed), index_(stream_index), engine_(derive_seed(master_seed, stream_index))
{
}

RandomStream RandomStream::substream(std::uint64_t index) const
{
    return RandomStream(derive_seed(master_, index_), index);
}

double RandomStream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double upper)
{
    double x = uniform() * upper;
    return x < upper ? x : 0.0;
}

bool RandomStream::bernoulli(double p)
{
    if (p >= 1.0)
        return true;
    if (p <= 0.0)
        return false;
    return uniform() < p;
}

std::uint64_t RandomStream::poisson(double mean)
{
    if (mean <= 0.0)
        return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(engine_);
}

} // namespace cellcast
