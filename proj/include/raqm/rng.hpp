#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace raqm::rng {

// 64-bit avalanche finalizer (SplitMix64).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Stream;

// Splittable key for counter-based random streams. A key is a pure value
// derived from the master seed and a path of child indices, so any worker
// that derives the same path gets the same stream -- results do not depend
// on scheduling or worker count.
class Key {
public:
    explicit constexpr Key(std::uint64_t seed) : h_(mix64(seed ^ 0x5261716d526e6701ULL)) {}

    constexpr Key child(std::uint64_t index) const {
        Key k = *this;
        k.h_ = mix64(h_ ^ mix64(index ^ 0xc2b2ae3d27d4eb4fULL));
        return k;
    }

    constexpr std::uint64_t value() const { return h_; }

    inline Stream stream() const;

private:
    std::uint64_t h_;
};

// Counter-based generator: the n-th output is a pure function of (key, n).
class Stream {
public:
    explicit constexpr Stream(std::uint64_t key) : key_(key), n_(0) {}

    std::uint64_t next_u64() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++n_); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Poisson sample by CDF inversion; exact for the small means used here.
    int poisson(double mu) {
        if (mu < 0.0)
            throw std::invalid_argument("rng::Stream::poisson: negative mean");
        if (mu == 0.0)
            return 0;
        const double u = uniform();
        double pmf = std::exp(-mu);
        double cdf = pmf;
        int n = 0;
        while (u >= cdf && n < 4096) {
            ++n;
            pmf *= mu / n;
            cdf += pmf;
        }
        return n;
    }

    // Binomial(n, p) as n Bernoulli trials; one counter tick per trial keeps
    // the stream layout independent of p.
    std::int64_t binomial(std::int64_t n, double p) {
        std::int64_t k = 0;
        for (std::int64_t i = 0; i < n; ++i)
            k += bernoulli(p) ? 1 : 0;
        return k;
    }

private:
    std::uint64_t key_;
    std::uint64_t n_;
};

inline Stream Key::stream() const { return Stream(h_); }

} // namespace raqm::rng
