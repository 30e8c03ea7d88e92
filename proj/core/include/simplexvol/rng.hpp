#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace simplexvol {

// Stateless counter-based generator: every draw is a hash of
// (seed, chunk, sample, lane). Estimates are reproducible for a fixed
// (seed, samples, chunk) triple no matter how chunks are scheduled.
namespace rng {

inline std::uint64_t mix64(std::uint64_t x) {
    // Stafford mix13 finalizer.
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a + 0x9e3779b97f4a7c15ULL * (b + 1));
}

inline double u01_from_bits(std::uint64_t bits) {
    // (0, 1): never exactly 0, so logs are safe.
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace rng

// One Monte Carlo sample's substream; lanes index independent draws.
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t chunk, std::uint64_t sample)
        : key_(rng::combine(rng::combine(seed, chunk), sample)) {}

    double u01(std::uint32_t lane) const {
        return rng::u01_from_bits(rng::mix64(key_ + 0x9e3779b97f4a7c15ULL * (lane + 1)));
    }

    // Box-Muller; consumes lanes (2*lane, 2*lane + 1).
    double gaussian(std::uint32_t lane) const {
        const double u1 = u01(2 * lane);
        const double u2 = u01(2 * lane + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t key_;
};

// Sequential convenience stream for non-estimator randomness
// (matrix generation, retry loops). Still a pure function of the seed.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed) {}

    double u01() { return rng::u01_from_bits(rng::mix64(rng::combine(seed_, counter_++))); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    double gaussian() {
        const double u1 = u01();
        const double u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

// Mean / standard-error accumulator with fixed combine order.
struct Accumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t n = 0;

    void add(double x) {
        sum += x;
        sumsq += x * x;
        ++n;
    }

    void combine(const Accumulator& o) {
        sum += o.sum;
        sumsq += o.sumsq;
        n += o.n;
    }

    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }

    double std_error() const {
        if (n < 2) return 0.0;
        const double nn = static_cast<double>(n);
        const double var = (sumsq - sum * sum / nn) / (nn - 1.0);
        return var > 0.0 ? std::sqrt(var / nn) : 0.0;
    }
};

} // namespace simplexvol
