#pragma once

#include <cstdint>
#include <random>

namespace chaosmoments {

// splitmix64: used to derive independent per-block seeds from (seed, index),
// so multi-threaded runs merge block results in index order and stay
// bit-identical for any thread count.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index * 0x9e3779b97f4a7c15ULL + 1));
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(derive_seed(seed, index));
}

// Running mean / standard error accumulator for Monte Carlo estimators.
struct MeanAccumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t n = 0;

    void add(double x) {
        sum += x;
        sumsq += x * x;
        ++n;
    }
    void merge(const MeanAccumulator& o) {
        sum += o.sum;
        sumsq += o.sumsq;
        n += o.n;
    }
    double mean() const { return n ? sum / double(n) : 0.0; }
    double variance() const {
        if (n < 2) return 0.0;
        double m = mean();
        double v = (sumsq - double(n) * m * m) / double(n - 1);
        return v > 0.0 ? v : 0.0;
    }
    double std_error() const {
        return n ? std::sqrt(variance() / double(n)) : 0.0;
    }
};

}  // namespace chaosmoments
