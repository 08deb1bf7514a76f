#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pent {

// Thrown when a request exceeds the configured exact-computation caps
// (enumeration sizes, DP widths, sequence counts).  The CLI maps this to
// exit code 2.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

// Kahan compensated accumulator.  Entropy sums iterate over up to
// Bell(n) terms of mixed magnitude; the compensation keeps them stable.
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

// Shortest-round-trip-ish canonical decimal form used in model digests.
std::string canonical_double(double x);

// Named, versioned pseudo-random generator: "pent-mt19937_64-v1".
// Uniform doubles are the top 53 bits of the raw output, so streams are
// identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Derives an independent per-task seed from (seed, task index); used by
    // callers that partition sampling work.
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (task + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace pent
