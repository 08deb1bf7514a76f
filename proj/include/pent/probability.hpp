#pragma once

#include <cstdint>
#include <vector>

#include "pent/distributions.hpp"
#include "pent/patterns.hpp"

namespace pent {

// Probability of a letter-index sequence (1-based indices into the sorted
// theta vector); empty product is 1.
double sequence_prob(const Distribution& d, const std::vector<int>& x);
double sequence_log2_prob(const Distribution& d, const std::vector<int>& x);

inline constexpr int kDefaultDpCap = 24;

// Exact pattern probability: the sum over injective assignments of pattern
// indices to alphabet letters of prod theta^{multiplicity}, computed by a
// subset-state dynamic program over letters (O(k 2^m m), all terms
// positive).  Returns 0 when m > k.  Throws infeasible_error when m exceeds
// the DP cap.
double pattern_prob_exact(const Distribution& d, const Pattern& p, int cap = kDefaultDpCap);

// Direct sum over all k!/(k-m)! injective assignments.  Test oracle only;
// guarded to m <= 8, k <= 10.
double pattern_prob_bruteforce(const Distribution& d, const Pattern& p);

// Closed form for uniform theta: k (k-1) ... (k-m+1) / k^n, in log space.
// Returns -inf when m > k.
double pattern_log2_prob_uniform(std::int64_t k, const Pattern& p);
double pattern_prob_uniform(std::int64_t k, const Pattern& p);

// n i.i.d. draws from theta (letters 1..k) using pent-mt19937_64-v1 with
// CDF inversion; deterministic per (seed, d, n).
std::vector<int> sample_sequence(const Distribution& d, std::int64_t n, std::uint64_t seed);

// Visits every letter sequence of length n over 1..k (odometer order)
// together with its probability.  Callers guard the k^n scale themselves.
template <typename Fn>
void for_each_sequence(const Distribution& d, std::int64_t n, Fn&& fn) {
    std::vector<int> x(static_cast<std::size_t>(n), 1);
    const std::int64_t k = d.alphabet_size();
    while (true) {
        fn(static_cast<const std::vector<int>&>(x), sequence_prob(d, x));
        std::int64_t j = n - 1;
        while (j >= 0 && x[static_cast<std::size_t>(j)] == k) {
            x[static_cast<std::size_t>(j)] = 1;
            --j;
        }
        if (j < 0) break;
        ++x[static_cast<std::size_t>(j)];
    }
}

// Sampler with precomputed CDF, for repeated draws.
class SequenceSampler {
public:
    SequenceSampler(const Distribution& d, std::uint64_t seed);
    int draw_letter();
    void fill(std::vector<int>& out, std::int64_t n);

private:
    std::vector<double> cdf_;
    Rng rng_;
};

}  // namespace pent
