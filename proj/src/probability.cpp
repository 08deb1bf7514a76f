#include "pent/probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pent {

double sequence_prob(const Distribution& d, const std::vector<int>& x) {
    double prod = 1.0;
    for (int v : x) {
        if (v < 1 || v > d.alphabet_size())
            throw std::invalid_argument("sequence_prob: letter index out of range");
        prod *= d.theta(static_cast<std::size_t>(v - 1));
    }
    return prod;
}

double sequence_log2_prob(const Distribution& d, const std::vector<int>& x) {
    KahanSum s;
    for (int v : x) {
        if (v < 1 || v > d.alphabet_size())
            throw std::invalid_argument("sequence_log2_prob: letter index out of range");
        s.add(std::log2(d.theta(static_cast<std::size_t>(v - 1))));
    }
    return s.value();
}

double pattern_prob_exact(const Distribution& d, const Pattern& p, int cap) {
    int m = p.distinct();
    std::int64_t k = d.alphabet_size();
    if (m == 0) return 1.0;
    if (m > k) return 0.0;
    if (m > cap || m > 64)
        throw infeasible_error(
            "exact probability infeasible: pattern has m=" + std::to_string(m) +
            " distinct indices (cap " + std::to_string(std::min(cap, 64)) +
            "); use the uniform closed form or Monte Carlo");

    std::vector<int> mult = p.multiplicities();
    const std::size_t states = std::size_t{1} << m;
    std::vector<double> dp(states, 0.0);
    dp[0] = 1.0;
    std::vector<double> weight(static_cast<std::size_t>(m));
    // Process letters one at a time; state = subset of pattern indices
    // already assigned a letter.  Descending state order makes the in-place
    // update use each letter at most once.
    for (std::int64_t j = 0; j < k; ++j) {
        double theta = d.theta(static_cast<std::size_t>(j));
        for (int i = 0; i < m; ++i)
            weight[static_cast<std::size_t>(i)] = std::pow(theta, mult[static_cast<std::size_t>(i)]);
        for (std::size_t s = states; s-- > 0;) {
            double base = dp[s];
            if (base == 0.0) continue;
            for (int i = 0; i < m; ++i) {
                std::size_t bit = std::size_t{1} << i;
                if (s & bit) continue;
                dp[s | bit] += base * weight[static_cast<std::size_t>(i)];
            }
        }
    }
    return dp[states - 1];
}

namespace {

void bruteforce_rec(const Distribution& d, const std::vector<int>& mult, std::size_t i,
                    std::vector<bool>& used, double prod, KahanSum& acc) {
    if (i == mult.size()) {
        acc.add(prod);
        return;
    }
    for (std::size_t j = 0; j < used.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        bruteforce_rec(d, mult, i + 1, used,
                       prod * std::pow(d.theta(j), mult[i]), acc);
        used[j] = false;
    }
}

}  // namespace

double pattern_prob_bruteforce(const Distribution& d, const Pattern& p) {
    int m = p.distinct();
    std::int64_t k = d.alphabet_size();
    if (m > 8 || k > 10)
        throw infeasible_error("pattern_prob_bruteforce: oracle-scale guard (m <= 8, k <= 10)");
    if (m == 0) return 1.0;
    if (m > k) return 0.0;
    std::vector<int> mult = p.multiplicities();
    std::vector<bool> used(static_cast<std::size_t>(k), false);
    KahanSum acc;
    bruteforce_rec(d, mult, 0, used, 1.0, acc);
    return acc.value();
}

double pattern_log2_prob_uniform(std::int64_t k, const Pattern& p) {
    int m = p.distinct();
    if (m > k) return -std::numeric_limits<double>::infinity();
    KahanSum s;
    for (int i = 0; i < m; ++i) s.add(std::log2(static_cast<double>(k - i)));
    s.add(-static_cast<double>(p.length()) * std::log2(static_cast<double>(k)));
    return s.value();
}

double pattern_prob_uniform(std::int64_t k, const Pattern& p) {
    return std::exp2(pattern_log2_prob_uniform(k, p));
}

SequenceSampler::SequenceSampler(const Distribution& d, std::uint64_t seed) : rng_(seed) {
    cdf_.reserve(d.theta().size());
    double acc = 0.0;
    for (double p : d.theta()) {
        acc += p;
        cdf_.push_back(acc);
    }
    cdf_.back() = 1.0;
}

int SequenceSampler::draw_letter() {
    double u = rng_.next_double();
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<int>(it - cdf_.begin()) + 1;
}

void SequenceSampler::fill(std::vector<int>& out, std::int64_t n) {
    out.resize(static_cast<std::size_t>(n));
    for (auto& v : out) v = draw_letter();
}

std::vector<int> sample_sequence(const Distribution& d, std::int64_t n, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("sample_sequence: negative n");
    SequenceSampler sampler(d, seed);
    std::vector<int> out;
    sampler.fill(out, n);
    return out;
}

}  // namespace pent
