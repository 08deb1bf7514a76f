#pragma once

#include <cstdint>
#include <string>

#include "pent/distributions.hpp"
#include "pent/grids.hpp"
#include "pent/patterns.hpp"

namespace pent {

enum class EntropyMethod { exact_patterns, exact_sequences, monte_carlo };

struct EntropyEstimate {
    double value_bits = 0.0;
    double stderr_bits = 0.0;  // 0 for exact methods
    EntropyMethod method = EntropyMethod::exact_patterns;
    std::int64_t samples = 0;         // Monte Carlo only
    bool degenerate_sample = false;   // samples == 1: no spread estimate

    std::string to_json(std::int64_t n, std::int64_t k) const;
};

// Sequence-enumeration guard shared by the exact-by-sequences paths: k^n
// must not exceed this.
inline constexpr double kSequenceEnumerationGuard = 1e8;

// Exact H(Psi^n) by summing -p log2 p over all patterns of length n.
EntropyEstimate pattern_entropy_exact(const Distribution& d, int n,
                                      int cap = kDefaultEnumerationCap);

// Independent oracle: enumerate all k^n sequences, aggregate mass by
// extracted pattern, take the entropy of the aggregate.
EntropyEstimate pattern_entropy_via_sequences(const Distribution& d, int n);

// Plug-in Monte Carlo estimator: mean of -log2 P(pattern of a sampled
// sequence); unbiased since P is the true pattern probability.  Uses the
// uniform closed form when theta is uniform, the exact DP otherwise.
EntropyEstimate pattern_entropy_mc(const Distribution& d, std::int64_t n,
                                   std::int64_t samples, std::uint64_t seed);

// Exact joint entropy H(Psi^n, B^n) where B^n is the eta-bin index sequence.
EntropyEstimate joint_pattern_bin_entropy_exact(const Distribution& d,
                                                const AnalysisConfig& cfg);

// Exact entropy of the bin sequence alone, H(B^n).
EntropyEstimate bin_sequence_entropy_exact(const Distribution& d, const AnalysisConfig& cfg);

// The four terms of the chain-rule decomposition through the small/large
// indicator Z (Z_j = 0 iff theta_{x_j} <= n^{-(1-eps)}):
// H(Psi^n) = H(Psi^n|Z^n) + H(Z^n) - H(Z^n|Psi^n).
struct DecompositionEntropies {
    double pattern;            // H(Psi^n)
    double pattern_given_z;    // H(Psi^n | Z^n)
    double z;                  // H(Z^n)
    double z_given_pattern;    // H(Z^n | Psi^n)
};

DecompositionEntropies decomposition_entropies(const Distribution& d,
                                               const AnalysisConfig& cfg);

}  // namespace pent
