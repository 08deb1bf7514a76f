#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pent/common.hpp"

namespace pent {

// The i.i.d. source parameter: k letter probabilities, sorted ascending.
// Zero-probability letters are dropped at construction; small normalization
// drift (<= 1e-6) is silently renormalized, larger drift is rejected.
class Distribution {
public:
    static Distribution from_probabilities(std::vector<double> probs);

    std::int64_t alphabet_size() const { return static_cast<std::int64_t>(theta_.size()); }
    const std::vector<double>& theta() const { return theta_; }
    double theta(std::size_t i) const { return theta_[i]; }  // 0-based, ascending
    double min_prob() const { return theta_.front(); }
    bool is_uniform(double tol = 1e-15) const;

private:
    std::vector<double> theta_;
};

struct AnalysisConfig {
    std::int64_t n;
    double epsilon;

    AnalysisConfig(std::int64_t n_, double eps);

    // Probability thresholds shared by the grids, entropies and bounds:
    // small_threshold = n^{-(1-eps)} (bins 0+1), tiny_threshold = n^{-(1+eps)}
    // (bin 0).  Computed once so every module compares against bit-identical
    // values.
    double small_threshold() const;
    double tiny_threshold() const;
};

// -theta log2 theta summed; bits per symbol.
double iid_entropy(const Distribution& d);

// Eq-style packed entropies: letters with theta <= n^{-(1-eps)} merged into
// one super-symbol (01 variant) or into two, split at n^{-(1+eps)} (0,1
// variant).  Bits per symbol.
double packed_entropy_01(const Distribution& d, const AnalysisConfig& cfg);
double packed_entropy_0_1(const Distribution& d, const AnalysisConfig& cfg);

// Distribution families for experiments.  All deterministic for fixed params.
Distribution make_uniform(std::int64_t k);
Distribution make_zipf(std::int64_t k, double s);
Distribution make_geometric(std::int64_t k, double ratio);
// k = round(n^alpha) letters, each with probability 1/k.
Distribution make_power_alpha(std::int64_t n, double alpha);
// k_lo letters sharing mass_lo plus k_hi letters sharing 1 - mass_lo.
Distribution make_two_level(std::int64_t k_lo, std::int64_t k_hi, double mass_lo);

// Parses "family:NAME,key=value,..." (e.g. "family:zipf,k=1000,s=1.0").
Distribution parse_family(const std::string& spec);

// Relative frequencies of a token stream, ascending.
Distribution empirical_distribution(const std::vector<std::string>& tokens);

}  // namespace pent
