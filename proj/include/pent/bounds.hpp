#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pent/distributions.hpp"
#include "pent/grids.hpp"

namespace pent {

// log2(x!) via log-gamma, with an exact-integer fallback for x <= 20.
double log2_factorial(std::uint64_t x);

// h2(alpha) in bits; h2(0) = h2(1) = 0.  Throws on alpha outside [0,1].
double binary_entropy(double alpha);

struct BoundEntry {
    std::string name;
    double value_bits = 0.0;
    bool applicable = false;
    bool asymptotic = false;  // carries (1-eps) factors or dropped o(.) terms
    std::string notes;
};

struct BoundReport {
    std::int64_t n = 0;
    double epsilon = 0.0;
    std::int64_t k = 0;
    double iid_total_bits = 0.0;  // n H(X)
    std::vector<BoundEntry> entries;

    const BoundEntry& entry(const std::string& name) const;
    std::string to_json() const;
    std::string to_csv() const;
};

// Non-asymptotic sandwich: upper = nH(X); lower = nH(X) - log2 k! for
// k <= n, else nH(X) - log2(k!/(k-n)!); lower clamped at 0.
std::pair<double, double> thm1_bounds(const Distribution& d, std::int64_t n);

// Upper bound from the sequential-coding redundancy argument: applicable
// when k-hat (letters with (1-theta)^n <= eps) exceeds e^{19/18} n^{1/3}.
BoundEntry eq12_upper(const Distribution& d, const AnalysisConfig& cfg);

// nH(X) - (1-eps) sum_{b>=2} log2(k_b!); requires theta_1 > n^{-(1-eps)}.
BoundEntry thm2_upper(const Distribution& d, const AnalysisConfig& cfg);

// nH(X) - sum_b log2(kappa_b!); requires theta_1 > n^{-(1-eps)}.
BoundEntry thm3_lower(const Distribution& d, const AnalysisConfig& cfg);

// Entropy range for large alphabets (k >= n^{(1+eps)/3}); the Figure-1 band.
std::pair<BoundEntry, BoundEntry> thm4_range(const Distribution& d,
                                             const AnalysisConfig& cfg);

// General upper bound via the packed (0,1) entropy plus bin-1/bin-0
// packing penalties.
BoundEntry thm5_upper(const Distribution& d, const AnalysisConfig& cfg);

// General lower bound via the packed (01) entropy, with small-letter
// corrections and the boundary binomial term.
BoundEntry thm6_lower(const Distribution& d, const AnalysisConfig& cfg);

BoundReport bound_report(const Distribution& d, const AnalysisConfig& cfg);

struct Figure1Row {
    std::int64_t k;
    double min_decrease_bits;
    double max_decrease_bits;
};

// Log-spaced sweep of the theorem-4 decrease band.  k_min must be at least
// n^{(1+eps)/3}.
std::vector<Figure1Row> figure1_data(const AnalysisConfig& cfg, std::int64_t k_min,
                                     std::int64_t k_max, int steps);

std::string figure1_csv(const std::vector<Figure1Row>& rows);

}  // namespace pent
