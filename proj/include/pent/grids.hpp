#pragma once

#include <cstdint>
#include <vector>

#include "pent/distributions.hpp"

namespace pent {

enum class GridKind { eta, xi };

// Grid of probability points with increasing spacing.  points[0] == 0 and
// the points are strictly increasing; bins are the half-open intervals
// (points[b], points[b+1]], with probabilities above the last point mapped
// to the last bin.
struct GridSpec {
    GridKind kind;
    std::int64_t n;
    double epsilon;
    std::vector<double> points;

    // B (eta) or B-bar (xi): the number of nonzero grid points.
    std::int64_t nonzero_points() const {
        return static_cast<std::int64_t>(points.size()) - 1;
    }
    std::int64_t bin_count() const { return nonzero_points(); }
};

// Eta grid: eta_0 = 0, eta_1 = n^{-(1+eps)}, and for b >= 2
// eta_b = (b + n^{3 eps/2} - 2)^2 / n^{1+2 eps} (so eta_2 = n^{-(1-eps)});
// B = floor(n^{(1+2 eps)/2} - n^{3 eps/2} + 2).
GridSpec build_eta_grid(const AnalysisConfig& cfg);

// Xi grid: xi_0 = 0, xi_b = b^2 / n^{1-eps}; B-bar = floor(n^{(1-eps)/2}).
GridSpec build_xi_grid(const AnalysisConfig& cfg);

// Bin b with points[b] < p <= points[b+1]; p above the last point maps to
// the last bin.  Throws on p <= 0 or p > 1.
std::int64_t bin_of(const GridSpec& g, double p);

// Everything the bounds consume, computed over the eta grid (and the xi
// windows for kappa).
struct BinStats {
    std::vector<std::int64_t> bin_counts;   // k_b per eta bin
    std::vector<double> bin_mass;           // phi_b
    std::vector<double> bin_occupancy;      // L_b = sum 1-(1-theta)^n

    std::int64_t k0 = 0, k1 = 0, k01 = 0;
    double phi0 = 0.0, phi1 = 0.0, phi01 = 0.0;
    double L0 = 0.0, L1 = 0.0, L01 = 0.0;

    // kappa[b-1] = number of letters in the xi window around point b,
    // b = 1..B-bar.
    std::vector<std::int64_t> kappa;

    // Letters straddling the small/large boundary:
    // k2_minus counts theta in (1/(2 n^{1-eps}), 1/n^{1-eps}],
    // k2_plus  counts theta in (1/n^{1-eps}, 3/(2 n^{1-eps})].
    std::int64_t k2_minus = 0, k2_plus = 0;
};

BinStats bin_stats(const Distribution& d, const AnalysisConfig& cfg);

struct OccupancyBounds {
    double lower;
    double upper;
};

// Bounds on the exact occupancy L_b of one eta bin.  The upper bound uses
// the exponent n(theta + theta^2) and only includes letters theta <= 3/5;
// printed_exponent switches to the n(theta - theta^2) variant, which is
// numerically not an upper bound (kept for documentation).
OccupancyBounds occupancy_bounds(const Distribution& d, const AnalysisConfig& cfg,
                                 std::int64_t b, bool printed_exponent = false);

// Bonferroni sandwich for bin 0:
// n phi_0 - C(n,2) sum theta^2 <= L_0 <= lower + C(n,3) sum theta^3.
OccupancyBounds occupancy_bounds_bin0(const Distribution& d, const AnalysisConfig& cfg);

std::vector<std::int64_t> kappa_counts(const Distribution& d, const AnalysisConfig& cfg);

// JSON for CLI inspection: kind, n, epsilon, B, first/last 10 points and an
// FNV-1a digest of the full point vector.
std::string grid_to_json(const GridSpec& g);

}  // namespace pent
