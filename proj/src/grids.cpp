#include "pent/grids.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace pent {

GridSpec build_eta_grid(const AnalysisConfig& cfg) {
    double n = static_cast<double>(cfg.n);
    double eps = cfg.epsilon;
    double shift = std::pow(n, 1.5 * eps);  // n^{3 eps/2}
    double scale = std::pow(n, 1.0 + 2.0 * eps);
    std::int64_t B = static_cast<std::int64_t>(
        std::floor(std::pow(n, (1.0 + 2.0 * eps) / 2.0) - shift + 2.0));
    if (B < 2) throw std::invalid_argument("grid degenerate: B < 2");

    GridSpec g{GridKind::eta, cfg.n, eps, {}};
    g.points.resize(static_cast<std::size_t>(B) + 1);
    g.points[0] = 0.0;
    g.points[1] = cfg.tiny_threshold();
    g.points[2] = cfg.small_threshold();
    for (std::int64_t b = 3; b <= B; ++b) {
        double t = static_cast<double>(b) + shift - 2.0;
        g.points[static_cast<std::size_t>(b)] = t * t / scale;
    }
    for (std::size_t i = 1; i < g.points.size(); ++i)
        if (!(g.points[i] > g.points[i - 1]))
            throw std::invalid_argument("grid degenerate: points not strictly increasing");
    return g;
}

GridSpec build_xi_grid(const AnalysisConfig& cfg) {
    double n = static_cast<double>(cfg.n);
    double eps = cfg.epsilon;
    double base = cfg.small_threshold();  // 1/n^{1-eps} = xi_1
    std::int64_t Bbar = static_cast<std::int64_t>(std::floor(std::pow(n, (1.0 - eps) / 2.0)));
    if (Bbar < 1) throw std::invalid_argument("grid degenerate: B-bar < 1");

    GridSpec g{GridKind::xi, cfg.n, eps, {}};
    g.points.resize(static_cast<std::size_t>(Bbar) + 1);
    g.points[0] = 0.0;
    for (std::int64_t b = 1; b <= Bbar; ++b)
        g.points[static_cast<std::size_t>(b)] = static_cast<double>(b) * static_cast<double>(b) * base;
    return g;
}

std::int64_t bin_of(const GridSpec& g, double p) {
    if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("bin_of: probability must be in (0,1]");
    auto it = std::lower_bound(g.points.begin(), g.points.end(), p);
    std::int64_t bin = static_cast<std::int64_t>(it - g.points.begin()) - 1;
    return std::min(bin, g.bin_count() - 1);
}

namespace {

// 1 - (1-theta)^n, evaluated in log space so tiny theta at large n does not
// underflow to zero occupancy.
double occupancy_term(double theta, std::int64_t n) {
    if (theta >= 1.0) return 1.0;
    return -std::expm1(static_cast<double>(n) * std::log1p(-theta));
}

// Count of sorted values in (lo, hi].
std::int64_t count_in(const std::vector<double>& sorted, double lo, double hi) {
    auto a = std::upper_bound(sorted.begin(), sorted.end(), lo);
    auto b = std::upper_bound(sorted.begin(), sorted.end(), hi);
    return b - a;
}

}  // namespace

std::vector<std::int64_t> kappa_counts(const Distribution& d, const AnalysisConfig& cfg) {
    GridSpec xi = build_xi_grid(cfg);
    double base = cfg.small_threshold();
    std::int64_t Bbar = xi.nonzero_points();
    const auto& theta = d.theta();
    std::vector<std::int64_t> kappa(static_cast<std::size_t>(Bbar));
    auto xi_at = [&](std::int64_t b) {
        // xi_{B-bar + 1} is needed for the last window; it may exceed 1.
        return static_cast<double>(b) * static_cast<double>(b) * base;
    };
    for (std::int64_t b = 1; b <= Bbar; ++b) {
        double lo = (b == 1) ? xi_at(1) : xi_at(b - 1);
        double hi = (b == 1) ? xi_at(2) : xi_at(b + 1);
        kappa[static_cast<std::size_t>(b - 1)] = count_in(theta, lo, hi);
    }
    return kappa;
}

BinStats bin_stats(const Distribution& d, const AnalysisConfig& cfg) {
    GridSpec eta = build_eta_grid(cfg);
    BinStats s;
    std::size_t bins = static_cast<std::size_t>(eta.bin_count());
    s.bin_counts.assign(bins, 0);
    s.bin_mass.assign(bins, 0.0);
    s.bin_occupancy.assign(bins, 0.0);

    double tiny = cfg.tiny_threshold();
    double small = cfg.small_threshold();
    for (double p : d.theta()) {
        std::size_t b = static_cast<std::size_t>(bin_of(eta, p));
        ++s.bin_counts[b];
        s.bin_mass[b] += p;
        double occ = occupancy_term(p, cfg.n);
        s.bin_occupancy[b] += occ;
        if (p <= tiny) {
            ++s.k0;
            s.phi0 += p;
            s.L0 += occ;
        } else if (p <= small) {
            ++s.k1;
            s.phi1 += p;
            s.L1 += occ;
        }
        if (p > 0.5 * small && p <= small) ++s.k2_minus;
        if (p > small && p <= 1.5 * small) ++s.k2_plus;
    }
    s.k01 = s.k0 + s.k1;
    s.phi01 = s.phi0 + s.phi1;
    s.L01 = s.L0 + s.L1;
    s.kappa = kappa_counts(d, cfg);
    return s;
}

OccupancyBounds occupancy_bounds(const Distribution& d, const AnalysisConfig& cfg,
                                 std::int64_t b, bool printed_exponent) {
    GridSpec eta = build_eta_grid(cfg);
    if (b < 0 || b >= eta.bin_count())
        throw std::invalid_argument("occupancy_bounds: bin index out of range");
    double n = static_cast<double>(cfg.n);
    std::int64_t kb = 0;
    KahanSum lower_sum, upper_sum;
    for (double p : d.theta()) {
        if (bin_of(eta, p) != b) continue;
        ++kb;
        lower_sum.add(std::exp(-n * p));
        if (p <= 0.6) {
            double expo = printed_exponent ? p - p * p : p + p * p;
            upper_sum.add(std::exp(-n * expo));
        }
    }
    if (kb == 0) return {0.0, 0.0};
    return {static_cast<double>(kb) - lower_sum.value(),
            static_cast<double>(kb) - upper_sum.value()};
}

OccupancyBounds occupancy_bounds_bin0(const Distribution& d, const AnalysisConfig& cfg) {
    double tiny = cfg.tiny_threshold();
    double n = static_cast<double>(cfg.n);
    double phi0 = 0.0, s2 = 0.0, s3 = 0.0;
    std::int64_t k0 = 0;
    for (double p : d.theta()) {
        if (p > tiny) break;  // theta ascending
        ++k0;
        phi0 += p;
        s2 += p * p;
        s3 += p * p * p;
    }
    if (k0 == 0) return {0.0, 0.0};
    double c2 = n * (n - 1.0) / 2.0;
    double c3 = n * (n - 1.0) * (n - 2.0) / 6.0;
    double lower = n * phi0 - c2 * s2;
    return {lower, lower + c3 * s3};
}

std::string grid_to_json(const GridSpec& g) {
    nlohmann::json j;
    j["kind"] = g.kind == GridKind::eta ? "eta" : "xi";
    j["n"] = g.n;
    j["epsilon"] = g.epsilon;
    j["B"] = g.nonzero_points();
    std::size_t keep = 10;
    nlohmann::json head = nlohmann::json::array();
    nlohmann::json tail = nlohmann::json::array();
    for (std::size_t i = 0; i < g.points.size() && i < keep; ++i) head.push_back(g.points[i]);
    if (g.points.size() > keep)
        for (std::size_t i = g.points.size() - std::min(keep, g.points.size() - keep);
             i < g.points.size(); ++i)
            tail.push_back(g.points[i]);
    j["points_head"] = head;
    j["points_tail"] = tail;
    j["points_digest"] =
        fnv1a64(g.points.data(), g.points.size() * sizeof(double));
    return j.dump();
}

}  // namespace pent
