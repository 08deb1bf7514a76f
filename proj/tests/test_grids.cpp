#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "json.hpp"
#include "pent/grids.hpp"

using pent::AnalysisConfig;
using pent::Distribution;

namespace {

Distribution random_mixed(pent::Rng& rng, int k) {
    std::vector<double> w(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (double& x : w) sum += (x = std::pow(rng.next_double(), 6.0) + 1e-12);
    for (double& x : w) x /= sum;
    return Distribution::from_probabilities(w);
}

double exact_occupancy(const Distribution& d, std::int64_t n, std::int64_t bin,
                       const pent::GridSpec& g) {
    double L = 0.0;
    for (double t : d.theta())
        if (pent::bin_of(g, t) == bin)
            L += -std::expm1(static_cast<double>(n) * std::log1p(-t));
    return L;
}

}  // namespace

TEST_CASE("eta grid anchors at n=10^6, eps=0.1") {
    pent::GridSpec g = pent::build_eta_grid(AnalysisConfig(1000000, 0.1));
    CHECK(g.points[0] == 0.0);
    CHECK(g.points[1] == doctest::Approx(std::pow(10.0, -6.6)).epsilon(1e-12));
    CHECK(g.points[2] == doctest::Approx(std::pow(10.0, -5.4)).epsilon(1e-12));
    CHECK(g.nonzero_points() == 3975);
    CHECK(std::is_sorted(g.points.begin(), g.points.end()));
    for (std::size_t i = 1; i < g.points.size(); ++i)
        CHECK(g.points[i] > g.points[i - 1]);
}

TEST_CASE("eta grid: closed-form interior points") {
    AnalysisConfig cfg(100, 0.1);
    pent::GridSpec g = pent::build_eta_grid(cfg);
    double shift = std::pow(100.0, 0.15) - 2.0;
    for (std::int64_t b = 3; b <= g.nonzero_points(); ++b) {
        double want = std::pow(static_cast<double>(b) + shift, 2.0) / std::pow(100.0, 1.2);
        CHECK(g.points[static_cast<std::size_t>(b)] == doctest::Approx(want).epsilon(1e-12));
    }
    // Shared thresholds are bit-identical with AnalysisConfig.
    CHECK(g.points[1] == cfg.tiny_threshold());
    CHECK(g.points[2] == cfg.small_threshold());
}

TEST_CASE("xi grid") {
    AnalysisConfig cfg(100, 0.1);
    pent::GridSpec g = pent::build_xi_grid(cfg);
    CHECK(g.points[0] == 0.0);
    CHECK(g.points[1] == doctest::Approx(std::pow(100.0, -0.9)).epsilon(1e-12));
    CHECK(g.points[2] == doctest::Approx(4.0 / std::pow(100.0, 0.9)).epsilon(1e-12));
    CHECK(g.nonzero_points() == static_cast<std::int64_t>(std::floor(std::pow(100.0, 0.45))));
}

TEST_CASE("bin lookup") {
    AnalysisConfig cfg(100, 0.1);
    pent::GridSpec g = pent::build_eta_grid(cfg);
    CHECK(pent::bin_of(g, 0.5) == 11);
    CHECK(pent::bin_of(g, cfg.tiny_threshold()) == 0);
    CHECK(pent::bin_of(g, std::nextafter(cfg.tiny_threshold(), 1.0)) == 1);
    CHECK(pent::bin_of(g, 1.0) == g.bin_count() - 1);  // overflow -> last bin
    CHECK_THROWS(pent::bin_of(g, 0.0));
    CHECK_THROWS(pent::bin_of(g, -0.1));
    CHECK_THROWS(pent::bin_of(g, 1.0000001));
}

TEST_CASE("bin lookup is consistent with the point vector") {
    pent::Rng rng(5);
    pent::GridSpec g = pent::build_eta_grid(AnalysisConfig(5000, 0.15));
    for (int t = 0; t < 1000; ++t) {
        double p = rng.next_double();
        if (!(p > 0.0)) continue;
        std::int64_t b = pent::bin_of(g, p);
        auto idx = static_cast<std::size_t>(b);
        if (p > g.points.back()) {
            CHECK(b == g.bin_count() - 1);  // overflow maps to the last bin
        } else {
            CHECK(g.points[idx] < p);
            CHECK(p <= g.points[idx + 1]);
        }
    }
}

TEST_CASE("bin stats: concentrated and trivial cases") {
    AnalysisConfig big(1000000, 0.1);
    pent::BinStats s = pent::bin_stats(pent::make_uniform(100), big);
    std::int64_t nonzero = 0;
    for (std::size_t b = 0; b < s.bin_counts.size(); ++b) {
        if (s.bin_counts[b] == 0) continue;
        ++nonzero;
        CHECK(s.bin_counts[b] == 100);
        CHECK(s.bin_mass[b] == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(nonzero == 1);

    pent::BinStats coin = pent::bin_stats(Distribution::from_probabilities({0.5, 0.5}),
                                          AnalysisConfig(100, 0.1));
    CHECK(coin.k01 == 0);
    CHECK(coin.phi01 == 0.0);
    CHECK(coin.L01 == 0.0);

    pent::BinStats two = pent::bin_stats(pent::make_uniform(2), AnalysisConfig(2, 0.1));
    double total_L = 0.0;
    for (double L : two.bin_occupancy) total_L += L;
    CHECK(total_L == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("bin stats: conservation and occupancy caps on random inputs") {
    pent::Rng rng(23);
    for (int t = 0; t < 200; ++t) {
        int k = 1 + static_cast<int>(rng.next_u64() % 40);
        Distribution d = random_mixed(rng, k);
        AnalysisConfig cfg(2 + static_cast<std::int64_t>(rng.next_u64() % 100000), 0.1);
        pent::BinStats s = pent::bin_stats(d, cfg);
        std::int64_t ksum = 0;
        double phisum = 0.0;
        for (std::size_t b = 0; b < s.bin_counts.size(); ++b) {
            ksum += s.bin_counts[b];
            phisum += s.bin_mass[b];
            CHECK(s.bin_occupancy[b] >= 0.0);
            CHECK(s.bin_occupancy[b] <=
                  std::min(static_cast<double>(s.bin_counts[b]),
                           static_cast<double>(cfg.n) * s.bin_mass[b]) +
                      1e-9);
        }
        CHECK(ksum == d.alphabet_size());
        CHECK(phisum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.k01 == s.k0 + s.k1);
        CHECK(s.phi01 == doctest::Approx(s.phi0 + s.phi1).epsilon(1e-12));
        CHECK(s.L01 == doctest::Approx(s.L0 + s.L1).epsilon(1e-12));
    }
}

TEST_CASE("threshold-based small-letter counts match direct classification") {
    pent::Rng rng(29);
    for (int t = 0; t < 100; ++t) {
        Distribution d = random_mixed(rng, 1 + static_cast<int>(rng.next_u64() % 20));
        AnalysisConfig cfg(2 + static_cast<std::int64_t>(rng.next_u64() % 1000), 0.2);
        pent::BinStats s = pent::bin_stats(d, cfg);
        std::int64_t k0 = 0, k1 = 0;
        for (double th : d.theta()) {
            if (th <= cfg.tiny_threshold())
                ++k0;
            else if (th <= cfg.small_threshold())
                ++k1;
        }
        CHECK(s.k0 == k0);
        CHECK(s.k1 == k1);
    }
}

TEST_CASE("occupancy bounds: single-letter hand case") {
    // One letter with theta = 0.1, n = 10.
    Distribution d = Distribution::from_probabilities({0.1, 0.9});
    AnalysisConfig cfg(10, 0.1);
    pent::GridSpec g = pent::build_eta_grid(cfg);
    std::int64_t b = pent::bin_of(g, 0.1);
    REQUIRE(pent::bin_of(g, 0.9) != b);
    auto ob = pent::occupancy_bounds(d, cfg, b);
    double exact = 1.0 - std::pow(0.9, 10.0);  // 0.6513...
    CHECK(ob.lower == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(ob.upper == doctest::Approx(1.0 - std::exp(-1.1)).epsilon(1e-12));
    CHECK(ob.lower <= exact);
    CHECK(exact <= ob.upper);

    // The printed-exponent variant is NOT an upper bound on this case.
    auto printed = pent::occupancy_bounds(d, cfg, b, true);
    CHECK(printed.upper == doctest::Approx(1.0 - std::exp(-0.9)).epsilon(1e-12));
    CHECK(printed.upper < exact);  // documented violation, kept as expected-fail
}

TEST_CASE("occupancy bounds: letters above 3/5 are excluded from the upper sum") {
    Distribution d = Distribution::from_probabilities({0.3, 0.7});
    AnalysisConfig cfg(10, 0.1);
    pent::GridSpec g = pent::build_eta_grid(cfg);
    std::int64_t b = pent::bin_of(g, 0.7);
    auto ob = pent::occupancy_bounds(d, cfg, b);
    // Only the 0.7 letter is in this bin and it is excluded: upper = k_b.
    CHECK(ob.upper == doctest::Approx(1.0));
}

TEST_CASE("occupancy bounds: empty bin is (0,0)") {
    Distribution d = Distribution::from_probabilities({0.5, 0.5});
    AnalysisConfig cfg(100, 0.1);
    auto ob = pent::occupancy_bounds(d, cfg, 0);
    CHECK(ob.lower == 0.0);
    CHECK(ob.upper == 0.0);
}

TEST_CASE("occupancy sandwich holds on random bins (corrected exponent)") {
    pent::Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        Distribution d = random_mixed(rng, 2 + static_cast<int>(rng.next_u64() % 20));
        AnalysisConfig cfg(2 + static_cast<std::int64_t>(rng.next_u64() % 2000), 0.1);
        pent::GridSpec g = pent::build_eta_grid(cfg);
        for (std::int64_t b = 0; b < g.bin_count(); ++b) {
            auto ob = pent::occupancy_bounds(d, cfg, b);
            double exact = exact_occupancy(d, cfg.n, b, g);
            CHECK(ob.lower <= exact + 1e-9);
            bool all_small = true;
            for (double th : d.theta())
                if (pent::bin_of(g, th) == b && th > 0.6) all_small = false;
            if (all_small) CHECK(exact <= ob.upper + 1e-9);
        }
    }
}

TEST_CASE("bin-0 occupancy sandwich: hand case and exactness") {
    // Single small letter theta = 1e-4, n = 100.
    Distribution d = Distribution::from_probabilities({1e-4, 1.0 - 1e-4});
    AnalysisConfig cfg(100, 0.1);
    auto ob = pent::occupancy_bounds_bin0(d, cfg);
    CHECK(ob.lower == doctest::Approx(0.01 - 4950.0 * 1e-8).epsilon(1e-12));
    CHECK(ob.upper == doctest::Approx(ob.lower + 161700.0 * 1e-12).epsilon(1e-12));
    double exact = 1.0 - std::pow(1.0 - 1e-4, 100.0);
    CHECK(ob.lower <= exact);
    CHECK(exact <= ob.upper);

    // k_0 = 0 gives (0, 0).
    auto zero = pent::occupancy_bounds_bin0(Distribution::from_probabilities({0.5, 0.5}), cfg);
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper == 0.0);
}

TEST_CASE("kappa windows: hand cases") {
    AnalysisConfig cfg(100, 0.1);
    pent::GridSpec xi = pent::build_xi_grid(cfg);
    // Single letter strictly inside (xi_2, xi_3]; rest of the mass far above.
    double p = 0.5 * (xi.points[2] + xi.points[3]);
    Distribution d = Distribution::from_probabilities({p, 1.0 - p});
    auto kap = pent::kappa_counts(d, cfg);
    REQUIRE(static_cast<std::int64_t>(kap.size()) == xi.nonzero_points());
    CHECK(kap[0] == 0);  // kappa_1 uses the narrowed window (xi_1, xi_2]
    CHECK(kap[1] == 1);
    CHECK(kap[2] == 1);
    if (kap.size() > 3) CHECK(kap[3] == 0);
}

TEST_CASE("kappa windows: all letters below xi_1 count nowhere") {
    std::vector<double> w(1000, 1e-6);
    w.push_back(1.0 - 1e-3);
    Distribution d = Distribution::from_probabilities(w);
    AnalysisConfig cfg(100, 0.1);
    auto kap = pent::kappa_counts(d, cfg);
    // The big letter is above the last xi point; small ones are below xi_1.
    pent::GridSpec xi = pent::build_xi_grid(cfg);
    for (std::size_t b = 0; b < kap.size(); ++b) {
        double hi = b + 2 < xi.points.size() ? xi.points[b + 2] : 2.0;
        bool big_inside = (1.0 - 1e-3) > xi.points[b == 0 ? 1 : b] && (1.0 - 1e-3) <= hi;
        CHECK(kap[b] == (big_inside ? 1 : 0));
    }
}

TEST_CASE("kappa windows match a brute-force interval scan") {
    pent::Rng rng(37);
    for (int t = 0; t < 500; ++t) {
        Distribution d = random_mixed(rng, 1 + static_cast<int>(rng.next_u64() % 30));
        AnalysisConfig cfg(2 + static_cast<std::int64_t>(rng.next_u64() % 5000), 0.1);
        auto kap = pent::kappa_counts(d, cfg);
        pent::GridSpec xi = pent::build_xi_grid(cfg);
        for (std::int64_t b = 1; b <= xi.nonzero_points(); ++b) {
            double lo = b == 1 ? xi.points[1] : xi.points[static_cast<std::size_t>(b - 1)];
            double hi = b + 1 <= xi.nonzero_points()
                            ? xi.points[static_cast<std::size_t>(b + 1)]
                            : (b == 1 ? xi.points[2] : 2.0);
            if (b == 1) hi = xi.points[2];
            std::int64_t count = 0;
            for (double th : d.theta())
                if (th > lo && th <= hi) ++count;
            CHECK(kap[static_cast<std::size_t>(b - 1)] == count);
        }
    }
}

TEST_CASE("grid JSON serialization") {
    pent::GridSpec g = pent::build_eta_grid(AnalysisConfig(1000000, 0.1));
    auto j = nlohmann::json::parse(pent::grid_to_json(g));
    CHECK(j["kind"] == "eta");
    CHECK(j["n"] == 1000000);
    CHECK(j["B"] == 3975);
    CHECK(j["points_head"].size() == 10);
    CHECK(j["points_tail"].size() == 10);
    CHECK(j["points_head"][0] == 0.0);
    CHECK(j.contains("points_digest"));
}
