#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pent/distributions.hpp"

using pent::AnalysisConfig;
using pent::Distribution;

TEST_CASE("construction sorts ascending and drops zero-mass letters") {
    Distribution d = Distribution::from_probabilities({0.5, 0.0, 0.2, 0.3});
    CHECK(d.alphabet_size() == 3);
    CHECK(d.theta() == std::vector<double>{0.2, 0.3, 0.5});
    CHECK(d.min_prob() == 0.2);
}

TEST_CASE("construction renormalizes small drift, rejects large drift") {
    Distribution d = Distribution::from_probabilities({0.5, 0.5 + 5e-7});
    double sum = 0.0;
    for (double t : d.theta()) sum += t;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS(Distribution::from_probabilities({0.5, 0.6}));
    CHECK_THROWS(Distribution::from_probabilities({-0.1, 1.1}));
    CHECK_THROWS(Distribution::from_probabilities({}));
}

TEST_CASE("random construction always satisfies the invariants") {
    pent::Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        int k = 1 + static_cast<int>(rng.next_u64() % 20);
        std::vector<double> w(static_cast<std::size_t>(k));
        double sum = 0.0;
        for (double& x : w) sum += (x = rng.next_double());
        for (double& x : w) x /= sum;
        Distribution d = Distribution::from_probabilities(w);
        CHECK(std::is_sorted(d.theta().begin(), d.theta().end()));
        double total = 0.0;
        for (double x : d.theta()) {
            CHECK(x > 0.0);
            total += x;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("AnalysisConfig validation and thresholds") {
    CHECK_THROWS(AnalysisConfig(1, 0.1));
    CHECK_THROWS(AnalysisConfig(100, 0.0));
    CHECK_THROWS(AnalysisConfig(100, 1.0));
    AnalysisConfig cfg(100, 0.1);
    CHECK(cfg.small_threshold() == doctest::Approx(std::pow(100.0, -0.9)).epsilon(1e-15));
    CHECK(cfg.tiny_threshold() == doctest::Approx(std::pow(100.0, -1.1)).epsilon(1e-15));
    CHECK(cfg.tiny_threshold() < cfg.small_threshold());
}

TEST_CASE("iid entropy") {
    CHECK(pent::iid_entropy(Distribution::from_probabilities({0.5, 0.5})) == doctest::Approx(1.0));
    CHECK(pent::iid_entropy(Distribution::from_probabilities({1.0})) == doctest::Approx(0.0));
    CHECK(pent::iid_entropy(Distribution::from_probabilities({0.25, 0.75})) ==
          doctest::Approx(0.8112781244591328).epsilon(1e-12));
}

TEST_CASE("packed entropies: nothing packed when all letters are large") {
    Distribution d = Distribution::from_probabilities({0.5, 0.5});
    AnalysisConfig cfg(100, 0.1);
    CHECK(pent::packed_entropy_01(d, cfg) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pent::packed_entropy_0_1(d, cfg) == doctest::Approx(1.0).epsilon(1e-12));

    Distribution d2 = Distribution::from_probabilities({0.2, 0.3, 0.5});
    CHECK(pent::packed_entropy_01(d2, cfg) ==
          doctest::Approx(pent::iid_entropy(d2)).epsilon(1e-12));
    CHECK(pent::packed_entropy_0_1(d2, cfg) ==
          doctest::Approx(pent::iid_entropy(d2)).epsilon(1e-12));
}

TEST_CASE("packed entropies: many tiny letters merge into a super-symbol") {
    std::vector<double> w(1000, 1e-9);
    w.push_back(1.0 - 1e-6);
    Distribution d = Distribution::from_probabilities(w);
    AnalysisConfig cfg(1000, 0.1);
    double phi01 = 1e-6;
    double big = 1.0 - 1e-6;
    double expect = -phi01 * std::log2(phi01) - big * std::log2(big);
    CHECK(pent::packed_entropy_01(d, cfg) == doctest::Approx(expect).epsilon(1e-9));
    // All tiny letters are below the bin-0 boundary, so the (0,1) split
    // coincides with the single-super-symbol packing here.
    CHECK(pent::packed_entropy_0_1(d, cfg) == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("packed entropy chain: H01 <= H0,1 <= H") {
    pent::Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        int k = 2 + static_cast<int>(rng.next_u64() % 30);
        std::vector<double> w(static_cast<std::size_t>(k));
        double sum = 0.0;
        // Mix scales so bins 0 and 1 actually get populated sometimes.
        for (double& x : w) sum += (x = std::pow(rng.next_double(), 8.0) + 1e-12);
        for (double& x : w) x /= sum;
        Distribution d = Distribution::from_probabilities(w);
        AnalysisConfig cfg(2 + static_cast<std::int64_t>(rng.next_u64() % 10000), 0.1);
        double h01 = pent::packed_entropy_01(d, cfg);
        double h0_1 = pent::packed_entropy_0_1(d, cfg);
        double h = pent::iid_entropy(d);
        CHECK(h01 <= h0_1 + 1e-12);
        CHECK(h0_1 <= h + 1e-12);
    }
}

TEST_CASE("families") {
    CHECK(pent::make_uniform(4).theta() == std::vector<double>{0.25, 0.25, 0.25, 0.25});

    Distribution pa = pent::make_power_alpha(100, 1.0);
    CHECK(pa.alphabet_size() == 100);
    CHECK(pa.theta(0) == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(pa.is_uniform());

    Distribution z = pent::make_zipf(3, 1.0);
    CHECK(z.theta(0) == doctest::Approx(2.0 / 11.0).epsilon(1e-12));
    CHECK(z.theta(1) == doctest::Approx(3.0 / 11.0).epsilon(1e-12));
    CHECK(z.theta(2) == doctest::Approx(6.0 / 11.0).epsilon(1e-12));

    Distribution g = pent::make_geometric(3, 0.5);
    CHECK(g.theta(2) / g.theta(1) == doctest::Approx(2.0).epsilon(1e-12));

    Distribution tl = pent::make_two_level(3, 2, 0.1);
    CHECK(tl.alphabet_size() == 5);
    CHECK(tl.theta(0) == doctest::Approx(0.1 / 3.0).epsilon(1e-12));
    CHECK(tl.theta(4) == doctest::Approx(0.45).epsilon(1e-12));

    CHECK_THROWS(pent::make_zipf(0, 1.0));
    CHECK_THROWS(pent::make_zipf(3, -1.0));
}

TEST_CASE("family specs parse") {
    Distribution z = pent::parse_family("family:zipf,k=3,s=1.0");
    CHECK(z.theta(2) == doctest::Approx(6.0 / 11.0).epsilon(1e-12));
    CHECK(pent::parse_family("family:uniform,k=4").alphabet_size() == 4);
    CHECK(pent::parse_family("family:power_alpha,n=100,alpha=1.0").alphabet_size() == 100);
    CHECK_THROWS(pent::parse_family("uniform,k=4"));
    CHECK_THROWS(pent::parse_family("family:nope,k=4"));
}

TEST_CASE("family construction is deterministic") {
    pent::Rng rng(19);
    for (int t = 0; t < 1000; ++t) {
        std::int64_t k = 1 + static_cast<std::int64_t>(rng.next_u64() % 50);
        double s = 0.1 + 2.0 * rng.next_double();
        Distribution a = pent::make_zipf(k, s);
        Distribution b = pent::make_zipf(k, s);
        CHECK(a.theta() == b.theta());
        CHECK(std::is_sorted(a.theta().begin(), a.theta().end()));
    }
}

TEST_CASE("empirical distribution") {
    CHECK(pent::empirical_distribution({"a", "a", "b"}).theta() ==
          std::vector<double>{1.0 / 3.0, 2.0 / 3.0});
    CHECK(pent::empirical_distribution({"a", "b", "c"}).alphabet_size() == 3);
    std::vector<std::string> loss;
    for (char c : std::string("lossless")) loss.emplace_back(1, c);
    CHECK(pent::empirical_distribution(loss).theta() ==
          std::vector<double>{0.125, 0.125, 0.25, 0.5});
    CHECK_THROWS(pent::empirical_distribution({}));
}
