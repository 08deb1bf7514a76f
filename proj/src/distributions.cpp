#include "pent/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pent {

std::string canonical_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Distribution Distribution::from_probabilities(std::vector<double> probs) {
    std::vector<double> kept;
    kept.reserve(probs.size());
    for (double p : probs) {
        if (std::isnan(p) || p < 0.0)
            throw std::invalid_argument("Distribution: probabilities must be nonnegative");
        if (p > 0.0) kept.push_back(p);
    }
    if (kept.empty()) throw std::invalid_argument("Distribution: no positive-mass letters");
    double sum = std::accumulate(kept.begin(), kept.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-6)
        throw std::invalid_argument("Distribution: probabilities sum to " +
                                    canonical_double(sum) + ", off by more than 1e-6");
    for (double& p : kept) p /= sum;
    std::sort(kept.begin(), kept.end());
    Distribution d;
    d.theta_ = std::move(kept);
    return d;
}

bool Distribution::is_uniform(double tol) const {
    return theta_.back() - theta_.front() <= tol;
}

AnalysisConfig::AnalysisConfig(std::int64_t n_, double eps) : n(n_), epsilon(eps) {
    if (n < 2) throw std::invalid_argument("AnalysisConfig: n must be >= 2");
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::invalid_argument("AnalysisConfig: epsilon must be in (0,1)");
}

double AnalysisConfig::small_threshold() const {
    return std::pow(static_cast<double>(n), epsilon - 1.0);
}

double AnalysisConfig::tiny_threshold() const {
    return std::pow(static_cast<double>(n), -(1.0 + epsilon));
}

double iid_entropy(const Distribution& d) {
    KahanSum h;
    for (double p : d.theta()) h.add(-p * std::log2(p));
    return h.value();
}

namespace {

double plog(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double packed_entropy_01(const Distribution& d, const AnalysisConfig& cfg) {
    double thr = cfg.small_threshold();
    KahanSum h;
    double phi01 = 0.0;
    for (double p : d.theta()) {
        if (p <= thr)
            phi01 += p;
        else
            h.add(plog(p));
    }
    h.add(plog(phi01));
    return h.value();
}

double packed_entropy_0_1(const Distribution& d, const AnalysisConfig& cfg) {
    double small = cfg.small_threshold();
    double tiny = cfg.tiny_threshold();
    KahanSum h;
    double phi0 = 0.0, phi1 = 0.0;
    for (double p : d.theta()) {
        if (p <= tiny)
            phi0 += p;
        else if (p <= small)
            phi1 += p;
        else
            h.add(plog(p));
    }
    h.add(plog(phi0));
    h.add(plog(phi1));
    return h.value();
}

Distribution make_uniform(std::int64_t k) {
    if (k < 1) throw std::invalid_argument("uniform family: k must be >= 1");
    return Distribution::from_probabilities(
        std::vector<double>(static_cast<std::size_t>(k), 1.0 / static_cast<double>(k)));
}

Distribution make_zipf(std::int64_t k, double s) {
    if (k < 1) throw std::invalid_argument("zipf family: k must be >= 1");
    if (!(s > 0.0)) throw std::invalid_argument("zipf family: exponent s must be > 0");
    std::vector<double> p(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i)
        p[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(i + 1), -s);
    double sum = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& v : p) v /= sum;
    return Distribution::from_probabilities(std::move(p));
}

Distribution make_geometric(std::int64_t k, double ratio) {
    if (k < 1) throw std::invalid_argument("geometric family: k must be >= 1");
    if (!(ratio > 0.0) || !(ratio < 1.0))
        throw std::invalid_argument("geometric family: ratio must be in (0,1)");
    std::vector<double> p(static_cast<std::size_t>(k));
    double v = 1.0;
    double sum = 0.0;
    for (std::int64_t i = 0; i < k; ++i) {
        p[static_cast<std::size_t>(i)] = v;
        sum += v;
        v *= ratio;
    }
    for (double& x : p) x /= sum;
    return Distribution::from_probabilities(std::move(p));
}

Distribution make_power_alpha(std::int64_t n, double alpha) {
    if (n < 2) throw std::invalid_argument("power_alpha family: n must be >= 2");
    if (!(alpha > 0.0)) throw std::invalid_argument("power_alpha family: alpha must be > 0");
    std::int64_t k = std::llround(std::pow(static_cast<double>(n), alpha));
    if (k < 1) throw std::invalid_argument("power_alpha family: n^alpha rounds to zero letters");
    return make_uniform(k);
}

Distribution make_two_level(std::int64_t k_lo, std::int64_t k_hi, double mass_lo) {
    if (k_lo < 0 || k_hi < 1)
        throw std::invalid_argument("two_level family: need k_lo >= 0 and k_hi >= 1");
    if (!(mass_lo >= 0.0) || !(mass_lo < 1.0))
        throw std::invalid_argument("two_level family: mass_lo must be in [0,1)");
    if (k_lo == 0 && mass_lo != 0.0)
        throw std::invalid_argument("two_level family: mass_lo > 0 requires k_lo > 0");
    std::vector<double> p;
    p.reserve(static_cast<std::size_t>(k_lo + k_hi));
    for (std::int64_t i = 0; i < k_lo; ++i)
        p.push_back(mass_lo / static_cast<double>(k_lo));
    for (std::int64_t i = 0; i < k_hi; ++i)
        p.push_back((1.0 - mass_lo) / static_cast<double>(k_hi));
    return Distribution::from_probabilities(std::move(p));
}

Distribution parse_family(const std::string& spec) {
    const std::string prefix = "family:";
    if (spec.rfind(prefix, 0) != 0)
        throw std::invalid_argument("family spec must start with 'family:'");
    std::string rest = spec.substr(prefix.size());
    std::stringstream ss(rest);
    std::string name;
    if (!std::getline(ss, name, ','))
        throw std::invalid_argument("family spec missing family name");
    std::map<std::string, double> kv;
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("family spec: expected key=value, got '" + part + "'");
        kv[part.substr(0, eq)] = std::stod(part.substr(eq + 1));
    }
    auto get = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument("family '" + name + "' requires parameter '" + key + "'");
        return it->second;
    };
    auto as_int = [](double v) { return static_cast<std::int64_t>(std::llround(v)); };
    if (name == "uniform") return make_uniform(as_int(get("k")));
    if (name == "zipf") return make_zipf(as_int(get("k")), get("s"));
    if (name == "geometric") return make_geometric(as_int(get("k")), get("r"));
    if (name == "power_alpha") return make_power_alpha(as_int(get("n")), get("alpha"));
    if (name == "two_level")
        return make_two_level(as_int(get("k_lo")), as_int(get("k_hi")), get("mass_lo"));
    throw std::invalid_argument("unknown distribution family '" + name + "'");
}

Distribution empirical_distribution(const std::vector<std::string>& tokens) {
    if (tokens.empty())
        throw std::invalid_argument("empirical_distribution: empty token stream");
    std::map<std::string, std::int64_t> counts;
    for (const auto& t : tokens) ++counts[t];
    std::vector<double> p;
    p.reserve(counts.size());
    for (const auto& [tok, c] : counts)
        p.push_back(static_cast<double>(c) / static_cast<double>(tokens.size()));
    return Distribution::from_probabilities(std::move(p));
}

}  // namespace pent
