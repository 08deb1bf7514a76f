#include "pent/entropy.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"
#include "pent/probability.hpp"

namespace pent {

namespace {

const char* method_name(EntropyMethod m) {
    switch (m) {
        case EntropyMethod::exact_patterns: return "exact_patterns";
        case EntropyMethod::exact_sequences: return "exact_sequences";
        case EntropyMethod::monte_carlo: return "monte_carlo";
    }
    return "?";
}

double entropy_of_masses(const std::map<std::vector<int>, double>& masses) {
    KahanSum h;
    for (const auto& [key, p] : masses)
        if (p > 0.0) h.add(-p * std::log2(p));
    return h.value();
}

void check_sequence_scale(const Distribution& d, std::int64_t n) {
    double total = std::pow(static_cast<double>(d.alphabet_size()), static_cast<double>(n));
    if (total > kSequenceEnumerationGuard)
        throw infeasible_error("sequence enumeration infeasible: k^n = " +
                               std::to_string(total) + " exceeds guard");
}

}  // namespace

std::string EntropyEstimate::to_json(std::int64_t n, std::int64_t k) const {
    nlohmann::json j;
    j["value_bits"] = value_bits;
    j["stderr_bits"] = stderr_bits;
    j["method"] = method_name(method);
    j["samples"] = samples;
    j["n"] = n;
    j["k"] = k;
    if (degenerate_sample) j["degenerate_sample"] = true;
    return j.dump();
}

EntropyEstimate pattern_entropy_exact(const Distribution& d, int n, int cap) {
    KahanSum h;
    std::int64_t k = d.alphabet_size();
    for_each_pattern(
        n,
        [&](const Pattern& p) {
            if (p.distinct() > k) return;  // probability 0
            double prob = pattern_prob_exact(d, p);
            if (prob > 0.0) h.add(-prob * std::log2(prob));
        },
        cap);
    return {h.value(), 0.0, EntropyMethod::exact_patterns, 0, false};
}

EntropyEstimate pattern_entropy_via_sequences(const Distribution& d, int n) {
    check_sequence_scale(d, n);
    std::map<std::vector<int>, double> mass;
    for_each_sequence(d, n, [&](const std::vector<int>& x, double p) {
        mass[Pattern::of(x).indices()] += p;
    });
    return {entropy_of_masses(mass), 0.0, EntropyMethod::exact_sequences, 0, false};
}

EntropyEstimate pattern_entropy_mc(const Distribution& d, std::int64_t n,
                                   std::int64_t samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("pattern_entropy_mc: samples must be >= 1");
    bool uniform = d.is_uniform();
    SequenceSampler sampler(d, seed);
    std::vector<int> x;
    double mean = 0.0, m2 = 0.0;
    for (std::int64_t s = 0; s < samples; ++s) {
        sampler.fill(x, n);
        Pattern p = Pattern::of(x);
        double bits;
        if (uniform) {
            bits = -pattern_log2_prob_uniform(d.alphabet_size(), p);
        } else {
            double prob = pattern_prob_exact(d, p);
            if (!(prob > 0.0))
                throw infeasible_error(
                    "pattern_entropy_mc: per-sample probability underflowed; "
                    "instance too large for the non-uniform exact path");
            bits = -std::log2(prob);
        }
        double delta = bits - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (bits - mean);
    }
    EntropyEstimate e;
    e.value_bits = mean;
    e.method = EntropyMethod::monte_carlo;
    e.samples = samples;
    if (samples == 1) {
        e.stderr_bits = 0.0;
        e.degenerate_sample = true;
    } else {
        double var = m2 / static_cast<double>(samples - 1);
        e.stderr_bits = std::sqrt(var / static_cast<double>(samples));
    }
    return e;
}

EntropyEstimate joint_pattern_bin_entropy_exact(const Distribution& d,
                                                const AnalysisConfig& cfg) {
    check_sequence_scale(d, cfg.n);
    GridSpec eta = build_eta_grid(cfg);
    std::vector<std::int64_t> letter_bin(static_cast<std::size_t>(d.alphabet_size()));
    for (std::size_t i = 0; i < letter_bin.size(); ++i)
        letter_bin[i] = bin_of(eta, d.theta(i));

    std::map<std::vector<int>, double> mass;
    for_each_sequence(d, cfg.n, [&](const std::vector<int>& x, double p) {
        std::vector<int> key = Pattern::of(x).indices();
        key.push_back(-1);
        for (int v : x) key.push_back(static_cast<int>(letter_bin[static_cast<std::size_t>(v - 1)]));
        mass[key] += p;
    });
    return {entropy_of_masses(mass), 0.0, EntropyMethod::exact_sequences, 0, false};
}

EntropyEstimate bin_sequence_entropy_exact(const Distribution& d, const AnalysisConfig& cfg) {
    // B_j are i.i.d. over bins; H(B^n) = n * H(phi).
    BinStats s = bin_stats(d, cfg);
    KahanSum h;
    for (double phi : s.bin_mass)
        if (phi > 0.0) h.add(-phi * std::log2(phi));
    return {static_cast<double>(cfg.n) * h.value(), 0.0, EntropyMethod::exact_sequences, 0,
            false};
}

DecompositionEntropies decomposition_entropies(const Distribution& d,
                                               const AnalysisConfig& cfg) {
    check_sequence_scale(d, cfg.n);
    double small = cfg.small_threshold();
    std::map<std::vector<int>, double> pattern_mass, z_mass, joint_mass;
    for_each_sequence(d, cfg.n, [&](const std::vector<int>& x, double p) {
        std::vector<int> psi = Pattern::of(x).indices();
        std::vector<int> z(x.size());
        for (std::size_t j = 0; j < x.size(); ++j)
            z[j] = d.theta(static_cast<std::size_t>(x[j] - 1)) <= small ? 0 : 1;
        std::vector<int> key = psi;
        key.push_back(-1);
        key.insert(key.end(), z.begin(), z.end());
        pattern_mass[psi] += p;
        z_mass[z] += p;
        joint_mass[key] += p;
    });
    double h_pattern = entropy_of_masses(pattern_mass);
    double h_z = entropy_of_masses(z_mass);
    double h_joint = entropy_of_masses(joint_mass);
    return {h_pattern, h_joint - h_z, h_z, h_joint - h_pattern};
}

}  // namespace pent
