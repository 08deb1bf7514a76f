#include "pent/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pent {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Clamp a lower bound at 0 (entropy nonnegativity), annotating the entry.
void clamp_lower(BoundEntry& e) {
    if (e.applicable && e.value_bits < 0.0) {
        e.value_bits = 0.0;
        e.notes = e.notes.empty() ? "clamped" : e.notes + "; clamped";
    }
}

double log2_binomial(std::uint64_t a, std::uint64_t b) {
    return log2_factorial(a) - log2_factorial(b) - log2_factorial(a - b);
}

double thm4_min_decrease(double k, double n, double eps) {
    return (1.0 - eps) * 1.5 * k * std::log2(k / (std::exp(2.0 / 3.0) * std::cbrt(n)));
}

double thm4_max_decrease(std::uint64_t k, std::uint64_t n) {
    if (k <= n) return log2_factorial(k);
    return log2_factorial(k) - log2_factorial(k - n);
}

}  // namespace

double log2_factorial(std::uint64_t x) {
    if (x <= 20) {
        std::uint64_t f = 1;
        for (std::uint64_t i = 2; i <= x; ++i) f *= i;
        return std::log2(static_cast<double>(f));
    }
    return std::lgamma(static_cast<double>(x) + 1.0) / kLn2;
}

double binary_entropy(double alpha) {
    if (!(alpha >= 0.0) || !(alpha <= 1.0))
        throw std::invalid_argument("binary_entropy: alpha must be in [0,1]");
    double h = 0.0;
    if (alpha > 0.0) h -= alpha * std::log2(alpha);
    if (alpha < 1.0) h -= (1.0 - alpha) * std::log2(1.0 - alpha);
    return h;
}

const BoundEntry& BoundReport::entry(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw std::invalid_argument("BoundReport: no entry named '" + name + "'");
}

std::string BoundReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["n"] = n;
    j["epsilon"] = epsilon;
    j["k"] = k;
    j["iid_total_bits"] = iid_total_bits;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json je;
        je["name"] = e.name;
        je["value_bits"] = e.value_bits;
        je["applicable"] = e.applicable;
        je["asymptotic"] = e.asymptotic;
        je["notes"] = e.notes;
        arr.push_back(je);
    }
    j["bounds"] = arr;
    return j.dump();
}

std::string BoundReport::to_csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "name,value_bits,applicable,asymptotic,notes\n";
    for (const auto& e : entries)
        os << e.name << ',' << e.value_bits << ',' << (e.applicable ? 1 : 0) << ','
           << (e.asymptotic ? 1 : 0) << ',' << e.notes << '\n';
    return os.str();
}

std::pair<double, double> thm1_bounds(const Distribution& d, std::int64_t n) {
    double nh = static_cast<double>(n) * iid_entropy(d);
    std::uint64_t k = static_cast<std::uint64_t>(d.alphabet_size());
    double decrease = thm4_max_decrease(k, static_cast<std::uint64_t>(n));
    return {std::max(0.0, nh - decrease), nh};
}

BoundEntry eq12_upper(const Distribution& d, const AnalysisConfig& cfg) {
    BoundEntry e{"eq12_upper", 0.0, false, true, ""};
    double n = static_cast<double>(cfg.n);
    double log_eps = std::log(cfg.epsilon);
    std::int64_t khat = 0;
    for (double p : d.theta())
        if (n * std::log1p(-std::min(p, 1.0)) <= log_eps || p >= 1.0) ++khat;
    double threshold = std::exp(19.0 / 18.0) * std::cbrt(n);
    e.notes = "k_hat=" + std::to_string(khat);
    if (static_cast<double>(khat) > threshold) {
        e.applicable = true;
        double nh = n * iid_entropy(d);
        e.value_bits = nh - (1.0 - cfg.epsilon) * 1.5 * static_cast<double>(khat) *
                                std::log2(static_cast<double>(khat) / threshold);
    }
    return e;
}

BoundEntry thm2_upper(const Distribution& d, const AnalysisConfig& cfg) {
    BoundEntry e{"thm2_upper", 0.0, false, true, ""};
    if (!(d.min_prob() > cfg.small_threshold())) {
        e.notes = "requires theta_1 > n^{-(1-eps)}";
        return e;
    }
    BinStats s = bin_stats(d, cfg);
    KahanSum dec;
    for (std::size_t b = 2; b < s.bin_counts.size(); ++b)
        dec.add(log2_factorial(static_cast<std::uint64_t>(s.bin_counts[b])));
    e.applicable = true;
    e.value_bits = static_cast<double>(cfg.n) * iid_entropy(d) -
                   (1.0 - cfg.epsilon) * dec.value();
    return e;
}

BoundEntry thm3_lower(const Distribution& d, const AnalysisConfig& cfg) {
    BoundEntry e{"thm3_lower", 0.0, false, true, ""};
    if (!(d.min_prob() > cfg.small_threshold())) {
        e.notes = "requires theta_1 > n^{-(1-eps)}";
        return e;
    }
    KahanSum dec;
    for (std::int64_t kb : kappa_counts(d, cfg))
        dec.add(log2_factorial(static_cast<std::uint64_t>(kb)));
    e.applicable = true;
    e.value_bits = static_cast<double>(cfg.n) * iid_entropy(d) - dec.value();
    clamp_lower(e);
    return e;
}

std::pair<BoundEntry, BoundEntry> thm4_range(const Distribution& d,
                                             const AnalysisConfig& cfg) {
    BoundEntry lo{"thm4_lower", 0.0, false, true, ""};
    BoundEntry hi{"thm4_upper", 0.0, false, true, ""};
    double n = static_cast<double>(cfg.n);
    double k = static_cast<double>(d.alphabet_size());
    double k_threshold = std::pow(n, (1.0 + cfg.epsilon) / 3.0);
    if (!(d.min_prob() > cfg.small_threshold()) || k < k_threshold) {
        lo.notes = hi.notes = "requires theta_1 > n^{-(1-eps)} and k >= n^{(1+eps)/3}";
        return {lo, hi};
    }
    double nh = n * iid_entropy(d);
    lo.applicable = hi.applicable = true;
    lo.value_bits = nh - thm4_max_decrease(static_cast<std::uint64_t>(d.alphabet_size()),
                                           static_cast<std::uint64_t>(cfg.n));
    hi.value_bits = nh - thm4_min_decrease(k, n, cfg.epsilon);
    clamp_lower(lo);
    return {lo, hi};
}

BoundEntry thm5_upper(const Distribution& d, const AnalysisConfig& cfg) {
    BoundEntry e{"thm5_upper", 0.0, true, true, ""};
    double n = static_cast<double>(cfg.n);
    BinStats s = bin_stats(d, cfg);

    KahanSum v;
    v.add(n * packed_entropy_0_1(d, cfg));
    for (std::size_t b = 2; b < s.bin_counts.size(); ++b)
        v.add(-(1.0 - cfg.epsilon) * log2_factorial(static_cast<std::uint64_t>(s.bin_counts[b])));

    if (s.k1 > 0) {
        double cap1 = static_cast<double>(std::min<std::int64_t>(s.k1, cfg.n));
        v.add((n * s.phi1 - s.L1) * std::log2(cap1));
        v.add(n * s.phi1 * binary_entropy(clamp01(s.L1 / (n * s.phi1))));
    }
    if (s.k0 > 0) {
        double s2 = 0.0;
        for (double p : d.theta()) {
            if (p > cfg.tiny_threshold()) break;
            s2 += p * p;
        }
        double cap0 = static_cast<double>(std::min<std::int64_t>(s.k0, cfg.n));
        v.add((n * n / 2.0 * s2) *
              std::log2(2.0 * std::exp(1.0) * s.phi0 * cap0 / (n * s2)));
    }
    e.value_bits = v.value();
    return e;
}

BoundEntry thm6_lower(const Distribution& d, const AnalysisConfig& cfg) {
    BoundEntry e{"thm6_lower", 0.0, true, true, ""};
    double n = static_cast<double>(cfg.n);
    BinStats s = bin_stats(d, cfg);
    const auto& theta = d.theta();

    KahanSum v;
    v.add(n * packed_entropy_01(d, cfg));
    for (std::int64_t kb : s.kappa)
        v.add(-log2_factorial(static_cast<std::uint64_t>(kb)));

    if (s.k01 > 0) {
        double phi01 = s.phi01;
        // Repeat-packing penalties of the small letters (theta ascending, so
        // the first k01 letters are exactly those at or below the threshold).
        for (std::int64_t i = 0; i + 1 < s.k01; ++i) {
            double t = theta[static_cast<std::size_t>(i)];
            double w = n * t - 1.0 + std::exp(-n * (t + t * t / phi01));
            v.add(w * std::log2(phi01 / t));
        }
        double t_last = theta[static_cast<std::size_t>(s.k01 - 1)];
        v.add((n * t_last - 1.0) * std::log2(phi01 / t_last));
        // First-occurrence penalty; the paper's integer-indexed sum is cut at
        // floor(L01) since L01 is a real-valued mean.
        std::int64_t cut = static_cast<std::int64_t>(std::floor(s.L01));
        KahanSum fo;
        for (std::int64_t i = 1; i <= cut - 1 && i <= s.k01; ++i)
            fo.add((s.L01 - static_cast<double>(i)) *
                   theta[static_cast<std::size_t>(i - 1)] / phi01);
        v.add(fo.value() / kLn2);  // log2 e times the natural sum
    }
    if (s.k2_minus > 0 && s.k2_plus > 0)
        v.add(-log2_binomial(static_cast<std::uint64_t>(s.k2_minus + s.k2_plus),
                             static_cast<std::uint64_t>(s.k2_plus)));
    e.value_bits = v.value();
    clamp_lower(e);
    return e;
}

BoundReport bound_report(const Distribution& d, const AnalysisConfig& cfg) {
    BoundReport r;
    r.n = cfg.n;
    r.epsilon = cfg.epsilon;
    r.k = d.alphabet_size();
    r.iid_total_bits = static_cast<double>(cfg.n) * iid_entropy(d);

    double t1_raw = r.iid_total_bits -
                    thm4_max_decrease(static_cast<std::uint64_t>(r.k),
                                      static_cast<std::uint64_t>(cfg.n));
    auto [t1_lo, t1_hi] = thm1_bounds(d, cfg.n);
    r.entries.push_back({"thm1_lower", t1_lo, true, false, t1_raw < 0.0 ? "clamped" : ""});
    r.entries.push_back({"thm1_upper", t1_hi, true, false, ""});
    r.entries.push_back(eq12_upper(d, cfg));
    r.entries.push_back(thm2_upper(d, cfg));
    r.entries.push_back(thm3_lower(d, cfg));
    auto [t4_lo, t4_hi] = thm4_range(d, cfg);
    r.entries.push_back(t4_lo);
    r.entries.push_back(t4_hi);
    r.entries.push_back(thm5_upper(d, cfg));
    r.entries.push_back(thm6_lower(d, cfg));
    return r;
}

std::vector<Figure1Row> figure1_data(const AnalysisConfig& cfg, std::int64_t k_min,
                                     std::int64_t k_max, int steps) {
    double n = static_cast<double>(cfg.n);
    double threshold = std::pow(n, (1.0 + cfg.epsilon) / 3.0);
    if (static_cast<double>(k_min) < threshold)
        throw std::invalid_argument("figure1_data: k_min below applicability threshold n^{(1+eps)/3} = " +
                                    std::to_string(threshold));
    if (k_max < k_min || steps < 1)
        throw std::invalid_argument("figure1_data: need k_max >= k_min and steps >= 1");

    std::vector<std::int64_t> ks;
    if (steps == 1 || k_min == k_max) {
        ks.push_back(k_min);
    } else {
        double lmin = std::log(static_cast<double>(k_min));
        double lmax = std::log(static_cast<double>(k_max));
        for (int i = 0; i < steps; ++i) {
            double l = lmin + (lmax - lmin) * static_cast<double>(i) / (steps - 1);
            ks.push_back(static_cast<std::int64_t>(std::llround(std::exp(l))));
        }
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    }

    std::vector<Figure1Row> rows;
    rows.reserve(ks.size());
    for (std::int64_t k : ks)
        rows.push_back({k, thm4_min_decrease(static_cast<double>(k), n, cfg.epsilon),
                        thm4_max_decrease(static_cast<std::uint64_t>(k),
                                          static_cast<std::uint64_t>(cfg.n))});
    return rows;
}

std::string figure1_csv(const std::vector<Figure1Row>& rows) {
    std::ostringstream os;
    os.precision(12);
    os << "k,min_decrease_bits,max_decrease_bits\n";
    for (const auto& r : rows)
        os << r.k << ',' << r.min_decrease_bits << ',' << r.max_decrease_bits << '\n';
    return os.str();
}

}  // namespace pent
