// Command-line front end: pattern extraction, entropy estimation, bound
// reports, decrease-band sweeps, encode/decode, grid inspection, and the
// built-in verification suites.
//
// Exit codes: 0 success, 1 usage error, 2 infeasible-scale refusal,
// 3 verification failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pent/bounds.hpp"
#include "pent/coder.hpp"
#include "pent/common.hpp"
#include "pent/distributions.hpp"
#include "pent/entropy.hpp"
#include "pent/grids.hpp"
#include "pent/patterns.hpp"
#include "pent/probability.hpp"

namespace {

using pent::AnalysisConfig;
using pent::Distribution;
using pent::Pattern;

double round12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

// All machine-readable numeric output uses 12 significant digits.
void round_numbers(nlohmann::json& j) {
    if (j.is_number_float())
        j = round12(j.get<double>());
    else if (j.is_object() || j.is_array())
        for (auto& el : j) round_numbers(el);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << content;
}

// --dist accepts an inline JSON array, a "family:..." spec, or a path to a
// file containing either form.
Distribution load_distribution(const std::string& spec, int depth = 0) {
    std::string s = spec;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw std::runtime_error("empty distribution spec");
    if (s.rfind("family:", 0) == 0) return pent::parse_family(s);
    if (s.front() == '[') {
        auto j = nlohmann::json::parse(s);
        return Distribution::from_probabilities(j.get<std::vector<double>>());
    }
    if (depth > 0) throw std::runtime_error("unrecognized distribution spec: " + spec);
    return load_distribution(read_file(s), depth + 1);
}

// --- tokenizers ------------------------------------------------------------

bool is_space_cp(std::uint32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

// Decodes one UTF-8 code point starting at i; malformed bytes are taken as
// single-byte tokens so arbitrary binary input still tokenizes.
std::uint32_t next_code_point(const std::string& s, std::size_t& i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    int extra = c >= 0xF0 ? 3 : c >= 0xE0 ? 2 : c >= 0xC0 ? 1 : 0;
    if (extra == 0 || i + static_cast<std::size_t>(extra) >= s.size()) {
        ++i;
        return c;
    }
    std::uint32_t cp = c & (0x3Fu >> extra);
    for (int j = 1; j <= extra; ++j) {
        unsigned char cc = static_cast<unsigned char>(s[i + static_cast<std::size_t>(j)]);
        if ((cc & 0xC0) != 0x80) {
            ++i;
            return c;
        }
        cp = (cp << 6) | (cc & 0x3Fu);
    }
    i += static_cast<std::size_t>(extra) + 1;
    return cp;
}

std::vector<std::string> tokenize(const std::string& text, const std::string& mode) {
    std::vector<std::string> tokens;
    if (mode == "bytes") {
        for (char c : text) tokens.emplace_back(1, c);
    } else if (mode == "chars") {
        std::size_t i = 0;
        while (i < text.size()) {
            std::size_t start = i;
            next_code_point(text, i);
            tokens.push_back(text.substr(start, i - start));
        }
    } else if (mode == "words") {
        std::string word;
        std::size_t i = 0;
        while (i < text.size()) {
            std::size_t start = i;
            std::uint32_t cp = next_code_point(text, i);
            if (is_space_cp(cp)) {
                if (!word.empty()) tokens.push_back(std::move(word)), word.clear();
            } else {
                word += text.substr(start, i - start);
            }
        }
        if (!word.empty()) tokens.push_back(std::move(word));
    } else {
        throw CLI::ValidationError("--tokenizer", "must be bytes, chars, or words");
    }
    return tokens;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream ss(text);
    long long v;
    while (ss >> v) out.push_back(static_cast<int>(v));
    if (!ss.eof() && ss.fail()) {
        ss.clear();
        std::string bad;
        ss >> bad;
        throw std::runtime_error("non-integer token in input: '" + bad + "'");
    }
    return out;
}

std::string format_entropy(const pent::EntropyEstimate& e, std::int64_t n, std::int64_t k,
                           const std::string& format) {
    if (format == "csv") {
        std::ostringstream os;
        os.precision(12);
        os << "value_bits,stderr_bits,method,samples,n,k\n";
        auto j = nlohmann::json::parse(e.to_json(n, k));
        os << round12(e.value_bits) << ',' << round12(e.stderr_bits) << ','
           << j["method"].get<std::string>() << ',' << e.samples << ',' << n << ',' << k << '\n';
        return os.str();
    }
    auto j = nlohmann::json::parse(e.to_json(n, k));
    round_numbers(j);
    return j.dump();
}

// --- verification suites ---------------------------------------------------

int g_failures = 0;

void report(bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << ": " << what << '\n';
    if (!ok) ++g_failures;
}

Distribution random_distribution(pent::Rng& rng, int k) {
    std::vector<double> w(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (double& x : w) {
        x = rng.next_double() + 1e-3;
        sum += x;
    }
    for (double& x : w) x /= sum;
    return Distribution::from_probabilities(w);
}

void verify_oracles(std::uint64_t seed) {
    pent::Rng rng(seed);
    bool probs_ok = true;
    for (int t = 0; t < 200 && probs_ok; ++t) {
        int k = 2 + static_cast<int>(rng.next_u64() % 5);
        int n = 2 + static_cast<int>(rng.next_u64() % 6);
        Distribution d = random_distribution(rng, k);
        Pattern p = Pattern::of(pent::sample_sequence(d, n, rng.next_u64()));
        double a = pent::pattern_prob_exact(d, p);
        double b = pent::pattern_prob_bruteforce(d, p);
        if (std::abs(a - b) > 1e-12 * std::max(a, b)) probs_ok = false;
    }
    report(probs_ok, "pattern probability: subset-DP matches injective-sum oracle");

    bool ent_ok = true;
    for (int k = 2; k <= 3 && ent_ok; ++k) {
        for (int n = 2; n <= 6 && ent_ok; ++n) {
            Distribution d = random_distribution(rng, k);
            double a = pent::pattern_entropy_exact(d, n).value_bits;
            double b = pent::pattern_entropy_via_sequences(d, n).value_bits;
            if (std::abs(a - b) > 1e-9) ent_ok = false;
        }
    }
    report(ent_ok, "pattern entropy: enumeration matches sequence aggregation");

    bool norm_ok = true;
    for (int t = 0; t < 10 && norm_ok; ++t) {
        int k = 2 + static_cast<int>(rng.next_u64() % 3);
        int n = 2 + static_cast<int>(rng.next_u64() % 7);
        Distribution d = random_distribution(rng, k);
        pent::KahanSum total;
        pent::for_each_pattern(n, [&](const Pattern& p) {
            if (p.distinct() <= d.alphabet_size()) total.add(pent::pattern_prob_exact(d, p));
        });
        if (std::abs(total.value() - 1.0) > 1e-9) norm_ok = false;
    }
    report(norm_ok, "pattern probabilities sum to 1 over full enumeration");
}

void verify_thm1(std::uint64_t seed) {
    pent::Rng rng(seed);
    bool ok = true;
    for (int t = 0; t < 60 && ok; ++t) {
        int k = 2 + static_cast<int>(rng.next_u64() % 3);
        int n = 2 + static_cast<int>(rng.next_u64() % 6);
        Distribution d = random_distribution(rng, k);
        auto [lo, hi] = pent::thm1_bounds(d, n);
        double h = pent::pattern_entropy_exact(d, n).value_bits;
        if (h < lo - 1e-9 || h > hi + 1e-9) ok = false;
    }
    report(ok, "exact pattern entropy lies in the non-asymptotic sandwich");
}

void verify_coder(std::uint64_t seed) {
    pent::Rng rng(seed);
    bool trip_ok = true, budget_ok = true;
    for (int t = 0; t < 300 && (trip_ok && budget_ok); ++t) {
        std::int64_t k = 2 + static_cast<std::int64_t>(rng.next_u64() % 50);
        std::int64_t n = 2 + static_cast<std::int64_t>(rng.next_u64() % 200);
        Distribution d = random_distribution(rng, static_cast<int>(k));
        AnalysisConfig cfg(n, 0.1);
        std::vector<int> x = pent::sample_sequence(d, n, rng.next_u64());
        auto container = pent::encode_letters(d, cfg, x);
        auto decoded = pent::decode(d, cfg, container);
        Pattern want = Pattern::of(x);
        if (!(decoded.psi == want)) trip_ok = false;
        double ideal = pent::ideal_code_length_letters(d, cfg, x);
        double budget = ideal + 32.0 + 0.015 * static_cast<double>(n);
        if (8.0 * static_cast<double>(pent::container_payload_bytes(container)) >
            std::ceil(budget / 8.0) * 8.0)
            budget_ok = false;
    }
    report(trip_ok, "encode/decode round trip is lossless");
    report(budget_ok, "payload length within ideal + 32 + 0.015n bits");
}

// --- main ------------------------------------------------------------------

int run(int argc, char** argv) {
    CLI::App app{"pattern entropy toolkit"};
    app.require_subcommand(1);

    // pattern
    auto* sc_pattern = app.add_subcommand("pattern", "extract the pattern of a file");
    std::string in_path, out_path, tokenizer = "chars";
    sc_pattern->add_option("input", in_path, "input file")->required();
    sc_pattern->add_option("--tokenizer", tokenizer, "bytes|chars|words");
    sc_pattern->add_option("--out", out_path, "output path (default stdout)");

    // entropy
    auto* sc_entropy = app.add_subcommand("entropy", "pattern entropy of an i.i.d. source");
    std::string dist_spec, method = "exact", format = "json";
    std::int64_t n = 0, samples = 10000;
    std::uint64_t seed = 1;
    double epsilon = 0.1;
    sc_entropy->add_option("--dist", dist_spec, "JSON array, family:..., or file")->required();
    sc_entropy->add_option("--n", n, "sequence length")->required();
    sc_entropy->add_option("--method", method, "exact|exact-seq|mc");
    sc_entropy->add_option("--samples", samples, "Monte Carlo sample count");
    sc_entropy->add_option("--seed", seed, "random seed");
    sc_entropy->add_option("--format", format, "json|csv");
    sc_entropy->add_option("--out", out_path, "output path (default stdout)");

    // bounds
    auto* sc_bounds = app.add_subcommand("bounds", "evaluate every entropy bound");
    sc_bounds->add_option("--dist", dist_spec, "distribution spec")->required();
    sc_bounds->add_option("--n", n, "sequence length")->required();
    sc_bounds->add_option("--epsilon", epsilon, "grid parameter (default 0.1)");
    sc_bounds->add_option("--format", format, "json|csv");
    sc_bounds->add_option("--out", out_path, "output path (default stdout)");

    // range
    auto* sc_range = app.add_subcommand("range", "decrease-band sweep over k (CSV)");
    std::int64_t k_min = 0, k_max = 0;
    int steps = 50;
    sc_range->add_option("--n", n, "sequence length")->required();
    sc_range->add_option("--epsilon", epsilon, "grid parameter (default 0.1)");
    sc_range->add_option("--k-min", k_min, "smallest alphabet size")->required();
    sc_range->add_option("--k-max", k_max, "largest alphabet size")->required();
    sc_range->add_option("--steps", steps, "number of log-spaced points");
    sc_range->add_option("--out", out_path, "output path (default stdout)");

    // encode / decode
    auto* sc_encode = app.add_subcommand("encode", "compress a letter-index sequence");
    std::optional<double> rho0, rho1;
    sc_encode->add_option("input", in_path, "file of whitespace-separated letter indices")
        ->required();
    sc_encode->add_option("--dist", dist_spec, "distribution spec")->required();
    sc_encode->add_option("--n", n, "model sequence length")->required();
    sc_encode->add_option("--epsilon", epsilon, "grid parameter (default 0.1)");
    sc_encode->add_option("--rho0", rho0, "bin-0 repeat probability");
    sc_encode->add_option("--rho1", rho1, "bin-1 repeat probability");
    sc_encode->add_option("--out", out_path, "container output path")->required();

    auto* sc_decode = app.add_subcommand("decode", "recover (pattern, bins) from a container");
    sc_decode->add_option("input", in_path, "container file")->required();
    sc_decode->add_option("--dist", dist_spec, "distribution spec")->required();
    sc_decode->add_option("--n", n, "model sequence length")->required();
    sc_decode->add_option("--epsilon", epsilon, "grid parameter (default 0.1)");
    sc_decode->add_option("--out", out_path, "output path (default stdout)");

    // verify
    auto* sc_verify = app.add_subcommand("verify", "run a built-in verification suite");
    std::string suite;
    sc_verify->add_option("suite", suite, "oracles|thm1|coder")->required();
    sc_verify->add_option("--seed", seed, "random seed");

    // grid
    auto* sc_grid = app.add_subcommand("grid", "inspect a probability grid");
    std::string kind = "eta";
    sc_grid->add_option("--n", n, "sequence length")->required();
    sc_grid->add_option("--epsilon", epsilon, "grid parameter (default 0.1)");
    sc_grid->add_option("--kind", kind, "eta|xi");
    sc_grid->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (sc_pattern->parsed()) {
        auto tokens = tokenize(read_file(in_path), tokenizer);
        if (tokens.empty()) throw std::runtime_error("input is empty after tokenization");
        Pattern p = Pattern::of(tokens);
        std::ostringstream os;
        for (std::size_t i = 0; i < p.length(); ++i)
            os << (i ? " " : "") << p.indices()[i];
        os << '\n';
        write_output(out_path, os.str());
        auto mult = p.multiplicities();
        std::sort(mult.begin(), mult.end(), std::greater<>());
        std::cerr << "n=" << p.length() << " m=" << p.distinct() << " top multiplicities:";
        for (std::size_t i = 0; i < mult.size() && i < 5; ++i) std::cerr << ' ' << mult[i];
        std::cerr << '\n';
        return 0;
    }

    if (sc_entropy->parsed()) {
        Distribution d = load_distribution(dist_spec);
        pent::EntropyEstimate e;
        if (method == "exact")
            e = pent::pattern_entropy_exact(d, static_cast<int>(n));
        else if (method == "exact-seq")
            e = pent::pattern_entropy_via_sequences(d, static_cast<int>(n));
        else if (method == "mc")
            e = pent::pattern_entropy_mc(d, n, samples, seed);
        else
            throw CLI::ValidationError("--method", "must be exact, exact-seq, or mc");
        write_output(out_path, format_entropy(e, n, d.alphabet_size(), format));
        return 0;
    }

    if (sc_bounds->parsed()) {
        Distribution d = load_distribution(dist_spec);
        pent::BoundReport r = pent::bound_report(d, AnalysisConfig(n, epsilon));
        if (format == "csv") {
            write_output(out_path, r.to_csv());
        } else {
            auto j = nlohmann::json::parse(r.to_json());
            round_numbers(j);
            write_output(out_path, j.dump());
        }
        return 0;
    }

    if (sc_range->parsed()) {
        auto rows = pent::figure1_data(AnalysisConfig(n, epsilon), k_min, k_max, steps);
        write_output(out_path, pent::figure1_csv(rows));
        return 0;
    }

    if (sc_encode->parsed()) {
        Distribution d = load_distribution(dist_spec);
        AnalysisConfig cfg(n, epsilon);
        std::vector<int> letters = parse_int_list(read_file(in_path));
        if (letters.empty()) throw std::runtime_error("input is empty");
        auto container = pent::encode_letters(d, cfg, letters, rho0, rho1);
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write output file: " + out_path);
        out.write(reinterpret_cast<const char*>(container.data()),
                  static_cast<std::streamsize>(container.size()));
        double ideal = pent::ideal_code_length_letters(d, cfg, letters, rho0, rho1);
        std::cerr << "events=" << letters.size()
                  << " ideal_bits=" << round12(ideal)
                  << " payload_bits=" << 8 * pent::container_payload_bytes(container)
                  << " container_bytes=" << container.size() << '\n';
        return 0;
    }

    if (sc_decode->parsed()) {
        Distribution d = load_distribution(dist_spec);
        std::string raw = read_file(in_path);
        std::vector<std::uint8_t> container(raw.begin(), raw.end());
        auto stream = pent::decode(d, AnalysisConfig(n, epsilon), container);
        std::ostringstream os;
        for (std::size_t i = 0; i < stream.psi.length(); ++i)
            os << (i ? " " : "") << stream.psi.indices()[i];
        os << '\n';
        for (std::size_t i = 0; i < stream.beta.size(); ++i)
            os << (i ? " " : "") << stream.beta[i];
        os << '\n';
        write_output(out_path, os.str());
        return 0;
    }

    if (sc_verify->parsed()) {
        if (suite == "oracles")
            verify_oracles(seed);
        else if (suite == "thm1")
            verify_thm1(seed);
        else if (suite == "coder")
            verify_coder(seed);
        else
            throw CLI::ValidationError("suite", "must be oracles, thm1, or coder");
        if (g_failures > 0) {
            std::cerr << g_failures << " verification check(s) failed\n";
            return 3;
        }
        return 0;
    }

    if (sc_grid->parsed()) {
        AnalysisConfig cfg(n, epsilon);
        pent::GridSpec g = kind == "xi" ? pent::build_xi_grid(cfg) : pent::build_eta_grid(cfg);
        auto j = nlohmann::json::parse(pent::grid_to_json(g));
        round_numbers(j);
        write_output(out_path, j.dump());
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pent::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
