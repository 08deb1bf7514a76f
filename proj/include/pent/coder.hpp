#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pent/distributions.hpp"
#include "pent/entropy.hpp"
#include "pent/grids.hpp"
#include "pent/patterns.hpp"

namespace pent {

// Sequential probability assignment over joint (pattern index, eta-bin)
// events: a re-occurring index costs rho of its bin, a first occurrence in
// bin b costs the remaining group mass phi_b - c_b rho_b.  The model is
// non-universal: both ends know (theta, n, eps, rho_0, rho_1) and evolve
// identical state.
class CoderModel {
public:
    struct Event {
        enum class Kind { repeat, fresh };
        Kind kind;
        int index;  // pattern index (repeat) or the index it will get (fresh)
        int bin;    // eta bin id
        bool operator==(const Event&) const = default;
    };

    CoderModel(const Distribution& d, const AnalysisConfig& cfg,
               std::optional<double> rho0 = std::nullopt,
               std::optional<double> rho1 = std::nullopt);

    // Model constants.
    std::int64_t n() const { return cfg_.n; }
    double rho0() const;  // NaN when bin 0 is empty
    double rho1() const;
    std::int64_t bin_of_letter(int letter) const;  // 1-based letter index
    std::uint64_t model_digest() const { return digest_; }

    // Mutable coding state.
    void reset();
    std::int64_t step() const { return step_; }
    int distinct_seen() const;
    std::vector<std::pair<Event, double>> next_event_distribution() const;
    double event_prob(const Event& e) const;
    void apply(const Event& e);
    std::uint64_t state_digest() const;

    // Event for the next letter of an actual sequence / of a (psi, beta)
    // stream; validates consistency (a repeat must carry the bin of its
    // first occurrence).
    Event event_for_letter(int letter);
    Event event_for_pair(int psi, int beta) const;

    struct ActiveBin {
        std::int64_t bin;       // eta bin id
        std::int64_t count;     // k_b
        double mass;            // phi_b
        double rho;
        std::uint32_t rep_freq;     // quantized floor(rho * 2^30), min 1
        std::int64_t c = 0;         // distinct indices seen with this bin
        std::vector<int> seen;      // pattern indices in first-seen order
    };
    const std::vector<ActiveBin>& active_bins() const { return bins_; }

private:
    friend class StepLayout;

    Distribution d_;
    AnalysisConfig cfg_;
    GridSpec eta_;
    std::vector<ActiveBin> bins_;
    std::vector<std::int64_t> letter_bin_slot_;  // per letter: index into bins_
    std::vector<std::int64_t> bin_to_slot_;      // eta bin id -> slot or -1
    std::uint64_t digest_ = 0;

    std::int64_t step_ = 0;
    std::vector<std::int64_t> index_slot_;  // per pattern index (1-based)
    std::vector<std::int64_t> index_pos_;   // position in its bin's seen list
    std::vector<int> letter_index_;         // letter -> pattern index (0 = unseen)
};

// -log2 Q of a joint (pattern, bin sequence) under the assignment.
double ideal_code_length(const Distribution& d, const AnalysisConfig& cfg,
                         const Pattern& psi, const std::vector<int>& beta,
                         std::optional<double> rho0 = std::nullopt,
                         std::optional<double> rho1 = std::nullopt);
double ideal_code_length_letters(const Distribution& d, const AnalysisConfig& cfg,
                                 const std::vector<int>& letters,
                                 std::optional<double> rho0 = std::nullopt,
                                 std::optional<double> rho1 = std::nullopt);

// Container + range-coded payload.  encode accepts either a letter sequence
// (pattern and bins derived) or an explicit consistent (psi, beta) pair.
std::vector<std::uint8_t> encode_letters(const Distribution& d, const AnalysisConfig& cfg,
                                         const std::vector<int>& letters,
                                         std::optional<double> rho0 = std::nullopt,
                                         std::optional<double> rho1 = std::nullopt);
std::vector<std::uint8_t> encode_pattern_bins(const Distribution& d, const AnalysisConfig& cfg,
                                              const Pattern& psi, const std::vector<int>& beta,
                                              std::optional<double> rho0 = std::nullopt,
                                              std::optional<double> rho1 = std::nullopt);

struct DecodedStream {
    Pattern psi;
    std::vector<int> beta;
};

// Rebuilds the model from (d, cfg) plus the header's rho values and checks
// the header digest before decoding.
DecodedStream decode(const Distribution& d, const AnalysisConfig& cfg,
                     const std::vector<std::uint8_t>& container);

// Payload size in bytes of an encoded container (for length accounting).
std::size_t container_payload_bytes(const std::vector<std::uint8_t>& container);

// E[-log2 Q] over X^n: exact by sequence enumeration, or Monte Carlo.
EntropyEstimate expected_code_length(const Distribution& d, const AnalysisConfig& cfg,
                                     EntropyMethod method, std::int64_t samples = 0,
                                     std::uint64_t seed = 0,
                                     std::optional<double> rho0 = std::nullopt,
                                     std::optional<double> rho1 = std::nullopt);

// Grid search for (rho_0, rho_1) minimizing Monte Carlo expected code
// length; NaN entries mean the bin is empty (sentinel "unused").
std::pair<double, double> optimize_rho(const Distribution& d, const AnalysisConfig& cfg,
                                       std::int64_t objective_samples, std::uint64_t seed);

}  // namespace pent
