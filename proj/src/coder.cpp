#include "pent/coder.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>

#include "pent/probability.hpp"
#include "pent/range_coder.hpp"

namespace pent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// 16-bit end-of-stream check symbol; a desynced decoder will almost surely
// fail to reproduce it.
constexpr std::uint32_t kSyncMagic = 0xA55A;
constexpr int kSyncShift = kFreqBits - 16;

double default_rho(double phi, std::int64_t k_b, std::int64_t n) {
    return phi / static_cast<double>(std::min(k_b, n));
}

}  // namespace

CoderModel::CoderModel(const Distribution& d, const AnalysisConfig& cfg,
                       std::optional<double> rho0, std::optional<double> rho1)
    : d_(d), cfg_(cfg), eta_(build_eta_grid(cfg)) {
    BinStats stats = bin_stats(d, cfg);
    bin_to_slot_.assign(stats.bin_counts.size(), -1);
    for (std::size_t b = 0; b < stats.bin_counts.size(); ++b) {
        if (stats.bin_counts[b] == 0) continue;
        ActiveBin ab;
        ab.bin = static_cast<std::int64_t>(b);
        ab.count = stats.bin_counts[b];
        ab.mass = stats.bin_mass[b];
        if (b <= 1) {
            std::optional<double> req = (b == 0) ? rho0 : rho1;
            ab.rho = req ? *req : default_rho(ab.mass, ab.count, cfg.n);
        } else {
            ab.rho = ab.mass / static_cast<double>(ab.count);
        }
        double cap = default_rho(ab.mass, ab.count, cfg.n);
        if (!(ab.rho > 0.0) || ab.rho > cap * (1.0 + 1e-9))
            throw std::invalid_argument(
                "CoderModel: rho for bin " + std::to_string(b) +
                " outside validity region (0, phi/min(k_b,n)]");
        std::uint64_t f = static_cast<std::uint64_t>(std::floor(ab.rho * kFreqTotal));
        ab.rep_freq = static_cast<std::uint32_t>(std::max<std::uint64_t>(1, f));
        bin_to_slot_[b] = static_cast<std::int64_t>(bins_.size());
        bins_.push_back(std::move(ab));
    }

    letter_bin_slot_.resize(d.theta().size());
    for (std::size_t i = 0; i < letter_bin_slot_.size(); ++i)
        letter_bin_slot_[i] = bin_to_slot_[static_cast<std::size_t>(bin_of(eta_, d.theta(i)))];

    std::string canon = "theta=";
    for (double t : d.theta()) canon += canonical_double(t) + ",";
    canon += ";n=" + std::to_string(cfg.n);
    canon += ";eps=" + canonical_double(cfg.epsilon);
    canon += ";rho0=" + canonical_double(this->rho0());
    canon += ";rho1=" + canonical_double(this->rho1());
    digest_ = fnv1a64(canon);

    reset();
}

double CoderModel::rho0() const {
    if (bin_to_slot_.empty() || bin_to_slot_[0] < 0) return kNaN;
    return bins_[static_cast<std::size_t>(bin_to_slot_[0])].rho;
}

double CoderModel::rho1() const {
    if (bin_to_slot_.size() < 2 || bin_to_slot_[1] < 0) return kNaN;
    return bins_[static_cast<std::size_t>(bin_to_slot_[1])].rho;
}

std::int64_t CoderModel::bin_of_letter(int letter) const {
    if (letter < 1 || letter > d_.alphabet_size())
        throw std::invalid_argument("CoderModel: letter outside alphabet");
    return bins_[static_cast<std::size_t>(letter_bin_slot_[static_cast<std::size_t>(letter - 1)])].bin;
}

void CoderModel::reset() {
    for (auto& b : bins_) {
        b.c = 0;
        b.seen.clear();
    }
    step_ = 0;
    index_slot_.clear();
    index_pos_.clear();
    letter_index_.assign(d_.theta().size() + 1, 0);
}

int CoderModel::distinct_seen() const { return static_cast<int>(index_slot_.size()); }

std::vector<std::pair<CoderModel::Event, double>> CoderModel::next_event_distribution() const {
    std::vector<std::pair<Event, double>> out;
    int next_index = distinct_seen() + 1;
    for (const auto& b : bins_) {
        for (int idx : b.seen)
            out.push_back({{Event::Kind::repeat, idx, static_cast<int>(b.bin)}, b.rho});
        double p_new = b.mass - static_cast<double>(b.c) * b.rho;
        if (b.c < b.count && p_new > 0.0)
            out.push_back({{Event::Kind::fresh, next_index, static_cast<int>(b.bin)}, p_new});
    }
    return out;
}

double CoderModel::event_prob(const Event& e) const {
    if (e.kind == Event::Kind::repeat) {
        if (e.index < 1 || e.index > distinct_seen())
            throw std::invalid_argument("event_prob: repeat of unseen index");
        const auto& b = bins_[static_cast<std::size_t>(index_slot_[static_cast<std::size_t>(e.index - 1)])];
        if (b.bin != e.bin)
            throw std::invalid_argument("event_prob: repeat carries the wrong bin");
        return b.rho;
    }
    std::int64_t slot = (e.bin >= 0 && static_cast<std::size_t>(e.bin) < bin_to_slot_.size())
                            ? bin_to_slot_[static_cast<std::size_t>(e.bin)]
                            : -1;
    if (slot < 0) throw std::invalid_argument("event_prob: fresh event in an empty bin");
    const auto& b = bins_[static_cast<std::size_t>(slot)];
    double p_new = b.mass - static_cast<double>(b.c) * b.rho;
    if (b.c >= b.count || !(p_new > 0.0))
        throw std::invalid_argument("event_prob: bin exhausted");
    return p_new;
}

void CoderModel::apply(const Event& e) {
    if (e.kind == Event::Kind::repeat) {
        event_prob(e);  // validates
    } else {
        if (e.index != distinct_seen() + 1)
            throw std::invalid_argument("apply: fresh event must carry the next pattern index");
        event_prob(e);
        auto& b = bins_[static_cast<std::size_t>(bin_to_slot_[static_cast<std::size_t>(e.bin)])];
        index_slot_.push_back(bin_to_slot_[static_cast<std::size_t>(e.bin)]);
        index_pos_.push_back(b.c);
        b.seen.push_back(e.index);
        ++b.c;
    }
    ++step_;
}

std::uint64_t CoderModel::state_digest() const {
    std::uint64_t h = fnv1a64(&step_, sizeof step_);
    for (const auto& b : bins_) {
        h = fnv1a64(&b.c, sizeof b.c, h);
        if (!b.seen.empty())
            h = fnv1a64(b.seen.data(), b.seen.size() * sizeof(int), h);
    }
    return h;
}

CoderModel::Event CoderModel::event_for_letter(int letter) {
    if (letter < 1 || letter > d_.alphabet_size())
        throw std::invalid_argument("encode: letter outside alphabet");
    int known = letter_index_[static_cast<std::size_t>(letter)];
    if (known != 0)
        return {Event::Kind::repeat, known,
                static_cast<int>(bins_[static_cast<std::size_t>(index_slot_[static_cast<std::size_t>(known - 1)])].bin)};
    int idx = distinct_seen() + 1;
    letter_index_[static_cast<std::size_t>(letter)] = idx;
    return {Event::Kind::fresh, idx, static_cast<int>(bin_of_letter(letter))};
}

CoderModel::Event CoderModel::event_for_pair(int psi, int beta) const {
    if (psi >= 1 && psi <= distinct_seen())
        return {Event::Kind::repeat, psi, beta};
    if (psi == distinct_seen() + 1) return {Event::Kind::fresh, psi, beta};
    throw std::invalid_argument("coder: pattern is not in restricted-growth form");
}

// ---------------------------------------------------------------------------
// Per-step quantized frequency layout.  Events are laid out bin-ascending,
// repeats (first-seen order) before the fresh event; the rounding deficit
// goes to the highest-probability event (earliest on ties).

namespace {

struct LayoutRow {
    std::size_t slot;
    std::int64_t c;
    std::uint32_t f_rep;    // repeats at positions >= 1
    std::uint32_t f_rep0;   // repeat at position 0 (may absorb the deficit)
    std::uint32_t f_new;    // 0 when the fresh event is excluded
    std::uint64_t base;     // cumulative frequency at the start of the row
};

struct StepLayout {
    std::vector<LayoutRow> rows;

    explicit StepLayout(const CoderModel& model) {
        const auto& bins = model.active_bins();
        rows.reserve(bins.size());
        std::uint64_t total = 0;
        double best_prob = -1.0;
        std::size_t best_row = 0;
        bool best_is_new = false;
        for (std::size_t s = 0; s < bins.size(); ++s) {
            const auto& b = bins[s];
            double p_new = b.mass - static_cast<double>(b.c) * b.rho;
            bool has_new = b.c < b.count && p_new > 0.0;
            std::uint32_t f_new = 0;
            if (has_new) {
                std::uint64_t f = static_cast<std::uint64_t>(std::floor(p_new * kFreqTotal));
                f_new = static_cast<std::uint32_t>(std::clamp<std::uint64_t>(f, 1, kFreqTotal));
            }
            if (b.c == 0 && !has_new) continue;
            LayoutRow row{s, b.c, b.rep_freq, b.rep_freq, f_new, 0};
            total += static_cast<std::uint64_t>(b.c) * b.rep_freq + f_new;
            if (b.c > 0 && b.rho > best_prob) {
                best_prob = b.rho;
                best_row = rows.size();
                best_is_new = false;
            }
            if (has_new && p_new > best_prob) {
                best_prob = p_new;
                best_row = rows.size();
                best_is_new = true;
            }
            rows.push_back(row);
        }
        if (rows.empty()) throw std::logic_error("coder: no events available");
        std::int64_t deficit = static_cast<std::int64_t>(kFreqTotal) - static_cast<std::int64_t>(total);
        auto& target = rows[best_row];
        if (best_is_new)
            target.f_new = static_cast<std::uint32_t>(static_cast<std::int64_t>(target.f_new) + deficit);
        else
            target.f_rep0 = static_cast<std::uint32_t>(static_cast<std::int64_t>(target.f_rep0) + deficit);
        if ((best_is_new ? target.f_new : target.f_rep0) < 1)
            throw std::logic_error("coder: deficit adjustment produced a zero frequency");

        std::uint64_t base = 0;
        for (auto& row : rows) {
            row.base = base;
            base += row_width(row);
        }
        if (base != kFreqTotal)
            throw std::logic_error("coder: quantized frequencies do not sum to the total");
    }

    static std::uint64_t row_width(const LayoutRow& row) {
        std::uint64_t w = row.f_new;
        if (row.c > 0) w += row.f_rep0 + static_cast<std::uint64_t>(row.c - 1) * row.f_rep;
        return w;
    }

    // (cum, freq) of a concrete event.
    std::pair<std::uint32_t, std::uint32_t> locate(const CoderModel& model,
                                                   const CoderModel::Event& e) const;

    // Inverse: event containing cumulative position dv.
    std::tuple<CoderModel::Event, std::uint32_t, std::uint32_t> find(const CoderModel& model,
                                                                     std::uint32_t dv) const;
};

std::pair<std::uint32_t, std::uint32_t> StepLayout::locate(const CoderModel& model,
                                                           const CoderModel::Event& e) const {
    const auto& bins = model.active_bins();
    for (const auto& row : rows) {
        const auto& b = bins[row.slot];
        if (b.bin != e.bin) continue;
        if (e.kind == CoderModel::Event::Kind::fresh) {
            if (row.f_new == 0) throw std::invalid_argument("coder: fresh event in exhausted bin");
            std::uint64_t cum = row.base;
            if (row.c > 0) cum += row.f_rep0 + static_cast<std::uint64_t>(row.c - 1) * row.f_rep;
            return {static_cast<std::uint32_t>(cum), row.f_new};
        }
        auto pos_it = std::find(b.seen.begin(), b.seen.end(), e.index);
        if (pos_it == b.seen.end())
            throw std::invalid_argument("coder: repeat of an index unseen in this bin");
        std::int64_t pos = pos_it - b.seen.begin();
        std::uint64_t cum = row.base;
        std::uint32_t f = row.f_rep0;
        if (pos > 0) {
            cum += row.f_rep0 + static_cast<std::uint64_t>(pos - 1) * row.f_rep;
            f = row.f_rep;
        }
        return {static_cast<std::uint32_t>(cum), f};
    }
    throw std::invalid_argument("coder: event refers to an empty bin");
}

std::tuple<CoderModel::Event, std::uint32_t, std::uint32_t> StepLayout::find(
    const CoderModel& model, std::uint32_t dv) const {
    const auto& bins = model.active_bins();
    int next_index = model.distinct_seen() + 1;
    for (const auto& row : rows) {
        std::uint64_t width = row_width(row);
        if (dv >= row.base + width) continue;
        const auto& b = bins[row.slot];
        std::uint64_t off = dv - row.base;
        if (row.c > 0) {
            if (off < row.f_rep0)
                return {{CoderModel::Event::Kind::repeat, b.seen[0], static_cast<int>(b.bin)},
                        static_cast<std::uint32_t>(row.base), row.f_rep0};
            std::uint64_t pos = 1 + (off - row.f_rep0) / row.f_rep;
            if (pos <= static_cast<std::uint64_t>(row.c) - 1) {
                std::uint64_t cum = row.base + row.f_rep0 + (pos - 1) * row.f_rep;
                return {{CoderModel::Event::Kind::repeat, b.seen[static_cast<std::size_t>(pos)],
                         static_cast<int>(b.bin)},
                        static_cast<std::uint32_t>(cum), row.f_rep};
            }
        }
        // Falls through to the fresh event at the end of the row.
        std::uint64_t cum = row.base;
        if (row.c > 0) cum += row.f_rep0 + static_cast<std::uint64_t>(row.c - 1) * row.f_rep;
        return {{CoderModel::Event::Kind::fresh, next_index, static_cast<int>(b.bin)},
                static_cast<std::uint32_t>(cum), row.f_new};
    }
    throw std::runtime_error("coder: corrupted payload (cumulative position out of range)");
}

double walk_ideal_bits_letters(CoderModel& model, const std::vector<int>& letters) {
    model.reset();
    KahanSum bits;
    for (int letter : letters) {
        CoderModel::Event e = model.event_for_letter(letter);
        bits.add(-std::log2(model.event_prob(e)));
        model.apply(e);
    }
    return bits.value();
}

// ---------------------------------------------------------------------------
// Container format (byte-exact, little-endian):
//   "PTRN" | version 0x01 | flags | n u64 | eps f64 | k u64 |
//   rho0 f64 | rho1 f64 (NaN = unused) | model digest u64 |
//   payload length u64 | payload

constexpr std::size_t kHeaderSize = 4 + 1 + 1 + 8 + 8 + 8 + 8 + 8 + 8 + 8;

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(out, bits);
}

std::uint64_t get_u64(const std::vector<std::uint8_t>& in, std::size_t off) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | in[off + static_cast<std::size_t>(i)];
    return v;
}

double get_f64(const std::vector<std::uint8_t>& in, std::size_t off) {
    std::uint64_t bits = get_u64(in, off);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

struct ContainerHeader {
    std::uint64_t n;
    double eps;
    std::uint64_t k;
    double rho0;
    double rho1;
    std::uint64_t digest;
    std::uint64_t payload_len;
};

ContainerHeader parse_header(const std::vector<std::uint8_t>& c) {
    if (c.size() < kHeaderSize || c[0] != 'P' || c[1] != 'T' || c[2] != 'R' || c[3] != 'N')
        throw std::runtime_error("container: bad magic");
    if (c[4] != 0x01) throw std::runtime_error("container: unsupported version");
    ContainerHeader h;
    h.n = get_u64(c, 6);
    h.eps = get_f64(c, 14);
    h.k = get_u64(c, 22);
    h.rho0 = get_f64(c, 30);
    h.rho1 = get_f64(c, 38);
    h.digest = get_u64(c, 46);
    h.payload_len = get_u64(c, 54);
    if (c.size() != kHeaderSize + h.payload_len)
        throw std::runtime_error("container: truncated payload");
    return h;
}

std::vector<std::uint8_t> run_encoder(CoderModel& model, const std::vector<int>* letters,
                                      const Pattern* psi, const std::vector<int>* beta) {
    model.reset();
    RangeEncoder rc;
    std::size_t steps = letters ? letters->size() : psi->length();
    for (std::size_t j = 0; j < steps; ++j) {
        CoderModel::Event e =
            letters ? model.event_for_letter((*letters)[j])
                    : model.event_for_pair(psi->indices()[j], (*beta)[j]);
        StepLayout layout(model);
        auto [cum, f] = layout.locate(model, e);
        rc.encode(cum, f);
        model.apply(e);
    }
    rc.encode(kSyncMagic << kSyncShift, 1u << kSyncShift);
    return rc.finish();
}

std::vector<std::uint8_t> build_container(const CoderModel& model, std::size_t n_events,
                                          const Distribution& d, const AnalysisConfig& cfg,
                                          std::vector<std::uint8_t> payload) {
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + payload.size());
    for (char c : {'P', 'T', 'R', 'N'}) out.push_back(static_cast<std::uint8_t>(c));
    out.push_back(0x01);
    std::uint8_t flags = 0;
    if (!std::isnan(model.rho0())) flags |= 1;
    if (!std::isnan(model.rho1())) flags |= 2;
    out.push_back(flags);
    put_u64(out, static_cast<std::uint64_t>(n_events));
    put_f64(out, cfg.epsilon);
    put_u64(out, static_cast<std::uint64_t>(d.alphabet_size()));
    put_f64(out, model.rho0());
    put_f64(out, model.rho1());
    put_u64(out, model.model_digest());
    put_u64(out, payload.size());
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

}  // namespace

double ideal_code_length(const Distribution& d, const AnalysisConfig& cfg,
                         const Pattern& psi, const std::vector<int>& beta,
                         std::optional<double> rho0, std::optional<double> rho1) {
    if (psi.length() != beta.size())
        throw std::invalid_argument("ideal_code_length: pattern/bin length mismatch");
    CoderModel model(d, cfg, rho0, rho1);
    KahanSum bits;
    for (std::size_t j = 0; j < beta.size(); ++j) {
        CoderModel::Event e = model.event_for_pair(psi.indices()[j], beta[j]);
        bits.add(-std::log2(model.event_prob(e)));
        model.apply(e);
    }
    return bits.value();
}

double ideal_code_length_letters(const Distribution& d, const AnalysisConfig& cfg,
                                 const std::vector<int>& letters,
                                 std::optional<double> rho0, std::optional<double> rho1) {
    CoderModel model(d, cfg, rho0, rho1);
    return walk_ideal_bits_letters(model, letters);
}

std::vector<std::uint8_t> encode_letters(const Distribution& d, const AnalysisConfig& cfg,
                                         const std::vector<int>& letters,
                                         std::optional<double> rho0, std::optional<double> rho1) {
    if (static_cast<std::int64_t>(letters.size()) > cfg.n)
        throw std::invalid_argument("encode: input longer than the model length n");
    CoderModel model(d, cfg, rho0, rho1);
    auto payload = run_encoder(model, &letters, nullptr, nullptr);
    return build_container(model, letters.size(), d, cfg, std::move(payload));
}

std::vector<std::uint8_t> encode_pattern_bins(const Distribution& d, const AnalysisConfig& cfg,
                                              const Pattern& psi, const std::vector<int>& beta,
                                              std::optional<double> rho0,
                                              std::optional<double> rho1) {
    if (psi.length() != beta.size())
        throw std::invalid_argument("encode: pattern/bin length mismatch");
    if (static_cast<std::int64_t>(psi.length()) > cfg.n)
        throw std::invalid_argument("encode: input longer than the model length n");
    CoderModel model(d, cfg, rho0, rho1);
    auto payload = run_encoder(model, nullptr, &psi, &beta);
    return build_container(model, psi.length(), d, cfg, std::move(payload));
}

std::size_t container_payload_bytes(const std::vector<std::uint8_t>& container) {
    return static_cast<std::size_t>(parse_header(container).payload_len);
}

DecodedStream decode(const Distribution& d, const AnalysisConfig& cfg,
                     const std::vector<std::uint8_t>& container) {
    ContainerHeader h = parse_header(container);
    std::optional<double> rho0, rho1;
    if (!std::isnan(h.rho0)) rho0 = h.rho0;
    if (!std::isnan(h.rho1)) rho1 = h.rho1;
    CoderModel model(d, cfg, rho0, rho1);
    if (model.model_digest() != h.digest)
        throw std::runtime_error("decode: model digest mismatch (wrong distribution or config)");

    std::vector<std::uint8_t> payload(container.begin() + kHeaderSize, container.end());
    RangeDecoder rc(payload);
    std::vector<int> psi, beta;
    psi.reserve(static_cast<std::size_t>(h.n));
    beta.reserve(static_cast<std::size_t>(h.n));
    for (std::uint64_t j = 0; j < h.n; ++j) {
        StepLayout layout(model);
        auto [event, cum, f] = layout.find(model, rc.decode_freq());
        rc.decode_update(cum, f);
        model.apply(event);
        psi.push_back(event.index);
        beta.push_back(event.bin);
    }
    std::uint32_t tail = rc.decode_freq();
    if ((tail >> kSyncShift) != kSyncMagic)
        throw std::runtime_error("decode: corrupted payload (final-state check failed)");
    return {Pattern::from_indices(std::move(psi)), std::move(beta)};
}

EntropyEstimate expected_code_length(const Distribution& d, const AnalysisConfig& cfg,
                                     EntropyMethod method, std::int64_t samples,
                                     std::uint64_t seed, std::optional<double> rho0,
                                     std::optional<double> rho1) {
    CoderModel model(d, cfg, rho0, rho1);
    if (method == EntropyMethod::exact_sequences) {
        double total = std::pow(static_cast<double>(d.alphabet_size()),
                                static_cast<double>(cfg.n));
        if (total > kSequenceEnumerationGuard)
            throw infeasible_error("expected_code_length: k^n exceeds enumeration guard");
        KahanSum acc;
        for_each_sequence(d, cfg.n, [&](const std::vector<int>& x, double p) {
            acc.add(p * walk_ideal_bits_letters(model, x));
        });
        return {acc.value(), 0.0, EntropyMethod::exact_sequences, 0, false};
    }
    if (method != EntropyMethod::monte_carlo)
        throw std::invalid_argument("expected_code_length: method must be exact or monte_carlo");
    if (samples < 1) throw std::invalid_argument("expected_code_length: samples must be >= 1");
    SequenceSampler sampler(d, seed);
    std::vector<int> x;
    double mean = 0.0, m2 = 0.0;
    for (std::int64_t s = 0; s < samples; ++s) {
        sampler.fill(x, cfg.n);
        double bits = walk_ideal_bits_letters(model, x);
        double delta = bits - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (bits - mean);
    }
    EntropyEstimate e;
    e.value_bits = mean;
    e.method = EntropyMethod::monte_carlo;
    e.samples = samples;
    e.degenerate_sample = samples == 1;
    e.stderr_bits = samples > 1
                        ? std::sqrt(m2 / static_cast<double>(samples - 1) /
                                    static_cast<double>(samples))
                        : 0.0;
    return e;
}

std::pair<double, double> optimize_rho(const Distribution& d, const AnalysisConfig& cfg,
                                       std::int64_t objective_samples, std::uint64_t seed) {
    BinStats stats = bin_stats(d, cfg);
    if (stats.k0 == 0 && stats.k1 == 0) return {kNaN, kNaN};
    if (objective_samples < 1)
        throw std::invalid_argument("optimize_rho: objective_samples must be >= 1");

    auto candidates = [&](std::int64_t k_b, double phi) {
        std::vector<std::optional<double>> c;
        if (k_b == 0) {
            c.push_back(std::nullopt);
            return c;
        }
        double top = default_rho(phi, k_b, cfg.n);
        for (int i = 0; i < 8; ++i) c.push_back(top * std::exp2(-i));
        return c;
    };
    auto cand0 = candidates(stats.k0, stats.phi0);
    auto cand1 = candidates(stats.k1, stats.phi1);

    // Common random numbers: the same sampled sequences score every
    // candidate pair.
    std::vector<std::vector<int>> batch(static_cast<std::size_t>(objective_samples));
    SequenceSampler sampler(d, seed);
    for (auto& x : batch) sampler.fill(x, cfg.n);

    double best = std::numeric_limits<double>::infinity();
    std::pair<double, double> best_pair{kNaN, kNaN};
    for (const auto& r0 : cand0) {
        for (const auto& r1 : cand1) {
            CoderModel model(d, cfg, r0, r1);
            KahanSum total;
            for (const auto& x : batch) total.add(walk_ideal_bits_letters(model, x));
            if (total.value() < best) {
                best = total.value();
                best_pair = {r0 ? *r0 : kNaN, r1 ? *r1 : kNaN};
            }
        }
    }
    return best_pair;
}

}  // namespace pent
