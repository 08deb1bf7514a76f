#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string_view>
#include <vector>

#include "pent/common.hpp"

namespace pent {

// A pattern in restricted-growth (first-occurrence) form: indices[0] == 1,
// and each element is at most 1 + the running maximum.  This is the only
// pattern representation that crosses module boundaries.
class Pattern {
public:
    Pattern() = default;

    // Validates the restricted-growth property; throws std::invalid_argument.
    static Pattern from_indices(std::vector<int> indices);

    // Extraction from an arbitrary equality-comparable token sequence:
    // each token is replaced by the 1-based rank of its first occurrence.
    template <typename Token>
    static Pattern of(const std::vector<Token>& tokens) {
        std::vector<int> out;
        out.reserve(tokens.size());
        std::map<Token, int> rank;
        for (const Token& t : tokens) {
            auto [it, fresh] = rank.try_emplace(t, static_cast<int>(rank.size()) + 1);
            (void)fresh;
            out.push_back(it->second);
        }
        Pattern p;
        p.indices_ = std::move(out);
        p.distinct_ = static_cast<int>(rank.size());
        return p;
    }

    static Pattern of(std::string_view text);

    const std::vector<int>& indices() const { return indices_; }
    std::size_t length() const { return indices_.size(); }
    int distinct() const { return distinct_; }  // m

    // multiplicities()[i] = number of occurrences of index i+1; length m.
    std::vector<int> multiplicities() const;

    bool operator==(const Pattern&) const = default;
    auto operator<=>(const Pattern&) const = default;

private:
    std::vector<int> indices_;
    int distinct_ = 0;
};

bool is_valid_pattern(const std::vector<int>& seq);

inline constexpr int kDefaultEnumerationCap = 14;

// Exact Bell numbers via the Bell triangle; defined for n <= 25 (the last
// value that fits in 64 bits).  bell_number_approx covers larger n for
// diagnostics.
std::uint64_t bell_number(int n);
double bell_number_approx(int n);

// Lexicographic stream of every restricted-growth string of length n,
// optionally restricted to completions of a fixed valid prefix (this is the
// range-splitting hook for parallel consumers).
class PatternEnumerator {
public:
    explicit PatternEnumerator(int n, std::vector<int> prefix = {});
    bool next(Pattern& out);

private:
    int n_;
    std::size_t prefix_len_;
    std::vector<int> current_;
    std::vector<int> prefix_max_;  // running max of current_[0..j-1]
    bool done_ = false;
    bool started_ = false;
};

// Visits all patterns of length n in lexicographic order.  Refuses n above
// the cap (Bell(n) terms) with an infeasible_error naming the Bell number.
void for_each_pattern(int n, const std::function<void(const Pattern&)>& fn,
                      int cap = kDefaultEnumerationCap);

}  // namespace pent
