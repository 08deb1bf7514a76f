#include "pent/patterns.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pent {

bool is_valid_pattern(const std::vector<int>& seq) {
    int running_max = 0;
    for (int v : seq) {
        if (v < 1 || v > running_max + 1) return false;
        running_max = std::max(running_max, v);
    }
    return true;
}

Pattern Pattern::from_indices(std::vector<int> indices) {
    if (!is_valid_pattern(indices))
        throw std::invalid_argument("sequence is not a restricted-growth pattern");
    Pattern p;
    p.distinct_ = indices.empty() ? 0 : *std::max_element(indices.begin(), indices.end());
    p.indices_ = std::move(indices);
    return p;
}

Pattern Pattern::of(std::string_view text) {
    std::vector<char> chars(text.begin(), text.end());
    return Pattern::of(chars);
}

std::vector<int> Pattern::multiplicities() const {
    std::vector<int> counts(static_cast<std::size_t>(distinct_), 0);
    for (int v : indices_) ++counts[static_cast<std::size_t>(v - 1)];
    return counts;
}

std::uint64_t bell_number(int n) {
    if (n < 0) throw std::invalid_argument("bell_number: negative n");
    if (n > 25) throw std::invalid_argument("bell_number: overflows 64 bits beyond n=25");
    // Bell triangle.
    std::vector<std::uint64_t> row{1};
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint64_t> next;
        next.reserve(row.size() + 1);
        next.push_back(row.back());
        for (std::uint64_t v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

double bell_number_approx(int n) {
    if (n <= 25) return static_cast<double>(bell_number(n));
    std::vector<double> row{1.0};
    for (int i = 0; i < n; ++i) {
        std::vector<double> next;
        next.reserve(row.size() + 1);
        next.push_back(row.back());
        for (double v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

PatternEnumerator::PatternEnumerator(int n, std::vector<int> prefix)
    : n_(n), prefix_len_(prefix.size()) {
    if (n < 0) throw std::invalid_argument("PatternEnumerator: negative n");
    if (!is_valid_pattern(prefix) || prefix.size() > static_cast<std::size_t>(n))
        throw std::invalid_argument("PatternEnumerator: invalid prefix");
    current_ = std::move(prefix);
    current_.resize(static_cast<std::size_t>(n), 1);
    if (n > 0 && prefix_len_ == 0) current_[0] = 1;
    prefix_max_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 0; j < n; ++j)
        prefix_max_[static_cast<std::size_t>(j) + 1] =
            std::max(prefix_max_[static_cast<std::size_t>(j)], current_[static_cast<std::size_t>(j)]);
}

bool PatternEnumerator::next(Pattern& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        out = Pattern::from_indices(current_);
        return true;
    }
    // Advance: rightmost mutable position (beyond the fixed prefix) that can
    // still grow; everything after it resets to 1.
    int j = n_ - 1;
    for (; j >= static_cast<int>(prefix_len_); --j) {
        if (current_[static_cast<std::size_t>(j)] <= prefix_max_[static_cast<std::size_t>(j)]) break;
        current_[static_cast<std::size_t>(j)] = 1;
    }
    if (j < static_cast<int>(prefix_len_) || j == 0) {
        done_ = true;
        return false;
    }
    ++current_[static_cast<std::size_t>(j)];
    for (int i = j; i < n_; ++i)
        prefix_max_[static_cast<std::size_t>(i) + 1] =
            std::max(prefix_max_[static_cast<std::size_t>(i)], current_[static_cast<std::size_t>(i)]);
    out = Pattern::from_indices(current_);
    return true;
}

void for_each_pattern(int n, const std::function<void(const Pattern&)>& fn, int cap) {
    if (n < 0) throw std::invalid_argument("for_each_pattern: negative n");
    if (n > cap) {
        std::string count = n <= 25 ? std::to_string(bell_number(n))
                                    : std::to_string(bell_number_approx(n));
        throw infeasible_error("enumeration infeasible: Bell(" + std::to_string(n) + ") = " +
                               count + " patterns exceeds cap n=" + std::to_string(cap));
    }
    PatternEnumerator e(n);
    Pattern p;
    while (e.next(p)) fn(p);
}

}  // namespace pent
