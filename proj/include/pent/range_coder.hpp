#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pent {

// Byte-oriented range coder with 64-bit state and carry propagation into
// the output buffer.  Symbols are coded from cumulative frequency tables
// with a fixed total of 2^kFreqBits; normalization keeps range >= 2^56 so
// the frequency scaling loses at most 2^-26 relative precision per step.
inline constexpr int kFreqBits = 30;
inline constexpr std::uint32_t kFreqTotal = 1u << kFreqBits;

class RangeEncoder {
public:
    void encode(std::uint32_t cum, std::uint32_t freq) {
        std::uint64_t r = range_ >> kFreqBits;
        std::uint64_t add = r * cum;
        std::uint64_t old = low_;
        low_ += add;
        if (low_ < old) propagate_carry();
        range_ = r * freq;
        normalize();
    }

    // Seals the stream: picks the value in [low, low+range) with the most
    // trailing zero bits and emits only its significant bytes.  The decoder
    // reads zeros past the end of the payload.
    std::vector<std::uint8_t> finish() {
        int s = std::bit_width(range_) - 1;
        std::uint64_t mask = (s >= 63) ? ~std::uint64_t{0} >> 1 : ((std::uint64_t{1} << s) - 1);
        std::uint64_t v = low_ + mask;
        if (v < low_) propagate_carry();
        v &= ~mask;
        for (int shift = 56; shift >= 0; shift -= 8) {
            std::uint8_t byte = static_cast<std::uint8_t>(v >> shift);
            bool rest_zero = (shift == 0) || ((v & ((std::uint64_t{1} << shift) - 1)) == 0);
            if (byte == 0 && rest_zero) break;
            out_.push_back(byte);
            if (rest_zero) break;
        }
        return std::move(out_);
    }

private:
    void normalize() {
        while (range_ < (std::uint64_t{1} << 56)) {
            out_.push_back(static_cast<std::uint8_t>(low_ >> 56));
            low_ <<= 8;
            range_ <<= 8;
        }
    }

    void propagate_carry() {
        for (std::size_t i = out_.size(); i-- > 0;) {
            if (++out_[i] != 0) return;
        }
        throw std::logic_error("range coder: carry out of an empty buffer");
    }

    std::uint64_t low_ = 0;
    std::uint64_t range_ = ~std::uint64_t{0};
    std::vector<std::uint8_t> out_;
};

class RangeDecoder {
public:
    explicit RangeDecoder(const std::vector<std::uint8_t>& bytes) : bytes_(&bytes) {
        for (int i = 0; i < 8; ++i) code_ = (code_ << 8) | next_byte();
    }

    // Cumulative-frequency position of the next symbol; the caller maps it
    // to a symbol and confirms with decode_update.
    std::uint32_t decode_freq() {
        r_ = range_ >> kFreqBits;
        std::uint64_t dv = (code_ - low_) / r_;
        return static_cast<std::uint32_t>(
            dv < kFreqTotal ? dv : kFreqTotal - 1);
    }

    void decode_update(std::uint32_t cum, std::uint32_t freq) {
        low_ += r_ * cum;
        range_ = r_ * freq;
        while (range_ < (std::uint64_t{1} << 56)) {
            low_ <<= 8;
            code_ = (code_ << 8) | next_byte();
            range_ <<= 8;
        }
    }

private:
    std::uint8_t next_byte() {
        return pos_ < bytes_->size() ? (*bytes_)[pos_++] : 0;
    }

    const std::vector<std::uint8_t>* bytes_;
    std::size_t pos_ = 0;
    std::uint64_t low_ = 0;
    std::uint64_t range_ = ~std::uint64_t{0};
    std::uint64_t code_ = 0;
    std::uint64_t r_ = 0;
};

}  // namespace pent
