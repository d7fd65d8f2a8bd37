#pragma once

// Fixed-width bit strings, MSB-first.
//
// Position 1 is the left-most bit, matching the 1-based permutation tables
// used by the cipher. The integer value of a block reads the bits left to
// right as a binary number, so "1000" has value 8.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vqaa {

/// Raised for malformed bit strings, bad widths and bad permutation tables.
class configuration_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class BitBlock {
  public:
    static constexpr int max_width = 16;

    constexpr BitBlock() = default;

    constexpr BitBlock(int width, std::uint32_t value) : width_(width), value_(value) {
        if (width < 1 || width > max_width) {
            throw configuration_error("bit block width must be in [1, 16], got " +
                                      std::to_string(width));
        }
        if (value >> width != 0) {
            throw configuration_error("value " + std::to_string(value) + " does not fit in " +
                                      std::to_string(width) + " bits");
        }
    }

    /// Parses a string of '0'/'1' characters, left-most character first.
    static BitBlock parse(std::string_view text) {
        if (text.empty() || text.size() > static_cast<std::size_t>(max_width)) {
            throw configuration_error("bit string must have 1..16 characters: '" +
                                      std::string(text) + "'");
        }
        std::uint32_t value = 0;
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw configuration_error("bit string may only contain 0 and 1: '" +
                                          std::string(text) + "'");
            }
            value = (value << 1) | static_cast<std::uint32_t>(c - '0');
        }
        return BitBlock(static_cast<int>(text.size()), value);
    }

    /// Same as parse, but also enforces an expected width.
    static BitBlock parse(std::string_view text, int expected_width) {
        BitBlock b = parse(text);
        if (b.width() != expected_width) {
            throw configuration_error("expected " + std::to_string(expected_width) +
                                      " bits, got '" + std::string(text) + "'");
        }
        return b;
    }

    [[nodiscard]] constexpr int width() const { return width_; }
    [[nodiscard]] constexpr std::uint32_t value() const { return value_; }

    /// Bit at 1-based position (1 = left-most).
    [[nodiscard]] constexpr int at(int position) const {
        if (position < 1 || position > width_) {
            throw configuration_error("bit position " + std::to_string(position) +
                                      " out of range for width " + std::to_string(width_));
        }
        return static_cast<int>((value_ >> (width_ - position)) & 1U);
    }

    [[nodiscard]] constexpr BitBlock left_half() const {
        require_even();
        const int h = width_ / 2;
        return BitBlock(h, value_ >> h);
    }

    [[nodiscard]] constexpr BitBlock right_half() const {
        require_even();
        const int h = width_ / 2;
        return BitBlock(h, value_ & ((1U << h) - 1U));
    }

    [[nodiscard]] std::string to_string() const {
        std::string out(static_cast<std::size_t>(width_), '0');
        for (int p = 1; p <= width_; ++p) {
            out[static_cast<std::size_t>(p - 1)] = at(p) ? '1' : '0';
        }
        return out;
    }

    friend constexpr bool operator==(const BitBlock&, const BitBlock&) = default;

    friend constexpr BitBlock operator^(const BitBlock& a, const BitBlock& b) {
        if (a.width_ != b.width_) {
            throw configuration_error("xor of blocks with different widths");
        }
        return BitBlock(a.width_, a.value_ ^ b.value_);
    }

  private:
    constexpr void require_even() const {
        if (width_ % 2 != 0) {
            throw configuration_error("cannot split odd-width block");
        }
    }

    int width_ = 1;
    std::uint32_t value_ = 0;
};

/// Left block followed by right block.
constexpr BitBlock concat(const BitBlock& left, const BitBlock& right) {
    return BitBlock(left.width() + right.width(), (left.value() << right.width()) | right.value());
}

/// output[i] = input[table[i]], with 1-based table entries.
constexpr BitBlock permute(const BitBlock& input, std::span<const int> table) {
    if (table.empty() || table.size() > static_cast<std::size_t>(BitBlock::max_width)) {
        throw configuration_error("permutation table must have 1..16 entries");
    }
    std::uint32_t value = 0;
    for (int source : table) {
        if (source < 1 || source > input.width()) {
            throw configuration_error("permutation entry " + std::to_string(source) +
                                      " outside [1, " + std::to_string(input.width()) + "]");
        }
        value = (value << 1) | static_cast<std::uint32_t>(input.at(source));
    }
    return BitBlock(static_cast<int>(table.size()), value);
}

} // namespace vqaa
