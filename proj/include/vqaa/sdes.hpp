#pragma once

// Simplified DES: 8-bit blocks, 10-bit keys, two Feistel rounds.
//
//   ciphertext = IP^-1 . f_K2 . SW . f_K1 . IP (plaintext)
//   plaintext  = IP^-1 . f_K1 . SW . f_K2 . IP (ciphertext)

#include <array>
#include <cstdint>
#include <functional>

#include "vqaa/bit_block.hpp"

namespace vqaa::sdes {

inline constexpr int block_bits = 8;
inline constexpr int key_bits = 10;
inline constexpr int key_count = 1 << key_bits;
inline constexpr int block_count = 1 << block_bits;

namespace tables {
inline constexpr std::array<int, 10> p10{3, 5, 2, 7, 4, 10, 1, 9, 8, 6};
inline constexpr std::array<int, 8> p8{6, 3, 7, 4, 8, 5, 10, 9};
inline constexpr std::array<int, 8> ip{2, 6, 3, 1, 4, 8, 5, 7};
inline constexpr std::array<int, 8> ip_inverse{4, 1, 3, 5, 7, 2, 8, 6};
inline constexpr std::array<int, 8> expand_permute{4, 1, 2, 3, 2, 3, 4, 1};
inline constexpr std::array<int, 4> p4{2, 4, 3, 1};

// [row][column]
inline constexpr std::array<std::array<int, 4>, 4> s0{{
    {1, 0, 3, 2},
    {3, 2, 1, 0},
    {0, 2, 1, 3},
    {3, 1, 3, 2},
}};
inline constexpr std::array<std::array<int, 4>, 4> s1{{
    {0, 1, 2, 3},
    {2, 0, 1, 3},
    {3, 0, 1, 0},
    {2, 1, 0, 3},
}};
} // namespace tables

enum class SBox { s0, s1 };

struct SubKeyPair {
    BitBlock k1{8, 0};
    BitBlock k2{8, 0};

    friend bool operator==(const SubKeyPair&, const SubKeyPair&) = default;
};

/// F(R, K) as a callable; lets tests inject a fixed round function.
using RoundFunction = std::function<BitBlock(const BitBlock& right, const BitBlock& subkey)>;

namespace detail {
inline void require_width(const BitBlock& b, int width, const char* what) {
    if (b.width() != width) {
        throw configuration_error(std::string(what) + " must be " + std::to_string(width) +
                                  " bits wide, got " + std::to_string(b.width()));
    }
}
} // namespace detail

/// Left-rotates each 5-bit half of a 10-bit block by `shift`.
inline BitBlock rotate_halves(const BitBlock& input, int shift) {
    detail::require_width(input, 10, "rotate_halves input");
    if (shift != 1 && shift != 2) {
        throw configuration_error("rotate_halves shift must be 1 or 2");
    }
    auto rotl5 = [shift](std::uint32_t v) { return ((v << shift) | (v >> (5 - shift))) & 0x1FU; };
    return concat(BitBlock(5, rotl5(input.left_half().value())),
                  BitBlock(5, rotl5(input.right_half().value())));
}

inline SubKeyPair key_schedule(const BitBlock& key) {
    detail::require_width(key, key_bits, "key");
    const BitBlock shifted1 = rotate_halves(permute(key, tables::p10), 1);
    const BitBlock shifted2 = rotate_halves(shifted1, 2);
    return {permute(shifted1, tables::p8), permute(shifted2, tables::p8)};
}

/// Row from bits 1 and 4, column from bits 2 and 3.
inline BitBlock sbox_lookup(const BitBlock& nibble, SBox box) {
    detail::require_width(nibble, 4, "S-box input");
    const int row = nibble.at(1) * 2 + nibble.at(4);
    const int col = nibble.at(2) * 2 + nibble.at(3);
    const auto& m = box == SBox::s0 ? tables::s0 : tables::s1;
    return BitBlock(2, static_cast<std::uint32_t>(m[row][col]));
}

inline BitBlock feistel_f(const BitBlock& right, const BitBlock& subkey) {
    detail::require_width(right, 4, "round input");
    detail::require_width(subkey, 8, "sub-key");
    const BitBlock mixed = permute(right, tables::expand_permute) ^ subkey;
    const BitBlock s = concat(sbox_lookup(mixed.left_half(), SBox::s0),
                              sbox_lookup(mixed.right_half(), SBox::s1));
    return permute(s, tables::p4);
}

/// f_K(L, R) = (L xor F(R, K), R), with an explicit round function.
inline BitBlock fk(const BitBlock& block, const BitBlock& subkey, const RoundFunction& round) {
    detail::require_width(block, 8, "block");
    const BitBlock right = block.right_half();
    return concat(block.left_half() ^ round(right, subkey), right);
}

inline BitBlock fk(const BitBlock& block, const BitBlock& subkey) {
    detail::require_width(block, 8, "block");
    const BitBlock right = block.right_half();
    return concat(block.left_half() ^ feistel_f(right, subkey), right);
}

inline BitBlock swap_halves(const BitBlock& block) {
    return concat(block.right_half(), block.left_half());
}

inline BitBlock encrypt(const BitBlock& plaintext, const BitBlock& key) {
    detail::require_width(plaintext, block_bits, "plaintext");
    const SubKeyPair sk = key_schedule(key);
    BitBlock b = permute(plaintext, tables::ip);
    b = fk(b, sk.k1);
    b = swap_halves(b);
    b = fk(b, sk.k2);
    return permute(b, tables::ip_inverse);
}

inline BitBlock decrypt(const BitBlock& ciphertext, const BitBlock& key) {
    detail::require_width(ciphertext, block_bits, "ciphertext");
    const SubKeyPair sk = key_schedule(key);
    BitBlock b = permute(ciphertext, tables::ip);
    b = fk(b, sk.k2);
    b = swap_halves(b);
    b = fk(b, sk.k1);
    return permute(b, tables::ip_inverse);
}

/// Integer convenience wrappers, MSB-first.
inline std::uint32_t encrypt(std::uint32_t plaintext, std::uint32_t key) {
    return encrypt(BitBlock(block_bits, plaintext), BitBlock(key_bits, key)).value();
}

inline std::uint32_t decrypt(std::uint32_t ciphertext, std::uint32_t key) {
    return decrypt(BitBlock(block_bits, ciphertext), BitBlock(key_bits, key)).value();
}

} // namespace vqaa::sdes
