#pragma once

// Straight-line S-DES used only as a test oracle. Shares nothing with the
// library: bits live in plain int arrays, tables are restated inline and
// every step is spelled out.

#include <array>
#include <cstdint>

namespace reference_sdes {

using Bits8 = std::array<int, 8>;
using Bits10 = std::array<int, 10>;

inline Bits8 to_bits8(std::uint32_t v) {
    Bits8 b{};
    for (int i = 0; i < 8; ++i) b[i] = (v >> (7 - i)) & 1;
    return b;
}

inline Bits10 to_bits10(std::uint32_t v) {
    Bits10 b{};
    for (int i = 0; i < 10; ++i) b[i] = (v >> (9 - i)) & 1;
    return b;
}

inline std::uint32_t from_bits8(const Bits8& b) {
    std::uint32_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 1) | static_cast<std::uint32_t>(b[i]);
    return v;
}

struct Keys {
    Bits8 k1;
    Bits8 k2;
};

inline Keys subkeys(std::uint32_t key_value) {
    const Bits10 k = to_bits10(key_value);
    // P10: 3 5 2 7 4 10 1 9 8 6
    Bits10 p = {k[2], k[4], k[1], k[6], k[3], k[9], k[0], k[8], k[7], k[5]};
    // LS-1 on each half
    Bits10 s1 = {p[1], p[2], p[3], p[4], p[0], p[6], p[7], p[8], p[9], p[5]};
    // LS-2 on each half, applied to s1
    Bits10 s2 = {s1[2], s1[3], s1[4], s1[0], s1[1], s1[7], s1[8], s1[9], s1[5], s1[6]};
    // P8: 6 3 7 4 8 5 10 9
    Keys out{};
    out.k1 = {s1[5], s1[2], s1[6], s1[3], s1[7], s1[4], s1[9], s1[8]};
    out.k2 = {s2[5], s2[2], s2[6], s2[3], s2[7], s2[4], s2[9], s2[8]};
    return out;
}

inline std::array<int, 4> round_f(const std::array<int, 4>& n, const Bits8& k) {
    static const int S0[4][4] = {{1, 0, 3, 2}, {3, 2, 1, 0}, {0, 2, 1, 3}, {3, 1, 3, 2}};
    static const int S1[4][4] = {{0, 1, 2, 3}, {2, 0, 1, 3}, {3, 0, 1, 0}, {2, 1, 0, 3}};
    // E/P: 4 1 2 3 2 3 4 1, then xor with the sub-key.
    const int p00 = n[3] ^ k[0], p01 = n[0] ^ k[1], p02 = n[1] ^ k[2], p03 = n[2] ^ k[3];
    const int p10 = n[1] ^ k[4], p11 = n[2] ^ k[5], p12 = n[3] ^ k[6], p13 = n[0] ^ k[7];
    const int a = S0[p00 * 2 + p03][p01 * 2 + p02];
    const int b = S1[p10 * 2 + p13][p11 * 2 + p12];
    const int s[4] = {(a >> 1) & 1, a & 1, (b >> 1) & 1, b & 1};
    // P4: 2 4 3 1
    return {s[1], s[3], s[2], s[0]};
}

inline Bits8 round_fk(const Bits8& in, const Bits8& k) {
    const std::array<int, 4> f = round_f({in[4], in[5], in[6], in[7]}, k);
    return {in[0] ^ f[0], in[1] ^ f[1], in[2] ^ f[2], in[3] ^ f[3], in[4], in[5], in[6], in[7]};
}

inline std::uint32_t run(std::uint32_t block, const Bits8& first, const Bits8& second) {
    const Bits8 x = to_bits8(block);
    // IP: 2 6 3 1 4 8 5 7
    Bits8 b = {x[1], x[5], x[2], x[0], x[3], x[7], x[4], x[6]};
    b = round_fk(b, first);
    b = {b[4], b[5], b[6], b[7], b[0], b[1], b[2], b[3]};
    b = round_fk(b, second);
    // IP^-1: 4 1 3 5 7 2 8 6
    const Bits8 y = {b[3], b[0], b[2], b[4], b[6], b[1], b[7], b[5]};
    return from_bits8(y);
}

inline std::uint32_t encrypt(std::uint32_t plaintext, std::uint32_t key) {
    const Keys k = subkeys(key);
    return run(plaintext, k.k1, k.k2);
}

inline std::uint32_t decrypt(std::uint32_t ciphertext, std::uint32_t key) {
    const Keys k = subkeys(key);
    return run(ciphertext, k.k2, k.k1);
}

} // namespace reference_sdes
