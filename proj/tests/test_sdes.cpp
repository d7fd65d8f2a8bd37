#include <array>
#include <random>

#include <gtest/gtest.h>

#include "reference_sdes.hpp"
#include "vqaa/bit_block.hpp"
#include "vqaa/sdes.hpp"

using vqaa::BitBlock;
using vqaa::configuration_error;
namespace sdes = vqaa::sdes;

namespace {
BitBlock bits(const char* s) { return BitBlock::parse(s); }
} // namespace

TEST(BitBlock, ParsesMsbFirst) {
    const BitBlock b = bits("1000");
    EXPECT_EQ(b.width(), 4);
    EXPECT_EQ(b.value(), 8U);
    EXPECT_EQ(b.at(1), 1);
    EXPECT_EQ(b.at(4), 0);
    EXPECT_EQ(b.to_string(), "1000");
}

TEST(BitBlock, RejectsMalformedInput) {
    EXPECT_THROW(bits("10a1"), configuration_error);
    EXPECT_THROW(bits(""), configuration_error);
    EXPECT_THROW(BitBlock::parse("101", 8), configuration_error);
    EXPECT_THROW(BitBlock(4, 16), configuration_error);
    EXPECT_THROW((void)bits("1010").at(5), configuration_error);
}

TEST(Permute, P10Vector) {
    EXPECT_EQ(vqaa::permute(bits("1010000010"), sdes::tables::p10), bits("1000001100"));
}

TEST(Permute, P10MatchesTableWalk) {
    // Independent walk: output position i takes input position p10[i].
    std::mt19937 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint32_t v = rng() % 1024;
        std::uint32_t expect = 0;
        for (int src : sdes::tables::p10) expect = (expect << 1) | ((v >> (10 - src)) & 1U);
        EXPECT_EQ(vqaa::permute(BitBlock(10, v), sdes::tables::p10).value(), expect);
    }
}

TEST(Permute, IpInverseIsIdentity) {
    for (std::uint32_t v = 0; v < 256; ++v) {
        const BitBlock b(8, v);
        EXPECT_EQ(vqaa::permute(vqaa::permute(b, sdes::tables::ip), sdes::tables::ip_inverse), b);
        EXPECT_EQ(vqaa::permute(vqaa::permute(b, sdes::tables::ip_inverse), sdes::tables::ip), b);
    }
}

TEST(Permute, ExpandOfZero) {
    EXPECT_EQ(vqaa::permute(bits("0000"), sdes::tables::expand_permute), bits("00000000"));
}

TEST(Permute, OutOfRangeEntryIsConfigurationError) {
    const std::array<int, 2> bad{1, 5};
    EXPECT_THROW(vqaa::permute(bits("1010"), bad), configuration_error);
    const std::array<int, 1> zero{0};
    EXPECT_THROW(vqaa::permute(bits("1010"), zero), configuration_error);
}

TEST(RotateHalves, Vectors) {
    EXPECT_EQ(sdes::rotate_halves(bits("1000001100"), 1), bits("0000111000"));
    EXPECT_EQ(sdes::rotate_halves(bits("0000000000"), 1), bits("0000000000"));
    EXPECT_THROW(sdes::rotate_halves(bits("0000000000"), 3), configuration_error);
    EXPECT_THROW(sdes::rotate_halves(bits("00000000"), 1), configuration_error);
}

TEST(RotateHalves, PeriodFive) {
    for (std::uint32_t v = 0; v < 1024; ++v) {
        BitBlock b(10, v);
        for (int i = 0; i < 5; ++i) b = sdes::rotate_halves(b, 1);
        EXPECT_EQ(b.value(), v);
    }
}

TEST(KeySchedule, Vectors) {
    auto k = sdes::key_schedule(bits("1010000010"));
    EXPECT_EQ(k.k1, bits("10100100"));
    EXPECT_EQ(k.k2, bits("01000011"));
    k = sdes::key_schedule(bits("0000000000"));
    EXPECT_EQ(k.k1, bits("00000000"));
    EXPECT_EQ(k.k2, bits("00000000"));
    k = sdes::key_schedule(bits("1111111111"));
    EXPECT_EQ(k.k1, bits("11111111"));
    EXPECT_EQ(k.k2, bits("11111111"));
}

TEST(KeySchedule, MatchesReferenceForAllKeys) {
    for (std::uint32_t key = 0; key < 1024; ++key) {
        const auto ours = sdes::key_schedule(BitBlock(10, key));
        const auto ref = reference_sdes::subkeys(key);
        EXPECT_EQ(ours.k1.value(), reference_sdes::from_bits8(ref.k1)) << key;
        EXPECT_EQ(ours.k2.value(), reference_sdes::from_bits8(ref.k2)) << key;
        EXPECT_EQ(ours, sdes::key_schedule(BitBlock(10, key)));
    }
}

TEST(SBox, Lookups) {
    EXPECT_EQ(sdes::sbox_lookup(bits("0000"), sdes::SBox::s0), bits("01"));
    EXPECT_EQ(sdes::sbox_lookup(bits("0000"), sdes::SBox::s1), bits("00"));
    EXPECT_EQ(sdes::sbox_lookup(bits("1111"), sdes::SBox::s0), bits("10"));
    // row from bits 1,4 = 01, column from bits 2,3 = 00 -> S0[1][0] = 3
    EXPECT_EQ(sdes::sbox_lookup(bits("0001"), sdes::SBox::s0), bits("11"));
    // row 00, column 10 -> S1[0][2] = 2
    EXPECT_EQ(sdes::sbox_lookup(bits("0100"), sdes::SBox::s1), bits("10"));
}

TEST(FeistelF, Vectors) {
    EXPECT_EQ(sdes::feistel_f(bits("0000"), bits("00000000")), bits("1000"));
    EXPECT_EQ(sdes::feistel_f(bits("1000"), bits("00000000")), bits("1011"));
}

TEST(FeistelF, MatchesReferenceExhaustively) {
    for (std::uint32_t r = 0; r < 16; ++r) {
        for (std::uint32_t k = 0; k < 256; ++k) {
            const BitBlock out = sdes::feistel_f(BitBlock(4, r), BitBlock(8, k));
            ASSERT_EQ(out.width(), 4);
            const auto rb = reference_sdes::to_bits8(r);
            const auto ref = reference_sdes::round_f({rb[4], rb[5], rb[6], rb[7]},
                                                     reference_sdes::to_bits8(k));
            EXPECT_EQ(out.value(), static_cast<std::uint32_t>(ref[0] * 8 + ref[1] * 4 + ref[2] * 2 + ref[3]));
        }
    }
}

TEST(Fk, InjectedRoundFunctionVector) {
    const sdes::RoundFunction injected = [](const BitBlock& right, const BitBlock&) {
        EXPECT_EQ(right, BitBlock::parse("1101"));
        return BitBlock::parse("1110");
    };
    EXPECT_EQ(sdes::fk(bits("10111101"), bits("00000000"), injected), bits("01011101"));
}

TEST(Fk, ZeroVectorAndStructure) {
    EXPECT_EQ(sdes::fk(bits("00000000"), bits("00000000")), bits("10000000"));
    for (std::uint32_t b = 0; b < 256; ++b) {
        for (std::uint32_t k : {0U, 0x5AU, 0xFFU, 0x13U}) {
            const BitBlock in(8, b);
            const BitBlock out = sdes::fk(in, BitBlock(8, k));
            EXPECT_EQ(out.right_half(), in.right_half());
            EXPECT_EQ(sdes::fk(out, BitBlock(8, k)), in);
        }
    }
}

TEST(Cipher, Vectors) {
    EXPECT_EQ(sdes::encrypt(bits("00000000"), bits("0000000000")), bits("11110000"));
    EXPECT_EQ(sdes::decrypt(bits("11110000"), bits("0000000000")), bits("00000000"));
    EXPECT_EQ(sdes::decrypt(sdes::encrypt(bits("10010111"), bits("1010000010")), bits("1010000010")),
              bits("10010111"));
}

TEST(Cipher, ExhaustiveAgainstReference) {
    for (std::uint32_t key = 0; key < 1024; ++key) {
        for (std::uint32_t p = 0; p < 256; ++p) {
            const std::uint32_t c = sdes::encrypt(p, key);
            ASSERT_EQ(c, reference_sdes::encrypt(p, key)) << "p=" << p << " key=" << key;
            ASSERT_EQ(sdes::decrypt(c, key), p);
        }
    }
}

TEST(Cipher, WrongKeyFailsToDecryptSomeBlock) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint32_t k = rng() % 1024;
        std::uint32_t k2 = rng() % 1024;
        if (k2 == k) k2 = (k2 + 1) % 1024;
        bool differs = false;
        for (std::uint32_t p = 0; p < 256 && !differs; ++p) {
            differs = reference_sdes::decrypt(sdes::encrypt(p, k), k2) != p;
        }
        EXPECT_TRUE(differs) << k << " vs " << k2;
    }
}

TEST(Cipher, RejectsWrongWidths) {
    EXPECT_THROW(sdes::encrypt(bits("0000"), bits("0000000000")), configuration_error);
    EXPECT_THROW(sdes::encrypt(bits("00000000"), bits("00000000")), configuration_error);
}
