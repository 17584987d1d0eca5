// Copyright 2026 The sercrypt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sercrypt/assembler.hpp"
#include "sercrypt/isa.hpp"

namespace sercrypt::isa {
namespace {

TEST(Decode, NopWord) {
  const auto in = decode(0x00000013);
  ASSERT_TRUE(in);
  EXPECT_EQ(in->mnemonic, Mnemonic::addi);
  EXPECT_EQ(disassemble(*in), "addi x0, x0, 0");
}

TEST(Decode, ZeroWordIsIllegal) {
  EXPECT_FALSE(decode(0x00000000));
  EXPECT_EQ(disassemble(0x00000000u), "illegal 0x00000000");
}

TEST(Decode, CompressedRejected) {
  EXPECT_FALSE(decode(0x00000001));
  EXPECT_FALSE(decode(0x4501));
}

TEST(Decode, ReferenceEncodings) {
  for (const auto& e : oracle::reference_encodings()) {
    SCOPED_TRACE(e.text);
    const auto in = decode(e.word);
    ASSERT_TRUE(in);
    EXPECT_EQ(disassemble(*in), e.text);
    EXPECT_EQ(encode(*in), e.word);
  }
}

TEST(Encode, RoundTripNop) {
  const auto in = make(Mnemonic::addi);
  EXPECT_EQ(in.raw, 0x00000013u);
  EXPECT_EQ(decode(in.raw), in);
}

TEST(Encode, ImmediateSurvives) {
  const auto in = make(Mnemonic::addi, 1, 0, 0, 1);
  EXPECT_EQ(decode(in.raw)->imm, 1);
}

TEST(Encode, FieldRanges) {
  EXPECT_THROW(make(Mnemonic::rori, 1, 2, 0, 32), FieldRange);
  EXPECT_THROW(make(Mnemonic::addi, 1, 2, 0, 2048), FieldRange);
  EXPECT_THROW(make(Mnemonic::add, 32, 0, 0), FieldRange);
  EXPECT_THROW(make(Mnemonic::aes32esi, 1, 2, 3, 0, 4), FieldRange);
  EXPECT_THROW(make(Mnemonic::beq, 0, 1, 2, 3), FieldRange);
}

TEST(Encode, ByteSelectInTopBits) {
  const auto in = make(Mnemonic::aes32esmi, 1, 2, 3, 0, 3);
  EXPECT_EQ(in.raw >> 30, 3u);
  EXPECT_EQ(in.raw, 0xe63100b3u);
}

TEST(Encode, EveryMnemonicRoundTrips) {
  std::mt19937 rng(7);
  for (unsigned i = 0; i < kMnemonicCount; ++i) {
    const auto m = static_cast<Mnemonic>(i);
    SCOPED_TRACE(name(m));
    for (int k = 0; k < 50; ++k) {
      int32_t imm = 0;
      switch (info(m).format) {
        case Format::i:
        case Format::load:
        case Format::store:
        case Format::jalr: imm = static_cast<int32_t>(rng() % 4096) - 2048; break;
        case Format::shift_imm: imm = static_cast<int32_t>(rng() % 32); break;
        case Format::branch: imm = (static_cast<int32_t>(rng() % 4096) - 2048) * 2; break;
        case Format::jal: imm = (static_cast<int32_t>(rng() % (1 << 20)) - (1 << 19)) * 2; break;
        case Format::u: imm = static_cast<int32_t>(rng() % (1 << 20)); break;
        default: break;
      }
      const auto f = info(m).format;
      const bool has_rd = f != Format::store && f != Format::branch && f != Format::fence &&
                          f != Format::system;
      const bool has_rs1 = f != Format::u && f != Format::jal && f != Format::fence && f != Format::system;
      const bool has_rs2 = f == Format::r || f == Format::store || f == Format::branch || f == Format::aes;
      const auto in = make(m, has_rd ? rng() % 32 : 0, has_rs1 ? rng() % 32 : 0,
                           has_rs2 ? rng() % 32 : 0, imm, is_aes32(m) ? rng() % 4 : 0);
      const auto back = decode(in.raw);
      ASSERT_TRUE(back);
      EXPECT_EQ(*back, in);
    }
  }
}

TEST(Decode, RandomWordsReencode) {
  std::mt19937 rng(1);
  unsigned legal = 0;
  for (int i = 0; i < 200000; ++i) {
    const uint32_t w = rng();
    if (const auto in = decode(w)) {
      ++legal;
      ASSERT_EQ(encode(*in), w) << std::hex << w;
      ASSERT_EQ(in->raw, w);
    }
  }
  EXPECT_GT(legal, 0u);
}

TEST(Extensions, ParseList) {
  const auto s = parse_extension_list("zkn,zkt");
  EXPECT_EQ(s, ExtensionSet::zkn_zkt());
  EXPECT_EQ(s.size(), 7u);
  EXPECT_EQ(parse_extension_list(""), ExtensionSet{});
  EXPECT_THROW(parse_extension_list("zkq"), std::invalid_argument);
  EXPECT_TRUE(ExtensionSet{}.contains(Extension::rv32i));
}

TEST(Extensions, EveryMnemonicHasOne) {
  std::set<Extension> seen;
  for (unsigned i = 0; i < kMnemonicCount; ++i) seen.insert(info(static_cast<Mnemonic>(i)).extension);
  EXPECT_EQ(seen.size(), 7u);  // zkt carries no instructions
  EXPECT_FALSE(seen.count(Extension::zkt));
}

TEST(Assembler, Empty) {
  Builder b;
  EXPECT_EQ(b.assemble().bytes.size(), 0u);
}

TEST(Assembler, SingleEbreak) {
  Builder b;
  b.op(Mnemonic::ebreak);
  const auto img = b.assemble();
  EXPECT_EQ(img.bytes.size(), 4u);
  EXPECT_EQ(img.entry, kDefaultBase);
}

TEST(Assembler, BackwardBranchOffset) {
  Builder b;
  b.label("loop").op(Mnemonic::addi, 1, 1, 0, -1).branch(Mnemonic::bne, 1, 0, "loop");
  const auto img = b.assemble();
  const uint32_t w = uint32_t{img.bytes[4]} | uint32_t{img.bytes[5]} << 8 |
                     uint32_t{img.bytes[6]} << 16 | uint32_t{img.bytes[7]} << 24;
  EXPECT_EQ(decode(w)->imm, -4);
}

TEST(Assembler, Labels) {
  Builder b;
  b.j("nowhere");
  EXPECT_THROW(b.assemble(), UnresolvedLabel);
  Builder d;
  d.label("a").label("a");
  EXPECT_THROW(d.assemble(), DuplicateLabel);
}

TEST(Assembler, EntryLabel) {
  Builder b;
  b.word(0).label("entry").op(Mnemonic::ebreak);
  EXPECT_EQ(b.assemble(0x2000).entry, 0x2004u);
}

}  // namespace
}  // namespace sercrypt::isa
