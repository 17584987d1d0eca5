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

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "sercrypt/assembler.hpp"
#include "sercrypt/system.hpp"

namespace sercrypt::system {
namespace {

using isa::Mnemonic;

std::vector<uint8_t> text(std::string_view s) { return {s.begin(), s.end()}; }

micro::CoreConfig config(unsigned w, isa::ExtensionSet exts = {}) {
  micro::CoreConfig c;
  c.serial_width = w;
  c.extensions = exts;
  return c;
}

TEST(Loader, FlatBinary) {
  const std::vector<uint8_t> bytes = {0x13, 0, 0, 0};
  const auto img = load_image(bytes, ImageFormat::flat_bin);
  EXPECT_EQ(img.bytes.size(), 4u);
  EXPECT_EQ(img.base, 0x1000u);
  EXPECT_EQ(img.entry, 0x1000u);
}

TEST(Loader, FlatBinaryFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "sercrypt_loader_test.bin";
  {
    std::ofstream f(path, std::ios::binary);
    f.write("\x73\x00\x10\x00", 4);
  }
  const auto img = load_image(path, ImageFormat::flat_bin, 0x2000);
  EXPECT_EQ(img.entry, 0x2000u);
  EXPECT_EQ(img.bytes, (std::vector<uint8_t>{0x73, 0x00, 0x10, 0x00}));
  std::filesystem::remove(path);
  EXPECT_THROW(load_image(path, ImageFormat::flat_bin), LoadError);
}

TEST(Loader, HexWords) {
  const auto img = load_image(text("# program\n00000013\n0x00100073  # ebreak\n\n"), ImageFormat::hex_words);
  EXPECT_EQ(img.bytes, (std::vector<uint8_t>{0x13, 0, 0, 0, 0x73, 0, 0x10, 0}));
}

TEST(Loader, Errors) {
  try {
    load_image(text("00000013\nxyz\n"), ImageFormat::hex_words);
    FAIL();
  } catch (const MalformedHex& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(load_image(text("0013\n"), ImageFormat::hex_words), MalformedHex);
  EXPECT_THROW(load_image(text("# nothing\n"), ImageFormat::hex_words), EmptyImage);
  EXPECT_THROW(load_image(std::vector<uint8_t>{}, ImageFormat::flat_bin), EmptyImage);
  const std::vector<uint8_t> four = {0x13, 0, 0, 0};
  EXPECT_THROW(load_image(four, ImageFormat::flat_bin, 0x1002), LoadError);
  EXPECT_THROW(load_image(four, ImageFormat::flat_bin, 0x1000, 0x1004), LoadError);
}

TEST(Loader, FormatNames) {
  EXPECT_EQ(parse_format("flat-bin"), ImageFormat::flat_bin);
  EXPECT_EQ(parse_format("hex-words"), ImageFormat::hex_words);
  EXPECT_FALSE(parse_format("elf"));
}

TEST(Run, Ebreak) {
  isa::Builder b;
  b.op(Mnemonic::ebreak);
  const auto st = run(b.assemble(), config(32), 1000);
  EXPECT_EQ(st.instret, 1u);
  EXPECT_EQ(st.halt, golden::HaltReason::ebreak);
  EXPECT_EQ(st.cycles, 2u);  // startup fetch + ebreak
}

TEST(Run, CycleLimit) {
  isa::Builder b;
  b.label("l").j("l");
  const auto st = run(b.assemble(), config(8), 100);
  EXPECT_EQ(st.halt, golden::HaltReason::max_steps);
  EXPECT_LE(st.cycles, 100u);
  EXPECT_GT(st.cycles, 90u);
}

TEST(Run, TenAdds) {
  isa::Builder b;
  for (int i = 0; i < 10; ++i) b.op(Mnemonic::add, 1, 1, 1);
  b.op(Mnemonic::ebreak);
  std::ostringstream trace;
  const auto st = run(b.assemble(), config(8), 1000, &trace);
  EXPECT_EQ(st.instret, 11u);
  EXPECT_EQ(st.cycles, 10 * 4 + 1 + 1u);
  EXPECT_EQ(st.startup_cycles, 1u);
  // One header row plus one row per instruction.
  const std::string csv = trace.str();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
}

TEST(Run, HistogramAccountsForAllButStartup) {
  isa::Builder b;
  b.li(1, 0x2000).li(2, 5).label("l").op(Mnemonic::sw, 0, 1, 2, 0).op(Mnemonic::lw, 3, 1, 0, 0)
      .op(Mnemonic::sll, 3, 3, 2).op(Mnemonic::addi, 2, 2, 0, -1).branch(Mnemonic::bne, 2, 0, "l")
      .op(Mnemonic::ebreak);
  for (unsigned w : {1u, 4u, 32u}) {
    const auto st = run(b.assemble(), config(w), 100000);
    uint64_t sum = 0, count = 0;
    for (const auto& c : st.classes) {
      sum += c.cycles;
      count += c.count;
    }
    EXPECT_EQ(sum, st.cycles - st.startup_cycles);
    EXPECT_EQ(count, st.instret);
    EXPECT_GE(st.cpi, 1.0);
  }
}

TEST(Run, ConsoleAndExit) {
  isa::Builder b;
  b.li(1, golden::kMmioConsole);
  for (char ch : std::string("ok\n")) b.li(2, static_cast<uint8_t>(ch)).op(Mnemonic::sb, 0, 1, 2, 0);
  b.li(2, 3).op(Mnemonic::sw, 0, 1, 2, 4).op(Mnemonic::ebreak);
  for (unsigned w : {1u, 32u}) {
    const auto st = run(b.assemble(), config(w), 100000);
    EXPECT_EQ(st.console, "ok\n");
    EXPECT_EQ(st.halt, golden::HaltReason::ecall);
    EXPECT_EQ(st.exit_code, 3u);
  }
}

TEST(Run, Deterministic) {
  isa::Builder b;
  b.li(1, 100).label("l").op(Mnemonic::addi, 1, 1, 0, -1).branch(Mnemonic::bne, 1, 0, "l").op(Mnemonic::ebreak);
  const auto a = run(b.assemble(), config(2), 1 << 20);
  const auto c = run(b.assemble(), config(2), 1 << 20);
  EXPECT_EQ(stats_json(a), stats_json(c));
}

TEST(Stats, JsonKeys) {
  isa::Builder b;
  b.op(Mnemonic::addi, 1, 0, 0, 1).op(Mnemonic::ebreak);
  const auto st = run(b.assemble(), config(1, isa::ExtensionSet::zkn_zkt()), 1000);
  const auto j = nlohmann::json::parse(stats_json(st));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"classes", "code_size", "cpi", "cycles", "extensions",
                                            "halt", "instret", "width"}));
  EXPECT_EQ(j["width"], 1);
  EXPECT_EQ(j["extensions"].size(), 7u);
  EXPECT_EQ(j["halt"], "ebreak");
  EXPECT_EQ(j["classes"]["alu_chunked"]["count"], 1);
  EXPECT_EQ(j["classes"]["alu_chunked"]["cycles"], 32);
}

}  // namespace
}  // namespace sercrypt::system
