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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "json.hpp"
#include "sercrypt/cli.hpp"

namespace sercrypt::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "sercrypt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sercrypt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& body) {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << body;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream f(p);
    return {std::istreambuf_iterator<char>(f), {}};
  }

  fs::path dir_;
};

// nop; ebreak
constexpr const char* kNopHex = "00000013\n00100073\n";

TEST_F(Cli, RunSummary) {
  const auto r = invoke({"run", file("nop.hex", kNopHex), "--width", "4"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("cycles:  10"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("instret: 2"), std::string::npos);
  EXPECT_NE(r.out.find("cpi:"), std::string::npos);
}

TEST_F(Cli, RunFlatBinary) {
  const auto r = invoke({"run", file("nop.bin", std::string("\x13\0\0\0\x73\0\x10\0", 8))});
  EXPECT_EQ(r.code, kOk) << r.err;
}

TEST_F(Cli, BadWidthIsUsageError) {
  EXPECT_EQ(invoke({"run", file("nop.hex", kNopHex), "--width", "3"}).code, kUsage);
  EXPECT_EQ(invoke({"run", file("nop.hex", kNopHex), "--ext", "zkq"}).code, kUsage);
  EXPECT_EQ(invoke({"run", file("nop.hex", kNopHex), "--bogus"}).code, kUsage);
  EXPECT_EQ(invoke({"run", file("nop.hex", kNopHex), "--format", "elf"}).code, kUsage);
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
}

TEST_F(Cli, StatsJson) {
  const auto out = path("stats.json");
  const auto r = invoke({"run", file("nop.hex", kNopHex), "--width", "1", "--ext", "zkn,zkt", "--stats-json", out});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["width"], 1);
  EXPECT_EQ(j["extensions"].size(), 7u);
}

TEST_F(Cli, Trace) {
  const auto out = path("trace.csv");
  ASSERT_EQ(invoke({"run", file("nop.hex", kNopHex), "--trace", out}).code, kOk);
  EXPECT_EQ(slurp(out),
            "cycle,pc,raw_word,mnemonic,cycles_charged\n"
            "2,0x00001000,0x00000013,addi,1\n"
            "3,0x00001004,0x00100073,ebreak,1\n");
}

TEST_F(Cli, LoadErrors) {
  EXPECT_EQ(invoke({"run", path("missing.bin")}).code, kLoadError);
  EXPECT_EQ(invoke({"run", file("bad.hex", "xyz\n")}).code, kLoadError);
  EXPECT_EQ(invoke({"run", file("empty.bin", "")}).code, kLoadError);
  EXPECT_EQ(invoke({"disasm", file("bad.hex", "0013\n")}).code, kLoadError);
}

TEST_F(Cli, HaltExitCodes) {
  // addi x1, x0, 0xf00 ; slli x1, x1, 20 ; addi x2, x0, code ; sw x2, 4(x1)
  auto exit_prog = [](int code) {
    return std::string("f0000093\n01409093\n") +
           fmt::format("{:08x}", 0x00000113u | static_cast<uint32_t>(code) << 20) + "\n0020a223\n";
  };
  EXPECT_EQ(invoke({"run", file("exit0.hex", exit_prog(0))}).code, kOk);
  EXPECT_EQ(invoke({"run", file("exit5.hex", exit_prog(5))}).code, kFailed);
  // illegal word
  EXPECT_EQ(invoke({"run", file("ill.hex", "00000000\n")}).code, kTrap);
  // aes32esi without the extension
  EXPECT_EQ(invoke({"run", file("aes.hex", "223100b3\n00100073\n")}).code, kTrap);
  EXPECT_EQ(invoke({"run", file("aes.hex", "223100b3\n00100073\n"), "--ext", "zkne"}).code, kOk);
  // j . with a cycle limit
  EXPECT_EQ(invoke({"run", file("loop.hex", "0000006f\n"), "--max-cycles", "50"}).code, kFailed);
}

TEST_F(Cli, Cosim) {
  const auto json = path("cosim.jsonl");
  const auto r = invoke({"cosim", "--seed", "1", "--programs", "100", "--widths", "1,4,32", "--json", json});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("cells: 300  pass: 300  fail: 0"), std::string::npos) << r.out;
  const auto first = slurp(json);
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 300);
  ASSERT_EQ(invoke({"cosim", "--seed", "1", "--programs", "100", "--widths", "1,4,32", "--json", json}).code, kOk);
  EXPECT_EQ(slurp(json), first);
  EXPECT_EQ(invoke({"cosim", "--programs", "0"}).code, kUsage);
  EXPECT_EQ(invoke({"cosim", "--widths", "5"}).code, kUsage);
}

TEST_F(Cli, Bench) {
  const auto json = path("bench.json");
  const auto r = invoke({"bench", "--suite", "aes128", "--widths", "1,32", "--json", json});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(slurp(json)).size(), 4u);
  EXPECT_EQ(invoke({"bench", "--suite", "des"}).code, kUsage);
  EXPECT_EQ(invoke({"bench", "--suite", "aes128", "--ext-presets", "zkq"}).code, kUsage);
}

TEST_F(Cli, Audit) {
  const auto r = invoke({"audit-ct", "--width", "1", "--ext", "zkn,zkt", "--trials", "256"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(invoke({"audit-ct", "--width", "1", "--ext", "zkn"}).code, kFailed);
}

TEST_F(Cli, Disasm) {
  const auto r = invoke({"disasm", file("nop.hex", kNopHex)});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "addi x0, x0, 0\nebreak\n");
}

}  // namespace
}  // namespace sercrypt::cli
