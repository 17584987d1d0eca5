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

#include "sercrypt/isa.hpp"

#include <array>

#include <fmt/format.h>

namespace sercrypt::isa {

namespace {

using E = Extension;
using F = Format;
using L = LatencyClass;

// Encoding fields. For r/shift_imm/aes `hi` is funct7 (aes: funct5 at
// bits 29:25), for unary it is the fixed imm[11:0].
struct Encoding {
  uint8_t opcode;
  uint8_t funct3;
  uint16_t hi;
};

struct Entry {
  MnemonicInfo info;
  Encoding enc;
};

constexpr uint8_t kOpLui = 0x37, kOpAuipc = 0x17, kOpJal = 0x6f, kOpJalr = 0x67;
constexpr uint8_t kOpBranch = 0x63, kOpLoad = 0x03, kOpStore = 0x23;
constexpr uint8_t kOpImm = 0x13, kOp = 0x33, kOpFence = 0x0f, kOpSystem = 0x73;

// Indexed by Mnemonic; order must follow the enum.
constexpr std::array<Entry, kMnemonicCount> kTable = {{
    {{"lui", E::rv32i, F::u, L::alu_chunked, true}, {kOpLui, 0, 0}},
    {{"auipc", E::rv32i, F::u, L::alu_chunked, true}, {kOpAuipc, 0, 0}},
    {{"jal", E::rv32i, F::jal, L::jump, false}, {kOpJal, 0, 0}},
    {{"jalr", E::rv32i, F::jalr, L::jump, false}, {kOpJalr, 0, 0}},
    {{"beq", E::rv32i, F::branch, L::branch, false}, {kOpBranch, 0, 0}},
    {{"bne", E::rv32i, F::branch, L::branch, false}, {kOpBranch, 1, 0}},
    {{"blt", E::rv32i, F::branch, L::branch, false}, {kOpBranch, 4, 0}},
    {{"bge", E::rv32i, F::branch, L::branch, false}, {kOpBranch, 5, 0}},
    {{"bltu", E::rv32i, F::branch, L::branch, false}, {kOpBranch, 6, 0}},
    {{"bgeu", E::rv32i, F::branch, L::branch, false}, {kOpBranch, 7, 0}},
    {{"lb", E::rv32i, F::load, L::load, false}, {kOpLoad, 0, 0}},
    {{"lh", E::rv32i, F::load, L::load, false}, {kOpLoad, 1, 0}},
    {{"lw", E::rv32i, F::load, L::load, false}, {kOpLoad, 2, 0}},
    {{"lbu", E::rv32i, F::load, L::load, false}, {kOpLoad, 4, 0}},
    {{"lhu", E::rv32i, F::load, L::load, false}, {kOpLoad, 5, 0}},
    {{"sb", E::rv32i, F::store, L::store, false}, {kOpStore, 0, 0}},
    {{"sh", E::rv32i, F::store, L::store, false}, {kOpStore, 1, 0}},
    {{"sw", E::rv32i, F::store, L::store, false}, {kOpStore, 2, 0}},
    {{"addi", E::rv32i, F::i, L::alu_chunked, true}, {kOpImm, 0, 0}},
    {{"slti", E::rv32i, F::i, L::alu_chunked, true}, {kOpImm, 2, 0}},
    {{"sltiu", E::rv32i, F::i, L::alu_chunked, true}, {kOpImm, 3, 0}},
    {{"xori", E::rv32i, F::i, L::alu_chunked, true}, {kOpImm, 4, 0}},
    {{"ori", E::rv32i, F::i, L::alu_chunked, true}, {kOpImm, 6, 0}},
    {{"andi", E::rv32i, F::i, L::alu_chunked, true}, {kOpImm, 7, 0}},
    {{"slli", E::rv32i, F::shift_imm, L::shift, true}, {kOpImm, 1, 0x00}},
    {{"srli", E::rv32i, F::shift_imm, L::shift, true}, {kOpImm, 5, 0x00}},
    {{"srai", E::rv32i, F::shift_imm, L::shift, true}, {kOpImm, 5, 0x20}},
    {{"add", E::rv32i, F::r, L::alu_chunked, true}, {kOp, 0, 0x00}},
    {{"sub", E::rv32i, F::r, L::alu_chunked, true}, {kOp, 0, 0x20}},
    {{"sll", E::rv32i, F::r, L::shift, true}, {kOp, 1, 0x00}},
    {{"slt", E::rv32i, F::r, L::alu_chunked, true}, {kOp, 2, 0x00}},
    {{"sltu", E::rv32i, F::r, L::alu_chunked, true}, {kOp, 3, 0x00}},
    {{"xor", E::rv32i, F::r, L::alu_chunked, true}, {kOp, 4, 0x00}},
    {{"srl", E::rv32i, F::r, L::shift, true}, {kOp, 5, 0x00}},
    {{"sra", E::rv32i, F::r, L::shift, true}, {kOp, 5, 0x20}},
    {{"or", E::rv32i, F::r, L::alu_chunked, true}, {kOp, 6, 0x00}},
    {{"and", E::rv32i, F::r, L::alu_chunked, true}, {kOp, 7, 0x00}},
    {{"fence", E::rv32i, F::fence, L::fence_nop, false}, {kOpFence, 0, 0}},
    {{"ecall", E::rv32i, F::system, L::fence_nop, false}, {kOpSystem, 0, 0x000}},
    {{"ebreak", E::rv32i, F::system, L::fence_nop, false}, {kOpSystem, 0, 0x001}},
    {{"ror", E::zbkb, F::r, L::rotate, true}, {kOp, 5, 0x30}},
    {{"rol", E::zbkb, F::r, L::rotate, true}, {kOp, 1, 0x30}},
    {{"rori", E::zbkb, F::shift_imm, L::rotate, true}, {kOpImm, 5, 0x30}},
    {{"andn", E::zbkb, F::r, L::alu_chunked, true}, {kOp, 7, 0x20}},
    {{"orn", E::zbkb, F::r, L::alu_chunked, true}, {kOp, 6, 0x20}},
    {{"xnor", E::zbkb, F::r, L::alu_chunked, true}, {kOp, 4, 0x20}},
    {{"pack", E::zbkb, F::r, L::alu_chunked, true}, {kOp, 4, 0x04}},
    {{"packh", E::zbkb, F::r, L::alu_chunked, true}, {kOp, 7, 0x04}},
    {{"brev8", E::zbkb, F::unary, L::reorder_1cycle, true}, {kOpImm, 5, 0x687}},
    {{"rev8", E::zbkb, F::unary, L::reorder_1cycle, true}, {kOpImm, 5, 0x698}},
    {{"zip", E::zbkb, F::unary, L::reorder_1cycle, true}, {kOpImm, 1, 0x08f}},
    {{"unzip", E::zbkb, F::unary, L::reorder_1cycle, true}, {kOpImm, 5, 0x08f}},
    {{"clmul", E::zbkc, F::r, L::clmul, true}, {kOp, 1, 0x05}},
    {{"clmulh", E::zbkc, F::r, L::clmul, true}, {kOp, 3, 0x05}},
    {{"xperm4", E::zbkx, F::r, L::xperm, true}, {kOp, 2, 0x14}},
    {{"xperm8", E::zbkx, F::r, L::xperm, true}, {kOp, 4, 0x14}},
    {{"aes32esi", E::zkne, F::aes, L::aes, true}, {kOp, 0, 0x11}},
    {{"aes32esmi", E::zkne, F::aes, L::aes, true}, {kOp, 0, 0x13}},
    {{"aes32dsi", E::zknd, F::aes, L::aes, true}, {kOp, 0, 0x15}},
    {{"aes32dsmi", E::zknd, F::aes, L::aes, true}, {kOp, 0, 0x17}},
    {{"sha256sig0", E::zknh, F::unary, L::sha, true}, {kOpImm, 1, 0x102}},
    {{"sha256sig1", E::zknh, F::unary, L::sha, true}, {kOpImm, 1, 0x103}},
    {{"sha256sum0", E::zknh, F::unary, L::sha, true}, {kOpImm, 1, 0x100}},
    {{"sha256sum1", E::zknh, F::unary, L::sha, true}, {kOpImm, 1, 0x101}},
    {{"sha512sig0h", E::zknh, F::r, L::sha, true}, {kOp, 0, 0x2e}},
    {{"sha512sig0l", E::zknh, F::r, L::sha, true}, {kOp, 0, 0x2a}},
    {{"sha512sig1h", E::zknh, F::r, L::sha, true}, {kOp, 0, 0x2f}},
    {{"sha512sig1l", E::zknh, F::r, L::sha, true}, {kOp, 0, 0x2b}},
    {{"sha512sum0r", E::zknh, F::r, L::sha, true}, {kOp, 0, 0x28}},
    {{"sha512sum1r", E::zknh, F::r, L::sha, true}, {kOp, 0, 0x29}},
}};

constexpr bool table_is_ordered() {
  // Spot checks that catch a shifted row.
  return kTable[static_cast<unsigned>(Mnemonic::fence)].info.name == "fence" &&
         kTable[static_cast<unsigned>(Mnemonic::ror)].info.name == "ror" &&
         kTable[static_cast<unsigned>(Mnemonic::clmul)].info.name == "clmul" &&
         kTable[static_cast<unsigned>(Mnemonic::aes32esi)].info.name == "aes32esi" &&
         kTable[static_cast<unsigned>(Mnemonic::sha512sum1r)].info.name == "sha512sum1r";
}
static_assert(table_is_ordered());

constexpr int kNone = -1;

// OP (0x33) lookup keyed by funct7:funct3. AES rows are keyed with bs=0;
// the decoder masks bs off before looking them up.
struct OpTable {
  std::array<int8_t, 1024> r{};
  std::array<int8_t, 256> aes{};  // funct5:funct3
  constexpr OpTable() {
    r.fill(kNone);
    aes.fill(kNone);
    for (unsigned i = 0; i < kMnemonicCount; ++i) {
      const auto& e = kTable[i];
      if (e.enc.opcode != kOp) continue;
      if (e.info.format == F::aes)
        aes[(e.enc.hi << 3) | e.enc.funct3] = static_cast<int8_t>(i);
      else
        r[(e.enc.hi << 3) | e.enc.funct3] = static_cast<int8_t>(i);
    }
  }
};

constexpr OpTable kOpTable{};

constexpr uint32_t bits(uint32_t w, unsigned hi, unsigned lo) {
  return (w >> lo) & ((1u << (hi - lo + 1)) - 1);
}

constexpr int32_t sext(uint32_t v, unsigned width) {
  const uint32_t m = 1u << (width - 1);
  return static_cast<int32_t>((v ^ m) - m);
}

constexpr int32_t imm_i(uint32_t w) { return sext(bits(w, 31, 20), 12); }
constexpr int32_t imm_s(uint32_t w) {
  return sext((bits(w, 31, 25) << 5) | bits(w, 11, 7), 12);
}
constexpr int32_t imm_b(uint32_t w) {
  return sext((bits(w, 31, 31) << 12) | (bits(w, 7, 7) << 11) | (bits(w, 30, 25) << 5) |
                  (bits(w, 11, 8) << 1),
              13);
}
constexpr int32_t imm_j(uint32_t w) {
  return sext((bits(w, 31, 31) << 20) | (bits(w, 19, 12) << 12) | (bits(w, 20, 20) << 11) |
                  (bits(w, 30, 21) << 1),
              21);
}

Instr with(Mnemonic m, uint32_t word, unsigned rd, unsigned rs1, unsigned rs2, int32_t imm,
           unsigned bs = 0) {
  Instr i;
  i.mnemonic = m;
  i.rd = static_cast<uint8_t>(rd);
  i.rs1 = static_cast<uint8_t>(rs1);
  i.rs2 = static_cast<uint8_t>(rs2);
  i.imm = imm;
  i.bs = static_cast<uint8_t>(bs);
  i.raw = word;
  return i;
}

std::optional<Instr> decode_op_imm(uint32_t w, unsigned rd, unsigned rs1) {
  const unsigned f3 = bits(w, 14, 12);
  const unsigned imm12 = bits(w, 31, 20);
  const unsigned f7 = bits(w, 31, 25);
  const unsigned shamt = bits(w, 24, 20);
  switch (f3) {
    case 0: return with(Mnemonic::addi, w, rd, rs1, 0, imm_i(w));
    case 2: return with(Mnemonic::slti, w, rd, rs1, 0, imm_i(w));
    case 3: return with(Mnemonic::sltiu, w, rd, rs1, 0, imm_i(w));
    case 4: return with(Mnemonic::xori, w, rd, rs1, 0, imm_i(w));
    case 6: return with(Mnemonic::ori, w, rd, rs1, 0, imm_i(w));
    case 7: return with(Mnemonic::andi, w, rd, rs1, 0, imm_i(w));
    case 1:
      if (f7 == 0x00) return with(Mnemonic::slli, w, rd, rs1, 0, static_cast<int32_t>(shamt));
      switch (imm12) {
        case 0x100: return with(Mnemonic::sha256sum0, w, rd, rs1, 0, 0);
        case 0x101: return with(Mnemonic::sha256sum1, w, rd, rs1, 0, 0);
        case 0x102: return with(Mnemonic::sha256sig0, w, rd, rs1, 0, 0);
        case 0x103: return with(Mnemonic::sha256sig1, w, rd, rs1, 0, 0);
        case 0x08f: return with(Mnemonic::zip, w, rd, rs1, 0, 0);
        default: return std::nullopt;
      }
    case 5:
      if (f7 == 0x00) return with(Mnemonic::srli, w, rd, rs1, 0, static_cast<int32_t>(shamt));
      if (f7 == 0x20) return with(Mnemonic::srai, w, rd, rs1, 0, static_cast<int32_t>(shamt));
      if (f7 == 0x30) return with(Mnemonic::rori, w, rd, rs1, 0, static_cast<int32_t>(shamt));
      switch (imm12) {
        case 0x687: return with(Mnemonic::brev8, w, rd, rs1, 0, 0);
        case 0x698: return with(Mnemonic::rev8, w, rd, rs1, 0, 0);
        case 0x08f: return with(Mnemonic::unzip, w, rd, rs1, 0, 0);
        default: return std::nullopt;
      }
    default: return std::nullopt;
  }
}

void check_reg(unsigned r, const char* what) {
  if (r >= 32) throw FieldRange(fmt::format("{} register x{} out of range", what, r));
}

void check_range(const Instr& in, int64_t lo, int64_t hi, const char* what) {
  if (in.imm < lo || in.imm > hi)
    throw FieldRange(fmt::format("{}: {} {} outside [{}, {}]", name(in.mnemonic), what, in.imm,
                                 lo, hi));
}

std::string fence_set(unsigned v) {
  std::string s;
  if (v & 8) s += 'i';
  if (v & 4) s += 'o';
  if (v & 2) s += 'r';
  if (v & 1) s += 'w';
  return s.empty() ? "0" : s;
}

}  // namespace

std::string_view extension_name(Extension e) {
  static constexpr std::array<std::string_view, kExtensionCount> kNames = {
      "rv32i", "zbkb", "zbkx", "zbkc", "zkne", "zknd", "zknh", "zkt"};
  return kNames[static_cast<unsigned>(e)];
}

std::optional<Extension> parse_extension(std::string_view s) {
  for (unsigned i = 0; i < kExtensionCount; ++i) {
    auto e = static_cast<Extension>(i);
    if (extension_name(e) == s) return e;
  }
  return std::nullopt;
}

std::string ExtensionSet::to_string() const {
  std::string out;
  for (unsigned i = 1; i < kExtensionCount; ++i) {
    auto e = static_cast<Extension>(i);
    if (!contains(e)) continue;
    if (!out.empty()) out += ',';
    out += extension_name(e);
  }
  return out;
}

ExtensionSet parse_extension_list(std::string_view list) {
  ExtensionSet set;
  while (!list.empty()) {
    auto comma = list.find(',');
    auto tok = list.substr(0, comma);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    if (tok.empty()) continue;
    if (tok == "zkn") {
      for (unsigned i = 1; i <= static_cast<unsigned>(Extension::zknh); ++i)
        set.insert(static_cast<Extension>(i));
      continue;
    }
    auto e = parse_extension(tok);
    if (!e) throw std::invalid_argument(fmt::format("unknown extension '{}'", tok));
    set.insert(*e);
  }
  return set;
}

std::string_view latency_class_name(LatencyClass c) {
  static constexpr std::array<std::string_view, kLatencyClassCount> kNames = {
      "alu_chunked", "shift", "rotate", "load",  "store", "branch",         "jump",
      "clmul",       "xperm", "aes",    "sha",   "reorder_1cycle", "fence_nop"};
  return kNames[static_cast<unsigned>(c)];
}

const MnemonicInfo& info(Mnemonic m) { return kTable[static_cast<unsigned>(m)].info; }

std::optional<Mnemonic> parse_mnemonic(std::string_view s) {
  for (unsigned i = 0; i < kMnemonicCount; ++i)
    if (kTable[i].info.name == s) return static_cast<Mnemonic>(i);
  return std::nullopt;
}

std::optional<Instr> decode(uint32_t w) {
  if ((w & 3) != 3) return std::nullopt;
  const unsigned opcode = bits(w, 6, 0);
  const unsigned rd = bits(w, 11, 7);
  const unsigned f3 = bits(w, 14, 12);
  const unsigned rs1 = bits(w, 19, 15);
  const unsigned rs2 = bits(w, 24, 20);

  switch (opcode) {
    case kOpLui: return with(Mnemonic::lui, w, rd, 0, 0, static_cast<int32_t>(w >> 12));
    case kOpAuipc: return with(Mnemonic::auipc, w, rd, 0, 0, static_cast<int32_t>(w >> 12));
    case kOpJal: return with(Mnemonic::jal, w, rd, 0, 0, imm_j(w));
    case kOpJalr:
      if (f3 != 0) return std::nullopt;
      return with(Mnemonic::jalr, w, rd, rs1, 0, imm_i(w));
    case kOpBranch: {
      static constexpr std::array<int, 8> kBranch = {
          static_cast<int>(Mnemonic::beq),  static_cast<int>(Mnemonic::bne),  kNone, kNone,
          static_cast<int>(Mnemonic::blt),  static_cast<int>(Mnemonic::bge),
          static_cast<int>(Mnemonic::bltu), static_cast<int>(Mnemonic::bgeu)};
      if (kBranch[f3] == kNone) return std::nullopt;
      return with(static_cast<Mnemonic>(kBranch[f3]), w, 0, rs1, rs2, imm_b(w));
    }
    case kOpLoad: {
      static constexpr std::array<int, 8> kLoad = {
          static_cast<int>(Mnemonic::lb), static_cast<int>(Mnemonic::lh),
          static_cast<int>(Mnemonic::lw), kNone, static_cast<int>(Mnemonic::lbu),
          static_cast<int>(Mnemonic::lhu), kNone, kNone};
      if (kLoad[f3] == kNone) return std::nullopt;
      return with(static_cast<Mnemonic>(kLoad[f3]), w, rd, rs1, 0, imm_i(w));
    }
    case kOpStore: {
      static constexpr std::array<Mnemonic, 3> kStore = {Mnemonic::sb, Mnemonic::sh,
                                                         Mnemonic::sw};
      if (f3 > 2) return std::nullopt;
      return with(kStore[f3], w, 0, rs1, rs2, imm_s(w));
    }
    case kOpImm: return decode_op_imm(w, rd, rs1);
    case kOp: {
      const unsigned f7 = bits(w, 31, 25);
      int idx = kOpTable.r[(f7 << 3) | f3];
      if (idx != kNone) return with(static_cast<Mnemonic>(idx), w, rd, rs1, rs2, 0);
      idx = kOpTable.aes[(bits(w, 29, 25) << 3) | f3];
      if (idx != kNone) return with(static_cast<Mnemonic>(idx), w, rd, rs1, rs2, 0, bits(w, 31, 30));
      return std::nullopt;
    }
    case kOpFence:
      if (f3 != 0) return std::nullopt;
      return with(Mnemonic::fence, w, rd, rs1, 0, static_cast<int32_t>(bits(w, 31, 20)));
    case kOpSystem:
      if (w == 0x00000073) return with(Mnemonic::ecall, w, 0, 0, 0, 0);
      if (w == 0x00100073) return with(Mnemonic::ebreak, w, 0, 0, 0, 0);
      return std::nullopt;
    default: return std::nullopt;
  }
}

uint32_t encode(const Instr& in) {
  const auto& e = kTable[static_cast<unsigned>(in.mnemonic)];
  const auto& enc = e.enc;
  check_reg(in.rd, "rd");
  check_reg(in.rs1, "rs1");
  check_reg(in.rs2, "rs2");
  if (in.bs != 0 && e.info.format != F::aes)
    throw FieldRange(fmt::format("{}: byte select only applies to aes32*", e.info.name));

  const uint32_t rd = uint32_t{in.rd} << 7;
  const uint32_t rs1 = uint32_t{in.rs1} << 15;
  const uint32_t rs2 = uint32_t{in.rs2} << 20;
  const uint32_t f3 = uint32_t{enc.funct3} << 12;
  const uint32_t op = enc.opcode;
  const auto imm = static_cast<uint32_t>(in.imm);

  switch (e.info.format) {
    case F::r: return (uint32_t{enc.hi} << 25) | rs2 | rs1 | f3 | rd | op;
    case F::aes:
      if (in.bs > 3) throw FieldRange(fmt::format("{}: bs {} outside [0, 3]", e.info.name, in.bs));
      return (uint32_t{in.bs} << 30) | (uint32_t{enc.hi} << 25) | rs2 | rs1 | f3 | rd | op;
    case F::i:
    case F::load:
    case F::jalr:
      check_range(in, -2048, 2047, "immediate");
      return (imm << 20) | rs1 | f3 | rd | op;
    case F::shift_imm:
      check_range(in, 0, 31, "shamt");
      return (uint32_t{enc.hi} << 25) | (imm << 20) | rs1 | f3 | rd | op;
    case F::unary: return (uint32_t{enc.hi} << 20) | rs1 | f3 | rd | op;
    case F::store:
      check_range(in, -2048, 2047, "immediate");
      return (((imm >> 5) & 0x7f) << 25) | rs2 | rs1 | f3 | ((imm & 0x1f) << 7) | op;
    case F::branch:
      check_range(in, -4096, 4094, "offset");
      if (in.imm & 1) throw FieldRange(fmt::format("{}: odd offset {}", e.info.name, in.imm));
      return (((imm >> 12) & 1) << 31) | (((imm >> 5) & 0x3f) << 25) | rs2 | rs1 | f3 |
             (((imm >> 1) & 0xf) << 8) | (((imm >> 11) & 1) << 7) | op;
    case F::u:
      check_range(in, 0, 0xfffff, "upper immediate");
      return (imm << 12) | rd | op;
    case F::jal:
      check_range(in, -(1 << 20), (1 << 20) - 2, "offset");
      if (in.imm & 1) throw FieldRange(fmt::format("jal: odd offset {}", in.imm));
      return (((imm >> 20) & 1) << 31) | (((imm >> 1) & 0x3ff) << 21) |
             (((imm >> 11) & 1) << 20) | (((imm >> 12) & 0xff) << 12) | rd | op;
    case F::fence:
      check_range(in, 0, 0xfff, "fence field");
      return (imm << 20) | rs1 | f3 | rd | op;
    case F::system: return (uint32_t{enc.hi} << 20) | op;
  }
  return 0;
}

Instr make(Mnemonic m, unsigned rd, unsigned rs1, unsigned rs2, int32_t imm, unsigned bs) {
  check_reg(rd, "rd");
  check_reg(rs1, "rs1");
  check_reg(rs2, "rs2");
  if (bs > 3) throw FieldRange(fmt::format("{}: bs {} outside [0, 3]", name(m), bs));
  Instr i;
  i.mnemonic = m;
  switch (info(m).format) {
    case F::r: i.rd = rd; i.rs1 = rs1; i.rs2 = rs2; break;
    case F::aes: i.rd = rd; i.rs1 = rs1; i.rs2 = rs2; i.bs = bs; break;
    case F::i:
    case F::shift_imm:
    case F::load:
    case F::jalr: i.rd = rd; i.rs1 = rs1; i.imm = imm; break;
    case F::unary: i.rd = rd; i.rs1 = rs1; break;
    case F::store:
    case F::branch: i.rs1 = rs1; i.rs2 = rs2; i.imm = imm; break;
    case F::u:
    case F::jal: i.rd = rd; i.imm = imm; break;
    case F::fence: i.rd = rd; i.rs1 = rs1; i.imm = imm; break;
    case F::system: break;
  }
  if (info(m).format != F::aes && bs != 0)
    throw FieldRange(fmt::format("{}: byte select only applies to aes32*", name(m)));
  i.raw = encode(i);
  return i;
}

std::string disassemble(const Instr& in) {
  const auto n = name(in.mnemonic);
  switch (in.info().format) {
    case F::r: return fmt::format("{} x{}, x{}, x{}", n, in.rd, in.rs1, in.rs2);
    case F::aes: return fmt::format("{} x{}, x{}, x{}, {}", n, in.rd, in.rs1, in.rs2, in.bs);
    case F::i:
    case F::shift_imm: return fmt::format("{} x{}, x{}, {}", n, in.rd, in.rs1, in.imm);
    case F::unary: return fmt::format("{} x{}, x{}", n, in.rd, in.rs1);
    case F::load:
    case F::jalr: return fmt::format("{} x{}, {}(x{})", n, in.rd, in.imm, in.rs1);
    case F::store: return fmt::format("{} x{}, {}(x{})", n, in.rs2, in.imm, in.rs1);
    case F::branch: return fmt::format("{} x{}, x{}, {}", n, in.rs1, in.rs2, in.imm);
    case F::u: return fmt::format("{} x{}, 0x{:x}", n, in.rd, static_cast<uint32_t>(in.imm));
    case F::jal: return fmt::format("{} x{}, {}", n, in.rd, in.imm);
    case F::fence: {
      const auto f = static_cast<unsigned>(in.imm);
      return fmt::format("fence {}, {}", fence_set((f >> 4) & 0xf), fence_set(f & 0xf));
    }
    case F::system: return std::string(n);
  }
  return {};
}

std::string disassemble(uint32_t word) {
  if (auto in = decode(word)) return disassemble(*in);
  return fmt::format("illegal 0x{:08x}", word);
}

}  // namespace sercrypt::isa
