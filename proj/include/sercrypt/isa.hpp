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

#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sercrypt::isa {

/// Extension subsets an instruction can belong to. Zkt carries no
/// instructions; it only changes timing.
enum class Extension : uint8_t { rv32i, zbkb, zbkx, zbkc, zkne, zknd, zknh, zkt };

inline constexpr unsigned kExtensionCount = 8;

std::string_view extension_name(Extension e);
std::optional<Extension> parse_extension(std::string_view name);

/// Set of optional extensions. RV32I is implied and never stored.
class ExtensionSet {
 public:
  constexpr ExtensionSet() = default;
  constexpr ExtensionSet(std::initializer_list<Extension> exts) {
    for (auto e : exts) insert(e);
  }

  constexpr bool contains(Extension e) const {
    return e == Extension::rv32i || (bits_ & bit(e)) != 0;
  }
  constexpr void insert(Extension e) {
    if (e != Extension::rv32i) bits_ |= bit(e);
  }
  constexpr void erase(Extension e) { bits_ &= ~bit(e); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr unsigned size() const { return std::popcount(bits_); }
  constexpr bool includes(ExtensionSet other) const {
    return (bits_ & other.bits_) == other.bits_;
  }
  constexpr uint32_t bits() const { return bits_; }

  /// Zbkb, Zbkx, Zbkc, Zkne, Zknd and Zknh.
  static constexpr ExtensionSet zkn() {
    return {Extension::zbkb, Extension::zbkx, Extension::zbkc,
            Extension::zkne, Extension::zknd, Extension::zknh};
  }
  static constexpr ExtensionSet zkn_zkt() {
    auto s = zkn();
    s.insert(Extension::zkt);
    return s;
  }

  /// Comma-separated lowercase names in canonical order, "" when empty.
  std::string to_string() const;

  friend constexpr bool operator==(ExtensionSet, ExtensionSet) = default;

 private:
  static constexpr uint32_t bit(Extension e) { return 1u << static_cast<unsigned>(e); }
  uint32_t bits_ = 0;
};

/// Parses "zbkb,zknh,zkt" style lists; "zkn" expands to the six subsets.
/// Throws std::invalid_argument on unknown names.
ExtensionSet parse_extension_list(std::string_view list);

enum class Mnemonic : uint8_t {
  // RV32I
  lui, auipc, jal, jalr,
  beq, bne, blt, bge, bltu, bgeu,
  lb, lh, lw, lbu, lhu,
  sb, sh, sw,
  addi, slti, sltiu, xori, ori, andi, slli, srli, srai,
  add, sub, sll, slt, sltu, xor_, srl, sra, or_, and_,
  fence, ecall, ebreak,
  // Zbkb
  ror, rol, rori, andn, orn, xnor, pack, packh, brev8, rev8, zip, unzip,
  // Zbkc
  clmul, clmulh,
  // Zbkx
  xperm4, xperm8,
  // Zkne
  aes32esi, aes32esmi,
  // Zknd
  aes32dsi, aes32dsmi,
  // Zknh
  sha256sig0, sha256sig1, sha256sum0, sha256sum1,
  sha512sig0h, sha512sig0l, sha512sig1h, sha512sig1l, sha512sum0r, sha512sum1r,
};

inline constexpr unsigned kMnemonicCount = static_cast<unsigned>(Mnemonic::sha512sum1r) + 1;

/// Operand layout of an instruction, which also fixes how it is printed.
enum class Format : uint8_t {
  r,         // rd, rs1, rs2
  i,         // rd, rs1, imm
  shift_imm, // rd, rs1, shamt
  unary,     // rd, rs1 (fixed rs2/imm field)
  load,      // rd, imm(rs1)
  store,     // rs2, imm(rs1)
  branch,    // rs1, rs2, offset
  u,         // rd, imm20
  jal,       // rd, offset
  jalr,      // rd, imm(rs1)
  aes,       // rd, rs1, rs2, bs
  fence,
  system,    // ecall, ebreak
};

/// Timing class used by the cycle model and statistics.
enum class LatencyClass : uint8_t {
  alu_chunked, shift, rotate, load, store, branch, jump,
  clmul, xperm, aes, sha, reorder_1cycle, fence_nop,
};

inline constexpr unsigned kLatencyClassCount = static_cast<unsigned>(LatencyClass::fence_nop) + 1;

std::string_view latency_class_name(LatencyClass c);

struct MnemonicInfo {
  std::string_view name;
  Extension extension;
  Format format;
  LatencyClass latency_class;
  bool zkt_covered;
};

const MnemonicInfo& info(Mnemonic m);
inline std::string_view name(Mnemonic m) { return info(m).name; }
std::optional<Mnemonic> parse_mnemonic(std::string_view name);

inline constexpr bool is_aes32(Mnemonic m) {
  return m == Mnemonic::aes32esi || m == Mnemonic::aes32esmi ||
         m == Mnemonic::aes32dsi || m == Mnemonic::aes32dsmi;
}

/// A decoded instruction. Fields not used by the mnemonic's format are
/// zero. `imm` is the sign-extended immediate for I/S/B/J formats, the
/// shift amount for shift_imm, the 20-bit field for U, and the raw 12-bit
/// fm/pred/succ field for fence.
struct Instr {
  Mnemonic mnemonic = Mnemonic::addi;
  uint8_t rd = 0;
  uint8_t rs1 = 0;
  uint8_t rs2 = 0;
  int32_t imm = 0;
  uint8_t bs = 0;
  uint32_t raw = 0;

  const MnemonicInfo& info() const { return isa::info(mnemonic); }

  friend bool operator==(const Instr&, const Instr&) = default;
};

/// Raised by encode() when an operand does not fit its field.
class FieldRange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Returns the instruction for a legal encoding, std::nullopt otherwise.
/// Compressed encodings (low bits != 0b11) are rejected.
std::optional<Instr> decode(uint32_t word);

/// Canonical encoding of `instr`; ignores `instr.raw`.
uint32_t encode(const Instr& instr);

/// Builds an Instr from operands and fills in `raw`. Throws FieldRange.
Instr make(Mnemonic m, unsigned rd = 0, unsigned rs1 = 0, unsigned rs2 = 0,
           int32_t imm = 0, unsigned bs = 0);

/// Text form, e.g. "addi x0, x0, 0" or "lw x5, 8(x2)".
std::string disassemble(const Instr& instr);

/// Disassembles a word, yielding "illegal 0x........" for undecodable input.
std::string disassemble(uint32_t word);

}  // namespace sercrypt::isa
