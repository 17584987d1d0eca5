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

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sercrypt/isa.hpp"

namespace sercrypt::golden {

/// Console output register: a store appends its low byte.
inline constexpr uint32_t kMmioConsole = 0xf000'0000;
/// Exit register: a store halts with reason ecall and the stored word as
/// exit code.
inline constexpr uint32_t kMmioExit = 0xf000'0004;

/// Sparse little-endian byte memory. Unwritten bytes read as zero.
class Memory {
 public:
  static constexpr uint32_t kPageBits = 12;
  static constexpr uint32_t kPageSize = 1u << kPageBits;

  Memory() = default;
  Memory(const Memory& other);
  Memory& operator=(const Memory& other);
  Memory(Memory&&) noexcept = default;
  Memory& operator=(Memory&&) noexcept = default;

  uint8_t load8(uint32_t addr) const;
  uint16_t load16(uint32_t addr) const;
  uint32_t load32(uint32_t addr) const;
  void store8(uint32_t addr, uint8_t v);
  void store16(uint32_t addr, uint16_t v);
  void store32(uint32_t addr, uint32_t v);

  void write(uint32_t addr, std::span<const uint8_t> bytes);
  std::vector<uint8_t> read(uint32_t addr, uint32_t len) const;

  /// True when every byte in [addr, addr+len) matches.
  bool equal_range(const Memory& other, uint32_t addr, uint32_t len) const;

 private:
  using Page = std::array<uint8_t, kPageSize>;
  const Page* find(uint32_t addr) const;
  Page& page(uint32_t addr);

  std::unordered_map<uint32_t, std::unique_ptr<Page>> pages_;
  mutable uint32_t last_index_ = ~0u;
  mutable Page* last_page_ = nullptr;
};

struct ArchState {
  uint32_t pc = 0;
  std::array<uint32_t, 32> regs{};
  Memory mem;
  std::string console;
  std::optional<uint32_t> exit_code;

  uint32_t reg(unsigned i) const { return regs[i]; }
  void set_reg(unsigned i, uint32_t v) {
    if (i != 0) regs[i] = v;
  }
};

enum class HaltReason : uint8_t {
  none,
  ebreak,
  ecall,
  illegal_instruction,
  misaligned_fetch,
  misaligned_access,
  max_steps,
};

std::string_view halt_reason_name(HaltReason r);

struct StepOutcome {
  enum class Kind : uint8_t { retired, halted };
  Kind kind = Kind::retired;
  HaltReason reason = HaltReason::none;

  static StepOutcome retired() { return {}; }
  static StepOutcome halted(HaltReason r) { return {Kind::halted, r}; }
  bool is_halt() const { return kind == Kind::halted; }

  friend bool operator==(const StepOutcome&, const StepOutcome&) = default;
};

/// True when ebreak/ecall ended execution: the instruction retired.
inline bool halt_retires(HaltReason r) {
  return r == HaltReason::ebreak || r == HaltReason::ecall;
}

/// Result of a memory access decided at the architectural level.
enum class AccessFault : uint8_t { none, misaligned, exit_requested };

/// Naturally aligned load with sign/zero extension per mnemonic.
/// Returns std::nullopt on misalignment.
std::optional<uint32_t> load(const ArchState& s, isa::Mnemonic m, uint32_t addr);

/// Naturally aligned store including the two MMIO registers.
AccessFault store(ArchState& s, isa::Mnemonic m, uint32_t addr, uint32_t value);

/// Whether a conditional branch is taken.
bool branch_taken(isa::Mnemonic m, uint32_t a, uint32_t b);

/// Executes exactly one instruction at s.pc. Instructions whose extension
/// is not in `exts` raise illegal_instruction. Trapping instructions leave
/// the state untouched; ebreak and ecall retire without advancing pc.
StepOutcome step(ArchState& s, isa::ExtensionSet exts);

/// Runs until halt or until `max_steps` instructions have retired.
struct RunResult {
  uint64_t instret = 0;
  StepOutcome outcome;
};
RunResult run(ArchState& s, isa::ExtensionSet exts, uint64_t max_steps);

}  // namespace sercrypt::golden
