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

// Cycle-accurate model of a serialized RV32 core with scalar-crypto
// function units.
//
// Every instruction is executed as a sequence of clock ticks. Register
// operands are loaded into two shift registers (serializer1 and
// serializer2) and processed LSB-first, `serial_width` bits per tick, with
// the partial result accumulating at the top of serializer2. Serializer1
// doubles as the shift/rotate unit (chunk-sized steps plus single-bit
// steps, in either direction when left shifts are supported). The crypto
// units reuse these registers and the load/store buffer.
//
// A single-entry fetch buffer holds the next sequential word; it is filled
// while the current instruction executes. Taken control transfers flush it
// and pay `taken_branch_penalty`.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "sercrypt/golden.hpp"
#include "sercrypt/isa.hpp"

namespace sercrypt::micro {

struct CoreConfig {
  unsigned serial_width = 32;
  isa::ExtensionSet extensions;
  bool left_shift_support = true;
  unsigned mem_latency = 1;
  unsigned taken_branch_penalty = 2;
  /// Coarse shift step of serializer1 in the 32-bit data path, where there
  /// is no serialization to borrow a chunk size from.
  unsigned shift_step_32 = 8;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;

  unsigned chunks() const { return 32 / serial_width; }
  unsigned shift_step() const { return serial_width == 32 ? shift_step_32 : serial_width; }
  bool zkt() const { return extensions.contains(isa::Extension::zkt); }
};

bool is_valid_width(unsigned w);

enum class Phase : uint8_t {
  idle,
  fetch,      // instruction fetch stall (startup or slow memory)
  execute,    // chunked ALU work
  shift,      // serializer1 shift/rotate step
  mask,       // masking pass of an emulated left shift
  pad,        // constant-time padding
  unit,       // crypto function unit step
  memory,     // load/store memory access
  writeback,
  flush,      // taken-transfer refetch
};

std::string_view phase_name(Phase p);

struct SerialRegister {
  uint32_t value = 0;
  unsigned position = 0;  // chunks consumed so far

  friend bool operator==(const SerialRegister&, const SerialRegister&) = default;
};

struct FetchEntry {
  uint32_t pc = 0;
  uint32_t word = 0;
};

struct MicroState {
  golden::ArchState arch;
  SerialRegister serializer1;
  SerialRegister serializer2;
  std::optional<FetchEntry> fetch_buffer;
  uint32_t lsu_buffer = 0;
  bool carry = false;  // inter-chunk carry latch
  uint64_t cycle = 0;
  Phase phase = Phase::idle;
};

/// Called after every clock tick with the state at the end of that tick.
using CycleObserver = std::function<void(const MicroState&)>;

// --- closed-form cycle model -------------------------------------------------

enum class ShiftDirection : uint8_t { left, right };
enum class ShiftKind : uint8_t { logical, arithmetic, rotate };

/// Latency of a shift or rotate by `shamt`. With `zkt` the result is the
/// worst case over all shift amounts.
unsigned shift_latency(const CoreConfig& cfg, ShiftDirection dir, ShiftKind kind, unsigned shamt,
                       bool zkt);

/// Execute-phase cycles for `instr` given its operand values (branches
/// exclude the taken penalty). For shift_imm forms the shift amount comes
/// from the immediate.
unsigned execute_cycles(const CoreConfig& cfg, const isa::Instr& instr, uint32_t rs1,
                        uint32_t rs2);

/// Total cycles charged to the instruction at arch.pc when it executes
/// from `arch`, including frontend penalty or fetch stall.
unsigned instruction_cycles(const CoreConfig& cfg, const isa::Instr& instr,
                            const golden::ArchState& arch);

// --- data path operations -----------------------------------------------------

enum class MaskMode : uint8_t { plain, clmul_bit, xperm_byte, xperm_nibble };

struct MaskSelect {
  bool enable = true;
  uint32_t chunk = 0;
};

/// Operand mask in front of the ALU. `width` is the chunk width in bits.
/// plain passes chunk `index` of `data`; clmul_bit enables accumulation
/// when bit `index` of the multiplier `control` is set; the xperm modes
/// build chunk `index` of the result from the `data` elements addressed by
/// `control`, zero for out-of-range indices.
MaskSelect alu_mask_select(unsigned index, MaskMode mode, uint32_t control, uint32_t data,
                           unsigned width);

struct UnitResult {
  uint32_t value = 0;
  unsigned cycles = 0;
};

/// aes32* through the byte-select mask, S-box/xt2 on the LSU buffer and a
/// rotate-XOR writeback via serializer1. Always three ticks.
UnitResult aes_unit(MicroState& ms, const isa::Instr& instr, uint32_t rs1, uint32_t rs2,
                    const CycleObserver* obs = nullptr);

/// Zknh: one tick of fixed shifts, then a chunked XOR through the ALU.
UnitResult sha_unit(MicroState& ms, const CoreConfig& cfg, const isa::Instr& instr, uint32_t rs1,
                    uint32_t rs2, const CycleObserver* obs = nullptr);

/// zip, unzip, rev8, brev8: fixed wiring, one tick.
UnitResult reorder_unit(MicroState& ms, const isa::Instr& instr, uint32_t rs1,
                        const CycleObserver* obs = nullptr);

enum class LsuKind : uint8_t { load, store };

struct LsuResult {
  unsigned cycles = 0;
  golden::AccessFault fault = golden::AccessFault::none;
  uint32_t value = 0;  // loaded value, extended per mnemonic
};

/// Full-width memory transaction through the LSU buffer: chunked address
/// add, `mem_latency` memory ticks, one commit tick. Misaligned addresses
/// fault after address generation.
LsuResult lsu_access(MicroState& ms, const CoreConfig& cfg, LsuKind kind, isa::Mnemonic m,
                     uint32_t base, int32_t offset, uint32_t data,
                     const CycleObserver* obs = nullptr);

enum class FetchKind : uint8_t { sequential, redirect };

struct FetchAction {
  FetchKind kind = FetchKind::sequential;
  uint32_t pc = 0;         // address now held by the fetch buffer
  unsigned cycles = 0;     // penalty or stall ticks charged
};

/// Refills the fetch buffer for ms.arch.pc after an instruction that
/// executed for `exec_cycles`. A redirect (taken transfer) flushes and pays
/// the taken penalty; otherwise the next word was fetched in the shadow of
/// execution and only a memory latency longer than the execution stalls.
FetchAction frontend_step(MicroState& ms, const CoreConfig& cfg, unsigned exec_cycles,
                          bool redirect, const CycleObserver* obs = nullptr);

struct InstrResult {
  unsigned cycles = 0;
  golden::StepOutcome outcome;
};

/// Executes `instr` (which must sit at ms.arch.pc) including its frontend
/// action. Disabled extensions raise illegal_instruction at zero cost.
InstrResult run_instruction(MicroState& ms, const CoreConfig& cfg, const isa::Instr& instr,
                            const CycleObserver* obs = nullptr);

// --- core -------------------------------------------------------------------------

struct ClassCounter {
  uint64_t count = 0;
  uint64_t cycles = 0;
};

using ClassHistogram = std::array<ClassCounter, isa::kLatencyClassCount>;

struct RetireInfo {
  uint32_t pc = 0;
  std::optional<isa::Instr> instr;
  unsigned cycles = 0;
  golden::StepOutcome outcome;
};

/// Hook applied to the state after each executed instruction. Used to
/// build deliberately broken cores for harness self-tests.
using FaultInjector = std::function<void(const isa::Instr&, MicroState&)>;

class Core {
 public:
  explicit Core(CoreConfig cfg);

  const CoreConfig& config() const { return cfg_; }
  MicroState& state() { return ms_; }
  const MicroState& state() const { return ms_; }

  /// Clears timing state and counters; architectural state is kept.
  void reset_timing();

  /// Fetches and executes the instruction at pc. Does nothing once halted.
  RetireInfo step();

  /// Cycles the next step() would charge, without side effects; 0 when
  /// halted. Includes the startup fetch if the buffer is empty.
  uint64_t peek_cycles() const;

  bool halted() const { return halted_.has_value(); }
  std::optional<golden::HaltReason> halt_reason() const { return halted_; }

  uint64_t instret() const { return instret_; }
  uint64_t startup_cycles() const { return startup_cycles_; }
  const ClassHistogram& histogram() const { return histogram_; }

  void set_observer(CycleObserver obs) { observer_ = std::move(obs); }
  void set_fault_injector(FaultInjector f) { fault_ = std::move(f); }
  /// CSV trace, one line per executed instruction:
  /// cycle,pc,raw_word,mnemonic,cycles_charged
  void set_trace(std::ostream* out);

 private:
  CoreConfig cfg_;
  MicroState ms_;
  std::optional<golden::HaltReason> halted_;
  uint64_t instret_ = 0;
  uint64_t startup_cycles_ = 0;
  ClassHistogram histogram_{};
  CycleObserver observer_;
  FaultInjector fault_;
  std::ostream* trace_ = nullptr;
};

/// Header row of the CSV trace.
inline constexpr std::string_view kTraceHeader = "cycle,pc,raw_word,mnemonic,cycles_charged";

}  // namespace sercrypt::micro
