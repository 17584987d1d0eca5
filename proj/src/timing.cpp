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

// Closed-form cycle model. The ticking data path in microarch.cpp must
// agree with these formulas; tests hold the two against each other.

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "sercrypt/microarch.hpp"

namespace sercrypt::micro {

using isa::LatencyClass;
using isa::Mnemonic;

bool is_valid_width(unsigned w) {
  return w == 1 || w == 2 || w == 4 || w == 8 || w == 16 || w == 32;
}

void CoreConfig::validate() const {
  if (!is_valid_width(serial_width))
    throw std::invalid_argument(
        fmt::format("serial width {} not in {{1,2,4,8,16,32}}", serial_width));
  if (mem_latency < 1) throw std::invalid_argument("mem_latency must be >= 1");
  if (shift_step_32 == 0 || shift_step_32 > 32 || 32 % shift_step_32 != 0)
    throw std::invalid_argument(fmt::format("shift_step_32 {} must divide 32", shift_step_32));
}

namespace {

unsigned steps(unsigned amount, unsigned step) { return amount / step + amount % step; }

struct ShiftShape {
  ShiftDirection dir;
  ShiftKind kind;
};

ShiftShape shift_shape(Mnemonic m) {
  switch (m) {
    case Mnemonic::sll:
    case Mnemonic::slli: return {ShiftDirection::left, ShiftKind::logical};
    case Mnemonic::rol: return {ShiftDirection::left, ShiftKind::rotate};
    case Mnemonic::sra:
    case Mnemonic::srai: return {ShiftDirection::right, ShiftKind::arithmetic};
    case Mnemonic::ror:
    case Mnemonic::rori: return {ShiftDirection::right, ShiftKind::rotate};
    default: return {ShiftDirection::right, ShiftKind::logical};
  }
}

bool misaligned(Mnemonic m, uint32_t addr) {
  switch (m) {
    case Mnemonic::lh:
    case Mnemonic::lhu:
    case Mnemonic::sh: return (addr & 1) != 0;
    case Mnemonic::lw:
    case Mnemonic::sw: return (addr & 3) != 0;
    default: return false;
  }
}

}  // namespace

unsigned shift_latency(const CoreConfig& cfg, ShiftDirection dir, ShiftKind kind, unsigned shamt,
                       bool zkt) {
  if (zkt) {
    unsigned worst = 0;
    for (unsigned s = 0; s < 32; ++s) worst = std::max(worst, shift_latency(cfg, dir, kind, s, false));
    return worst;
  }
  shamt &= 31;
  const unsigned g = cfg.shift_step();
  if (dir == ShiftDirection::right) return steps(shamt, g) + 1;
  // Left shifts without MSB-directed steps: rotate right by the complement,
  // then clear the wrapped-around low bits in a chunked masking pass.
  const unsigned emulated = kind == ShiftKind::rotate
                                ? steps((32 - shamt) % 32, g) + 1
                                : steps(32 - shamt, g) + cfg.chunks() + 1;
  if (!cfg.left_shift_support) return emulated;
  // The bidirectional register can still take the complement route when it
  // is shorter.
  return std::min(steps(shamt, g) + 1, emulated);
}

unsigned execute_cycles(const CoreConfig& cfg, const isa::Instr& in, uint32_t rs1, uint32_t rs2) {
  const unsigned c = cfg.chunks();
  switch (in.info().latency_class) {
    case LatencyClass::alu_chunked:
    case LatencyClass::branch:
    case LatencyClass::jump:
    case LatencyClass::xperm: return c;
    case LatencyClass::shift:
    case LatencyClass::rotate: {
      const auto shape = shift_shape(in.mnemonic);
      const unsigned shamt =
          in.info().format == isa::Format::shift_imm ? static_cast<unsigned>(in.imm) : rs2 & 31;
      return shift_latency(cfg, shape.dir, shape.kind, shamt, cfg.zkt());
    }
    case LatencyClass::load:
    case LatencyClass::store: return c + cfg.mem_latency + 1;
    case LatencyClass::clmul: return 33;
    case LatencyClass::aes: return 3;
    case LatencyClass::sha: return 1 + c;
    case LatencyClass::reorder_1cycle:
    case LatencyClass::fence_nop: return 1;
  }
  (void)rs1;
  return 1;
}

unsigned instruction_cycles(const CoreConfig& cfg, const isa::Instr& in,
                            const golden::ArchState& arch) {
  if (!cfg.extensions.contains(in.info().extension)) return 0;
  const uint32_t a = arch.reg(in.rs1);
  const uint32_t b = arch.reg(in.rs2);
  const auto imm = static_cast<uint32_t>(in.imm);
  const unsigned exec = execute_cycles(cfg, in, a, b);
  const unsigned stall = cfg.mem_latency > exec ? cfg.mem_latency - exec : 0;

  switch (in.info().latency_class) {
    case LatencyClass::jump: {
      const uint32_t target = in.mnemonic == Mnemonic::jal ? arch.pc + imm : (a + imm) & ~1u;
      if (target & 3) return 0;
      return exec + cfg.taken_branch_penalty;
    }
    case LatencyClass::branch: {
      if (!golden::branch_taken(in.mnemonic, a, b)) return exec + stall;
      if ((arch.pc + imm) & 3) return exec;
      return exec + cfg.taken_branch_penalty;
    }
    case LatencyClass::load:
    case LatencyClass::store: {
      const uint32_t addr = a + imm;
      if (misaligned(in.mnemonic, addr)) return cfg.chunks();
      if (in.info().latency_class == LatencyClass::store && addr == golden::kMmioExit) return exec;
      return exec + stall;
    }
    case LatencyClass::fence_nop:
      if (in.mnemonic != Mnemonic::fence) return exec;
      return exec + stall;
    default: return exec + stall;
  }
}

}  // namespace sercrypt::micro
