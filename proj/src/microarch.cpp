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

#include "sercrypt/microarch.hpp"

#include <bit>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "sercrypt/primitives.hpp"

namespace sercrypt::micro {

using golden::HaltReason;
using golden::StepOutcome;
using isa::LatencyClass;
using isa::Mnemonic;

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::idle: return "idle";
    case Phase::fetch: return "fetch";
    case Phase::execute: return "execute";
    case Phase::shift: return "shift";
    case Phase::mask: return "mask";
    case Phase::pad: return "pad";
    case Phase::unit: return "unit";
    case Phase::memory: return "memory";
    case Phase::writeback: return "writeback";
    case Phase::flush: return "flush";
  }
  return "idle";
}

namespace {

class Clock {
 public:
  Clock(MicroState& ms, const CycleObserver* obs) : ms_(ms), obs_(obs) {}

  void tick(Phase p) {
    ms_.phase = p;
    ++ms_.cycle;
    ++count_;
    if (obs_ && *obs_) (*obs_)(ms_);
  }
  unsigned count() const { return count_; }

 private:
  MicroState& ms_;
  const CycleObserver* obs_;
  unsigned count_ = 0;
};

constexpr uint32_t low_mask(unsigned w) { return w >= 32 ? ~0u : (1u << w) - 1; }

// Moves one result chunk into the top of serializer2 while both
// serializers advance towards the LSB.
void advance(MicroState& ms, unsigned w, uint32_t result_chunk) {
  ms.serializer1.value >>= w;
  ++ms.serializer1.position;
  ms.serializer2.value = (ms.serializer2.value >> w) | (result_chunk << (32 - w));
  ++ms.serializer2.position;
}

enum class AluOp : uint8_t { add, sub, and_, or_, xor_, andn, orn, xnor };

struct AluOut {
  uint32_t value = 0;
  bool carry = false;      // carry out of the last chunk
  bool less_signed = false;
  bool zero = true;
};

// Chunk loop: LSB-first, one chunk per tick, carry latched
// between chunks. In the 32-bit data path the operands bypass the
// serializers and the loop runs once.
AluOut serial_alu(MicroState& ms, const CoreConfig& cfg, Clock& clk, AluOp op, uint32_t a,
                  uint32_t b) {
  const unsigned w = cfg.serial_width;
  const unsigned chunks = cfg.chunks();
  const uint32_t mask = low_mask(w);
  const bool serial = w < 32;
  AluOut out;
  ms.carry = op == AluOp::sub;
  if (serial) {
    ms.serializer1 = {a, 0};
    ms.serializer2 = {b, 0};
  }
  for (unsigned k = 0; k < chunks; ++k) {
    const uint32_t ca = serial ? ms.serializer1.value & mask : a;
    const uint32_t cb = serial ? ms.serializer2.value & mask : b;
    uint32_t r = 0;
    switch (op) {
      case AluOp::add:
      case AluOp::sub: {
        const uint64_t rhs = op == AluOp::sub ? (~cb & mask) : cb;
        const uint64_t sum = uint64_t{ca} + rhs + (ms.carry ? 1 : 0);
        r = static_cast<uint32_t>(sum) & mask;
        ms.carry = (sum >> w) & 1;
        break;
      }
      case AluOp::and_: r = ca & cb; break;
      case AluOp::or_: r = ca | cb; break;
      case AluOp::xor_: r = ca ^ cb; break;
      case AluOp::andn: r = ca & ~cb & mask; break;
      case AluOp::orn: r = (ca | ~cb) & mask; break;
      case AluOp::xnor: r = ~(ca ^ cb) & mask; break;
    }
    out.zero = out.zero && r == 0;
    if (k + 1 == chunks) {
      const bool sa = (ca >> (w - 1)) & 1;
      const bool sb = (cb >> (w - 1)) & 1;
      const bool sr = (r >> (w - 1)) & 1;
      out.less_signed = sa != sb ? sa : sr;
    }
    if (serial)
      advance(ms, w, r);
    else
      out.value = r;
    clk.tick(Phase::execute);
  }
  if (serial) out.value = ms.serializer2.value;
  out.carry = ms.carry;
  return out;
}

// pack/packh: a fixed-position mux in front of the ALU; each tick places one
// chunk of the selected halfwords/bytes.
uint32_t serial_pack(MicroState& ms, const CoreConfig& cfg, Clock& clk, Mnemonic m, uint32_t a,
                     uint32_t b) {
  const unsigned w = cfg.serial_width;
  auto source_bit = [&](unsigned i) -> uint32_t {
    if (m == Mnemonic::pack) return i < 16 ? (a >> i) & 1 : (b >> (i - 16)) & 1;
    if (i < 8) return (a >> i) & 1;
    if (i < 16) return (b >> (i - 8)) & 1;
    return 0;
  };
  uint32_t value = 0;
  if (w < 32) {
    ms.serializer1 = {a, 0};
    ms.serializer2 = {b, 0};
  }
  for (unsigned k = 0; k < cfg.chunks(); ++k) {
    uint32_t chunk = 0;
    for (unsigned bit = 0; bit < w; ++bit) chunk |= source_bit(k * w + bit) << bit;
    if (w < 32)
      advance(ms, w, chunk);
    else
      value = chunk;
    clk.tick(Phase::execute);
  }
  return w < 32 ? ms.serializer2.value : value;
}

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

uint32_t step_right(uint32_t v, ShiftKind kind, unsigned n) {
  switch (kind) {
    case ShiftKind::rotate: return std::rotr(v, static_cast<int>(n));
    case ShiftKind::arithmetic:
      return static_cast<uint32_t>(static_cast<int32_t>(v) >> (n >= 32 ? 31 : n));
    case ShiftKind::logical: return n >= 32 ? 0 : v >> n;
  }
  return v;
}

uint32_t step_left(uint32_t v, ShiftKind kind, unsigned n) {
  if (kind == ShiftKind::rotate) return std::rotl(v, static_cast<int>(n));
  return n >= 32 ? 0 : v << n;
}

// Serializer1 as a bidirectional shift register: `amount / step` coarse
// steps followed by `amount % step` single-bit steps, one per tick.
uint32_t serial_shift(MicroState& ms, const CoreConfig& cfg, Clock& clk, Mnemonic m, uint32_t a,
                      unsigned shamt) {
  const auto shape = shift_shape(m);
  const unsigned g = cfg.shift_step();
  shamt &= 31;
  ms.serializer1 = {a, 0};
  auto& v = ms.serializer1.value;

  auto run = [&](bool left, ShiftKind kind, unsigned amount) {
    for (unsigned i = 0; i < amount / g; ++i) {
      v = left ? step_left(v, kind, g) : step_right(v, kind, g);
      ++ms.serializer1.position;
      clk.tick(Phase::shift);
    }
    for (unsigned i = 0; i < amount % g; ++i) {
      v = left ? step_left(v, kind, 1) : step_right(v, kind, 1);
      clk.tick(Phase::shift);
    }
  };

  const bool rotate = shape.kind == ShiftKind::rotate;
  const unsigned direct_ticks = shamt / g + shamt % g;
  const unsigned complement = rotate ? (32 - shamt) % 32 : 32 - shamt;
  const unsigned complement_ticks =
      complement / g + complement % g + (rotate ? 0 : cfg.chunks());

  if (shape.dir == ShiftDirection::right) {
    run(false, shape.kind, shamt);
  } else if (cfg.left_shift_support && direct_ticks <= complement_ticks) {
    run(true, shape.kind, shamt);
  } else if (rotate) {
    run(false, ShiftKind::rotate, (32 - shamt) % 32);
  } else {
    run(false, ShiftKind::rotate, 32 - shamt);
    // Clear the bits that wrapped around, one chunk per tick.
    const unsigned w = cfg.serial_width;
    for (unsigned k = 0; k < cfg.chunks(); ++k) {
      const uint32_t chunk_bits = low_mask(w) << (k * w);
      const uint32_t keep = shamt >= 32 ? 0 : ~low_mask(shamt);
      v &= ~chunk_bits | keep;
      clk.tick(Phase::mask);
    }
  }

  if (cfg.zkt()) {
    const unsigned target = shift_latency(cfg, shape.dir, shape.kind, 0, true);
    while (clk.count() + 1 < target) clk.tick(Phase::pad);
  }
  clk.tick(Phase::writeback);
  return v;
}

// Bit-serial carry-less multiply: the mask enables accumulation of the
// multiplicand into the high half whenever the current multiplier bit is
// set; the 64-bit accumulator then shifts right one bit.
uint32_t serial_clmul(MicroState& ms, const CoreConfig& cfg, Clock& clk, bool high, uint32_t a,
                      uint32_t b) {
  uint32_t& hi = ms.serializer1.value;
  uint32_t& lo = cfg.serial_width < 32 ? ms.serializer2.value : ms.lsu_buffer;
  ms.serializer1.position = 0;
  hi = 0;
  lo = 0;
  for (unsigned i = 0; i < 32; ++i) {
    if (alu_mask_select(i, MaskMode::clmul_bit, b, a, 1).enable) hi ^= a;
    lo = (lo >> 1) | (hi << 31);
    hi >>= 1;
    ++ms.serializer1.position;
    clk.tick(Phase::unit);
  }
  clk.tick(Phase::writeback);
  return high ? hi : lo;
}

uint32_t serial_xperm(MicroState& ms, const CoreConfig& cfg, Clock& clk, Mnemonic m, uint32_t a,
                      uint32_t b) {
  const unsigned w = cfg.serial_width;
  const auto mode = m == Mnemonic::xperm4 ? MaskMode::xperm_nibble : MaskMode::xperm_byte;
  uint32_t value = 0;
  if (w < 32) {
    ms.serializer1 = {a, 0};
    ms.serializer2 = {b, 0};
  }
  for (unsigned k = 0; k < cfg.chunks(); ++k) {
    const uint32_t chunk = alu_mask_select(k, mode, b, a, w).chunk;
    if (w < 32)
      advance(ms, w, chunk);
    else
      value = chunk;
    clk.tick(Phase::execute);
  }
  return w < 32 ? ms.serializer2.value : value;
}

// Fixed-shift terms of the Zknh instructions: result = XOR of all terms.
struct ShaTerm {
  enum Source : uint8_t { rs1, rs2 } source;
  enum Op : uint8_t { ror, shr, shl } op;
  uint8_t amount;
};

struct ShaShape {
  std::array<ShaTerm, 6> terms;
  unsigned count;
};

constexpr ShaTerm t(ShaTerm::Source s, ShaTerm::Op op, uint8_t n) { return {s, op, n}; }

ShaShape sha_shape(Mnemonic m) {
  using S = ShaTerm;
  switch (m) {
    case Mnemonic::sha256sig0: return {{t(S::rs1, S::ror, 7), t(S::rs1, S::ror, 18), t(S::rs1, S::shr, 3)}, 3};
    case Mnemonic::sha256sig1: return {{t(S::rs1, S::ror, 17), t(S::rs1, S::ror, 19), t(S::rs1, S::shr, 10)}, 3};
    case Mnemonic::sha256sum0: return {{t(S::rs1, S::ror, 2), t(S::rs1, S::ror, 13), t(S::rs1, S::ror, 22)}, 3};
    case Mnemonic::sha256sum1: return {{t(S::rs1, S::ror, 6), t(S::rs1, S::ror, 11), t(S::rs1, S::ror, 25)}, 3};
    case Mnemonic::sha512sig0h:
      return {{t(S::rs1, S::shr, 1), t(S::rs1, S::shr, 7), t(S::rs1, S::shr, 8),
               t(S::rs2, S::shl, 31), t(S::rs2, S::shl, 24)}, 5};
    case Mnemonic::sha512sig0l:
      return {{t(S::rs1, S::shr, 1), t(S::rs1, S::shr, 7), t(S::rs1, S::shr, 8),
               t(S::rs2, S::shl, 31), t(S::rs2, S::shl, 25), t(S::rs2, S::shl, 24)}, 6};
    case Mnemonic::sha512sig1h:
      return {{t(S::rs1, S::shl, 3), t(S::rs1, S::shr, 6), t(S::rs1, S::shr, 19),
               t(S::rs2, S::shr, 29), t(S::rs2, S::shl, 13)}, 5};
    case Mnemonic::sha512sig1l:
      return {{t(S::rs1, S::shl, 3), t(S::rs1, S::shr, 6), t(S::rs1, S::shr, 19),
               t(S::rs2, S::shr, 29), t(S::rs2, S::shl, 26), t(S::rs2, S::shl, 13)}, 6};
    case Mnemonic::sha512sum0r:
      return {{t(S::rs1, S::shl, 25), t(S::rs1, S::shl, 30), t(S::rs1, S::shr, 28),
               t(S::rs2, S::shr, 7), t(S::rs2, S::shr, 2), t(S::rs2, S::shl, 4)}, 6};
    case Mnemonic::sha512sum1r:
      return {{t(S::rs1, S::shl, 23), t(S::rs1, S::shr, 14), t(S::rs1, S::shr, 18),
               t(S::rs2, S::shr, 9), t(S::rs2, S::shl, 18), t(S::rs2, S::shl, 14)}, 6};
    default: return {{}, 0};
  }
}

// Bit permutations of the reorder unit: result bit i = source bit map[i].
using BitMap = std::array<uint8_t, 32>;

constexpr BitMap make_map(Mnemonic m) {
  BitMap map{};
  for (unsigned i = 0; i < 32; ++i) {
    switch (m) {
      case Mnemonic::rev8: map[i] = static_cast<uint8_t>((3 - i / 8) * 8 + i % 8); break;
      case Mnemonic::brev8: map[i] = static_cast<uint8_t>((i / 8) * 8 + 7 - i % 8); break;
      case Mnemonic::zip: map[i] = static_cast<uint8_t>(i % 2 == 0 ? i / 2 : i / 2 + 16); break;
      case Mnemonic::unzip: map[i] = static_cast<uint8_t>(i < 16 ? 2 * i : 2 * (i - 16) + 1); break;
      default: map[i] = static_cast<uint8_t>(i); break;
    }
  }
  return map;
}

constexpr BitMap kRev8Map = make_map(Mnemonic::rev8);
constexpr BitMap kBrev8Map = make_map(Mnemonic::brev8);
constexpr BitMap kZipMap = make_map(Mnemonic::zip);
constexpr BitMap kUnzipMap = make_map(Mnemonic::unzip);

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

MaskSelect alu_mask_select(unsigned index, MaskMode mode, uint32_t control, uint32_t data,
                           unsigned width) {
  switch (mode) {
    case MaskMode::plain:
      if (width >= 32) return {true, data};
      return {true, (data >> (index * width)) & low_mask(width)};
    case MaskMode::clmul_bit: return {((control >> index) & 1) != 0, data};
    case MaskMode::xperm_byte:
    case MaskMode::xperm_nibble: {
      const unsigned esize = mode == MaskMode::xperm_byte ? 8 : 4;
      const unsigned count = 32 / esize;
      const uint32_t emask = low_mask(esize);
      uint32_t chunk = 0;
      for (unsigned bit = 0; bit < width; ++bit) {
        const unsigned pos = index * width + bit;
        const uint32_t sel = (control >> ((pos / esize) * esize)) & emask;
        if (sel < count) chunk |= ((data >> (sel * esize + pos % esize)) & 1) << bit;
      }
      return {true, chunk};
    }
  }
  return {};
}

UnitResult aes_unit(MicroState& ms, const isa::Instr& in, uint32_t rs1, uint32_t rs2,
                    const CycleObserver* obs) {
  Clock clk(ms, obs);
  const bool decrypt = in.mnemonic == Mnemonic::aes32dsi || in.mnemonic == Mnemonic::aes32dsmi;
  const bool middle = in.mnemonic == Mnemonic::aes32esmi || in.mnemonic == Mnemonic::aes32dsmi;

  // Byte select through the operand mask into the LSU buffer.
  ms.lsu_buffer = alu_mask_select(in.bs, MaskMode::plain, 0, rs2, 8).chunk;
  clk.tick(Phase::unit);

  // S-box, then xt2 chain for the MixColumns column.
  const auto b = static_cast<uint8_t>(ms.lsu_buffer);
  const uint8_t s = decrypt ? golden::aes_sbox_inv(b) : golden::aes_sbox_fwd(b);
  uint32_t column = s;
  if (middle) {
    const uint8_t x2 = golden::xt2(s);
    if (!decrypt) {
      column = uint32_t{x2} | (uint32_t{s} << 8) | (uint32_t{s} << 16) |
               (uint32_t{static_cast<uint8_t>(x2 ^ s)} << 24);
    } else {
      const uint8_t x4 = golden::xt2(x2);
      const uint8_t x8 = golden::xt2(x4);
      const uint8_t e = x8 ^ x4 ^ x2;
      const uint8_t n9 = x8 ^ s;
      const uint8_t d = x8 ^ x4 ^ s;
      const uint8_t bb = x8 ^ x2 ^ s;
      column = uint32_t{e} | (uint32_t{n9} << 8) | (uint32_t{d} << 16) | (uint32_t{bb} << 24);
    }
  }
  ms.lsu_buffer = column;
  clk.tick(Phase::unit);

  // Rotation in serializer1, XOR with rs1 on the way to the register file.
  ms.serializer1 = {std::rotl(ms.lsu_buffer, static_cast<int>(8 * in.bs)), 0};
  const uint32_t value = rs1 ^ ms.serializer1.value;
  clk.tick(Phase::writeback);
  return {value, clk.count()};
}

UnitResult sha_unit(MicroState& ms, const CoreConfig& cfg, const isa::Instr& in, uint32_t rs1,
                    uint32_t rs2, const CycleObserver* obs) {
  Clock clk(ms, obs);
  const auto shape = sha_shape(in.mnemonic);
  std::array<uint32_t, 6> terms{};
  for (unsigned i = 0; i < shape.count; ++i) {
    const auto& term = shape.terms[i];
    const uint32_t src = term.source == ShaTerm::rs1 ? rs1 : rs2;
    switch (term.op) {
      case ShaTerm::ror: terms[i] = std::rotr(src, term.amount); break;
      case ShaTerm::shr: terms[i] = src >> term.amount; break;
      case ShaTerm::shl: terms[i] = src << term.amount; break;
    }
  }
  clk.tick(Phase::unit);

  const unsigned w = cfg.serial_width;
  const uint32_t mask = low_mask(w);
  uint32_t value = 0;
  if (w < 32) ms.serializer2 = {0, 0};
  for (unsigned k = 0; k < cfg.chunks(); ++k) {
    uint32_t chunk = 0;
    for (unsigned i = 0; i < shape.count; ++i)
      chunk ^= w < 32 ? (terms[i] >> (k * w)) & mask : terms[i];
    if (w < 32) {
      ms.serializer2.value = (ms.serializer2.value >> w) | (chunk << (32 - w));
      ++ms.serializer2.position;
    } else {
      value = chunk;
    }
    clk.tick(Phase::execute);
  }
  return {w < 32 ? ms.serializer2.value : value, clk.count()};
}

UnitResult reorder_unit(MicroState& ms, const isa::Instr& in, uint32_t rs1,
                        const CycleObserver* obs) {
  Clock clk(ms, obs);
  const BitMap* map = nullptr;
  switch (in.mnemonic) {
    case Mnemonic::rev8: map = &kRev8Map; break;
    case Mnemonic::brev8: map = &kBrev8Map; break;
    case Mnemonic::zip: map = &kZipMap; break;
    case Mnemonic::unzip: map = &kUnzipMap; break;
    default: break;
  }
  uint32_t value = rs1;
  if (map) {
    value = 0;
    for (unsigned i = 0; i < 32; ++i) value |= ((rs1 >> (*map)[i]) & 1) << i;
  }
  clk.tick(Phase::writeback);
  return {value, clk.count()};
}

LsuResult lsu_access(MicroState& ms, const CoreConfig& cfg, LsuKind kind, Mnemonic m,
                     uint32_t base, int32_t offset, uint32_t data, const CycleObserver* obs) {
  Clock clk(ms, obs);
  LsuResult r;
  const uint32_t addr = serial_alu(ms, cfg, clk, AluOp::add, base, static_cast<uint32_t>(offset)).value;
  if (misaligned(m, addr)) {
    r.cycles = clk.count();
    r.fault = golden::AccessFault::misaligned;
    return r;
  }

  ms.lsu_buffer = kind == LsuKind::load ? ms.arch.mem.load32(addr & ~3u) : data;
  for (unsigned i = 0; i < cfg.mem_latency; ++i) clk.tick(Phase::memory);

  if (kind == LsuKind::load) {
    const unsigned lane = 8 * (addr & 3);
    const uint32_t word = ms.lsu_buffer;
    switch (m) {
      case Mnemonic::lb: r.value = static_cast<uint32_t>(static_cast<int8_t>(word >> lane)); break;
      case Mnemonic::lbu: r.value = (word >> lane) & 0xff; break;
      case Mnemonic::lh: r.value = static_cast<uint32_t>(static_cast<int16_t>(word >> lane)); break;
      case Mnemonic::lhu: r.value = (word >> lane) & 0xffff; break;
      default: r.value = word; break;
    }
  } else {
    r.fault = golden::store(ms.arch, m, addr, ms.lsu_buffer);
  }
  clk.tick(Phase::writeback);
  r.cycles = clk.count();
  return r;
}

FetchAction frontend_step(MicroState& ms, const CoreConfig& cfg, unsigned exec_cycles,
                          bool redirect, const CycleObserver* obs) {
  Clock clk(ms, obs);
  FetchAction action;
  action.pc = ms.arch.pc;
  if (redirect) {
    action.kind = FetchKind::redirect;
    ms.fetch_buffer.reset();
    for (unsigned i = 0; i < cfg.taken_branch_penalty; ++i) clk.tick(Phase::flush);
  } else {
    for (unsigned i = exec_cycles; i < cfg.mem_latency; ++i) clk.tick(Phase::fetch);
  }
  ms.fetch_buffer = FetchEntry{action.pc, ms.arch.mem.load32(action.pc)};
  action.cycles = clk.count();
  return action;
}

InstrResult run_instruction(MicroState& ms, const CoreConfig& cfg, const isa::Instr& in,
                            const CycleObserver* obs) {
  if (!cfg.extensions.contains(in.info().extension))
    return {0, StepOutcome::halted(HaltReason::illegal_instruction)};

  Clock clk(ms, obs);
  auto& s = ms.arch;
  const uint32_t a = s.reg(in.rs1);
  const uint32_t b = s.reg(in.rs2);
  const auto imm = static_cast<uint32_t>(in.imm);
  const uint32_t next = s.pc + 4;
  bool redirect = false;
  unsigned unit_cycles = 0;

  auto retire = [&](uint32_t value) {
    s.set_reg(in.rd, value);
    s.pc = next;
  };
  auto halt = [&](HaltReason reason, unsigned cycles) {
    return InstrResult{cycles, StepOutcome::halted(reason)};
  };

  switch (in.mnemonic) {
    case Mnemonic::lui: retire(serial_alu(ms, cfg, clk, AluOp::add, 0, imm << 12).value); break;
    case Mnemonic::auipc: retire(serial_alu(ms, cfg, clk, AluOp::add, s.pc, imm << 12).value); break;
    case Mnemonic::addi: retire(serial_alu(ms, cfg, clk, AluOp::add, a, imm).value); break;
    case Mnemonic::add: retire(serial_alu(ms, cfg, clk, AluOp::add, a, b).value); break;
    case Mnemonic::sub: retire(serial_alu(ms, cfg, clk, AluOp::sub, a, b).value); break;
    case Mnemonic::xori: retire(serial_alu(ms, cfg, clk, AluOp::xor_, a, imm).value); break;
    case Mnemonic::ori: retire(serial_alu(ms, cfg, clk, AluOp::or_, a, imm).value); break;
    case Mnemonic::andi: retire(serial_alu(ms, cfg, clk, AluOp::and_, a, imm).value); break;
    case Mnemonic::xor_: retire(serial_alu(ms, cfg, clk, AluOp::xor_, a, b).value); break;
    case Mnemonic::or_: retire(serial_alu(ms, cfg, clk, AluOp::or_, a, b).value); break;
    case Mnemonic::and_: retire(serial_alu(ms, cfg, clk, AluOp::and_, a, b).value); break;
    case Mnemonic::andn: retire(serial_alu(ms, cfg, clk, AluOp::andn, a, b).value); break;
    case Mnemonic::orn: retire(serial_alu(ms, cfg, clk, AluOp::orn, a, b).value); break;
    case Mnemonic::xnor: retire(serial_alu(ms, cfg, clk, AluOp::xnor, a, b).value); break;
    case Mnemonic::slti:
      retire(serial_alu(ms, cfg, clk, AluOp::sub, a, imm).less_signed ? 1 : 0);
      break;
    case Mnemonic::sltiu: retire(serial_alu(ms, cfg, clk, AluOp::sub, a, imm).carry ? 0 : 1); break;
    case Mnemonic::slt: retire(serial_alu(ms, cfg, clk, AluOp::sub, a, b).less_signed ? 1 : 0); break;
    case Mnemonic::sltu: retire(serial_alu(ms, cfg, clk, AluOp::sub, a, b).carry ? 0 : 1); break;
    case Mnemonic::pack:
    case Mnemonic::packh: retire(serial_pack(ms, cfg, clk, in.mnemonic, a, b)); break;

    case Mnemonic::slli:
    case Mnemonic::srli:
    case Mnemonic::srai:
    case Mnemonic::rori: retire(serial_shift(ms, cfg, clk, in.mnemonic, a, imm)); break;
    case Mnemonic::sll:
    case Mnemonic::srl:
    case Mnemonic::sra:
    case Mnemonic::ror:
    case Mnemonic::rol: retire(serial_shift(ms, cfg, clk, in.mnemonic, a, b & 31)); break;

    case Mnemonic::jal:
    case Mnemonic::jalr: {
      const uint32_t target = in.mnemonic == Mnemonic::jal ? s.pc + imm : (a + imm) & ~1u;
      if (target & 3) return halt(HaltReason::misaligned_fetch, 0);
      const uint32_t link = serial_alu(ms, cfg, clk, AluOp::add, s.pc, 4).value;
      s.set_reg(in.rd, link);
      s.pc = target;
      redirect = true;
      break;
    }

    case Mnemonic::beq:
    case Mnemonic::bne:
    case Mnemonic::blt:
    case Mnemonic::bge:
    case Mnemonic::bltu:
    case Mnemonic::bgeu: {
      const auto cmp = serial_alu(ms, cfg, clk, AluOp::sub, a, b);
      bool taken = false;
      switch (in.mnemonic) {
        case Mnemonic::beq: taken = cmp.zero; break;
        case Mnemonic::bne: taken = !cmp.zero; break;
        case Mnemonic::blt: taken = cmp.less_signed; break;
        case Mnemonic::bge: taken = !cmp.less_signed; break;
        case Mnemonic::bltu: taken = !cmp.carry; break;
        default: taken = cmp.carry; break;
      }
      if (taken) {
        const uint32_t target = s.pc + imm;
        if (target & 3) return halt(HaltReason::misaligned_fetch, clk.count());
        s.pc = target;
        redirect = true;
      } else {
        s.pc = next;
      }
      break;
    }

    case Mnemonic::lb:
    case Mnemonic::lh:
    case Mnemonic::lw:
    case Mnemonic::lbu:
    case Mnemonic::lhu: {
      const auto r = lsu_access(ms, cfg, LsuKind::load, in.mnemonic, a, in.imm, 0, obs);
      if (r.fault == golden::AccessFault::misaligned)
        return halt(HaltReason::misaligned_access, r.cycles);
      unit_cycles = r.cycles;
      retire(r.value);
      break;
    }
    case Mnemonic::sb:
    case Mnemonic::sh:
    case Mnemonic::sw: {
      const auto r = lsu_access(ms, cfg, LsuKind::store, in.mnemonic, a, in.imm, b, obs);
      if (r.fault == golden::AccessFault::misaligned)
        return halt(HaltReason::misaligned_access, r.cycles);
      s.pc = next;
      if (r.fault == golden::AccessFault::exit_requested) return halt(HaltReason::ecall, r.cycles);
      unit_cycles = r.cycles;
      break;
    }

    case Mnemonic::fence:
      clk.tick(Phase::execute);
      s.pc = next;
      break;
    case Mnemonic::ecall:
      clk.tick(Phase::execute);
      s.exit_code = s.reg(10);
      return halt(HaltReason::ecall, clk.count());
    case Mnemonic::ebreak:
      clk.tick(Phase::execute);
      return halt(HaltReason::ebreak, clk.count());

    case Mnemonic::clmul:
    case Mnemonic::clmulh:
      retire(serial_clmul(ms, cfg, clk, in.mnemonic == Mnemonic::clmulh, a, b));
      break;
    case Mnemonic::xperm4:
    case Mnemonic::xperm8: retire(serial_xperm(ms, cfg, clk, in.mnemonic, a, b)); break;

    case Mnemonic::aes32esi:
    case Mnemonic::aes32esmi:
    case Mnemonic::aes32dsi:
    case Mnemonic::aes32dsmi: {
      const auto r = aes_unit(ms, in, a, b, obs);
      unit_cycles = r.cycles;
      retire(r.value);
      break;
    }

    case Mnemonic::sha256sig0:
    case Mnemonic::sha256sig1:
    case Mnemonic::sha256sum0:
    case Mnemonic::sha256sum1:
    case Mnemonic::sha512sig0h:
    case Mnemonic::sha512sig0l:
    case Mnemonic::sha512sig1h:
    case Mnemonic::sha512sig1l:
    case Mnemonic::sha512sum0r:
    case Mnemonic::sha512sum1r: {
      const auto r = sha_unit(ms, cfg, in, a, b, obs);
      unit_cycles = r.cycles;
      retire(r.value);
      break;
    }

    case Mnemonic::brev8:
    case Mnemonic::rev8:
    case Mnemonic::zip:
    case Mnemonic::unzip: {
      const auto r = reorder_unit(ms, in, a, obs);
      unit_cycles = r.cycles;
      retire(r.value);
      break;
    }
  }

  const unsigned exec = clk.count() + unit_cycles;
  const auto fetch = frontend_step(ms, cfg, exec, redirect, obs);
  return {exec + fetch.cycles, StepOutcome::retired()};
}

// --- Core ---------------------------------------------------------------------

Core::Core(CoreConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void Core::reset_timing() {
  ms_.serializer1 = {};
  ms_.serializer2 = {};
  ms_.fetch_buffer.reset();
  ms_.lsu_buffer = 0;
  ms_.carry = false;
  ms_.cycle = 0;
  ms_.phase = Phase::idle;
  halted_.reset();
  instret_ = 0;
  startup_cycles_ = 0;
  histogram_ = {};
}

void Core::set_trace(std::ostream* out) {
  trace_ = out;
  if (trace_) *trace_ << kTraceHeader << '\n';
}

uint64_t Core::peek_cycles() const {
  if (halted_ || (ms_.arch.pc & 3)) return 0;
  const bool buffered = ms_.fetch_buffer && ms_.fetch_buffer->pc == ms_.arch.pc;
  const uint64_t startup = buffered ? 0 : cfg_.mem_latency;
  const uint32_t word = buffered ? ms_.fetch_buffer->word : ms_.arch.mem.load32(ms_.arch.pc);
  const auto in = isa::decode(word);
  if (!in) return startup;
  return startup + instruction_cycles(cfg_, *in, ms_.arch);
}

RetireInfo Core::step() {
  RetireInfo info;
  info.pc = ms_.arch.pc;
  if (halted_) {
    info.outcome = StepOutcome::halted(*halted_);
    return info;
  }
  const CycleObserver* obs = observer_ ? &observer_ : nullptr;

  auto stop = [&](HaltReason reason) {
    halted_ = reason;
    info.outcome = StepOutcome::halted(reason);
    return info;
  };

  if (ms_.arch.pc & 3) return stop(HaltReason::misaligned_fetch);
  if (!ms_.fetch_buffer || ms_.fetch_buffer->pc != ms_.arch.pc) {
    Clock clk(ms_, obs);
    for (unsigned i = 0; i < cfg_.mem_latency; ++i) clk.tick(Phase::fetch);
    startup_cycles_ += clk.count();
    ms_.fetch_buffer = FetchEntry{ms_.arch.pc, ms_.arch.mem.load32(ms_.arch.pc)};
  }

  const auto in = isa::decode(ms_.fetch_buffer->word);
  if (!in) return stop(HaltReason::illegal_instruction);
  info.instr = in;

  const auto result = run_instruction(ms_, cfg_, *in, obs);
  if (fault_) fault_(*in, ms_);
  info.cycles = result.cycles;
  info.outcome = result.outcome;

  const bool issued = cfg_.extensions.contains(in->info().extension);
  if (issued) {
    auto& counter = histogram_[static_cast<unsigned>(in->info().latency_class)];
    ++counter.count;
    counter.cycles += result.cycles;
  }
  if (!result.outcome.is_halt() || golden::halt_retires(result.outcome.reason)) ++instret_;
  if (result.outcome.is_halt()) halted_ = result.outcome.reason;

  if (trace_ && issued)
    fmt::print(*trace_, "{},0x{:08x},0x{:08x},{},{}\n", ms_.cycle, info.pc, in->raw,
               isa::name(in->mnemonic), result.cycles);
  return info;
}

}  // namespace sercrypt::micro
