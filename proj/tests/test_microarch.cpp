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

#include <bit>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "sercrypt/assembler.hpp"
#include "sercrypt/microarch.hpp"
#include "sercrypt/primitives.hpp"
#include "sercrypt/system.hpp"

namespace sercrypt::micro {
namespace {

using isa::Mnemonic;

constexpr unsigned kWidths[] = {1, 2, 4, 8, 16, 32};
constexpr uint32_t kPc = 0x1000;

CoreConfig config(unsigned w, isa::ExtensionSet exts = isa::ExtensionSet::zkn()) {
  CoreConfig c;
  c.serial_width = w;
  c.extensions = exts;
  return c;
}

struct Executed {
  InstrResult result;
  unsigned ticks = 0;
  MicroState state;
};

Executed execute(const CoreConfig& cfg, const isa::Instr& in, uint32_t a = 0, uint32_t b = 0,
                 const CycleObserver& extra = {}) {
  Executed e;
  e.state.arch.pc = kPc;
  e.state.arch.regs[1] = a;
  e.state.arch.regs[2] = b;
  e.state.arch.mem.store32(kPc, in.raw);
  CycleObserver obs = [&](const MicroState& ms) {
    ++e.ticks;
    if (extra) extra(ms);
  };
  e.result = run_instruction(e.state, cfg, in, &obs);
  return e;
}

unsigned cycles(const CoreConfig& cfg, const isa::Instr& in, uint32_t a = 0, uint32_t b = 0) {
  return execute(cfg, in, a, b).result.cycles;
}

TEST(Config, Validation) {
  EXPECT_NO_THROW(config(4).validate());
  EXPECT_THROW(config(3).validate(), std::invalid_argument);
  auto c = config(32);
  c.shift_step_32 = 3;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.shift_step_32 = 8;
  c.mem_latency = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Timing, ChunkedAlu) {
  EXPECT_EQ(cycles(config(4), isa::make(Mnemonic::add, 3, 1, 2)), 8u);
  EXPECT_EQ(cycles(config(32), isa::make(Mnemonic::add, 3, 1, 2)), 1u);
  for (unsigned w : kWidths) EXPECT_EQ(cycles(config(w), isa::make(Mnemonic::xor_, 3, 1, 2)), 32 / w);
}

TEST(Timing, ClmulConstant) {
  std::mt19937 rng(1);
  for (unsigned w : kWidths)
    for (int i = 0; i < 256; ++i) {
      const uint32_t a = rng(), b = rng();
      const auto e = execute(config(w), isa::make(Mnemonic::clmulh, 3, 1, 2), a, b);
      ASSERT_EQ(e.result.cycles, 33u);
      ASSERT_EQ(e.state.arch.regs[3], golden::clmul(Mnemonic::clmulh, a, b));
    }
}

TEST(Timing, ShiftFormula) {
  for (unsigned w : kWidths)
    EXPECT_EQ(cycles(config(w), isa::make(Mnemonic::srli, 3, 1, 0, 0)), 1u);
  EXPECT_EQ(cycles(config(1), isa::make(Mnemonic::srli, 3, 1, 0, 31)), 32u);
  unsigned prev = 0;
  for (unsigned s = 0; s < 32; ++s) {
    const unsigned c = cycles(config(1), isa::make(Mnemonic::srl, 3, 1, 2), 0, s);
    EXPECT_GT(c, prev);
    prev = c;
  }
  // Coarse steps of 8 plus single-bit steps: 13 = 8 + 5 -> 1 + 5 + 1.
  EXPECT_EQ(cycles(config(8), isa::make(Mnemonic::srai, 3, 1, 0, 13)), 7u);
}

TEST(Timing, LeftShiftSupportNeverSlower) {
  double best = 1.0;
  for (unsigned w : kWidths)
    for (unsigned s = 1; s < 32; ++s)
      for (auto kind : {ShiftKind::logical, ShiftKind::rotate}) {
        auto with = config(w);
        auto without = with;
        without.left_shift_support = false;
        const unsigned a = shift_latency(with, ShiftDirection::left, kind, s, false);
        const unsigned b = shift_latency(without, ShiftDirection::left, kind, s, false);
        EXPECT_LE(a, b) << w << " " << s;
        best = std::min(best, double(a) / b);
      }
  EXPECT_LE(best, 0.5);
}

TEST(Timing, LeftShiftStrictlyBetterBelowFullWidth) {
  for (unsigned w : kWidths) {
    if (w == 32) continue;
    auto with = config(w);
    auto without = with;
    without.left_shift_support = false;
    bool strict = false;
    for (unsigned s = 0; s < 32; ++s)
      strict |= cycles(with, isa::make(Mnemonic::slli, 3, 1, 0, s)) <
                cycles(without, isa::make(Mnemonic::slli, 3, 1, 0, s));
    EXPECT_TRUE(strict) << w;
  }
}

TEST(Timing, FullWidthAluSingleCycle) {
  for (unsigned i = 0; i < isa::kMnemonicCount; ++i) {
    const auto m = static_cast<Mnemonic>(i);
    const auto& inf = isa::info(m);
    if (inf.extension != isa::Extension::rv32i || inf.latency_class != isa::LatencyClass::alu_chunked) continue;
    const auto f = inf.format;
    const auto in = isa::make(m, 3, f == isa::Format::u ? 0 : 1, f == isa::Format::r ? 2 : 0, f == isa::Format::i ? 7 : 0);
    EXPECT_EQ(cycles(config(32), in, 123, 456), 1u) << isa::name(m);
  }
}

// The shift formula charges single-bit steps for shamt mod w, so a wider
// core can be slower on one shift. Kernel-level monotonicity is checked in
// the bench tests.
TEST(Timing, ShiftFormulaNotWidthMonotone) {
  const auto in = isa::make(Mnemonic::srli, 3, 1, 0, 15);
  EXPECT_EQ(cycles(config(8), in), 9u);
  EXPECT_EQ(cycles(config(16), in), 16u);
}

TEST(Timing, ZktNeverFaster) {
  std::mt19937 rng(2);
  const Mnemonic shifts[] = {Mnemonic::sll, Mnemonic::srl, Mnemonic::sra, Mnemonic::rol, Mnemonic::ror};
  for (unsigned w : kWidths)
    for (bool left : {false, true})
      for (auto m : shifts)
        for (unsigned s = 0; s < 32; ++s) {
          auto plain = config(w);
          plain.left_shift_support = left;
          auto ct = plain;
          ct.extensions = isa::ExtensionSet::zkn_zkt();
          const auto in = isa::make(m, 3, 1, 2);
          const uint32_t x = rng();
          const auto e = execute(ct, in, x, s);
          EXPECT_GE(e.result.cycles, cycles(plain, in, x, s));
          EXPECT_EQ(e.result.cycles, cycles(ct, in, ~x, 0));
        }
}

TEST(Timing, Branches) {
  const auto beq = isa::make(Mnemonic::beq, 0, 1, 2, 16);
  EXPECT_EQ(cycles(config(4), beq, 5, 5), 10u);
  EXPECT_EQ(cycles(config(4), beq, 5, 6), 8u);
  auto slow = config(4);
  slow.taken_branch_penalty = 5;
  EXPECT_EQ(cycles(slow, beq, 5, 5), 13u);
}

TEST(Timing, FixedUnits) {
  const auto e = execute(config(1), isa::make(Mnemonic::aes32esi, 3, 1, 2));
  EXPECT_EQ(e.state.arch.regs[3], 0x63u);
  EXPECT_EQ(e.result.cycles, 3u);
  EXPECT_EQ(cycles(config(8), isa::make(Mnemonic::sha256sig0, 3, 1)), 5u);
  EXPECT_EQ(cycles(config(32), isa::make(Mnemonic::sha256sig0, 3, 1)), 2u);
  EXPECT_EQ(cycles(config(1), isa::make(Mnemonic::rev8, 3, 1)), 1u);
  EXPECT_EQ(cycles(config(1), isa::make(Mnemonic::zip, 3, 1)) +
                cycles(config(1), isa::make(Mnemonic::unzip, 3, 1)),
            2u);
}

TEST(Timing, LoadStore) {
  EXPECT_EQ(cycles(config(32), isa::make(Mnemonic::lw, 3, 1, 0, 0), 0x2000), 3u);
  EXPECT_EQ(cycles(config(4), isa::make(Mnemonic::lw, 3, 1, 0, 0), 0x2000), 10u);
  const auto e = execute(config(4), isa::make(Mnemonic::lh, 3, 1, 0, 1), 0x2000);
  EXPECT_EQ(e.result.outcome, golden::StepOutcome::halted(golden::HaltReason::misaligned_access));
  EXPECT_EQ(e.result.cycles, 8u);
}

TEST(Timing, DisabledExtensionCostsNothing) {
  const auto e = execute(config(4, {}), isa::make(Mnemonic::clmul, 3, 1, 2));
  EXPECT_EQ(e.result.cycles, 0u);
  EXPECT_EQ(e.ticks, 0u);
  EXPECT_EQ(e.state.arch.pc, kPc);
}

TEST(Timing, SlowMemoryStalls) {
  auto c = config(32);
  c.mem_latency = 4;
  // add: 1 execute cycle, 3 stall cycles waiting for the next word.
  EXPECT_EQ(cycles(c, isa::make(Mnemonic::add, 3, 1, 2)), 4u);
  c.serial_width = 1;
  EXPECT_EQ(cycles(c, isa::make(Mnemonic::add, 3, 1, 2)), 32u);
}

// The ticking data path and the closed-form model must agree on every
// instruction, and the data path must compute the architectural result.
TEST(DataPath, TicksMatchModelAndGolden) {
  std::mt19937 rng(3);
  for (unsigned w : kWidths)
    for (bool left : {false, true})
      for (bool zkt : {false, true}) {
        auto cfg = config(w, zkt ? isa::ExtensionSet::zkn_zkt() : isa::ExtensionSet::zkn());
        cfg.left_shift_support = left;
        cfg.mem_latency = 1 + rng() % 3;
        unsigned done = 0;
        while (done < 2000) {
          const auto in = isa::decode(rng());
          if (!in) continue;
          ++done;
          MicroState ms;
          ms.arch.pc = kPc;
          for (unsigned r = 1; r < 32; ++r)
            ms.arch.regs[r] = rng() % 4 == 0 ? 0x2000 + (rng() % 64) : static_cast<uint32_t>(rng());
          ms.arch.mem.store32(kPc, in->raw);
          ms.arch.mem.store32(0x2000, rng());
          auto ref = ms.arch;
          const unsigned expect = instruction_cycles(cfg, *in, ms.arch);
          unsigned ticks = 0;
          CycleObserver obs = [&](const MicroState&) { ++ticks; };
          const auto r = run_instruction(ms, cfg, *in, &obs);
          const auto g = golden::step(ref, cfg.extensions);
          SCOPED_TRACE(isa::disassemble(*in) + " w" + std::to_string(w));
          ASSERT_EQ(r.cycles, expect);
          ASSERT_EQ(ticks, r.cycles);
          ASSERT_EQ(r.outcome, g);
          ASSERT_EQ(ms.arch.regs, ref.regs);
          ASSERT_EQ(ms.arch.pc, ref.pc);
        }
      }
}

TEST(DataPath, ShiftsEveryAmount) {
  std::mt19937 rng(4);
  const Mnemonic ms_[] = {Mnemonic::sll, Mnemonic::srl, Mnemonic::sra, Mnemonic::rol, Mnemonic::ror};
  for (unsigned w : kWidths)
    for (bool left : {false, true})
      for (auto m : ms_)
        for (unsigned s = 0; s < 64; ++s) {
          auto cfg = config(w);
          cfg.left_shift_support = left;
          const uint32_t x = rng();
          const auto e = execute(cfg, isa::make(m, 3, 1, 2), x, s);
          uint32_t want = 0;
          const unsigned k = s & 31;
          switch (m) {
            case Mnemonic::sll: want = x << k; break;
            case Mnemonic::srl: want = x >> k; break;
            case Mnemonic::sra: want = static_cast<uint32_t>(static_cast<int32_t>(x) >> k); break;
            case Mnemonic::rol: want = std::rotl(x, static_cast<int>(k)); break;
            default: want = std::rotr(x, static_cast<int>(k)); break;
          }
          ASSERT_EQ(e.state.arch.regs[3], want) << isa::name(m) << " w" << w << " s" << s;
        }
}

TEST(DataPath, Serializer2IdleAtFullWidth) {
  const Mnemonic alu[] = {Mnemonic::add, Mnemonic::sub, Mnemonic::and_, Mnemonic::or_,
                          Mnemonic::xor_, Mnemonic::slt, Mnemonic::sltu, Mnemonic::andn,
                          Mnemonic::orn, Mnemonic::xnor};
  for (auto m : alu) {
    bool touched = false;
    execute(config(32), isa::make(m, 3, 1, 2), 0x12345678, 0x9abcdef0,
            [&](const MicroState& ms) { touched |= ms.serializer2 != SerialRegister{}; });
    EXPECT_FALSE(touched) << isa::name(m);
  }
  bool used = false;
  execute(config(4), isa::make(Mnemonic::add, 3, 1, 2), 0x12345678, 0x9abcdef0,
          [&](const MicroState& ms) { used |= ms.serializer2 != SerialRegister{}; });
  EXPECT_TRUE(used);
}

TEST(DataPath, PhasesAreReported) {
  std::vector<Phase> phases;
  execute(config(8), isa::make(Mnemonic::lw, 3, 1, 0, 0), 0x2000, 0,
          [&](const MicroState& ms) { phases.push_back(ms.phase); });
  ASSERT_EQ(phases.size(), 6u);
  EXPECT_EQ(phases[0], Phase::execute);
  EXPECT_EQ(phases[4], Phase::memory);
  EXPECT_EQ(phases[5], Phase::writeback);
}

TEST(AluMask, Modes) {
  for (unsigned i = 0; i < 32; ++i) EXPECT_FALSE(alu_mask_select(i, MaskMode::clmul_bit, 0, ~0u, 1).enable);
  EXPECT_TRUE(alu_mask_select(3, MaskMode::clmul_bit, 8, ~0u, 1).enable);
  EXPECT_EQ(alu_mask_select(2, MaskMode::plain, 0, 0xaabbccdd, 8).chunk, 0xbbu);
  for (unsigned i = 0; i < 4; ++i)
    EXPECT_EQ(alu_mask_select(i, MaskMode::xperm_byte, 0x03020100, 0xaabbccdd, 8).chunk,
              (0xaabbccddu >> (8 * i)) & 0xff);
  EXPECT_EQ(alu_mask_select(0, MaskMode::xperm_nibble, 0x8, 0x76543210, 4).chunk, 0u);
  EXPECT_EQ(alu_mask_select(0, MaskMode::xperm_nibble, 0x7, 0x76543210, 4).chunk, 7u);
}

TEST(Frontend, StraightLineOverlap) {
  isa::Builder b;
  for (int i = 0; i < 10; ++i) b.op(Mnemonic::add, 1, 1, 2);
  b.op(Mnemonic::ebreak);
  Core core(config(4));
  system::install(b.assemble(), core.state().arch);
  std::vector<unsigned> costs;
  while (!core.halted()) costs.push_back(core.step().cycles);
  ASSERT_EQ(costs.size(), 11u);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(costs[i], 8u);
  EXPECT_EQ(core.startup_cycles(), 1u);
  EXPECT_EQ(core.state().cycle, 10 * 8 + 1 + 1u);
}

TEST(Frontend, AluScaling) {
  constexpr unsigned kN = 50;
  isa::Builder b;
  std::mt19937 rng(5);
  const Mnemonic ops[] = {Mnemonic::add, Mnemonic::sub, Mnemonic::xor_, Mnemonic::and_, Mnemonic::sltu};
  for (unsigned i = 0; i < kN; ++i) b.op(ops[rng() % 5], 1 + rng() % 31, rng() % 32, rng() % 32);
  for (unsigned w : kWidths) {
    Core core(config(w));
    system::install(b.assemble(), core.state().arch);
    for (unsigned i = 0; i < kN; ++i) core.step();
    EXPECT_EQ(core.state().cycle, kN * (32 / w) + core.startup_cycles());
    EXPECT_EQ(core.startup_cycles(), 1u);
  }
}

TEST(Frontend, PeekMatchesStep) {
  isa::Builder b;
  b.li(1, 3).label("l").op(Mnemonic::sll, 2, 2, 1).op(Mnemonic::addi, 1, 1, 0, -1)
      .branch(Mnemonic::bne, 1, 0, "l").op(Mnemonic::ebreak);
  for (unsigned w : kWidths) {
    Core core(config(w));
    system::install(b.assemble(), core.state().arch);
    while (!core.halted()) {
      const uint64_t before = core.state().cycle;
      const uint64_t peek = core.peek_cycles();
      core.step();
      EXPECT_EQ(core.state().cycle - before, peek);
    }
  }
}

TEST(Core, TraceRows) {
  isa::Builder b;
  b.op(Mnemonic::addi, 1, 0, 0, 1).op(Mnemonic::ebreak);
  Core core(config(32));
  system::install(b.assemble(), core.state().arch);
  std::ostringstream trace;
  core.set_trace(&trace);
  while (!core.halted()) core.step();
  EXPECT_EQ(trace.str(),
            "cycle,pc,raw_word,mnemonic,cycles_charged\n"
            "2,0x00001000,0x00100093,addi,1\n"
            "3,0x00001004,0x00100073,ebreak,1\n");
}

}  // namespace
}  // namespace sercrypt::micro
