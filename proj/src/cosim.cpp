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

#include "sercrypt/cosim.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "json.hpp"
#include "sercrypt/assembler.hpp"
#include "sercrypt/system.hpp"

namespace sercrypt::cosim {

using isa::Format;
using isa::Mnemonic;

namespace {

constexpr uint32_t kDumpSize = 128;

class Generator {
 public:
  explicit Generator(const TortureConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    for (unsigned i = 0; i < isa::kMnemonicCount; ++i) {
      const auto m = static_cast<Mnemonic>(i);
      const auto& inf = isa::info(m);
      if (!cfg.extensions.contains(inf.extension)) continue;
      switch (inf.format) {
        case Format::branch: branches_.push_back(m); break;
        case Format::jal:
        case Format::jalr:
        case Format::system: break;
        default: plain_.push_back(m); break;
      }
    }
  }

  TortureProgram build() {
    b_.label("entry");
    b_.la(kWindowBaseReg, "scratch");
    for (unsigned r = 1; r < 32; ++r)
      if (!reserved(r)) b_.li(r, static_cast<uint32_t>(rng_()));

    unsigned emitted = 0;
    while (emitted < cfg_.length) {
      if (chance(cfg_.branch_density))
        emitted += control();
      else
        emitted += plain();
    }

    for (unsigned r = 1; r < 32; ++r)
      b_.op(Mnemonic::sw, 0, kWindowBaseReg, r, static_cast<int32_t>(cfg_.scratch_size + 4 * (r - 1)));
    b_.op(Mnemonic::ebreak);

    b_.align(256);
    b_.label("scratch");
    std::vector<uint8_t> pattern(cfg_.scratch_size + kDumpSize);
    for (auto& byte : pattern) byte = static_cast<uint8_t>(rng_());
    b_.bytes(pattern);

    TortureProgram p;
    p.image = b_.assemble();
    p.window_base = p.image.symbols.at("scratch");
    p.window_size = cfg_.scratch_size + kDumpSize;
    return p;
  }

 private:
  static bool reserved(unsigned r) {
    return r == kLinkScratchReg || r == kLoopCounterReg || r == kWindowBaseReg;
  }

  uint64_t below(uint64_t n) { return rng_() % n; }
  bool chance(double p) {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p;
  }

  unsigned any_reg() { return static_cast<unsigned>(below(32)); }
  unsigned dest_reg() {
    // x0 now and then exercises the discarded-write path.
    if (below(32) == 0) return 0;
    unsigned r;
    do r = 1 + static_cast<unsigned>(below(31));
    while (reserved(r));
    return r;
  }

  std::string fresh_label() { return fmt::format("L{}", labels_++); }

  int32_t scratch_offset(unsigned size) {
    return static_cast<int32_t>(below(cfg_.scratch_size / size) * size);
  }

  unsigned access_size(Mnemonic m) {
    switch (m) {
      case Mnemonic::lh:
      case Mnemonic::lhu:
      case Mnemonic::sh: return 2;
      case Mnemonic::lw:
      case Mnemonic::sw: return 4;
      default: return 1;
    }
  }

  unsigned plain() {
    const Mnemonic m = plain_[below(plain_.size())];
    switch (isa::info(m).format) {
      case Format::r: b_.op(m, dest_reg(), any_reg(), any_reg()); break;
      case Format::i: b_.op(m, dest_reg(), any_reg(), 0, static_cast<int32_t>(below(4096)) - 2048); break;
      case Format::shift_imm: b_.op(m, dest_reg(), any_reg(), 0, static_cast<int32_t>(below(32))); break;
      case Format::unary: b_.op(m, dest_reg(), any_reg()); break;
      case Format::aes: b_.op(m, dest_reg(), any_reg(), any_reg(), 0, static_cast<unsigned>(below(4))); break;
      case Format::load: b_.op(m, dest_reg(), kWindowBaseReg, 0, scratch_offset(access_size(m))); break;
      case Format::store: b_.op(m, 0, kWindowBaseReg, any_reg(), scratch_offset(access_size(m))); break;
      case Format::u: b_.op(m, dest_reg(), 0, 0, static_cast<int32_t>(below(1u << 20))); break;
      case Format::fence: b_.op(m, 0, 0, 0, 0x0ff); break;
      default: b_.nop(); break;
    }
    return 1;
  }

  unsigned skipped_block(const std::string& target) {
    unsigned n = 0;
    const auto skip = 1 + below(3);
    for (uint64_t i = 0; i < skip; ++i) n += plain();
    b_.label(target);
    return n;
  }

  unsigned control() {
    const auto kind = below(8);
    if (kind < 5 && !branches_.empty()) {
      const auto target = fresh_label();
      b_.branch(branches_[below(branches_.size())], any_reg(), any_reg(), target);
      return 1 + skipped_block(target);
    }
    if (kind == 5) {
      const auto target = fresh_label();
      b_.jal(dest_reg(), target);
      return 1 + skipped_block(target);
    }
    if (kind == 6) {
      const auto target = fresh_label();
      b_.la(kLinkScratchReg, target);
      b_.op(Mnemonic::jalr, dest_reg(), kLinkScratchReg, 0, 0);
      return 3 + skipped_block(target);
    }
    // Bounded loop: the counter register is never a random destination.
    const auto head = fresh_label();
    b_.li(kLoopCounterReg, 1 + static_cast<uint32_t>(below(3)));
    b_.label(head);
    unsigned n = 1;
    const auto body = 1 + below(3);
    for (uint64_t i = 0; i < body; ++i) n += plain();
    b_.op(Mnemonic::addi, kLoopCounterReg, kLoopCounterReg, 0, -1);
    b_.branch(Mnemonic::bne, kLoopCounterReg, 0, head);
    return n + 2;
  }

  const TortureConfig& cfg_;
  std::mt19937_64 rng_;
  isa::Builder b_;
  std::vector<Mnemonic> plain_;
  std::vector<Mnemonic> branches_;
  unsigned labels_ = 0;
};

}  // namespace

TortureProgram generate(const TortureConfig& config) { return Generator(config).build(); }

uint64_t signature(const golden::ArchState& state, uint32_t window_base, uint32_t window_size) {
  uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ull;
  };
  for (unsigned r = 1; r < 32; ++r)
    for (int i = 0; i < 4; ++i) feed(static_cast<uint8_t>(state.regs[r] >> (8 * i)));
  for (uint32_t i = 0; i < window_size; ++i) feed(state.mem.load8(window_base + i));
  return h;
}

std::string signature_hex(uint64_t sig) { return fmt::format("{:016x}", sig); }

Report cosim_run(const TortureProgram& program, const micro::CoreConfig& core_cfg, uint64_t seed,
                 const micro::FaultInjector& fault, uint64_t max_steps) {
  Report rep;
  rep.seed = seed;
  rep.width = core_cfg.serial_width;
  rep.extensions = core_cfg.extensions;

  golden::ArchState ref;
  system::install(program.image, ref);
  micro::Core core(core_cfg);
  system::install(program.image, core.state().arch);
  if (fault) core.set_fault_injector(fault);
  const auto& dut = core.state().arch;

  auto diverge = [&](uint32_t pc, std::string field) {
    rep.divergence = Divergence{pc, std::move(field)};
  };

  for (uint64_t n = 0; n < max_steps && !rep.divergence; ++n) {
    const uint32_t pc = ref.pc;
    if (dut.pc != pc) {
      diverge(pc, "pc");
      break;
    }
    const auto want = golden::step(ref, core_cfg.extensions);
    const auto got = core.step();
    if (!want.is_halt() || golden::halt_retires(want.reason)) ++rep.instret;

    if (got.outcome != want) diverge(pc, "outcome");
    else if (dut.pc != ref.pc) diverge(pc, "pc");
    else {
      for (unsigned r = 1; r < 32; ++r)
        if (dut.regs[r] != ref.regs[r]) {
          diverge(pc, fmt::format("x{}", r));
          break;
        }
    }
    const bool wrote_memory = got.instr && got.instr->info().format == Format::store;
    if (!rep.divergence && (wrote_memory || want.is_halt())) {
      for (uint32_t i = 0; i < program.window_size; ++i) {
        const uint32_t a = program.window_base + i;
        if (dut.mem.load8(a) != ref.mem.load8(a)) {
          diverge(pc, fmt::format("mem[0x{:08x}]", a));
          break;
        }
      }
    }
    if (!rep.divergence && want.is_halt()) {
      if (dut.console != ref.console) diverge(pc, "console");
      else if (dut.exit_code != ref.exit_code) diverge(pc, "exit_code");
      break;
    }
  }

  rep.sig_golden = signature(ref, program.window_base, program.window_size);
  rep.sig_micro = signature(dut, program.window_base, program.window_size);
  rep.pass = !rep.divergence && rep.sig_golden == rep.sig_micro && core.halted();
  if (!rep.pass && !rep.divergence) diverge(ref.pc, core.halted() ? "signature" : "no-halt");
  return rep;
}

Report cosim_run(const TortureConfig& torture, const micro::CoreConfig& core) {
  return cosim_run(generate(torture), core, torture.seed);
}

std::vector<Report> run_matrix(uint64_t first_seed, unsigned programs,
                               std::span<const unsigned> widths, isa::ExtensionSet extensions,
                               unsigned length, unsigned threads) {
  std::vector<Report> out(static_cast<size_t>(programs) * widths.size());
  std::atomic<unsigned> next{0};
  auto worker = [&] {
    for (unsigned p = next++; p < programs; p = next++) {
      TortureConfig tc;
      tc.seed = first_seed + p;
      tc.length = length;
      tc.extensions = extensions;
      const auto program = generate(tc);
      for (size_t w = 0; w < widths.size(); ++w) {
        micro::CoreConfig cc;
        cc.serial_width = widths[w];
        cc.extensions = extensions;
        out[p * widths.size() + w] = cosim_run(program, cc, tc.seed);
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max(1u, programs));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return out;
}

std::string report_json(const Report& r) {
  nlohmann::json exts = nlohmann::json::array();
  for (unsigned e = 1; e < isa::kExtensionCount; ++e) {
    const auto ext = static_cast<isa::Extension>(e);
    if (r.extensions.contains(ext)) exts.push_back(std::string(isa::extension_name(ext)));
  }
  nlohmann::json j = {
      {"seed", r.seed},
      {"width", r.width},
      {"extensions", exts},
      {"pass", r.pass},
      {"sig_micro", signature_hex(r.sig_micro)},
      {"sig_golden", signature_hex(r.sig_golden)},
  };
  if (r.divergence) {
    j["divergence_pc"] = fmt::format("0x{:08x}", r.divergence->pc);
    j["divergence_field"] = r.divergence->field;
  }
  return j.dump();
}

micro::FaultInjector flip_result_bit(Mnemonic m) {
  return [m](const isa::Instr& in, micro::MicroState& ms) {
    if (in.mnemonic == m && in.rd != 0) ms.arch.regs[in.rd] ^= 1;
  };
}

}  // namespace sercrypt::cosim
