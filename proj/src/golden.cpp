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

#include "sercrypt/golden.hpp"

#include <algorithm>
#include <bit>

#include "sercrypt/primitives.hpp"

namespace sercrypt::golden {

using isa::Mnemonic;

// --- Memory -----------------------------------------------------------------

Memory::Memory(const Memory& other) { *this = other; }

Memory& Memory::operator=(const Memory& other) {
  if (this == &other) return *this;
  pages_.clear();
  for (const auto& [index, page] : other.pages_) pages_.emplace(index, std::make_unique<Page>(*page));
  last_index_ = ~0u;
  last_page_ = nullptr;
  return *this;
}

const Memory::Page* Memory::find(uint32_t addr) const {
  const uint32_t index = addr >> kPageBits;
  if (index == last_index_) return last_page_;
  auto it = pages_.find(index);
  if (it == pages_.end()) return nullptr;
  last_index_ = index;
  last_page_ = it->second.get();
  return last_page_;
}

Memory::Page& Memory::page(uint32_t addr) {
  const uint32_t index = addr >> kPageBits;
  if (index == last_index_) return *last_page_;
  auto& slot = pages_[index];
  if (!slot) slot = std::make_unique<Page>(Page{});
  last_index_ = index;
  last_page_ = slot.get();
  return *slot;
}

uint8_t Memory::load8(uint32_t addr) const {
  const Page* p = find(addr);
  return p ? (*p)[addr & (kPageSize - 1)] : 0;
}

uint16_t Memory::load16(uint32_t addr) const {
  return static_cast<uint16_t>(load8(addr) | (load8(addr + 1) << 8));
}

uint32_t Memory::load32(uint32_t addr) const {
  if ((addr & (kPageSize - 1)) <= kPageSize - 4) {
    const Page* p = find(addr);
    if (!p) return 0;
    const uint8_t* b = p->data() + (addr & (kPageSize - 1));
    return uint32_t{b[0]} | (uint32_t{b[1]} << 8) | (uint32_t{b[2]} << 16) | (uint32_t{b[3]} << 24);
  }
  return uint32_t{load16(addr)} | (uint32_t{load16(addr + 2)} << 16);
}

void Memory::store8(uint32_t addr, uint8_t v) { page(addr)[addr & (kPageSize - 1)] = v; }

void Memory::store16(uint32_t addr, uint16_t v) {
  store8(addr, static_cast<uint8_t>(v));
  store8(addr + 1, static_cast<uint8_t>(v >> 8));
}

void Memory::store32(uint32_t addr, uint32_t v) {
  store16(addr, static_cast<uint16_t>(v));
  store16(addr + 2, static_cast<uint16_t>(v >> 16));
}

void Memory::write(uint32_t addr, std::span<const uint8_t> bytes) {
  for (size_t i = 0; i < bytes.size(); ++i) store8(addr + static_cast<uint32_t>(i), bytes[i]);
}

std::vector<uint8_t> Memory::read(uint32_t addr, uint32_t len) const {
  std::vector<uint8_t> out(len);
  for (uint32_t i = 0; i < len; ++i) out[i] = load8(addr + i);
  return out;
}

bool Memory::equal_range(const Memory& other, uint32_t addr, uint32_t len) const {
  for (uint32_t i = 0; i < len; ++i)
    if (load8(addr + i) != other.load8(addr + i)) return false;
  return true;
}

// --- Architectural helpers ------------------------------------------------------

std::string_view halt_reason_name(HaltReason r) {
  switch (r) {
    case HaltReason::none: return "none";
    case HaltReason::ebreak: return "ebreak";
    case HaltReason::ecall: return "ecall";
    case HaltReason::illegal_instruction: return "illegal-instruction";
    case HaltReason::misaligned_fetch: return "misaligned-fetch";
    case HaltReason::misaligned_access: return "misaligned-access";
    case HaltReason::max_steps: return "max-steps";
  }
  return "none";
}

namespace {

unsigned access_size(Mnemonic m) {
  switch (m) {
    case Mnemonic::lb:
    case Mnemonic::lbu:
    case Mnemonic::sb: return 1;
    case Mnemonic::lh:
    case Mnemonic::lhu:
    case Mnemonic::sh: return 2;
    default: return 4;
  }
}

}  // namespace

std::optional<uint32_t> load(const ArchState& s, Mnemonic m, uint32_t addr) {
  if (addr % access_size(m) != 0) return std::nullopt;
  switch (m) {
    case Mnemonic::lb: return static_cast<uint32_t>(static_cast<int8_t>(s.mem.load8(addr)));
    case Mnemonic::lbu: return s.mem.load8(addr);
    case Mnemonic::lh: return static_cast<uint32_t>(static_cast<int16_t>(s.mem.load16(addr)));
    case Mnemonic::lhu: return s.mem.load16(addr);
    default: return s.mem.load32(addr);
  }
}

AccessFault store(ArchState& s, Mnemonic m, uint32_t addr, uint32_t value) {
  const unsigned size = access_size(m);
  if (addr % size != 0) return AccessFault::misaligned;
  if (addr == kMmioConsole) {
    s.console.push_back(static_cast<char>(value & 0xff));
    return AccessFault::none;
  }
  if (addr == kMmioExit) {
    s.exit_code = size == 4 ? value : value & ((1u << (8 * size)) - 1);
    return AccessFault::exit_requested;
  }
  switch (size) {
    case 1: s.mem.store8(addr, static_cast<uint8_t>(value)); break;
    case 2: s.mem.store16(addr, static_cast<uint16_t>(value)); break;
    default: s.mem.store32(addr, value); break;
  }
  return AccessFault::none;
}

bool branch_taken(Mnemonic m, uint32_t a, uint32_t b) {
  const auto sa = static_cast<int32_t>(a);
  const auto sb = static_cast<int32_t>(b);
  switch (m) {
    case Mnemonic::beq: return a == b;
    case Mnemonic::bne: return a != b;
    case Mnemonic::blt: return sa < sb;
    case Mnemonic::bge: return sa >= sb;
    case Mnemonic::bltu: return a < b;
    case Mnemonic::bgeu: return a >= b;
    default: return false;
  }
}

StepOutcome step(ArchState& s, isa::ExtensionSet exts) {
  using Outcome = StepOutcome;
  if (s.pc & 3) return Outcome::halted(HaltReason::misaligned_fetch);

  const auto decoded = isa::decode(s.mem.load32(s.pc));
  if (!decoded || !exts.contains(decoded->info().extension))
    return Outcome::halted(HaltReason::illegal_instruction);
  const isa::Instr& in = *decoded;

  const uint32_t a = s.reg(in.rs1);
  const uint32_t b = s.reg(in.rs2);
  const auto imm = static_cast<uint32_t>(in.imm);
  const uint32_t next = s.pc + 4;

  auto write = [&](uint32_t v) {
    s.set_reg(in.rd, v);
    s.pc = next;
    return Outcome::retired();
  };
  auto transfer = [&](uint32_t target, uint32_t link) {
    if (target & 3) return Outcome::halted(HaltReason::misaligned_fetch);
    s.set_reg(in.rd, link);
    s.pc = target;
    return Outcome::retired();
  };

  switch (in.mnemonic) {
    case Mnemonic::lui: return write(imm << 12);
    case Mnemonic::auipc: return write(s.pc + (imm << 12));
    case Mnemonic::jal: return transfer(s.pc + imm, next);
    case Mnemonic::jalr: return transfer((a + imm) & ~1u, next);

    case Mnemonic::beq:
    case Mnemonic::bne:
    case Mnemonic::blt:
    case Mnemonic::bge:
    case Mnemonic::bltu:
    case Mnemonic::bgeu:
      if (branch_taken(in.mnemonic, a, b)) {
        const uint32_t target = s.pc + imm;
        if (target & 3) return Outcome::halted(HaltReason::misaligned_fetch);
        s.pc = target;
      } else {
        s.pc = next;
      }
      return Outcome::retired();

    case Mnemonic::lb:
    case Mnemonic::lh:
    case Mnemonic::lw:
    case Mnemonic::lbu:
    case Mnemonic::lhu: {
      auto v = load(s, in.mnemonic, a + imm);
      if (!v) return Outcome::halted(HaltReason::misaligned_access);
      return write(*v);
    }
    case Mnemonic::sb:
    case Mnemonic::sh:
    case Mnemonic::sw:
      switch (store(s, in.mnemonic, a + imm, b)) {
        case AccessFault::misaligned: return Outcome::halted(HaltReason::misaligned_access);
        case AccessFault::exit_requested: s.pc = next; return Outcome::halted(HaltReason::ecall);
        case AccessFault::none: break;
      }
      s.pc = next;
      return Outcome::retired();

    case Mnemonic::addi: return write(a + imm);
    case Mnemonic::slti: return write(static_cast<int32_t>(a) < in.imm ? 1 : 0);
    case Mnemonic::sltiu: return write(a < imm ? 1 : 0);
    case Mnemonic::xori: return write(a ^ imm);
    case Mnemonic::ori: return write(a | imm);
    case Mnemonic::andi: return write(a & imm);
    case Mnemonic::slli: return write(a << (imm & 31));
    case Mnemonic::srli: return write(a >> (imm & 31));
    case Mnemonic::srai: return write(static_cast<uint32_t>(static_cast<int32_t>(a) >> (imm & 31)));

    case Mnemonic::add: return write(a + b);
    case Mnemonic::sub: return write(a - b);
    case Mnemonic::sll: return write(a << (b & 31));
    case Mnemonic::slt: return write(static_cast<int32_t>(a) < static_cast<int32_t>(b) ? 1 : 0);
    case Mnemonic::sltu: return write(a < b ? 1 : 0);
    case Mnemonic::xor_: return write(a ^ b);
    case Mnemonic::srl: return write(a >> (b & 31));
    case Mnemonic::sra: return write(static_cast<uint32_t>(static_cast<int32_t>(a) >> (b & 31)));
    case Mnemonic::or_: return write(a | b);
    case Mnemonic::and_: return write(a & b);

    case Mnemonic::fence: s.pc = next; return Outcome::retired();
    case Mnemonic::ecall:
      s.exit_code = s.reg(10);
      return Outcome::halted(HaltReason::ecall);
    case Mnemonic::ebreak: return Outcome::halted(HaltReason::ebreak);

    case Mnemonic::rori: return write(zbkb(in.mnemonic, a, imm));
    case Mnemonic::ror:
    case Mnemonic::rol:
    case Mnemonic::andn:
    case Mnemonic::orn:
    case Mnemonic::xnor:
    case Mnemonic::pack:
    case Mnemonic::packh:
    case Mnemonic::brev8:
    case Mnemonic::rev8:
    case Mnemonic::zip:
    case Mnemonic::unzip: return write(zbkb(in.mnemonic, a, b));

    case Mnemonic::clmul:
    case Mnemonic::clmulh: return write(clmul(in.mnemonic, a, b));
    case Mnemonic::xperm4:
    case Mnemonic::xperm8: return write(xperm(in.mnemonic, a, b));

    case Mnemonic::aes32esi:
    case Mnemonic::aes32esmi:
    case Mnemonic::aes32dsi:
    case Mnemonic::aes32dsmi: return write(aes32(in.mnemonic, a, b, in.bs));

    case Mnemonic::sha256sig0:
    case Mnemonic::sha256sig1:
    case Mnemonic::sha256sum0:
    case Mnemonic::sha256sum1:
    case Mnemonic::sha512sig0h:
    case Mnemonic::sha512sig0l:
    case Mnemonic::sha512sig1h:
    case Mnemonic::sha512sig1l:
    case Mnemonic::sha512sum0r:
    case Mnemonic::sha512sum1r: return write(sha2(in.mnemonic, a, b));
  }
  return Outcome::halted(HaltReason::illegal_instruction);
}

RunResult run(ArchState& s, isa::ExtensionSet exts, uint64_t max_steps) {
  RunResult r;
  while (r.instret < max_steps) {
    r.outcome = step(s, exts);
    if (!r.outcome.is_halt()) {
      ++r.instret;
      continue;
    }
    if (halt_retires(r.outcome.reason)) ++r.instret;
    return r;
  }
  r.outcome = StepOutcome::halted(HaltReason::max_steps);
  return r;
}

}  // namespace sercrypt::golden
