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

#include "sercrypt/assembler.hpp"

#include <map>

namespace sercrypt::isa {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

uint32_t line_size(const AsmLine& line, uint32_t pc) {
  return std::visit(
      Overload{
          [](const rec::Op&) -> uint32_t { return 4; },
          [](const rec::Label&) -> uint32_t { return 0; },
          [](const rec::Transfer&) -> uint32_t { return 4; },
          [](const rec::LoadAddress&) -> uint32_t { return 8; },
          [](const rec::Data& d) -> uint32_t { return static_cast<uint32_t>(d.bytes.size()); },
          [pc](const rec::Align& a) -> uint32_t {
            return a.alignment == 0 ? 0 : (a.alignment - pc % a.alignment) % a.alignment;
          },
      },
      line);
}

void put32(std::vector<uint8_t>& out, uint32_t w) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(w >> (8 * i)));
}

}  // namespace

ProgramImage assemble(std::span<const AsmLine> lines, uint32_t base) {
  ProgramImage image;
  image.base = base;

  uint32_t pc = base;
  for (const auto& line : lines) {
    if (const auto* l = std::get_if<rec::Label>(&line)) {
      if (!image.symbols.emplace(l->name, pc).second) throw DuplicateLabel(l->name);
    }
    pc += line_size(line, pc);
  }

  auto resolve = [&](const std::string& name) {
    const auto it = image.symbols.find(name);
    if (it == image.symbols.end()) throw UnresolvedLabel(name);
    return it->second;
  };

  auto& out = image.bytes;
  for (const auto& line : lines) {
    pc = base + static_cast<uint32_t>(out.size());
    std::visit(Overload{
                   [&](const rec::Op& o) { put32(out, encode(o.instr)); },
                   [](const rec::Label&) {},
                   [&](const rec::Transfer& t) {
                     Instr in = t.instr;
                     in.imm = static_cast<int32_t>(resolve(t.target) - pc);
                     put32(out, encode(in));
                   },
                   [&](const rec::LoadAddress& la) {
                     const uint32_t delta = resolve(la.target) - pc;
                     const uint32_t hi = (delta + 0x800) >> 12;
                     const auto lo = static_cast<int32_t>(delta - (hi << 12));
                     put32(out, encode(make(Mnemonic::auipc, la.rd, 0, 0, static_cast<int32_t>(hi & 0xfffff))));
                     put32(out, encode(make(Mnemonic::addi, la.rd, la.rd, 0, lo)));
                   },
                   [&](const rec::Data& d) { out.insert(out.end(), d.bytes.begin(), d.bytes.end()); },
                   [&](const rec::Align& a) { out.resize(out.size() + line_size(a, pc), 0); },
               },
               line);
  }

  image.code_size = static_cast<uint32_t>(out.size());
  const auto entry = image.symbols.find("entry");
  image.entry = entry == image.symbols.end() ? base : entry->second;
  return image;
}

Builder& Builder::op(Mnemonic m, unsigned rd, unsigned rs1, unsigned rs2, int32_t imm,
                     unsigned bs) {
  lines_.emplace_back(rec::Op{make(m, rd, rs1, rs2, imm, bs)});
  return *this;
}

Builder& Builder::label(std::string name) {
  lines_.emplace_back(rec::Label{std::move(name)});
  return *this;
}

Builder& Builder::branch(Mnemonic m, unsigned rs1, unsigned rs2, std::string target) {
  Instr in;
  in.mnemonic = m;
  in.rs1 = static_cast<uint8_t>(rs1);
  in.rs2 = static_cast<uint8_t>(rs2);
  lines_.emplace_back(rec::Transfer{in, std::move(target)});
  return *this;
}

Builder& Builder::jal(unsigned rd, std::string target) {
  Instr in;
  in.mnemonic = Mnemonic::jal;
  in.rd = static_cast<uint8_t>(rd);
  lines_.emplace_back(rec::Transfer{in, std::move(target)});
  return *this;
}

Builder& Builder::la(unsigned rd, std::string target) {
  lines_.emplace_back(rec::LoadAddress{rd, std::move(target)});
  return *this;
}

Builder& Builder::word(uint32_t w) {
  std::vector<uint8_t> b;
  put32(b, w);
  lines_.emplace_back(rec::Data{std::move(b)});
  return *this;
}

Builder& Builder::words(std::span<const uint32_t> ws) {
  std::vector<uint8_t> b;
  b.reserve(ws.size() * 4);
  for (uint32_t w : ws) put32(b, w);
  lines_.emplace_back(rec::Data{std::move(b)});
  return *this;
}

Builder& Builder::bytes(std::span<const uint8_t> bs) {
  lines_.emplace_back(rec::Data{{bs.begin(), bs.end()}});
  return *this;
}

Builder& Builder::align(uint32_t alignment) {
  lines_.emplace_back(rec::Align{alignment});
  return *this;
}

Builder& Builder::li(unsigned rd, uint32_t value) {
  const auto s = static_cast<int32_t>(value);
  if (s >= -2048 && s < 2048) return op(Mnemonic::addi, rd, 0, 0, s);
  const uint32_t hi = (value + 0x800) >> 12;
  const auto lo = static_cast<int32_t>(value - (hi << 12));
  op(Mnemonic::lui, rd, 0, 0, static_cast<int32_t>(hi & 0xfffff));
  if (lo != 0) op(Mnemonic::addi, rd, rd, 0, lo);
  return *this;
}

}  // namespace sercrypt::isa
