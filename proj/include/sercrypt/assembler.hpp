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

// Programmatic assembler. Programs are lists of records (instructions,
// label definitions, label references, raw data) laid out contiguously
// from a base address.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sercrypt/image.hpp"
#include "sercrypt/isa.hpp"

namespace sercrypt::isa {

class UnresolvedLabel : public std::runtime_error {
 public:
  explicit UnresolvedLabel(const std::string& label)
      : std::runtime_error("unresolved label: " + label), label_(label) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class DuplicateLabel : public std::runtime_error {
 public:
  explicit DuplicateLabel(const std::string& label)
      : std::runtime_error("duplicate label: " + label) {}
};

namespace rec {

struct Op {
  Instr instr;
};

struct Label {
  std::string name;
};

/// Branch or jal whose offset is the distance to `target`.
struct Transfer {
  Instr instr;
  std::string target;
};

/// auipc rd + addi rd: loads the absolute address of `target`.
struct LoadAddress {
  unsigned rd;
  std::string target;
};

struct Data {
  std::vector<uint8_t> bytes;
};

/// Pads with zero bytes to a multiple of `alignment`.
struct Align {
  uint32_t alignment;
};

}  // namespace rec

using AsmLine = std::variant<rec::Op, rec::Label, rec::Transfer, rec::LoadAddress, rec::Data,
                             rec::Align>;

/// Lays out `lines` from `base`. The entry point is the label "entry" when
/// defined, otherwise `base`. Throws UnresolvedLabel, DuplicateLabel or
/// FieldRange.
ProgramImage assemble(std::span<const AsmLine> lines, uint32_t base = kDefaultBase);

/// Fluent front end producing AsmLine records.
class Builder {
 public:
  Builder& op(Mnemonic m, unsigned rd = 0, unsigned rs1 = 0, unsigned rs2 = 0, int32_t imm = 0,
              unsigned bs = 0);
  Builder& label(std::string name);
  Builder& branch(Mnemonic m, unsigned rs1, unsigned rs2, std::string target);
  Builder& jal(unsigned rd, std::string target);
  Builder& la(unsigned rd, std::string target);
  Builder& word(uint32_t w);
  Builder& words(std::span<const uint32_t> ws);
  Builder& bytes(std::span<const uint8_t> bs);
  Builder& align(uint32_t alignment);

  // Pseudo-instructions.
  Builder& nop() { return op(Mnemonic::addi); }
  Builder& mv(unsigned rd, unsigned rs) { return op(Mnemonic::addi, rd, rs); }
  Builder& j(std::string target) { return jal(0, std::move(target)); }
  /// addi when the value fits 12 bits, lui + addi otherwise.
  Builder& li(unsigned rd, uint32_t value);

  const std::vector<AsmLine>& lines() const { return lines_; }
  ProgramImage assemble(uint32_t base = kDefaultBase) const {
    return isa::assemble(lines_, base);
  }

 private:
  std::vector<AsmLine> lines_;
};

}  // namespace sercrypt::isa
