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

// Built-in kernels, suite runner, derived metrics and the constant-time
// audit.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sercrypt/image.hpp"
#include "sercrypt/microarch.hpp"
#include "sercrypt/system.hpp"

namespace sercrypt::bench {

/// Fixed data addresses shared by all kernels.
inline constexpr uint32_t kInputAddr = 0x4000;
inline constexpr uint32_t kOutputAddr = 0x5000;
inline constexpr uint32_t kWorkAddr = 0x6000;

enum class Variant : uint8_t { rv32i, zkn };

std::string_view variant_name(Variant v);

struct Kernel {
  std::string name;
  std::vector<Variant> variants;
  uint32_t input_size = 0;
  uint32_t output_size = 0;
  std::function<ProgramImage(Variant)> build;
  std::function<std::vector<uint8_t>()> default_input;
  /// Reference result computed without the simulator.
  std::function<std::vector<uint8_t>(std::span<const uint8_t>)> reference;
};

const std::vector<Kernel>& kernels();

/// Throws std::invalid_argument for unknown names.
const Kernel& kernel(std::string_view name);

/// "all", "aes" (enc+dec), "aes128" (enc), "sha256", "prince", or a comma
/// list of kernel names.
std::vector<std::string> resolve_suite(std::string_view suite);

/// "rv32i", "zkn", "zkt", "zkn-zkt" or a '+'-joined list of extension
/// names. Throws std::invalid_argument.
isa::ExtensionSet parse_preset(std::string_view preset);

/// Extensions a variant's code needs.
isa::ExtensionSet required_extensions(Variant v);

struct KernelRun {
  system::ExecStats stats;
  std::vector<uint8_t> output;
};

/// Loads the variant's image, writes `input` at kInputAddr, runs to halt
/// and reads back output_size bytes from kOutputAddr.
KernelRun run_kernel(const Kernel& k, Variant v, const micro::CoreConfig& config,
                     std::span<const uint8_t> input, uint64_t max_cycles = 1ull << 32);

/// FNV-1a-64 of the output bytes.
uint64_t checksum(std::span<const uint8_t> bytes);

class ChecksumMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BenchResult {
  std::string kernel;
  Variant variant = Variant::rv32i;
  std::string preset;
  unsigned width = 32;
  uint64_t cycles = 0;
  uint64_t instret = 0;
  uint32_t code_size = 0;
  uint64_t checksum = 0;
};

struct Speedup {
  std::string kernel;
  unsigned width;
  double value;  // rv32i cycles / zkn cycles
};

struct WidthRatio {
  std::string kernel;
  Variant variant;
  std::string preset;
  unsigned from_width;
  unsigned to_width;
  double value;  // cycles(from) / cycles(to)
};

struct CodeSizeReduction {
  std::string kernel;
  uint32_t rv32i_bytes;
  uint32_t zkn_bytes;
  double percent;
};

struct SuiteOptions {
  std::vector<std::string> kernels;
  std::vector<unsigned> widths{1, 2, 4, 8, 16, 32};
  /// Empty: each variant runs on its own preset ("rv32i" or "zkn").
  /// Otherwise each variant runs on every listed preset that enables its
  /// extensions.
  std::vector<std::string> presets;
  unsigned threads = 0;
};

struct SuiteReport {
  std::vector<BenchResult> rows;  // sorted by (kernel, variant, preset, width)
  std::vector<Speedup> speedups;
  std::vector<WidthRatio> width_ratios;
  std::vector<CodeSizeReduction> code_sizes;
};

/// Throws ChecksumMismatch when any cell disagrees with the reference.
SuiteReport run_suite(const SuiteOptions& options);

std::string results_json(const SuiteReport& report);
std::string results_table(const SuiteReport& report);

struct AuditRow {
  isa::Mnemonic mnemonic;
  unsigned min_cycles = 0;
  unsigned max_cycles = 0;
  unsigned spread() const { return max_cycles - min_cycles; }
};

struct AuditReport {
  unsigned width = 32;
  unsigned trials = 0;
  std::vector<AuditRow> rows;
  bool pass() const;
};

/// Per-instruction latency of every enabled zkt_covered mnemonic over
/// boundary operands, every shift amount and random operands.
AuditReport audit_constant_time(const micro::CoreConfig& config, unsigned trials,
                                uint64_t seed = 0);

std::string audit_table(const AuditReport& report);

}  // namespace sercrypt::bench
