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

// Randomized torture programs and lockstep comparison of the cycle model
// against the functional reference.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sercrypt/golden.hpp"
#include "sercrypt/image.hpp"
#include "sercrypt/microarch.hpp"

namespace sercrypt::cosim {

struct TortureConfig {
  uint64_t seed = 0;
  unsigned length = 200;
  isa::ExtensionSet extensions = isa::ExtensionSet::zkn_zkt();
  /// Scratch bytes for random loads and stores; a register dump area of
  /// 128 bytes follows it inside the signature window.
  uint32_t scratch_size = 256;
  double branch_density = 0.1;
};

struct TortureProgram {
  ProgramImage image;
  uint32_t window_base = 0;
  uint32_t window_size = 0;
};

/// Registers the generator never picks as random destinations.
inline constexpr unsigned kLinkScratchReg = 28;
inline constexpr unsigned kLoopCounterReg = 29;
inline constexpr unsigned kWindowBaseReg = 30;

TortureProgram generate(const TortureConfig& config);

/// FNV-1a-64 over x1..x31 (little-endian words) followed by the window
/// bytes.
uint64_t signature(const golden::ArchState& state, uint32_t window_base, uint32_t window_size);

/// 16 lowercase hex digits.
std::string signature_hex(uint64_t sig);

struct Divergence {
  uint32_t pc = 0;
  std::string field;  // "pc", "x5", "mem[0x00008010]", "outcome", ...
};

struct Report {
  uint64_t seed = 0;
  unsigned width = 32;
  isa::ExtensionSet extensions;
  bool pass = false;
  uint64_t sig_micro = 0;
  uint64_t sig_golden = 0;
  uint64_t instret = 0;
  std::optional<Divergence> divergence;
};

/// Steps both models one instruction at a time and compares pc,
/// registers, halt outcomes and (after stores) the window. Stops at the
/// first divergence.
Report cosim_run(const TortureProgram& program, const micro::CoreConfig& core, uint64_t seed = 0,
                 const micro::FaultInjector& fault = {}, uint64_t max_steps = 1'000'000);

/// Convenience: generate and run.
Report cosim_run(const TortureConfig& torture, const micro::CoreConfig& core);

/// Seeds [first_seed, first_seed + programs) x widths. Results are ordered
/// by (seed, width) regardless of `threads`.
std::vector<Report> run_matrix(uint64_t first_seed, unsigned programs,
                               std::span<const unsigned> widths, isa::ExtensionSet extensions,
                               unsigned length = 200, unsigned threads = 0);

/// {seed, width, extensions, pass, sig_micro, sig_golden, divergence_pc?}
/// as one JSON line with sorted keys.
std::string report_json(const Report& report);

/// Test fixture: a fault that flips bit 0 of rd after every execution of
/// `m` (rd != x0).
micro::FaultInjector flip_result_bit(isa::Mnemonic m);

}  // namespace sercrypt::cosim
