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

// Program loading, the run loop and execution statistics.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "sercrypt/golden.hpp"
#include "sercrypt/image.hpp"
#include "sercrypt/microarch.hpp"

namespace sercrypt::system {

enum class ImageFormat : uint8_t { flat_bin, hex_words };

std::optional<ImageFormat> parse_format(std::string_view name);

class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedHex : public LoadError {
 public:
  explicit MalformedHex(unsigned line);
  unsigned line() const { return line_; }

 private:
  unsigned line_;
};

class EmptyImage : public LoadError {
 public:
  EmptyImage() : LoadError("empty image") {}
};

/// hex_words: one 8-digit hex word per line, stored little-endian; '#'
/// starts a comment, blank lines are skipped.
ProgramImage load_image(std::span<const uint8_t> bytes, ImageFormat format,
                        uint32_t base = kDefaultBase, std::optional<uint32_t> entry = {});

ProgramImage load_image(const std::filesystem::path& path, ImageFormat format,
                        uint32_t base = kDefaultBase, std::optional<uint32_t> entry = {});

/// Copies the image into memory and points pc at its entry.
void install(const ProgramImage& image, golden::ArchState& state);

struct ExecStats {
  uint64_t cycles = 0;
  uint64_t instret = 0;
  double cpi = 0.0;
  golden::HaltReason halt = golden::HaltReason::none;
  micro::ClassHistogram classes{};
  uint64_t startup_cycles = 0;
  uint32_t code_size = 0;
  unsigned width = 32;
  isa::ExtensionSet extensions;
  std::string console;
  std::optional<uint32_t> exit_code;
};

/// Runs until a halt or until the next instruction would take the cycle
/// count past `max_cycles` (halt reason max_steps).
ExecStats run(const ProgramImage& image, const micro::CoreConfig& config, uint64_t max_cycles,
              std::ostream* trace = nullptr);

/// Same loop over an already prepared core.
ExecStats run(micro::Core& core, uint64_t max_cycles);

/// {cycles, instret, cpi, halt, code_size, width, extensions, classes}
/// with sorted keys.
std::string stats_json(const ExecStats& stats);

}  // namespace sercrypt::system
