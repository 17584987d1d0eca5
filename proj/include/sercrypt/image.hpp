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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sercrypt {

inline constexpr uint32_t kDefaultBase = 0x0000'1000;

/// Loadable bytes with load address and start pc.
struct ProgramImage {
  uint32_t base = kDefaultBase;
  std::vector<uint8_t> bytes;
  uint32_t entry = kDefaultBase;
  uint32_t code_size = 0;  // all bytes, tables included
  std::map<std::string, uint32_t> symbols;

  uint32_t end() const { return base + static_cast<uint32_t>(bytes.size()); }
};

}  // namespace sercrypt
