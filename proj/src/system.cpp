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

#include "sercrypt/system.hpp"

#include <charconv>
#include <fstream>
#include <iterator>

#include <fmt/format.h>
#include "json.hpp"

namespace sercrypt::system {

std::optional<ImageFormat> parse_format(std::string_view name) {
  if (name == "flat-bin" || name == "bin") return ImageFormat::flat_bin;
  if (name == "hex-words" || name == "hex") return ImageFormat::hex_words;
  return std::nullopt;
}

MalformedHex::MalformedHex(unsigned line)
    : LoadError(fmt::format("malformed hex word on line {}", line)), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<uint8_t> parse_hex_words(std::span<const uint8_t> bytes) {
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  std::vector<uint8_t> out;
  unsigned line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    if (line.starts_with("0x") || line.starts_with("0X")) line.remove_prefix(2);
    uint32_t word = 0;
    const auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), word, 16);
    if (line.size() != 8 || ec != std::errc{} || end != line.data() + line.size())
      throw MalformedHex(line_no);
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(word >> (8 * i)));
  }
  return out;
}

}  // namespace

ProgramImage load_image(std::span<const uint8_t> bytes, ImageFormat format, uint32_t base,
                        std::optional<uint32_t> entry) {
  if (base & 3) throw LoadError(fmt::format("base 0x{:08x} is not word-aligned", base));
  ProgramImage image;
  image.base = base;
  image.bytes = format == ImageFormat::hex_words ? parse_hex_words(bytes)
                                                 : std::vector<uint8_t>(bytes.begin(), bytes.end());
  if (image.bytes.empty()) throw EmptyImage();
  image.code_size = static_cast<uint32_t>(image.bytes.size());
  image.entry = entry.value_or(base);
  if (image.entry < base || image.entry >= image.end())
    throw LoadError(fmt::format("entry 0x{:08x} outside image", image.entry));
  return image;
}

ProgramImage load_image(const std::filesystem::path& path, ImageFormat format, uint32_t base,
                        std::optional<uint32_t> entry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(fmt::format("cannot open {}", path.string()));
  const std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return load_image(bytes, format, base, entry);
}

void install(const ProgramImage& image, golden::ArchState& state) {
  state.mem.write(image.base, image.bytes);
  state.pc = image.entry;
}

ExecStats run(micro::Core& core, uint64_t max_cycles) {
  const auto& ms = core.state();
  while (!core.halted()) {
    if (ms.cycle + core.peek_cycles() > max_cycles) break;
    core.step();
  }
  ExecStats st;
  st.cycles = ms.cycle;
  st.instret = core.instret();
  st.cpi = st.instret ? static_cast<double>(st.cycles) / static_cast<double>(st.instret) : 0.0;
  st.halt = core.halt_reason().value_or(golden::HaltReason::max_steps);
  st.classes = core.histogram();
  st.startup_cycles = core.startup_cycles();
  st.width = core.config().serial_width;
  st.extensions = core.config().extensions;
  st.console = ms.arch.console;
  st.exit_code = ms.arch.exit_code;
  return st;
}

ExecStats run(const ProgramImage& image, const micro::CoreConfig& config, uint64_t max_cycles,
              std::ostream* trace) {
  micro::Core core(config);
  install(image, core.state().arch);
  core.set_trace(trace);
  auto st = run(core, max_cycles);
  st.code_size = image.code_size;
  return st;
}

std::string stats_json(const ExecStats& st) {
  nlohmann::json classes = nlohmann::json::object();
  for (unsigned i = 0; i < isa::kLatencyClassCount; ++i) {
    const auto& c = st.classes[i];
    if (c.count == 0) continue;
    classes[std::string(isa::latency_class_name(static_cast<isa::LatencyClass>(i)))] = {
        {"count", c.count}, {"cycles", c.cycles}};
  }
  nlohmann::json exts = nlohmann::json::array();
  for (unsigned e = 1; e < isa::kExtensionCount; ++e) {
    const auto ext = static_cast<isa::Extension>(e);
    if (st.extensions.contains(ext)) exts.push_back(std::string(isa::extension_name(ext)));
  }
  nlohmann::json j = {
      {"cycles", st.cycles},
      {"instret", st.instret},
      {"cpi", st.cpi},
      {"halt", std::string(golden::halt_reason_name(st.halt))},
      {"code_size", st.code_size},
      {"width", st.width},
      {"extensions", exts},
      {"classes", classes},
  };
  return j.dump(2);
}

}  // namespace sercrypt::system
