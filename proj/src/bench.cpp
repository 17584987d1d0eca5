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

#include "sercrypt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "json.hpp"

namespace sercrypt::bench {

using isa::Extension;
using isa::ExtensionSet;
using isa::Mnemonic;

std::string_view variant_name(Variant v) { return v == Variant::zkn ? "zkn" : "rv32i"; }

const Kernel& kernel(std::string_view name) {
  for (const auto& k : kernels())
    if (k.name == name) return k;
  throw std::invalid_argument(fmt::format("unknown kernel '{}'", name));
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find(sep, pos);
    const auto part = s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (!part.empty()) out.emplace_back(part);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

std::vector<std::string> resolve_suite(std::string_view suite) {
  if (suite == "all" || suite.empty()) {
    std::vector<std::string> names;
    for (const auto& k : kernels()) names.push_back(k.name);
    return names;
  }
  if (suite == "aes") return {"aes128-dec", "aes128-enc"};
  if (suite == "aes128") return {"aes128-enc"};
  if (suite == "sha256") return {"sha256-compress"};
  if (suite == "prince") return {"prince-sbox"};
  auto names = split(suite, ',');
  for (const auto& n : names) (void)kernel(n);
  return names;
}

ExtensionSet parse_preset(std::string_view preset) {
  if (preset == "rv32i") return {};
  if (preset == "zkn") return ExtensionSet::zkn();
  if (preset == "zkt") return {Extension::zkt};
  if (preset == "zkn-zkt") return ExtensionSet::zkn_zkt();
  ExtensionSet set;
  const auto parts = split(preset, '+');
  if (parts.empty()) throw std::invalid_argument("empty extension preset");
  for (const auto& p : parts) {
    if (p == "rv32i") continue;
    if (p == "zkn") {
      for (auto e : {Extension::zbkb, Extension::zbkx, Extension::zbkc, Extension::zkne,
                     Extension::zknd, Extension::zknh})
        set.insert(e);
      continue;
    }
    const auto e = isa::parse_extension(p);
    if (!e) throw std::invalid_argument(fmt::format("unknown extension '{}' in preset", p));
    set.insert(*e);
  }
  return set;
}

ExtensionSet required_extensions(Variant v) {
  return v == Variant::zkn ? ExtensionSet::zkn() : ExtensionSet{};
}

uint64_t checksum(std::span<const uint8_t> bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

KernelRun run_kernel(const Kernel& k, Variant v, const micro::CoreConfig& config,
                     std::span<const uint8_t> input, uint64_t max_cycles) {
  const auto image = k.build(v);
  micro::Core core(config);
  system::install(image, core.state().arch);
  core.state().arch.mem.write(kInputAddr, input);
  KernelRun r;
  r.stats = system::run(core, max_cycles);
  r.stats.code_size = image.code_size;
  r.output = core.state().arch.mem.read(kOutputAddr, k.output_size);
  return r;
}

SuiteReport run_suite(const SuiteOptions& opt) {
  struct Cell {
    const Kernel* kernel;
    Variant variant;
    std::string preset;
    unsigned width;
  };
  std::vector<Cell> cells;
  for (const auto& name : opt.kernels) {
    const Kernel& k = kernel(name);
    for (Variant v : k.variants) {
      std::vector<std::string> presets;
      if (opt.presets.empty()) {
        presets.emplace_back(variant_name(v));
      } else {
        for (const auto& p : opt.presets)
          if (parse_preset(p).includes(required_extensions(v))) presets.push_back(p);
      }
      for (const auto& p : presets)
        for (unsigned w : opt.widths) cells.push_back({&k, v, p, w});
    }
  }

  std::map<const Kernel*, std::vector<uint8_t>> expected;
  std::map<const Kernel*, std::vector<uint8_t>> inputs;
  for (const auto& c : cells) {
    if (inputs.count(c.kernel)) continue;
    inputs[c.kernel] = c.kernel->default_input();
    expected[c.kernel] = c.kernel->reference(inputs[c.kernel]);
  }

  std::vector<BenchResult> rows(cells.size());
  std::vector<std::string> errors(cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < cells.size(); i = next++) {
      const auto& c = cells[i];
      micro::CoreConfig cfg;
      cfg.serial_width = c.width;
      cfg.extensions = parse_preset(c.preset);
      const auto run = run_kernel(*c.kernel, c.variant, cfg, inputs[c.kernel]);
      auto& row = rows[i];
      row = {c.kernel->name, c.variant, c.preset, c.width, run.stats.cycles, run.stats.instret,
             run.stats.code_size, checksum(run.output)};
      if (run.stats.halt != golden::HaltReason::ebreak)
        errors[i] = fmt::format("{}/{}/{}/w{} halted with {}", c.kernel->name, variant_name(c.variant),
                                c.preset, c.width, golden::halt_reason_name(run.stats.halt));
      else if (run.output != expected[c.kernel])
        errors[i] = fmt::format("{}/{}/{}/w{} checksum {:016x} != expected {:016x}", c.kernel->name,
                                variant_name(c.variant), c.preset, c.width, row.checksum,
                                checksum(expected[c.kernel]));
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(1, cells.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (!e.empty()) throw ChecksumMismatch(e);

  SuiteReport rep;
  rep.rows = std::move(rows);
  std::sort(rep.rows.begin(), rep.rows.end(), [](const BenchResult& a, const BenchResult& b) {
    return std::tie(a.kernel, a.variant, a.preset, a.width) <
           std::tie(b.kernel, b.variant, b.preset, b.width);
  });

  // Speedup and code size compare each kernel's rv32i and zkn variants on
  // their first available presets.
  std::map<std::tuple<std::string, Variant, unsigned>, const BenchResult*> first;
  for (const auto& r : rep.rows) first.try_emplace({r.kernel, r.variant, r.width}, &r);
  std::map<std::string, bool> sized;
  for (const auto& r : rep.rows) {
    if (r.variant != Variant::rv32i) continue;
    const auto base = first.at({r.kernel, Variant::rv32i, r.width});
    if (base != &r) continue;
    const auto z = first.find({r.kernel, Variant::zkn, r.width});
    if (z == first.end()) continue;
    rep.speedups.push_back({r.kernel, r.width,
                            static_cast<double>(r.cycles) / static_cast<double>(z->second->cycles)});
    if (!sized[r.kernel]) {
      sized[r.kernel] = true;
      rep.code_sizes.push_back(
          {r.kernel, r.code_size, z->second->code_size,
           100.0 * (1.0 - static_cast<double>(z->second->code_size) / static_cast<double>(r.code_size))});
    }
  }
  for (size_t i = 0; i + 1 < rep.rows.size(); ++i) {
    const auto& a = rep.rows[i];
    const auto& b = rep.rows[i + 1];
    if (a.kernel == b.kernel && a.variant == b.variant && a.preset == b.preset)
      rep.width_ratios.push_back({a.kernel, a.variant, a.preset, a.width, b.width,
                                  static_cast<double>(a.cycles) / static_cast<double>(b.cycles)});
  }
  return rep;
}

std::string results_json(const SuiteReport& rep) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    arr.push_back({
        {"kernel", r.kernel},
        {"variant", std::string(variant_name(r.variant))},
        {"preset", r.preset},
        {"width", r.width},
        {"cycles", r.cycles},
        {"instret", r.instret},
        {"code_size", r.code_size},
        {"checksum", fmt::format("{:016x}", r.checksum)},
        {"t_cycles", r.cycles},
    });
  }
  return arr.dump(2);
}

std::string results_table(const SuiteReport& rep) {
  std::ostringstream out;
  out << fmt::format("{:<16} {:<6} {:<8} {:>5} {:>12} {:>10} {:>7} {:>9} {}\n", "kernel", "variant",
                     "preset", "width", "cycles", "instret", "cpi", "code", "checksum");
  for (const auto& r : rep.rows)
    out << fmt::format("{:<16} {:<6} {:<8} {:>5} {:>12} {:>10} {:>7.2f} {:>9} {:016x}\n", r.kernel,
                       variant_name(r.variant), r.preset, r.width, r.cycles, r.instret,
                       r.instret ? static_cast<double>(r.cycles) / static_cast<double>(r.instret) : 0.0,
                       r.code_size, r.checksum);
  if (!rep.speedups.empty()) {
    out << "\nspeedup (rv32i cycles / zkn cycles)\n";
    for (const auto& s : rep.speedups)
      out << fmt::format("  {:<16} w{:<3} {:>7.2f}x\n", s.kernel, s.width, s.value);
  }
  if (!rep.width_ratios.empty()) {
    out << "\ncross-width ratio (cycles at narrower / wider width)\n";
    for (const auto& w : rep.width_ratios)
      out << fmt::format("  {:<16} {:<6} {:<8} w{}->w{} {:>6.3f}\n", w.kernel, variant_name(w.variant),
                         w.preset, w.from_width, w.to_width, w.value);
  }
  if (!rep.code_sizes.empty()) {
    out << "\ncode size reduction\n";
    for (const auto& c : rep.code_sizes)
      out << fmt::format("  {:<16} {:>6} -> {:>6} bytes {:>6.2f}%\n", c.kernel, c.rv32i_bytes,
                         c.zkn_bytes, c.percent);
  }
  return out.str();
}

// --- constant-time audit -------------------------------------------------------------

bool AuditReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const AuditRow& r) { return r.spread() == 0; });
}

AuditReport audit_constant_time(const micro::CoreConfig& config, unsigned trials, uint64_t seed) {
  config.validate();
  AuditReport rep;
  rep.width = config.serial_width;
  rep.trials = trials;
  std::mt19937_64 rng(seed);

  // Boundary operand values first, random values after.
  std::vector<uint32_t> boundary = {0u, ~0u, 0x80000000u, 0x7fffffffu};
  for (unsigned b = 0; b < 32; ++b) boundary.push_back(1u << b);

  constexpr uint32_t kPc = 0x1000;
  for (unsigned i = 0; i < isa::kMnemonicCount; ++i) {
    const auto m = static_cast<Mnemonic>(i);
    const auto& inf = isa::info(m);
    if (!inf.zkt_covered || !config.extensions.contains(inf.extension)) continue;
    AuditRow row{m, ~0u, 0};
    for (unsigned t = 0; t < trials; ++t) {
      const uint32_t a = t < boundary.size() ? boundary[t] : static_cast<uint32_t>(rng());
      // rs2 sweeps every shift amount in the first 32 trials.
      const uint32_t b = t < 32 ? t : t < 32 + boundary.size() ? boundary[t - 32] : static_cast<uint32_t>(rng());
      int32_t imm = 0;
      switch (inf.format) {
        case isa::Format::shift_imm: imm = static_cast<int32_t>(t % 32); break;
        case isa::Format::i: imm = static_cast<int32_t>(rng() % 4096) - 2048; break;
        case isa::Format::u: imm = static_cast<int32_t>(rng() % (1u << 20)); break;
        default: break;
      }
      const auto in = isa::make(m, 3, 1, 2, imm, isa::is_aes32(m) ? t % 4 : 0);
      micro::MicroState ms;
      ms.arch.pc = kPc;
      ms.arch.regs[1] = a;
      ms.arch.regs[2] = b;
      ms.arch.mem.store32(kPc, in.raw);
      const auto r = micro::run_instruction(ms, config, in);
      row.min_cycles = std::min(row.min_cycles, r.cycles);
      row.max_cycles = std::max(row.max_cycles, r.cycles);
    }
    if (trials == 0) row.min_cycles = 0;
    rep.rows.push_back(row);
  }
  return rep;
}

std::string audit_table(const AuditReport& rep) {
  std::ostringstream out;
  out << fmt::format("constant-time audit: width {}, {} operand sets per mnemonic\n", rep.width,
                     rep.trials);
  out << fmt::format("{:<12} {:>6} {:>6} {:>6}\n", "mnemonic", "min", "max", "spread");
  for (const auto& r : rep.rows)
    out << fmt::format("{:<12} {:>6} {:>6} {:>6}\n", isa::name(r.mnemonic), r.min_cycles, r.max_cycles,
                       r.spread());
  out << (rep.pass() ? "PASS: all spreads are 0\n" : "FAIL: data-dependent latency found\n");
  return out.str();
}

}  // namespace sercrypt::bench
