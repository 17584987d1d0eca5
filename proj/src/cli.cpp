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

#include "sercrypt/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "sercrypt/bench.hpp"
#include "sercrypt/cosim.hpp"
#include "sercrypt/system.hpp"

namespace sercrypt::cli {

namespace {

const std::set<unsigned> kWidths = {1, 2, 4, 8, 16, 32};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

isa::ExtensionSet extensions(const std::string& list) {
  try {
    return isa::parse_extension_list(list);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

system::ImageFormat image_format(const std::string& name, const std::string& path) {
  if (name.empty()) {
    const auto ext = std::filesystem::path(path).extension();
    return ext == ".hex" ? system::ImageFormat::hex_words : system::ImageFormat::flat_bin;
  }
  const auto f = system::parse_format(name);
  if (!f) throw UsageError(fmt::format("unknown image format '{}'", name));
  return *f;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", path));
  f << text;
}

struct ImageArgs {
  std::string path;
  std::string format;
  uint32_t base = kDefaultBase;
  std::optional<uint32_t> entry;
};

void add_image_args(CLI::App* cmd, ImageArgs& a) {
  cmd->add_option("image", a.path, "Program image")->required();
  cmd->add_option("--format", a.format, "flat-bin or hex-words (default: by file extension)");
  cmd->add_option("--base", a.base, "Load address")->capture_default_str();
  cmd->add_option("--entry", a.entry, "Start pc (default: base)");
}

int do_run(const ImageArgs& img, unsigned width, const std::string& ext, uint64_t max_cycles,
           const std::string& trace_path, const std::string& stats_path, std::ostream& out) {
  micro::CoreConfig cfg;
  cfg.serial_width = width;
  cfg.extensions = extensions(ext);
  const auto image = system::load_image(std::filesystem::path(img.path),
                                        image_format(img.format, img.path), img.base, img.entry);
  std::ofstream trace;
  if (!trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) throw std::runtime_error(fmt::format("cannot write {}", trace_path));
  }
  const auto st = system::run(image, cfg, max_cycles, trace_path.empty() ? nullptr : &trace);
  if (!st.console.empty()) out << st.console << (st.console.back() == '\n' ? "" : "\n");
  fmt::print(out, "halt:    {}\n", golden::halt_reason_name(st.halt));
  if (st.exit_code) fmt::print(out, "exit:    {}\n", *st.exit_code);
  fmt::print(out, "cycles:  {}\ninstret: {}\ncpi:     {:.3f}\n", st.cycles, st.instret, st.cpi);
  if (!stats_path.empty()) write_file(stats_path, system::stats_json(st) + "\n");

  switch (st.halt) {
    case golden::HaltReason::ebreak: return kOk;
    case golden::HaltReason::ecall: return st.exit_code.value_or(0) == 0 ? kOk : kFailed;
    case golden::HaltReason::max_steps: return kFailed;
    default: return kTrap;
  }
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Cycle-accurate simulator for serialized RV32I cores with scalar crypto", "sercrypt");
  app.require_subcommand(1);

  // run
  ImageArgs run_img;
  unsigned run_width = 32;
  std::string run_ext;
  uint64_t run_max_cycles = 1'000'000'000;
  std::string run_trace, run_stats;
  auto* run = app.add_subcommand("run", "Run an image on the cycle model");
  add_image_args(run, run_img);
  run->add_option("--width", run_width, "Serial width")->check(CLI::IsMember(kWidths))->capture_default_str();
  run->add_option("--ext", run_ext, "Extensions, e.g. zkn,zkt");
  run->add_option("--max-cycles", run_max_cycles, "Cycle limit")->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--trace", run_trace, "CSV trace output");
  run->add_option("--stats-json", run_stats, "Statistics JSON output");

  // cosim
  uint64_t cs_seed = 0;
  unsigned cs_programs = 100, cs_length = 200, cs_threads = 0;
  std::vector<unsigned> cs_widths(kWidths.begin(), kWidths.end());
  std::string cs_ext = "zkn,zkt", cs_json;
  auto* cosim = app.add_subcommand("cosim", "Torture programs, cycle model against reference");
  cosim->add_option("--seed", cs_seed, "First seed")->capture_default_str();
  cosim->add_option("--programs", cs_programs, "Number of programs")->check(CLI::PositiveNumber)->capture_default_str();
  cosim->add_option("--widths", cs_widths, "Serial widths")->delimiter(',')->check(CLI::IsMember(kWidths));
  cosim->add_option("--ext", cs_ext, "Extensions")->capture_default_str();
  cosim->add_option("--length", cs_length, "Instructions per program")->check(CLI::PositiveNumber)->capture_default_str();
  cosim->add_option("--json", cs_json, "JSON lines report");
  cosim->add_option("--threads", cs_threads, "Worker threads (0: all cores)");

  // bench
  std::string b_suite = "all", b_json;
  std::vector<unsigned> b_widths(kWidths.begin(), kWidths.end());
  std::vector<std::string> b_presets;
  unsigned b_threads = 0;
  auto* bench = app.add_subcommand("bench", "Run benchmark kernels");
  bench->add_option("--suite", b_suite, "all, aes, aes128, sha256, prince or kernel names")->capture_default_str();
  bench->add_option("--widths", b_widths, "Serial widths")->delimiter(',')->check(CLI::IsMember(kWidths));
  bench->add_option("--ext-presets", b_presets, "rv32i, zkn, zkt, zkn-zkt or a+b lists")->delimiter(',');
  bench->add_option("--json", b_json, "JSON results output");
  bench->add_option("--threads", b_threads, "Worker threads (0: all cores)");

  // audit-ct
  unsigned a_width = 32, a_trials = 256;
  std::string a_ext = "zkn,zkt";
  uint64_t a_seed = 0;
  auto* audit = app.add_subcommand("audit-ct", "Constant-time latency audit");
  audit->add_option("--width", a_width, "Serial width")->check(CLI::IsMember(kWidths))->capture_default_str();
  audit->add_option("--ext", a_ext, "Extensions")->capture_default_str();
  audit->add_option("--trials", a_trials, "Operand sets per mnemonic")->check(CLI::PositiveNumber)->capture_default_str();
  audit->add_option("--seed", a_seed, "Random operand seed")->capture_default_str();

  // disasm
  ImageArgs d_img;
  auto* disasm = app.add_subcommand("disasm", "Disassemble an image");
  add_image_args(disasm, d_img);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) {
      err << sub->help();
      return kUsage;
    }
    err << app.help();
    return kUsage;
  }

  try {
    if (*run) return do_run(run_img, run_width, run_ext, run_max_cycles, run_trace, run_stats, out);

    if (*cosim) {
      const auto exts = extensions(cs_ext);
      const auto reports = cosim::run_matrix(cs_seed, cs_programs, cs_widths, exts, cs_length, cs_threads);
      size_t failed = 0;
      std::string lines;
      for (const auto& r : reports) {
        lines += cosim::report_json(r) + "\n";
        if (!r.pass) {
          ++failed;
          fmt::print(out, "FAIL seed {} width {}: divergence at 0x{:08x} ({})\n", r.seed, r.width,
                     r.divergence ? r.divergence->pc : 0, r.divergence ? r.divergence->field : "");
        }
      }
      if (!cs_json.empty()) write_file(cs_json, lines);
      fmt::print(out, "cells: {}  pass: {}  fail: {}\n", reports.size(), reports.size() - failed, failed);
      return failed ? kFailed : kOk;
    }

    if (*bench) {
      bench::SuiteOptions opt;
      opt.kernels = bench::resolve_suite(b_suite);
      opt.widths = b_widths;
      opt.presets = b_presets;
      opt.threads = b_threads;
      for (const auto& p : opt.presets) (void)bench::parse_preset(p);
      const auto rep = bench::run_suite(opt);
      out << bench::results_table(rep);
      if (!b_json.empty()) write_file(b_json, bench::results_json(rep) + "\n");
      return kOk;
    }

    if (*audit) {
      micro::CoreConfig cfg;
      cfg.serial_width = a_width;
      cfg.extensions = extensions(a_ext);
      const auto rep = bench::audit_constant_time(cfg, a_trials, a_seed);
      out << bench::audit_table(rep);
      return rep.pass() ? kOk : kFailed;
    }

    if (*disasm) {
      const auto image = system::load_image(std::filesystem::path(d_img.path),
                                            image_format(d_img.format, d_img.path), d_img.base, d_img.entry);
      for (size_t i = 0; i + 4 <= image.bytes.size(); i += 4) {
        const uint32_t w = uint32_t{image.bytes[i]} | uint32_t{image.bytes[i + 1]} << 8 |
                           uint32_t{image.bytes[i + 2]} << 16 | uint32_t{image.bytes[i + 3]} << 24;
        out << isa::disassemble(w) << "\n";
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const system::LoadError& e) {
    err << "error: " << e.what() << "\n";
    return kLoadError;
  } catch (const bench::ChecksumMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}

}  // namespace sercrypt::cli
