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

// Hand-assembled benchmark kernels and their reference models.

#include <array>
#include <bit>
#include <random>
#include <stdexcept>

#include "sercrypt/assembler.hpp"
#include "sercrypt/bench.hpp"

namespace sercrypt::bench {

using isa::Builder;
using isa::Mnemonic;
using M = isa::Mnemonic;

namespace {

enum Reg : unsigned {
  zero, ra, sp, gp, tp, t0, t1, t2, s0, s1, a0, a1, a2, a3, a4, a5,
  a6, a7, s2, s3, s4, s5, s6, s7, s8, s9, s10, s11, t3, t4, t5, t6,
};

// --- reference arithmetic ----------------------------------------------------------

uint8_t gmul(uint8_t a, uint8_t b) {
  uint8_t p = 0;
  while (b) {
    if (b & 1) p ^= a;
    a = static_cast<uint8_t>((a << 1) ^ ((a & 0x80) ? 0x1b : 0));
    b >>= 1;
  }
  return p;
}

struct SboxPair {
  std::array<uint8_t, 256> fwd{};
  std::array<uint8_t, 256> inv{};
};

// Multiplicative inverse followed by the affine map.
const SboxPair& sboxes() {
  static const SboxPair tables = [] {
    SboxPair t;
    for (unsigned x = 0; x < 256; ++x) {
      uint8_t inv = 0;
      for (unsigned y = 1; y < 256 && x; ++y)
        if (gmul(static_cast<uint8_t>(x), static_cast<uint8_t>(y)) == 1) inv = static_cast<uint8_t>(y);
      uint8_t s = inv;
      for (int r = 1; r <= 4; ++r) s ^= std::rotl(inv, r);
      s ^= 0x63;
      t.fwd[x] = s;
      t.inv[s] = static_cast<uint8_t>(x);
    }
    return t;
  }();
  return tables;
}

using Block = std::array<uint8_t, 16>;
using RoundKeys = std::array<Block, 11>;

RoundKeys aes_expand(std::span<const uint8_t> key) {
  const auto& sb = sboxes().fwd;
  std::array<uint8_t, 176> w{};
  std::copy(key.begin(), key.begin() + 16, w.begin());
  uint8_t rcon = 1;
  for (unsigned i = 16; i < 176; i += 4) {
    std::array<uint8_t, 4> t{w[i - 4], w[i - 3], w[i - 2], w[i - 1]};
    if (i % 16 == 0) {
      t = {static_cast<uint8_t>(sb[t[1]] ^ rcon), sb[t[2]], sb[t[3]], sb[t[0]]};
      rcon = gmul(rcon, 2);
    }
    for (unsigned j = 0; j < 4; ++j) w[i + j] = w[i - 16 + j] ^ t[j];
  }
  RoundKeys rk{};
  for (unsigned r = 0; r < 11; ++r) std::copy(w.begin() + 16 * r, w.begin() + 16 * r + 16, rk[r].begin());
  return rk;
}

void add_key(Block& s, const Block& k) {
  for (unsigned i = 0; i < 16; ++i) s[i] ^= k[i];
}

// State byte (row r, column c) lives at s[4c + r].
void shift_rows(Block& s, bool inverse) {
  Block o{};
  for (unsigned c = 0; c < 4; ++c)
    for (unsigned r = 0; r < 4; ++r) {
      const unsigned src = inverse ? (c + 4 - r) % 4 : (c + r) % 4;
      o[4 * c + r] = s[4 * src + r];
    }
  s = o;
}

void mix_columns(Block& s, bool inverse) {
  static constexpr uint8_t kFwd[4] = {2, 3, 1, 1};
  static constexpr uint8_t kInv[4] = {14, 11, 13, 9};
  const uint8_t* m = inverse ? kInv : kFwd;
  for (unsigned c = 0; c < 4; ++c) {
    uint8_t col[4];
    for (unsigned r = 0; r < 4; ++r) {
      col[r] = 0;
      for (unsigned k = 0; k < 4; ++k) col[r] ^= gmul(m[(k + 4 - r) % 4], s[4 * c + k]);
    }
    for (unsigned r = 0; r < 4; ++r) s[4 * c + r] = col[r];
  }
}

std::vector<uint8_t> aes_reference(std::span<const uint8_t> in, bool decrypt) {
  const auto rk = aes_expand(in.subspan(0, 16));
  const auto& sb = sboxes();
  Block s{};
  std::copy(in.begin() + 16, in.begin() + 32, s.begin());
  if (!decrypt) {
    add_key(s, rk[0]);
    for (unsigned r = 1; r <= 10; ++r) {
      for (auto& b : s) b = sb.fwd[b];
      shift_rows(s, false);
      if (r != 10) mix_columns(s, false);
      add_key(s, rk[r]);
    }
  } else {
    add_key(s, rk[10]);
    for (unsigned r = 9;; --r) {
      shift_rows(s, true);
      for (auto& b : s) b = sb.inv[b];
      add_key(s, rk[r]);
      if (r == 0) break;
      mix_columns(s, true);
    }
  }
  return {s.begin(), s.end()};
}

constexpr std::array<uint32_t, 64> kSha256K = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2,
};

constexpr std::array<uint32_t, 8> kSha256Iv = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                               0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};

uint32_t get32le(std::span<const uint8_t> b, size_t off) {
  return uint32_t{b[off]} | uint32_t{b[off + 1]} << 8 | uint32_t{b[off + 2]} << 16 |
         uint32_t{b[off + 3]} << 24;
}

void put32le(std::vector<uint8_t>& out, uint32_t w) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(w >> (8 * i)));
}

// Input: eight state words (little-endian) then one 64-byte block.
std::vector<uint8_t> sha256_reference(std::span<const uint8_t> in) {
  std::array<uint32_t, 8> h{};
  for (unsigned i = 0; i < 8; ++i) h[i] = get32le(in, 4 * i);
  std::array<uint32_t, 64> w{};
  for (unsigned t = 0; t < 16; ++t) {
    const size_t o = 32 + 4 * t;
    w[t] = uint32_t{in[o]} << 24 | uint32_t{in[o + 1]} << 16 | uint32_t{in[o + 2]} << 8 | in[o + 3];
  }
  auto rr = [](uint32_t x, int n) { return std::rotr(x, n); };
  for (unsigned t = 16; t < 64; ++t) {
    const uint32_t s0 = rr(w[t - 15], 7) ^ rr(w[t - 15], 18) ^ (w[t - 15] >> 3);
    const uint32_t s1 = rr(w[t - 2], 17) ^ rr(w[t - 2], 19) ^ (w[t - 2] >> 10);
    w[t] = w[t - 16] + s0 + w[t - 7] + s1;
  }
  auto v = h;
  for (unsigned t = 0; t < 64; ++t) {
    const uint32_t e = v[4], a = v[0];
    const uint32_t t1 = v[7] + (rr(e, 6) ^ rr(e, 11) ^ rr(e, 25)) + ((e & v[5]) ^ (~e & v[6])) +
                        kSha256K[t] + w[t];
    const uint32_t t2 = (rr(a, 2) ^ rr(a, 13) ^ rr(a, 22)) + ((a & v[1]) ^ (a & v[2]) ^ (v[1] & v[2]));
    for (unsigned i = 7; i > 0; --i) v[i] = v[i - 1];
    v[4] += t1;
    v[0] = t1 + t2;
  }
  std::vector<uint8_t> out;
  for (unsigned i = 0; i < 8; ++i) put32le(out, h[i] + v[i]);
  return out;
}

constexpr std::array<uint8_t, 16> kPrinceSbox = {0xb, 0xf, 0x3, 0x2, 0xa, 0xc, 0x9, 0x1,
                                                 0x6, 0x7, 0x8, 0x0, 0xe, 0x5, 0xd, 0x4};

std::vector<uint8_t> prince_reference(std::span<const uint8_t> in) {
  std::vector<uint8_t> out;
  for (size_t i = 0; i < in.size(); ++i)
    out.push_back(static_cast<uint8_t>(kPrinceSbox[in[i] & 0xf] | kPrinceSbox[in[i] >> 4] << 4));
  return out;
}

// --- synthetic kernels -------------------------------------------------------------

struct SynthOp {
  Mnemonic m;
  unsigned rd, rs1, rs2;
  int32_t imm;
};

uint32_t eval(const SynthOp& op, uint32_t a, uint32_t b) {
  const auto imm = static_cast<uint32_t>(op.imm);
  const auto sa = static_cast<int32_t>(a);
  switch (op.m) {
    case M::add: return a + b;
    case M::sub: return a - b;
    case M::xor_: return a ^ b;
    case M::or_: return a | b;
    case M::and_: return a & b;
    case M::slt: return sa < static_cast<int32_t>(b) ? 1 : 0;
    case M::sltu: return a < b ? 1 : 0;
    case M::addi: return a + imm;
    case M::xori: return a ^ imm;
    case M::sll: return a << (b & 31);
    case M::srl: return a >> (b & 31);
    case M::sra: return static_cast<uint32_t>(sa >> (b & 31));
    case M::slli: return a << imm;
    case M::srli: return a >> imm;
    case M::srai: return static_cast<uint32_t>(sa >> imm);
    default: throw std::logic_error("synthetic op not supported");
  }
}

struct Synthetic {
  std::vector<SynthOp> body;
  unsigned iterations;
};

// Registers s0..s7 hold the working set; they start from the input words
// and are written to the output at the end.
constexpr std::array<unsigned, 8> kSynthRegs = {s0, s1, s2, s3, s4, s5, s6, s7};

const Synthetic& alumix() {
  static const Synthetic k = [] {
    Synthetic s;
    s.iterations = 32;
    constexpr Mnemonic ops[] = {M::add, M::xor_, M::sub, M::or_, M::and_, M::add, M::sltu, M::xor_,
                                M::add, M::slt, M::sub, M::xor_, M::or_, M::add, M::and_};
    for (unsigned i = 0; i < 30; ++i) {
      const Mnemonic m = ops[i % std::size(ops)];
      const unsigned rd = kSynthRegs[(i * 3 + 1) % 8];
      const unsigned rs1 = kSynthRegs[(i * 5 + 2) % 8];
      const unsigned rs2 = kSynthRegs[(i * 7 + 3) % 8];
      s.body.push_back({m, rd, rs1, rs2, 0});
    }
    return s;
  }();
  return k;
}

const Synthetic& shiftstorm() {
  static const Synthetic k = [] {
    Synthetic s;
    s.iterations = 32;
    for (unsigned i = 0; i < 8; ++i) {
      const unsigned x = kSynthRegs[i % 8];
      const unsigned y = kSynthRegs[(i + 3) % 8];
      const unsigned z = kSynthRegs[(i + 5) % 8];
      s.body.push_back({M::sll, t0, x, y, 0});
      s.body.push_back({M::srl, t1, y, z, 0});
      s.body.push_back({M::sra, t2, z, x, 0});
      s.body.push_back({M::slli, t3, x, 0, static_cast<int32_t>((7 * i + 3) % 32)});
      s.body.push_back({M::srli, t4, y, 0, static_cast<int32_t>((11 * i + 5) % 32)});
      s.body.push_back({M::srai, t5, z, 0, static_cast<int32_t>((13 * i + 1) % 32)});
      s.body.push_back({M::xor_, x, x, t0, 0});
      s.body.push_back({M::add, y, y, t1, 0});
      s.body.push_back({M::xor_, z, z, t2, 0});
      s.body.push_back({M::add, x, x, t3, 0});
      s.body.push_back({M::xor_, y, y, t4, 0});
      s.body.push_back({M::addi, z, t5, 0, static_cast<int32_t>(i * 37 + 1)});
    }
    return s;
  }();
  return k;
}

std::vector<uint8_t> synthetic_reference(const Synthetic& k, std::span<const uint8_t> in) {
  std::array<uint32_t, 32> r{};
  for (unsigned i = 0; i < 8; ++i) r[kSynthRegs[i]] = get32le(in, 4 * i);
  for (unsigned it = 0; it < k.iterations; ++it)
    for (const auto& op : k.body) {
      const uint32_t v = eval(op, r[op.rs1], r[op.rs2]);
      if (op.rd) r[op.rd] = v;
    }
  std::vector<uint8_t> out;
  for (unsigned reg : kSynthRegs) put32le(out, r[reg]);
  return out;
}

ProgramImage synthetic_program(const Synthetic& k) {
  Builder b;
  b.label("entry");
  b.li(a0, kInputAddr).li(a1, kOutputAddr);
  for (unsigned i = 0; i < 8; ++i) b.op(M::lw, kSynthRegs[i], a0, 0, static_cast<int32_t>(4 * i));
  b.li(a2, k.iterations);
  b.label("loop");
  for (const auto& op : k.body) b.op(op.m, op.rd, op.rs1, op.rs2, op.imm);
  b.op(M::addi, a2, a2, 0, -1);
  b.branch(M::bne, a2, zero, "loop");
  for (unsigned i = 0; i < 8; ++i) b.op(M::sw, 0, a1, kSynthRegs[i], static_cast<int32_t>(4 * i));
  b.op(M::ebreak);
  return b.assemble();
}

// --- AES kernels -------------------------------------------------------------------

constexpr std::array<uint32_t, 10> kRcon = {0x01, 0x02, 0x04, 0x08, 0x10,
                                            0x20, 0x40, 0x80, 0x1b, 0x36};

std::vector<uint32_t> te0_table() {
  const auto& sb = sboxes().fwd;
  std::vector<uint32_t> t(256);
  for (unsigned x = 0; x < 256; ++x) {
    const uint8_t s = sb[x];
    t[x] = uint32_t{gmul(s, 2)} | uint32_t{s} << 8 | uint32_t{s} << 16 | uint32_t{gmul(s, 3)} << 24;
  }
  return t;
}

std::vector<uint32_t> td0_table() {
  const auto& sb = sboxes().inv;
  std::vector<uint32_t> t(256);
  for (unsigned x = 0; x < 256; ++x) {
    const uint8_t s = sb[x];
    t[x] = uint32_t{gmul(s, 14)} | uint32_t{gmul(s, 9)} << 8 | uint32_t{gmul(s, 13)} << 16 |
           uint32_t{gmul(s, 11)} << 24;
  }
  return t;
}

// Word-indexed offset of byte `i` of `src`: ((src >> 8i) & 0xff) * 4.
void word_index(Builder& b, unsigned dst, unsigned src, unsigned i) {
  if (i == 0)
    b.op(M::slli, dst, src, 0, 2);
  else
    b.op(M::srli, dst, src, 0, static_cast<int32_t>(8 * i - 2));
  b.op(M::andi, dst, dst, 0, 0x3fc);
}

void byte_index(Builder& b, unsigned dst, unsigned src, unsigned i) {
  if (i == 0) {
    b.op(M::andi, dst, src, 0, 0xff);
    return;
  }
  b.op(M::srli, dst, src, 0, static_cast<int32_t>(8 * i));
  if (i != 3) b.op(M::andi, dst, dst, 0, 0xff);
}

void rotl_rv32i(Builder& b, unsigned reg, unsigned tmp, unsigned n) {
  if (n == 0) return;
  b.op(M::slli, tmp, reg, 0, static_cast<int32_t>(n));
  b.op(M::srli, reg, reg, 0, static_cast<int32_t>(32 - n));
  b.op(M::or_, reg, reg, tmp);
}

// acc (^)= table_byte[byte i of src] << 8*pos, with `table` holding bytes
// at `stride` spacing plus `lane`.
void sbox_term(Builder& b, unsigned acc, bool first, unsigned src, unsigned i, unsigned pos,
               unsigned table, bool word_table, unsigned tmp) {
  if (word_table)
    word_index(b, tmp, src, i);
  else
    byte_index(b, tmp, src, i);
  b.op(M::add, tmp, tmp, table);
  b.op(M::lbu, tmp, tmp, 0, word_table ? 1 : 0);
  if (pos) b.op(M::slli, tmp, tmp, 0, static_cast<int32_t>(8 * pos));
  if (first)
    b.op(M::addi, acc, tmp, 0, 0);
  else
    b.op(M::xor_, acc, acc, tmp);
}

// Key schedule into kWorkAddr (44 words). Key at kInputAddr.
// rv32i: S-box bytes come from `sbox_table` (word table: byte 1 of Te0;
// byte table: plain S-box).
void key_schedule(Builder& b, Variant v, unsigned sbox_table, bool word_table) {
  b.li(a0, kInputAddr).li(a1, kWorkAddr);
  b.la(a2, "rcon");
  b.li(a3, 10);
  const unsigned w[4] = {s0, s1, s2, s3};
  for (unsigned i = 0; i < 4; ++i) {
    b.op(M::lw, w[i], a0, 0, static_cast<int32_t>(4 * i));
    b.op(M::sw, 0, a1, w[i], static_cast<int32_t>(4 * i));
  }
  b.label("kx");
  if (v == Variant::zkn) {
    b.op(M::rori, t0, s3, 0, 8);
    b.op(M::lw, t1, a2, 0, 0);
    b.op(M::xor_, s0, s0, t1);
    for (unsigned i = 0; i < 4; ++i) b.op(M::aes32esi, s0, s0, t0, 0, i);
  } else {
    // SubWord(RotWord(w3)): byte (i+1)%4 of w3 lands in byte i.
    for (unsigned i = 0; i < 4; ++i)
      sbox_term(b, t0, i == 0, s3, (i + 1) % 4, i, sbox_table, word_table, t2);
    b.op(M::lw, t1, a2, 0, 0);
    b.op(M::xor_, s0, s0, t1);
    b.op(M::xor_, s0, s0, t0);
  }
  b.op(M::xor_, s1, s1, s0).op(M::xor_, s2, s2, s1).op(M::xor_, s3, s3, s2);
  b.op(M::addi, a1, a1, 0, 16);
  for (unsigned i = 0; i < 4; ++i) b.op(M::sw, 0, a1, w[i], static_cast<int32_t>(4 * i));
  b.op(M::addi, a2, a2, 0, 4).op(M::addi, a3, a3, 0, -1);
  b.branch(M::bne, a3, zero, "kx");
}

constexpr std::array<unsigned, 4> kStateA = {s4, s5, s6, s7};
constexpr std::array<unsigned, 4> kStateB = {s8, s9, s10, s11};

// Loads the block at kInputAddr+16 into kStateA and adds round key `r`.
void load_block(Builder& b, unsigned round) {
  b.li(a1, kWorkAddr);
  for (unsigned j = 0; j < 4; ++j) {
    b.op(M::lw, kStateA[j], a0, 0, static_cast<int32_t>(16 + 4 * j));
    b.op(M::lw, t0, a1, 0, static_cast<int32_t>(16 * round + 4 * j));
    b.op(M::xor_, kStateA[j], kStateA[j], t0);
  }
}

void store_block(Builder& b, const std::array<unsigned, 4>& st) {
  b.li(a2, kOutputAddr);
  for (unsigned j = 0; j < 4; ++j) b.op(M::sw, 0, a2, st[j], static_cast<int32_t>(4 * j));
}

// Source column of row i for output column j.
unsigned column(unsigned j, unsigned i, bool inverse) { return inverse ? (j + 4 - i) % 4 : (j + i) % 4; }

ProgramImage aes_program(Variant v, bool decrypt) {
  Builder b;
  if (v == Variant::rv32i) {
    b.label(decrypt ? "td0" : "te0");
    b.words(decrypt ? td0_table() : te0_table());
    if (decrypt) {
      b.label("sinv").bytes(sboxes().inv);
      b.label("sfwd").bytes(sboxes().fwd);
    }
  }
  b.label("rcon").words(kRcon);
  b.align(4);
  b.label("entry");

  if (v == Variant::rv32i) {
    b.la(gp, decrypt ? "td0" : "te0");
    if (decrypt) {
      b.la(tp, "sinv");
      b.la(a4, "sfwd");
    }
  }
  key_schedule(b, v, decrypt && v == Variant::rv32i ? a4 : gp, !decrypt);

  if (decrypt) {
    // Round keys 1..9 become InvMixColumns(rk) for the equivalent inverse
    // cipher.
    b.li(a1, kWorkAddr + 16).li(a3, 36);
    b.label("imc");
    b.op(M::lw, t0, a1, 0, 0);
    if (v == Variant::zkn) {
      for (unsigned i = 0; i < 4; ++i) b.op(M::aes32esi, t1, i == 0 ? zero : t1, t0, 0, i);
      for (unsigned i = 0; i < 4; ++i) b.op(M::aes32dsmi, t2, i == 0 ? zero : t2, t1, 0, i);
    } else {
      for (unsigned i = 0; i < 4; ++i) {
        byte_index(b, t1, t0, i);
        b.op(M::add, t1, t1, a4).op(M::lbu, t1, t1, 0, 0);
        b.op(M::slli, t1, t1, 0, 2).op(M::add, t1, t1, gp).op(M::lw, t1, t1, 0, 0);
        rotl_rv32i(b, t1, a5, 8 * i);
        if (i == 0)
          b.op(M::addi, t2, t1, 0, 0);
        else
          b.op(M::xor_, t2, t2, t1);
      }
    }
    b.op(M::sw, 0, a1, t2, 0);
    b.op(M::addi, a1, a1, 0, 4).op(M::addi, a3, a3, 0, -1);
    b.branch(M::bne, a3, zero, "imc");
  }

  load_block(b, decrypt ? 10 : 0);
  auto cur = kStateA;
  auto nxt = kStateB;
  for (unsigned step = 1; step <= 10; ++step) {
    const unsigned rk = decrypt ? 10 - step : step;
    const bool last = step == 10;
    for (unsigned j = 0; j < 4; ++j) {
      const unsigned acc = nxt[j];
      b.op(M::lw, acc, a1, 0, static_cast<int32_t>(16 * rk + 4 * j));
      for (unsigned i = 0; i < 4; ++i) {
        const unsigned src = cur[column(j, i, decrypt)];
        if (v == Variant::zkn) {
          const Mnemonic m = decrypt ? (last ? M::aes32dsi : M::aes32dsmi)
                                     : (last ? M::aes32esi : M::aes32esmi);
          b.op(m, acc, acc, src, 0, i);
        } else if (last) {
          if (decrypt)
            sbox_term(b, acc, false, src, i, i, tp, false, t0);
          else
            sbox_term(b, acc, false, src, i, i, gp, true, t0);
        } else {
          word_index(b, t0, src, i);
          b.op(M::add, t0, t0, gp).op(M::lw, t0, t0, 0, 0);
          rotl_rv32i(b, t0, t1, 8 * i);
          b.op(M::xor_, acc, acc, t0);
        }
      }
    }
    std::swap(cur, nxt);
  }
  store_block(b, cur);
  b.op(M::ebreak);
  return b.assemble();
}

// --- SHA-256 kernel ----------------------------------------------------------------

void ror_rv32i(Builder& b, unsigned dst, unsigned src, unsigned n, unsigned tmp) {
  b.op(M::srli, dst, src, 0, static_cast<int32_t>(n));
  b.op(M::slli, tmp, src, 0, static_cast<int32_t>(32 - n));
  b.op(M::or_, dst, dst, tmp);
}

// dst = ror(x,r0) ^ ror(x,r1) ^ (shr ? x >> r2 : ror(x,r2)). Clobbers t1/t2
// unless they are dst.
void sigma_rv32i(Builder& b, unsigned dst, unsigned x, unsigned r0, unsigned r1, unsigned r2,
                 bool shr, unsigned s1tmp, unsigned s2tmp) {
  ror_rv32i(b, dst, x, r0, s2tmp);
  ror_rv32i(b, s1tmp, x, r1, s2tmp);
  b.op(M::xor_, dst, dst, s1tmp);
  if (shr)
    b.op(M::srli, s1tmp, x, 0, static_cast<int32_t>(r2));
  else
    ror_rv32i(b, s1tmp, x, r2, s2tmp);
  b.op(M::xor_, dst, dst, s1tmp);
}

ProgramImage sha256_program(Variant v) {
  const bool z = v == Variant::zkn;
  Builder b;
  b.label("k").words(kSha256K);
  b.label("entry");
  b.li(a0, kInputAddr).li(a1, kWorkAddr);

  for (unsigned t = 0; t < 16; ++t) {
    const auto off = static_cast<int32_t>(32 + 4 * t);
    if (z) {
      b.op(M::lw, t0, a0, 0, off).op(M::rev8, t0, t0);
    } else {
      b.op(M::lbu, t0, a0, 0, off).op(M::slli, t0, t0, 0, 24);
      b.op(M::lbu, t1, a0, 0, off + 1).op(M::slli, t1, t1, 0, 16).op(M::or_, t0, t0, t1);
      b.op(M::lbu, t1, a0, 0, off + 2).op(M::slli, t1, t1, 0, 8).op(M::or_, t0, t0, t1);
      b.op(M::lbu, t1, a0, 0, off + 3).op(M::or_, t0, t0, t1);
    }
    b.op(M::sw, 0, a1, t0, static_cast<int32_t>(4 * t));
  }

  b.op(M::addi, a2, a1, 0, 64).li(a3, 48);
  b.label("sched");
  b.op(M::lw, a4, a2, 0, -8);
  if (z) b.op(M::sha256sig1, t0, a4); else sigma_rv32i(b, t0, a4, 17, 19, 10, true, t1, t2);
  b.op(M::lw, a4, a2, 0, -28).op(M::add, t0, t0, a4);
  b.op(M::lw, a4, a2, 0, -60);
  if (z) b.op(M::sha256sig0, t1, a4); else sigma_rv32i(b, t1, a4, 7, 18, 3, true, t2, a5);
  b.op(M::add, t0, t0, t1);
  b.op(M::lw, a4, a2, 0, -64).op(M::add, t0, t0, a4);
  b.op(M::sw, 0, a2, t0, 0);
  b.op(M::addi, a2, a2, 0, 4).op(M::addi, a3, a3, 0, -1);
  b.branch(M::bne, a3, zero, "sched");

  const std::array<unsigned, 8> regs = {s2, s3, s4, s5, s6, s7, s8, s9};
  for (unsigned i = 0; i < 8; ++i) b.op(M::lw, regs[i], a0, 0, static_cast<int32_t>(4 * i));
  b.la(a4, "k");
  b.op(M::addi, a2, a1, 0, 0).li(a3, 8);
  b.label("rounds");
  for (unsigned k = 0; k < 8; ++k) {
    auto var = [&](unsigned x) { return regs[(x + 8 - k) % 8]; };
    const unsigned va = var(0), vb = var(1), vc = var(2), vd = var(3);
    const unsigned ve = var(4), vf = var(5), vg = var(6), vh = var(7);
    if (z) b.op(M::sha256sum1, t0, ve); else sigma_rv32i(b, t0, ve, 6, 11, 25, false, t1, t2);
    b.op(M::add, vh, vh, t0);
    b.op(M::and_, t1, ve, vf);
    if (z) {
      b.op(M::andn, t2, vg, ve);
    } else {
      b.op(M::xori, t2, ve, 0, -1).op(M::and_, t2, t2, vg);
    }
    b.op(M::xor_, t1, t1, t2).op(M::add, vh, vh, t1);
    b.op(M::lw, t0, a4, 0, static_cast<int32_t>(4 * k)).op(M::add, vh, vh, t0);
    b.op(M::lw, t0, a2, 0, static_cast<int32_t>(4 * k)).op(M::add, vh, vh, t0);
    b.op(M::add, vd, vd, vh);
    if (z) b.op(M::sha256sum0, t0, va); else sigma_rv32i(b, t0, va, 2, 13, 22, false, t1, t2);
    b.op(M::add, vh, vh, t0);
    b.op(M::or_, t1, va, vb).op(M::and_, t1, t1, vc);
    b.op(M::and_, t2, va, vb).op(M::or_, t1, t1, t2);
    b.op(M::add, vh, vh, t1);
  }
  b.op(M::addi, a4, a4, 0, 32).op(M::addi, a2, a2, 0, 32).op(M::addi, a3, a3, 0, -1);
  b.branch(M::bne, a3, zero, "rounds");

  b.li(a5, kOutputAddr);
  for (unsigned i = 0; i < 8; ++i) {
    b.op(M::lw, t0, a0, 0, static_cast<int32_t>(4 * i));
    b.op(M::add, t0, t0, regs[i]);
    b.op(M::sw, 0, a5, t0, static_cast<int32_t>(4 * i));
  }
  b.op(M::ebreak);
  return b.assemble();
}

// --- Prince S-box kernel -----------------------------------------------------------

constexpr unsigned kPrinceWords = 16;

ProgramImage prince_program(Variant v) {
  Builder b;
  if (v == Variant::rv32i) b.label("sbox").bytes(kPrinceSbox);
  b.align(4);
  b.label("entry");
  b.li(a0, kInputAddr).li(a1, kOutputAddr).li(a2, kPrinceWords);
  if (v == Variant::zkn) {
    uint32_t lo = 0, hi = 0;
    for (unsigned i = 0; i < 8; ++i) {
      lo |= uint32_t{kPrinceSbox[i]} << (4 * i);
      hi |= uint32_t{kPrinceSbox[i + 8]} << (4 * i);
    }
    b.li(s0, lo).li(s1, hi).li(s2, 0x88888888u);
  } else {
    b.la(gp, "sbox");
  }
  b.label("loop");
  b.op(M::lw, t0, a0, 0, 0);
  if (v == Variant::zkn) {
    // Nibbles 0..7 index the low table; x ^ 8 maps 8..15 into range for
    // the high table and pushes 0..7 out of range.
    b.op(M::xperm4, t1, s0, t0);
    b.op(M::xor_, t2, t0, s2);
    b.op(M::xperm4, t2, s1, t2);
    b.op(M::or_, t1, t1, t2);
  } else {
    for (unsigned n = 0; n < 8; ++n) {
      if (n == 0)
        b.op(M::andi, t2, t0, 0, 0xf);
      else
        b.op(M::srli, t2, t0, 0, static_cast<int32_t>(4 * n)).op(M::andi, t2, t2, 0, 0xf);
      b.op(M::add, t2, t2, gp).op(M::lbu, t2, t2, 0, 0);
      if (n == 0) {
        b.op(M::addi, t1, t2, 0, 0);
      } else {
        b.op(M::slli, t2, t2, 0, static_cast<int32_t>(4 * n));
        b.op(M::or_, t1, t1, t2);
      }
    }
  }
  b.op(M::sw, 0, a1, t1, 0);
  b.op(M::addi, a0, a0, 0, 4).op(M::addi, a1, a1, 0, 4).op(M::addi, a2, a2, 0, -1);
  b.branch(M::bne, a2, zero, "loop");
  b.op(M::ebreak);
  return b.assemble();
}

std::vector<uint8_t> random_bytes(size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<uint8_t> out(n);
  for (auto& x : out) x = static_cast<uint8_t>(rng());
  return out;
}

}  // namespace

const std::vector<Kernel>& kernels() {
  static const std::vector<Kernel> all = [] {
    std::vector<Kernel> k;
    const std::vector<Variant> both = {Variant::rv32i, Variant::zkn};

    // FIPS-197 Appendix C.1 key and plaintext.
    const std::vector<uint8_t> fips_key = {0x00, 0x01, 0x02, 0x03, 0x04, 0x05, 0x06, 0x07,
                                           0x08, 0x09, 0x0a, 0x0b, 0x0c, 0x0d, 0x0e, 0x0f};
    const std::vector<uint8_t> fips_pt = {0x00, 0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77,
                                          0x88, 0x99, 0xaa, 0xbb, 0xcc, 0xdd, 0xee, 0xff};

    k.push_back({"aes128-enc", both, 32, 16, [](Variant v) { return aes_program(v, false); },
                 [=] {
                   auto in = fips_key;
                   in.insert(in.end(), fips_pt.begin(), fips_pt.end());
                   return in;
                 },
                 [](std::span<const uint8_t> in) { return aes_reference(in, false); }});

    k.push_back({"aes128-dec", both, 32, 16, [](Variant v) { return aes_program(v, true); },
                 [=] {
                   auto in = fips_key;
                   const auto ct = aes_reference(
                       [&] {
                         auto x = fips_key;
                         x.insert(x.end(), fips_pt.begin(), fips_pt.end());
                         return x;
                       }(),
                       false);
                   in.insert(in.end(), ct.begin(), ct.end());
                   return in;
                 },
                 [](std::span<const uint8_t> in) { return aes_reference(in, true); }});

    k.push_back({"sha256-compress", both, 96, 32, [](Variant v) { return sha256_program(v); },
                 [] {
                   std::vector<uint8_t> in;
                   for (uint32_t w : kSha256Iv) put32le(in, w);
                   std::vector<uint8_t> block(64, 0);
                   block[0] = 'a';
                   block[1] = 'b';
                   block[2] = 'c';
                   block[3] = 0x80;
                   block[63] = 24;
                   in.insert(in.end(), block.begin(), block.end());
                   return in;
                 },
                 [](std::span<const uint8_t> in) { return sha256_reference(in); }});

    k.push_back({"prince-sbox", both, 4 * kPrinceWords, 4 * kPrinceWords,
                 [](Variant v) { return prince_program(v); },
                 [] {
                   auto in = random_bytes(4 * kPrinceWords, 0x5eed);
                   // Every nibble value in both positions.
                   const uint32_t words[2] = {0x76543210, 0xfedcba98};
                   for (unsigned i = 0; i < 2; ++i)
                     for (unsigned j = 0; j < 4; ++j) in[4 * i + j] = static_cast<uint8_t>(words[i] >> (8 * j));
                   return in;
                 },
                 [](std::span<const uint8_t> in) { return prince_reference(in); }});

    k.push_back({"shiftstorm", {Variant::rv32i}, 32, 32,
                 [](Variant) { return synthetic_program(shiftstorm()); },
                 [] { return random_bytes(32, 0x5417); },
                 [](std::span<const uint8_t> in) { return synthetic_reference(shiftstorm(), in); }});

    k.push_back({"alumix", {Variant::rv32i}, 32, 32,
                 [](Variant) { return synthetic_program(alumix()); },
                 [] { return random_bytes(32, 0xa1a1); },
                 [](std::span<const uint8_t> in) { return synthetic_reference(alumix(), in); }});
    return k;
  }();
  return all;
}

}  // namespace sercrypt::bench
