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

// Architectural semantics of the scalar-crypto instructions. These are the
// reference definitions; the cycle model reaches the same results through
// its own unit implementations.

#pragma once

#include <bit>
#include <cstdint>

#include "sercrypt/isa.hpp"

namespace sercrypt::golden {

uint8_t aes_sbox_fwd(uint8_t b);
uint8_t aes_sbox_inv(uint8_t b);

/// GF(2^8) doubling modulo x^8 + x^4 + x^3 + x + 1.
constexpr uint8_t xt2(uint8_t b) {
  return static_cast<uint8_t>((b << 1) ^ ((b & 0x80) ? 0x1b : 0x00));
}

/// GF(2^8) product of `b` with a small constant, built from xt2.
constexpr uint8_t gf_mul(uint8_t b, uint8_t k) {
  uint8_t acc = 0;
  for (; k != 0; k >>= 1, b = xt2(b))
    if (k & 1) acc ^= b;
  return acc;
}

/// Forward MixColumns contribution of one S-box output, bytes lo->hi
/// {2s, s, s, 3s}.
constexpr uint32_t aes_mix_fwd(uint8_t s) {
  return uint32_t{gf_mul(s, 2)} | (uint32_t{s} << 8) | (uint32_t{s} << 16) |
         (uint32_t{gf_mul(s, 3)} << 24);
}

/// Inverse MixColumns contribution, bytes lo->hi {Es, 9s, Ds, Bs}.
constexpr uint32_t aes_mix_inv(uint8_t s) {
  return uint32_t{gf_mul(s, 0x0e)} | (uint32_t{gf_mul(s, 0x09)} << 8) |
         (uint32_t{gf_mul(s, 0x0d)} << 16) | (uint32_t{gf_mul(s, 0x0b)} << 24);
}

/// aes32esi / aes32esmi / aes32dsi / aes32dsmi.
uint32_t aes32(isa::Mnemonic m, uint32_t rs1, uint32_t rs2, unsigned bs);

/// Zknh. The sha256* forms ignore rs2.
uint32_t sha2(isa::Mnemonic m, uint32_t rs1, uint32_t rs2);

/// clmul / clmulh.
uint32_t clmul(isa::Mnemonic m, uint32_t rs1, uint32_t rs2);

/// xperm4 / xperm8.
uint32_t xperm(isa::Mnemonic m, uint32_t rs1, uint32_t rs2);

/// Zbkb; rs2 carries the rotate amount for rori.
uint32_t zbkb(isa::Mnemonic m, uint32_t rs1, uint32_t rs2);

constexpr uint32_t rev8(uint32_t x) {
  return (x >> 24) | ((x >> 8) & 0xff00u) | ((x << 8) & 0xff0000u) | (x << 24);
}

constexpr uint32_t brev8(uint32_t x) {
  x = ((x & 0x55555555u) << 1) | ((x >> 1) & 0x55555555u);
  x = ((x & 0x33333333u) << 2) | ((x >> 2) & 0x33333333u);
  x = ((x & 0x0f0f0f0fu) << 4) | ((x >> 4) & 0x0f0f0f0fu);
  return x;
}

/// Bit i of the low half goes to bit 2i, bit i of the high half to 2i+1.
constexpr uint32_t zip(uint32_t x) {
  uint32_t r = 0;
  for (unsigned i = 0; i < 16; ++i) {
    r |= ((x >> i) & 1u) << (2 * i);
    r |= ((x >> (i + 16)) & 1u) << (2 * i + 1);
  }
  return r;
}

constexpr uint32_t unzip(uint32_t x) {
  uint32_t r = 0;
  for (unsigned i = 0; i < 16; ++i) {
    r |= ((x >> (2 * i)) & 1u) << i;
    r |= ((x >> (2 * i + 1)) & 1u) << (i + 16);
  }
  return r;
}

}  // namespace sercrypt::golden
