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

#include "sercrypt/primitives.hpp"

#include <array>
#include <bit>

namespace sercrypt::golden {

namespace {

using isa::Mnemonic;

constexpr std::array<uint8_t, 256> kSboxFwd = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16,
};

constexpr std::array<uint8_t, 256> kSboxInv = {
    0x52, 0x09, 0x6a, 0xd5, 0x30, 0x36, 0xa5, 0x38, 0xbf, 0x40, 0xa3, 0x9e, 0x81, 0xf3, 0xd7, 0xfb,
    0x7c, 0xe3, 0x39, 0x82, 0x9b, 0x2f, 0xff, 0x87, 0x34, 0x8e, 0x43, 0x44, 0xc4, 0xde, 0xe9, 0xcb,
    0x54, 0x7b, 0x94, 0x32, 0xa6, 0xc2, 0x23, 0x3d, 0xee, 0x4c, 0x95, 0x0b, 0x42, 0xfa, 0xc3, 0x4e,
    0x08, 0x2e, 0xa1, 0x66, 0x28, 0xd9, 0x24, 0xb2, 0x76, 0x5b, 0xa2, 0x49, 0x6d, 0x8b, 0xd1, 0x25,
    0x72, 0xf8, 0xf6, 0x64, 0x86, 0x68, 0x98, 0x16, 0xd4, 0xa4, 0x5c, 0xcc, 0x5d, 0x65, 0xb6, 0x92,
    0x6c, 0x70, 0x48, 0x50, 0xfd, 0xed, 0xb9, 0xda, 0x5e, 0x15, 0x46, 0x57, 0xa7, 0x8d, 0x9d, 0x84,
    0x90, 0xd8, 0xab, 0x00, 0x8c, 0xbc, 0xd3, 0x0a, 0xf7, 0xe4, 0x58, 0x05, 0xb8, 0xb3, 0x45, 0x06,
    0xd0, 0x2c, 0x1e, 0x8f, 0xca, 0x3f, 0x0f, 0x02, 0xc1, 0xaf, 0xbd, 0x03, 0x01, 0x13, 0x8a, 0x6b,
    0x3a, 0x91, 0x11, 0x41, 0x4f, 0x67, 0xdc, 0xea, 0x97, 0xf2, 0xcf, 0xce, 0xf0, 0xb4, 0xe6, 0x73,
    0x96, 0xac, 0x74, 0x22, 0xe7, 0xad, 0x35, 0x85, 0xe2, 0xf9, 0x37, 0xe8, 0x1c, 0x75, 0xdf, 0x6e,
    0x47, 0xf1, 0x1a, 0x71, 0x1d, 0x29, 0xc5, 0x89, 0x6f, 0xb7, 0x62, 0x0e, 0xaa, 0x18, 0xbe, 0x1b,
    0xfc, 0x56, 0x3e, 0x4b, 0xc6, 0xd2, 0x79, 0x20, 0x9a, 0xdb, 0xc0, 0xfe, 0x78, 0xcd, 0x5a, 0xf4,
    0x1f, 0xdd, 0xa8, 0x33, 0x88, 0x07, 0xc7, 0x31, 0xb1, 0x12, 0x10, 0x59, 0x27, 0x80, 0xec, 0x5f,
    0x60, 0x51, 0x7f, 0xa9, 0x19, 0xb5, 0x4a, 0x0d, 0x2d, 0xe5, 0x7a, 0x9f, 0x93, 0xc9, 0x9c, 0xef,
    0xa0, 0xe0, 0x3b, 0x4d, 0xae, 0x2a, 0xf5, 0xb0, 0xc8, 0xeb, 0xbb, 0x3c, 0x83, 0x53, 0x99, 0x61,
    0x17, 0x2b, 0x04, 0x7e, 0xba, 0x77, 0xd6, 0x26, 0xe1, 0x69, 0x14, 0x63, 0x55, 0x21, 0x0c, 0x7d,
};

uint32_t shr(uint32_t x, unsigned n) { return x >> n; }
uint32_t shl(uint32_t x, unsigned n) { return x << n; }
uint32_t ror(uint32_t x, unsigned n) { return std::rotr(x, static_cast<int>(n)); }

}  // namespace

uint8_t aes_sbox_fwd(uint8_t b) { return kSboxFwd[b]; }
uint8_t aes_sbox_inv(uint8_t b) { return kSboxInv[b]; }

uint32_t aes32(Mnemonic m, uint32_t rs1, uint32_t rs2, unsigned bs) {
  const auto in = static_cast<uint8_t>(rs2 >> (8 * bs));
  uint32_t mixed = 0;
  switch (m) {
    case Mnemonic::aes32esi: mixed = aes_sbox_fwd(in); break;
    case Mnemonic::aes32esmi: mixed = aes_mix_fwd(aes_sbox_fwd(in)); break;
    case Mnemonic::aes32dsi: mixed = aes_sbox_inv(in); break;
    case Mnemonic::aes32dsmi: mixed = aes_mix_inv(aes_sbox_inv(in)); break;
    default: return 0;
  }
  return rs1 ^ std::rotl(mixed, static_cast<int>(8 * bs));
}

uint32_t sha2(Mnemonic m, uint32_t a, uint32_t b) {
  switch (m) {
    case Mnemonic::sha256sig0: return ror(a, 7) ^ ror(a, 18) ^ shr(a, 3);
    case Mnemonic::sha256sig1: return ror(a, 17) ^ ror(a, 19) ^ shr(a, 10);
    case Mnemonic::sha256sum0: return ror(a, 2) ^ ror(a, 13) ^ ror(a, 22);
    case Mnemonic::sha256sum1: return ror(a, 6) ^ ror(a, 11) ^ ror(a, 25);
    case Mnemonic::sha512sig0h:
      return shr(a, 1) ^ shr(a, 7) ^ shr(a, 8) ^ shl(b, 31) ^ shl(b, 24);
    case Mnemonic::sha512sig0l:
      return shr(a, 1) ^ shr(a, 7) ^ shr(a, 8) ^ shl(b, 31) ^ shl(b, 25) ^ shl(b, 24);
    case Mnemonic::sha512sig1h:
      return shl(a, 3) ^ shr(a, 6) ^ shr(a, 19) ^ shr(b, 29) ^ shl(b, 13);
    case Mnemonic::sha512sig1l:
      return shl(a, 3) ^ shr(a, 6) ^ shr(a, 19) ^ shr(b, 29) ^ shl(b, 26) ^ shl(b, 13);
    case Mnemonic::sha512sum0r:
      return shl(a, 25) ^ shl(a, 30) ^ shr(a, 28) ^ shr(b, 7) ^ shr(b, 2) ^ shl(b, 4);
    case Mnemonic::sha512sum1r:
      return shl(a, 23) ^ shr(a, 14) ^ shr(a, 18) ^ shr(b, 9) ^ shl(b, 18) ^ shl(b, 14);
    default: return 0;
  }
}

uint32_t clmul(Mnemonic m, uint32_t a, uint32_t b) {
  uint64_t p = 0;
  for (unsigned i = 0; i < 32; ++i)
    if ((b >> i) & 1) p ^= uint64_t{a} << i;
  return m == Mnemonic::clmulh ? static_cast<uint32_t>(p >> 32) : static_cast<uint32_t>(p);
}

uint32_t xperm(Mnemonic m, uint32_t a, uint32_t b) {
  const unsigned esize = m == Mnemonic::xperm4 ? 4 : 8;
  const uint32_t emask = (1u << esize) - 1;
  const unsigned count = 32 / esize;
  uint32_t r = 0;
  for (unsigned i = 0; i < count; ++i) {
    const uint32_t idx = (b >> (i * esize)) & emask;
    if (idx < count) r |= ((a >> (idx * esize)) & emask) << (i * esize);
  }
  return r;
}

uint32_t zbkb(Mnemonic m, uint32_t a, uint32_t b) {
  const int sh = static_cast<int>(b & 31);
  switch (m) {
    case Mnemonic::ror:
    case Mnemonic::rori: return std::rotr(a, sh);
    case Mnemonic::rol: return std::rotl(a, sh);
    case Mnemonic::andn: return a & ~b;
    case Mnemonic::orn: return a | ~b;
    case Mnemonic::xnor: return ~(a ^ b);
    case Mnemonic::pack: return (b << 16) | (a & 0xffff);
    case Mnemonic::packh: return ((b & 0xff) << 8) | (a & 0xff);
    case Mnemonic::brev8: return brev8(a);
    case Mnemonic::rev8: return rev8(a);
    case Mnemonic::zip: return zip(a);
    case Mnemonic::unzip: return unzip(a);
    default: return 0;
  }
}

}  // namespace sercrypt::golden
