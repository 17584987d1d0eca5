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

#define OPENSSL_SUPPRESS_DEPRECATED
#include "oracles.hpp"

#include <bit>
#include <stdexcept>

#include <openssl/evp.h>
#include <openssl/sha.h>

namespace oracle {

namespace {

constexpr uint8_t kSbox[256] = {
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

Block aes_ecb(bool encrypt, std::span<const uint8_t> key, std::span<const uint8_t> in) {
  EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
  if (!ctx) throw std::runtime_error("EVP_CIPHER_CTX_new");
  Block out{};
  int len = 0;
  EVP_CipherInit_ex(ctx, EVP_aes_128_ecb(), nullptr, key.data(), nullptr, encrypt ? 1 : 0);
  EVP_CIPHER_CTX_set_padding(ctx, 0);
  EVP_CipherUpdate(ctx, out.data(), &len, in.data(), 16);
  EVP_CIPHER_CTX_free(ctx);
  return out;
}

}  // namespace

Block aes128_encrypt(std::span<const uint8_t> key, std::span<const uint8_t> pt) {
  return aes_ecb(true, key, pt);
}

Block aes128_decrypt(std::span<const uint8_t> key, std::span<const uint8_t> ct) {
  return aes_ecb(false, key, ct);
}

std::array<uint32_t, 8> sha256_compress(const std::array<uint32_t, 8>& state,
                                        std::span<const uint8_t> block) {
  SHA256_CTX ctx;
  SHA256_Init(&ctx);
  for (int i = 0; i < 8; ++i) ctx.h[i] = state[i];
  SHA256_Transform(&ctx, block.data());
  std::array<uint32_t, 8> out{};
  for (int i = 0; i < 8; ++i) out[i] = ctx.h[i];
  return out;
}

std::string sha256_hex(std::span<const uint8_t> msg) {
  uint8_t md[32];
  SHA256(msg.data(), msg.size(), md);
  std::string hex;
  static const char* digits = "0123456789abcdef";
  for (uint8_t b : md) {
    hex.push_back(digits[b >> 4]);
    hex.push_back(digits[b & 15]);
  }
  return hex;
}

uint8_t aes_sbox(uint8_t x) { return kSbox[x]; }

uint8_t aes_inv_sbox(uint8_t x) {
  for (unsigned i = 0; i < 256; ++i)
    if (kSbox[i] == x) return static_cast<uint8_t>(i);
  return 0;
}

uint8_t gf_mul(uint8_t a, uint8_t b) {
  // Schoolbook product, then reduction by x^8 + x^4 + x^3 + x + 1.
  uint16_t p = 0;
  for (int i = 0; i < 8; ++i)
    if (b >> i & 1) p ^= static_cast<uint16_t>(a << i);
  for (int i = 15; i >= 8; --i)
    if (p >> i & 1) p ^= static_cast<uint16_t>(0x11b << (i - 8));
  return static_cast<uint8_t>(p);
}

uint32_t aes32(bool decrypt, bool middle, uint32_t rs1, uint32_t rs2, unsigned bs) {
  const auto x = static_cast<uint8_t>(rs2 >> (8 * bs));
  const uint8_t s = decrypt ? aes_inv_sbox(x) : aes_sbox(x);
  uint32_t mixed = s;
  if (middle) {
    const uint8_t c[4] = {static_cast<uint8_t>(decrypt ? 14 : 2), static_cast<uint8_t>(decrypt ? 9 : 1),
                          static_cast<uint8_t>(decrypt ? 13 : 1), static_cast<uint8_t>(decrypt ? 11 : 3)};
    mixed = 0;
    for (int i = 0; i < 4; ++i) mixed |= uint32_t{gf_mul(s, c[i])} << (8 * i);
  }
  return rs1 ^ std::rotl(mixed, static_cast<int>(8 * bs));
}

uint64_t clmul64(uint32_t a, uint32_t b) {
  uint64_t r = 0;
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j)
      if ((a >> i & 1) && (b >> j & 1)) r ^= uint64_t{1} << (i + j);
  return r;
}

uint32_t xperm(uint32_t rs1, uint32_t rs2, unsigned bits) {
  const unsigned n = 32 / bits;
  const uint32_t mask = (1u << bits) - 1;
  uint32_t r = 0;
  for (unsigned i = 0; i < n; ++i) {
    const uint32_t idx = rs2 >> (i * bits) & mask;
    const uint32_t v = idx < n ? rs1 >> (idx * bits) & mask : 0;
    r |= v << (i * bits);
  }
  return r;
}

uint32_t zip(uint32_t x) {
  uint32_t r = 0;
  for (int i = 0; i < 16; ++i) {
    r |= (x >> i & 1) << (2 * i);
    r |= (x >> (i + 16) & 1) << (2 * i + 1);
  }
  return r;
}

uint32_t unzip(uint32_t x) {
  uint32_t r = 0;
  for (int i = 0; i < 16; ++i) {
    r |= (x >> (2 * i) & 1) << i;
    r |= (x >> (2 * i + 1) & 1) << (i + 16);
  }
  return r;
}

uint64_t sha512_sig0(uint64_t x) { return std::rotr(x, 1) ^ std::rotr(x, 8) ^ (x >> 7); }
uint64_t sha512_sig1(uint64_t x) { return std::rotr(x, 19) ^ std::rotr(x, 61) ^ (x >> 6); }
uint64_t sha512_sum0(uint64_t x) { return std::rotr(x, 28) ^ std::rotr(x, 34) ^ std::rotr(x, 39); }
uint64_t sha512_sum1(uint64_t x) { return std::rotr(x, 14) ^ std::rotr(x, 18) ^ std::rotr(x, 41); }

uint64_t fnv1a64(std::span<const uint8_t> bytes) {
  uint64_t h = 14695981039346656037ull;
  for (uint8_t b : bytes) h = (h ^ b) * 1099511628211ull;
  return h;
}

std::span<const Encoding> reference_encodings() {
  static constexpr Encoding kTable[] = {
      {"addi x0, x0, 0", 0x00000013},
      {"aes32esi x1, x2, x3, 0", 0x223100b3},
      {"aes32esmi x1, x2, x3, 3", 0xe63100b3},
      {"aes32dsi x1, x2, x3, 1", 0x6a3100b3},
      {"aes32dsmi x1, x2, x3, 2", 0xae3100b3},
      {"sha256sig0 x1, x2", 0x10211093},
      {"sha256sig1 x1, x2", 0x10311093},
      {"sha256sum0 x1, x2", 0x10011093},
      {"sha256sum1 x1, x2", 0x10111093},
      {"sha512sig0h x1, x2, x3", 0x5c3100b3},
      {"sha512sig0l x1, x2, x3", 0x543100b3},
      {"sha512sig1h x1, x2, x3", 0x5e3100b3},
      {"sha512sig1l x1, x2, x3", 0x563100b3},
      {"sha512sum0r x1, x2, x3", 0x503100b3},
      {"sha512sum1r x1, x2, x3", 0x523100b3},
      {"zip x1, x2", 0x08f11093},
      {"unzip x1, x2", 0x08f15093},
      {"brev8 x1, x2", 0x68715093},
      {"rev8 x1, x2", 0x69815093},
      {"xperm4 x1, x2, x3", 0x283120b3},
      {"xperm8 x1, x2, x3", 0x283140b3},
      {"clmul x1, x2, x3", 0x0a3110b3},
      {"clmulh x1, x2, x3", 0x0a3130b3},
      {"pack x1, x2, x3", 0x083140b3},
      {"packh x1, x2, x3", 0x083170b3},
      {"andn x1, x2, x3", 0x403170b3},
      {"orn x1, x2, x3", 0x403160b3},
      {"xnor x1, x2, x3", 0x403140b3},
      {"ror x1, x2, x3", 0x603150b3},
      {"rol x1, x2, x3", 0x603110b3},
      {"rori x1, x2, 5", 0x60515093},
  };
  return kTable;
}

}  // namespace oracle
