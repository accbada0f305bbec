// Copyright 2026 The pihvc Authors.
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

#include "pihvc/util/random.h"

#include <openssl/rand.h>
#include <openssl/sha.h>

#include <cstring>
#include <stdexcept>

#include "pihvc/util/bignum.h"

namespace pihvc {

Bytes RandomSource::RandomBytes(size_t n) {
  Bytes out(n);
  Fill(out);
  return out;
}

uint64_t RandomSource::NextU64() {
  std::array<uint8_t, 8> buf;
  Fill(buf);
  uint64_t v = 0;
  for (uint8_t b : buf) v = (v << 8) | b;
  return v;
}

mpz_class RandomSource::UniformBits(size_t bits) {
  if (bits == 0) return 0;
  Bytes buf((bits + 7) / 8);
  Fill(buf);
  size_t excess = buf.size() * 8 - bits;
  buf[0] &= static_cast<uint8_t>(0xff >> excess);
  return NatFromBytes(buf);
}

mpz_class RandomSource::UniformBelow(const mpz_class& bound) {
  if (bound <= 0) throw std::invalid_argument("UniformBelow: bound <= 0");
  size_t bits = BitLength(bound);
  // Rejection sampling; expected fewer than two draws.
  while (true) {
    mpz_class candidate = UniformBits(bits);
    if (candidate < bound) return candidate;
  }
}

mpz_class RandomSource::UniformRange(const mpz_class& lo, const mpz_class& hi) {
  mpz_class span = hi - lo + 1;
  return lo + UniformBelow(span);
}

void SystemRandom::Fill(std::span<uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
}

SeededRandom::SeededRandom(ByteView seed) {
  static constexpr std::string_view kLabel = "pihvc/seeded-random";
  SHA256_CTX ctx;
  SHA256_Init(&ctx);
  SHA256_Update(&ctx, kLabel.data(), kLabel.size());
  SHA256_Update(&ctx, seed.data(), seed.size());
  SHA256_Final(key_.data(), &ctx);
}

SeededRandom SeededRandom::Fork(std::string_view label) const {
  Bytes material(key_.begin(), key_.end());
  Append(material, AsBytes(label));
  return SeededRandom(material);
}

void SeededRandom::Refill() {
  uint8_t ctr[8];
  for (int i = 0; i < 8; ++i) ctr[i] = static_cast<uint8_t>(counter_ >> (56 - 8 * i));
  ++counter_;
  SHA256_CTX ctx;
  SHA256_Init(&ctx);
  SHA256_Update(&ctx, key_.data(), key_.size());
  SHA256_Update(&ctx, ctr, sizeof(ctr));
  SHA256_Final(block_.data(), &ctx);
  block_pos_ = 0;
}

void SeededRandom::Fill(std::span<uint8_t> out) {
  size_t done = 0;
  while (done < out.size()) {
    if (block_pos_ == block_.size()) Refill();
    size_t take = std::min(out.size() - done, block_.size() - block_pos_);
    std::memcpy(out.data() + done, block_.data() + block_pos_, take);
    block_pos_ += take;
    done += take;
  }
}

}  // namespace pihvc
