/*
   Copyright 2026 the mphstar authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#include "mphstar/rng.hpp"

#include <cmath>

namespace mphstar {

namespace {

constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;
constexpr std::uint32_t kMultA = 0xD2511F53u;
constexpr std::uint32_t kMultB = 0xCD9E8D57u;

inline void round_once(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) {
  const std::uint64_t prod0 = static_cast<std::uint64_t>(kMultA) * ctr[0];
  const std::uint64_t prod1 = static_cast<std::uint64_t>(kMultB) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(prod0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(prod0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(prod1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(prod1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

PhiloxRng::PhiloxRng(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

std::array<std::uint32_t, 4> PhiloxRng::block(const std::array<std::uint32_t, 4>& counter,
                                              const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> ctr = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int round = 0; round < 10; ++round) {
    round_once(ctr, k);
    k[0] += kWeylA;
    k[1] += kWeylB;
  }
  return ctr;
}

void PhiloxRng::refill() {
  const std::array<std::uint32_t, 4> counter = {
      static_cast<std::uint32_t>(block_index_), static_cast<std::uint32_t>(block_index_ >> 32),
      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  buffer_ = block(counter, key_);
  ++block_index_;
  used_ = 0;
}

std::uint64_t PhiloxRng::next_u64() {
  if (used_ > 2) {
    refill();
  }
  const std::uint64_t lo = buffer_[static_cast<std::size_t>(used_)];
  const std::uint64_t hi = buffer_[static_cast<std::size_t>(used_) + 1];
  used_ += 2;
  return lo | (hi << 32);
}

double PhiloxRng::next_unit() {
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1p-52;
}

double PhiloxRng::next_exponential(double rate) {
  return -std::log(next_unit()) / rate;
}

}  // namespace mphstar
