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
#pragma once

#include <array>
#include <cstdint>

namespace mphstar {

/// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw,
/// "Parallel random numbers: as easy as 1, 2, 3", SC 2011).
///
/// The 64-bit key is the user seed; the 128-bit counter is split into a
/// 64-bit in-stream block index (low words) and a 64-bit stream id (high
/// words).  Streams are therefore fully specified by (seed, stream) with
/// no runtime-library dependence, and any stream can be regenerated
/// independently of all others — the basis for reproducible parallel
/// sampling.
class PhiloxRng {
 public:
  PhiloxRng(std::uint64_t seed, std::uint64_t stream);

  /// One 10-round Philox4x32 block; exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                            const std::array<std::uint32_t, 2>& key);

  std::uint64_t next_u64();

  /// Uniform draw strictly inside (0, 1): ((u64 >> 12) + 0.5) * 2^-52.
  double next_unit();

  /// Exponential draw via inversion, -log(next_unit()) / rate; strictly
  /// positive for rate > 0.
  double next_exponential(double rate);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;  // u32 words consumed from buffer_
};

}  // namespace mphstar
