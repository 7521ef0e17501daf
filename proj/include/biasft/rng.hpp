// Copyright 2026 The biasft Authors
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

#pragma once

#include <cstdint>

namespace biasft {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream.
///
/// A stream is a pure function of the chain of keys used to derive it, so
/// every draw in a Monte Carlo trial can be addressed by
/// (seed, trial, location, qubit) without any shared generator state. Draws
/// from the same stream with different counters are independent words.
class KeyedStream {
 public:
  constexpr explicit KeyedStream(std::uint64_t seed)
      : state_(mix64(seed ^ 0x243f6a8885a308d3ULL)) {}

  /// Derives an independent sub-stream for `key`.
  [[nodiscard]] constexpr KeyedStream child(std::uint64_t key) const {
    return KeyedStream(RawState{}, mix64(state_ ^ mix64(key ^ 0x13198a2e03707344ULL)));
  }

  [[nodiscard]] constexpr std::uint64_t bits(std::uint64_t counter) const {
    return mix64(state_ + counter * 0xd1b54a32d192ed03ULL);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  [[nodiscard]] constexpr double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  [[nodiscard]] constexpr bool coin(std::uint64_t counter) const {
    return (bits(counter) >> 63) != 0;
  }

  [[nodiscard]] constexpr std::uint64_t state() const { return state_; }

 private:
  struct RawState {};
  constexpr KeyedStream(RawState, std::uint64_t state) : state_(state) {}

  std::uint64_t state_;
};

}  // namespace biasft
