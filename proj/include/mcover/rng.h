// Copyright 2026 The MutualCover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCOVER_RNG_H_
#define MCOVER_RNG_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace mcover {

// Stream tags for the independent substreams drawn from one master seed.
enum class StreamTag : std::uint64_t {
  kAttributeSampling = 1,
  kUnchanged = 2,
  kAnatomy = 3,
  kDisclosure = 4,
  kWorkload = 5,
  kSynthetic = 6,
};

// A seeded pseudo-random stream. Substreams are derived from a master seed
// and a tuple of counters by hashing, so the stream a worker sees depends
// only on its coordinates and never on scheduling order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream Derive(std::uint64_t master, StreamTag tag,
                          std::initializer_list<std::uint64_t> coords);

  // Uniform double in [0, 1).
  double NextDouble() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). n must be positive.
  std::size_t UniformIndex(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  bool Bernoulli(double p) { return NextDouble() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

}  // namespace mcover

#endif  // MCOVER_RNG_H_
