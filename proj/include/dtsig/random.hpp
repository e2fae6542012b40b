//------------------------------------------------------------------------------
//
//   Copyright 2026 The dtsig authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <vector>

#include "dtsig/bigint.hpp"

namespace dtsig {

// Source of protocol randomness. Live sources return uniform draws below the
// requested bound. Scripted tapes replay pinned values verbatim and ignore
// the bound, so a transcript can pin draws >= q where the reference vectors
// do. Sources are not safe to share between concurrent callers; give each
// party its own.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Live: uniform in [0, upper), upper >= 1. Scripted: next tape value.
  virtual Bigint draw_below(const Bigint& upper) = 0;

  virtual bool scripted() const { return false; }
};

// GMP Mersenne-twister generator.
class SystemRandom final : public RandomSource {
 public:
  SystemRandom();  // seeded from std::random_device
  explicit SystemRandom(unsigned long seed);

  Bigint draw_below(const Bigint& upper) override;

 private:
  gmp_randclass state_;
};

// Fixed list of integers consumed in draw order.
class ScriptedTape final : public RandomSource {
 public:
  explicit ScriptedTape(std::vector<Bigint> values);

  Bigint draw_below(const Bigint& upper) override;  // throws TapeExhausted
  bool scripted() const override { return true; }

  std::size_t remaining() const { return values_.size() - next_; }

 private:
  std::vector<Bigint> values_;
  std::size_t next_ = 0;
};

// Uniform in [1, upper) for live sources; scripted draws pass through.
Bigint draw_nonzero_below(RandomSource& rng, const Bigint& upper);

}  // namespace dtsig
