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

#include "dtsig/random.hpp"

#include <random>

#include "dtsig/errors.hpp"

namespace dtsig {

namespace {

unsigned long entropy_seed() {
  std::random_device rd;
  return (static_cast<unsigned long>(rd()) << 32) ^ rd();
}

}  // namespace

SystemRandom::SystemRandom() : SystemRandom(entropy_seed()) {}

SystemRandom::SystemRandom(unsigned long seed) : state_(gmp_randinit_mt) {
  state_.seed(seed);
}

Bigint SystemRandom::draw_below(const Bigint& upper) {
  if (upper < 1) {
    throw Error("draw_below: upper bound must be >= 1");
  }
  return state_.get_z_range(upper);
}

ScriptedTape::ScriptedTape(std::vector<Bigint> values) : values_(std::move(values)) {}

Bigint ScriptedTape::draw_below(const Bigint&) {
  if (next_ >= values_.size()) {
    throw TapeExhausted("scripted tape exhausted after " + std::to_string(values_.size()) +
                        " draws");
  }
  return values_[next_++];
}

Bigint draw_nonzero_below(RandomSource& rng, const Bigint& upper) {
  if (rng.scripted()) {
    return rng.draw_below(upper);
  }
  if (upper < 2) {
    throw Error("draw_nonzero_below: upper bound must be >= 2");
  }
  Bigint v;
  do {
    v = rng.draw_below(upper);
  } while (v == 0);
  return v;
}

}  // namespace dtsig
