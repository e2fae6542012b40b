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

#include <random>

#include "dtsig/harness.hpp"

namespace dtsig::testutil {

// The tiny textbook group: p = 23, q = 11, g = 18 (order 11).
inline SystemParams toy_params(HashOracle oracle = HashOracle::standard_oracle()) {
  return SystemParams{23, 11, 18, std::move(oracle)};
}

inline Bytes msg_m() { return Bytes{'m'}; }

// The pinned oracle of the worked example: h(16, 12, "m") = 5.
inline HashOracle golden_oracle() {
  HashOracle oracle = HashOracle::scripted_oracle();
  oracle.script_entry({16, 12}, msg_m(), 5);
  return oracle;
}

// Builds a full parameter set around a given odd prime q: smallest valid p,
// first generator found from small bases.
inline SystemParams derive_params(const Bigint& q) {
  const Bigint p = smallest_p_for_q(q);
  const Bigint cofactor = (p - 1) / q;
  for (Bigint base = 2;; ++base) {
    const Bigint g = mod_exp(base, cofactor, p).value;
    if (g > 1) {
      return SystemParams{p, q, g, HashOracle::standard_oracle()};
    }
  }
}

inline const SystemParams& medium_params() {
  static const SystemParams params = derive_params(10007);
  return params;
}

// q just above 2^31; big enough that hash collisions mod q cannot plausibly
// produce a false accept in a thousand trials.
inline const SystemParams& wide_params() {
  static const SystemParams params = [] {
    Bigint q;
    const Bigint floor = Bigint(1) << 31;
    mpz_nextprime(q.get_mpz_t(), floor.get_mpz_t());
    return derive_params(q);
  }();
  return params;
}

// The worked example as a scripted ceremony config.
inline CeremonyConfig golden_config() {
  CeremonyConfig config;
  config.params = toy_params(golden_oracle());
  config.roster = {{"A", 9}, {"C", 12}, {"E", 14}, {"F", 16}};
  config.t = 2;
  config.active = {"A", "F"};
  config.m = msg_m();
  config.mode = RandomnessMode::scripted;
  config.dealer_secret = 3;
  config.receiver_x = 6;
  config.group_public_key = 13;
  config.tapes["SDC:sdc"] = {5};
  config.tapes["Signer:A"] = {2, 7};
  config.tapes["Signer:F"] = {5, 9};
  config.tapes["Receiver:B"] = {17};
  config.tapes["ThirdParty:C"] = {11, 13};
  return config;
}

// Oracle-side modular exponentiation by repeated multiplication; kept
// deliberately independent of the library path it cross-checks.
inline Bigint slow_pow_mod(const Bigint& base, unsigned long exponent, const Bigint& m) {
  Bigint acc = 1;
  Bigint b = base % m;
  if (b < 0) {
    b += m;
  }
  for (unsigned long i = 0; i < exponent; ++i) {
    acc = (acc * b) % m;
  }
  return acc;
}

// Oracle-side polynomial evaluation (plain schoolbook, non-negative inputs).
inline Bigint slow_eval(const std::vector<Bigint>& coeffs, const Bigint& x, const Bigint& q) {
  Bigint acc = 0;
  Bigint power = 1;
  for (const auto& c : coeffs) {
    acc = (acc + c * power) % q;
    power = (power * x) % q;
  }
  return acc;
}

}  // namespace dtsig::testutil
