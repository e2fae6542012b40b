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
#include "dtsig/errors.hpp"

namespace dtsig {

// A value reduced into [0, modulus). The modulus travels with the value so
// consumers (hashing, serialization) know the field width without extra
// context.
struct Residue {
  Bigint value;
  Bigint modulus;

  // Canonicalizes v into [0, m); requires m >= 2.
  Residue(Bigint v, Bigint m);

  bool operator==(const Residue& other) const {
    return value == other.value && modulus == other.modulus;
  }
};

// base^exponent mod modulus in time logarithmic in |exponent|. A negative
// exponent means the inverse of the positive power and needs
// gcd(base, modulus) = 1, else NegativeExponentNonInvertible.
Residue mod_exp(const Bigint& base, const Bigint& exponent, const Bigint& modulus);

// Multiplicative inverse via extended Euclid. The gcd falls out of the same
// computation; gcd != 1 raises NotInvertible (how a degenerate point set or
// a composite q announces itself).
Residue mod_inv(const Bigint& a, const Bigint& modulus);

// Lagrange coefficient at zero for points[i] over the given point set:
//
//   prod_{j != i} (-u_j) * (u_i - u_j)^{-1}   (mod q)
//
// Points are reduced mod q first and must be distinct and nonzero after
// reduction (DuplicatePoint / ZeroPoint otherwise).
Residue lagrange_coeff_at_zero(std::size_t i, const std::vector<Bigint>& points,
                               const Bigint& q);

// Canonical arithmetic in Z_m; results always in [0, m).
Bigint add_mod(const Bigint& a, const Bigint& b, const Bigint& m);
Bigint sub_mod(const Bigint& a, const Bigint& b, const Bigint& m);
Bigint mul_mod(const Bigint& a, const Bigint& b, const Bigint& m);

}  // namespace dtsig
