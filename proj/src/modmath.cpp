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

#include "dtsig/modmath.hpp"

#include <set>

namespace dtsig {

Residue::Residue(Bigint v, Bigint m) : value(std::move(v)), modulus(std::move(m)) {
  if (modulus < 2) {
    throw Error("Residue: modulus must be >= 2");
  }
  value = mod_floor(value, modulus);
}

Residue mod_exp(const Bigint& base, const Bigint& exponent, const Bigint& modulus) {
  if (modulus < 2) {
    throw Error("mod_exp: modulus must be >= 2");
  }
  Bigint b = mod_floor(base, modulus);
  if (exponent < 0) {
    Bigint g;
    mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), modulus.get_mpz_t());
    if (g != 1) {
      throw NegativeExponentNonInvertible("mod_exp: negative exponent with gcd(base, modulus) = " +
                                          g.get_str(10));
    }
  }
  Bigint r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
  return Residue(std::move(r), modulus);
}

Residue mod_inv(const Bigint& a, const Bigint& modulus) {
  if (modulus < 2) {
    throw Error("mod_inv: modulus must be >= 2");
  }
  Bigint r = mod_floor(a, modulus);
  Bigint g, s;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), nullptr, r.get_mpz_t(), modulus.get_mpz_t());
  if (g != 1) {
    throw NotInvertible("mod_inv: gcd(" + a.get_str(10) + ", " + modulus.get_str(10) + ") = " +
                        g.get_str(10));
  }
  return Residue(std::move(s), modulus);
}

Residue lagrange_coeff_at_zero(std::size_t i, const std::vector<Bigint>& points,
                               const Bigint& q) {
  if (i >= points.size()) {
    throw Error("lagrange_coeff_at_zero: index out of range");
  }
  std::vector<Bigint> reduced;
  reduced.reserve(points.size());
  std::set<Bigint> seen;
  for (const auto& u : points) {
    Bigint r = mod_floor(u, q);
    if (r == 0) {
      throw ZeroPoint("lagrange_coeff_at_zero: point " + u.get_str(10) + " is 0 mod q");
    }
    if (!seen.insert(r).second) {
      throw DuplicatePoint("lagrange_coeff_at_zero: point " + u.get_str(10) +
                           " collides mod q");
    }
    reduced.push_back(std::move(r));
  }

  // prod_{j != i} (-u_j) / (u_i - u_j) mod q
  Bigint coeff = 1;
  for (std::size_t j = 0; j < reduced.size(); ++j) {
    if (j == i) {
      continue;
    }
    Bigint numer = sub_mod(0, reduced[j], q);
    Bigint denom = sub_mod(reduced[i], reduced[j], q);
    coeff = mul_mod(coeff, mul_mod(numer, mod_inv(denom, q).value, q), q);
  }
  return Residue(std::move(coeff), q);
}

Bigint add_mod(const Bigint& a, const Bigint& b, const Bigint& m) {
  return mod_floor(a + b, m);
}

Bigint sub_mod(const Bigint& a, const Bigint& b, const Bigint& m) {
  return mod_floor(a - b, m);
}

Bigint mul_mod(const Bigint& a, const Bigint& b, const Bigint& m) {
  return mod_floor(a * b, m);
}

}  // namespace dtsig
