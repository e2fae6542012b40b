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

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dtsig/bigint.hpp"
#include "dtsig/errors.hpp"
#include "dtsig/modmath.hpp"
#include "dtsig/random.hpp"

namespace dtsig {

enum class HashKind { standard, scripted };

// The hash oracle h. It maps a tuple of group elements plus a message into
// Z_q. The standard kind is SHA-256 over a length-prefixed big-endian
// encoding; the scripted kind is a finite lookup table so reference vectors
// with a declared hash value replay bit-exactly.
struct HashOracle {
  HashKind kind = HashKind::standard;

  // (element tuple, message) -> pinned output. Scripted oracles are total
  // over this table and reject anything else.
  std::map<std::pair<std::vector<Bigint>, Bytes>, Bigint> script;

  static HashOracle standard_oracle() { return HashOracle{}; }
  static HashOracle scripted_oracle() { return HashOracle{HashKind::scripted, {}}; }

  void script_entry(std::vector<Bigint> elements, Bytes m, Bigint out);
};

// Public group context: prime p, prime q | p-1, and g of order exactly q in
// Z_p^*. All protocol arithmetic is interpreted relative to one of these.
struct SystemParams {
  Bigint p;
  Bigint q;
  Bigint g;
  HashOracle hash_oracle;
};

struct KeyPair {
  Bigint x;  // secret exponent, 1 <= x < q
  Bigint y;  // public element, y = g^x mod p
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

// Production-scale bounds: 2^511 < p < 2^512 and 2^159 < q < 2^160. Anything
// smaller is a toy parameter set and must be admitted explicitly.
inline constexpr int kProductionPBits = 512;
inline constexpr int kProductionQBits = 160;

// Miller-Rabin with 64 rounds (error < 2^-80 per composite).
bool probable_prime(const Bigint& n);

// Draws a q_bits prime q, then searches p = c*q + 1 (even c) of exactly
// p_bits until p is prime; g = k^((p-1)/q) mod p for random k, retried until
// g > 1. Throws GenerationTimeout when the attempt budget runs out.
SystemParams generate_params(int p_bits, int q_bits, RandomSource& rng,
                             unsigned attempt_budget = 200000);

// Checks primality of p and q, q | p - 1, the order of g, and (unless
// allow_toy) the production bit-length bounds. Every violated invariant is
// reported, not just the first.
//
// Note on exponent arithmetic: all signature components in this library are
// reduced mod q. Textbook presentations of Schnorr-style schemes sometimes
// write the response "mod p"; exponents of an order-q element are only
// meaningful mod q, so that reading is normalized to mod q here rather than
// silently copied.
ValidationReport validate_params(const SystemParams& params, bool allow_toy = false);

KeyPair keygen(const SystemParams& params, RandomSource& rng);

// Smallest prime p = c*q + 1 (even c >= 2) for an odd prime q. Handy for
// building toy parameter sets around a chosen subgroup order.
Bigint smallest_p_for_q(const Bigint& q);

// h over an arbitrary element tuple. Standard kind: each element is encoded
// big-endian at the byte width of its own modulus, each field (elements and
// message alike) is prefixed with a 4-byte big-endian length, the
// concatenation is hashed with SHA-256 and the digest is reduced mod q.
Bigint oracle_hash(const HashOracle& oracle, std::span<const Residue> elements,
                   const Bytes& m, const Bigint& q);

// R = h(Z, W, m) mod q — the two-element form used by the signing protocol.
Residue hash_to_zq(const HashOracle& oracle, const Residue& Z, const Residue& W,
                   const Bytes& m, const Bigint& q);

// Flat text format, one field per line: p=, q=, g=, hash=standard|scripted,
// then one scripted table line per entry as "Z,W,hex(m)->R" (decimals except
// the hex message).
void save_params(const SystemParams& params, std::ostream& out);
SystemParams load_params(std::istream& in);
void save_params_file(const SystemParams& params, const std::string& path);
SystemParams load_params_file(const std::string& path);

// Keypair files: x=, y= (decimal).
void save_keypair_file(const KeyPair& kp, const std::string& path);
KeyPair load_keypair_file(const std::string& path);

}  // namespace dtsig
