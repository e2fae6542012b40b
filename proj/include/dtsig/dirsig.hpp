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

#include <string>

#include "dtsig/params.hpp"

namespace dtsig {

// Plain Schnorr signature (r, s): r = h(g^k mod p, m), s = k - x*r mod q.
// Kept as the baseline the directed scheme is built from.
struct SchnorrSignature {
  Bigint r;
  Bigint s;
};

// Signature addressed to one receiver. Only the holder of the receiver's
// secret key can run verification.
//
// Nonce roles in the single-signer scheme: W = g^{k1 - k2}, Z = y_B^{k1},
// S = k2 - x*R. (The threshold protocol mirrors the roles of k1 and k2; see
// threshold.hpp.)
struct DirectedSignature {
  Bigint S;
  Bigint W;
  Bigint R;
  Bytes m;
};

// Verification output. mu and z are exported because the confirmation
// protocol consumes them; z always satisfies z = mu^{x_receiver} when the
// fields were in range (accept or not).
struct VerifyResult {
  bool accept = false;
  Bigint mu;
  Bigint z;
};

SchnorrSignature schnorr_sign(const SystemParams& params, const KeyPair& signer,
                              const Bytes& m, RandomSource& rng);

// r == h(g^s y^r mod p, m). False (never a throw) on mismatch or
// out-of-range fields.
bool schnorr_verify(const SystemParams& params, const Bigint& y_signer, const Bytes& m,
                    const SchnorrSignature& sig);

DirectedSignature directed_sign(const SystemParams& params, const KeyPair& signer,
                                const Bigint& y_receiver, const Bytes& m, RandomSource& rng);

// mu = g^S y_signer^R W mod p, z = mu^{x_receiver} mod p, accept iff
// R == h(z, W, m). Out-of-range fields reject before any arithmetic.
VerifyResult directed_verify(const SystemParams& params, const Bigint& y_signer,
                             const KeyPair& receiver, const DirectedSignature& sig);

// Signature files: S=, W=, R= (decimal), m=hex.
void save_directed_signature_file(const DirectedSignature& sig, const std::string& path);
DirectedSignature load_directed_signature_file(const std::string& path);

}  // namespace dtsig
