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
#include <utility>
#include <vector>

#include "dtsig/dirsig.hpp"
#include "dtsig/shamir.hpp"

namespace dtsig {

// Per-ceremony secrets of one signer. Single-use: the harness destroys them
// after round 2 and refuses reuse across ceremonies.
//
// Note the nonce convention: here w = g^{k2 - k1} and the partial signature
// uses k1, the mirror image of the single-signer scheme in dirsig.hpp. Both
// close the same verification algebra (mu comes out as g^{sum k2}).
struct SignerNonces {
  Bigint k1;
  Bigint k2;
};

// Round-1 output: w broadcast to everyone, z passed secretly within the
// active subset.
struct Commitment {
  std::string member_id;
  Bigint w;  // g^{k2 - k1} mod p
  Bigint z;  // y_receiver^{k2} mod p
};

struct PartialSignature {
  std::string member_id;
  Bigint s;  // k1 - ms * R mod q
};

// The transferable artifact the combiner sends to the receiver.
struct GroupSignature {
  Bigint S;
  Bigint W;
  Bigint R;
  Bytes m;
};

// What every active member computes once all commitments are in.
struct CeremonyAggregate {
  Bigint W;  // prod w_i mod p
  Bigint Z;  // prod z_i mod p
  Bigint R;  // h(Z, W, m) mod q
};

std::pair<SignerNonces, Commitment> round1_commit(const SystemParams& params,
                                                  const Bigint& y_receiver,
                                                  const std::string& member_id,
                                                  RandomSource& rng);

// Products are taken mod p (w_i, z_i live in Z_p^*); R through the oracle.
CeremonyAggregate aggregate(const SystemParams& params,
                            const std::vector<Commitment>& commitments, const Bytes& m,
                            const HashOracle& oracle);

PartialSignature round2_partial_sign(const SignerNonces& nonces, const ModifiedShare& ms,
                                     const Bigint& R, const Bigint& q);

// S = sum s_i mod q, packaged with W and R. The combiner never learns Z, so
// the second overload takes only what it actually holds.
GroupSignature combine(const std::vector<PartialSignature>& partials, const Bigint& W,
                       const Bigint& R, const Bytes& m, const Bigint& q, std::size_t t);
GroupSignature combine(const std::vector<PartialSignature>& partials,
                       const CeremonyAggregate& agg, const Bytes& m, const Bigint& q,
                       std::size_t t);

// mu = g^S y_G^R W mod p, Z = mu^{x_receiver} mod p, accept iff
// R == h(Z, W, m). mu and Z feed the confirmation protocol.
VerifyResult threshold_verify(const SystemParams& params, const Bigint& y_G,
                              const KeyPair& receiver, const GroupSignature& sig,
                              const HashOracle& oracle);

void save_group_signature_file(const GroupSignature& sig, const std::string& path);
GroupSignature load_group_signature_file(const std::string& path);

}  // namespace dtsig
