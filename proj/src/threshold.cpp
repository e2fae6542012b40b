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

#include "dtsig/threshold.hpp"

#include <set>

#include "textio.hpp"

namespace dtsig {

std::pair<SignerNonces, Commitment> round1_commit(const SystemParams& params,
                                                  const Bigint& y_receiver,
                                                  const std::string& member_id,
                                                  RandomSource& rng) {
  SignerNonces nonces;
  nonces.k1 = draw_nonzero_below(rng, params.q);
  nonces.k2 = draw_nonzero_below(rng, params.q);
  Commitment commitment;
  commitment.member_id = member_id;
  commitment.w = mod_exp(params.g, sub_mod(nonces.k2, nonces.k1, params.q), params.p).value;
  commitment.z = mod_exp(y_receiver, nonces.k2, params.p).value;
  return {std::move(nonces), std::move(commitment)};
}

CeremonyAggregate aggregate(const SystemParams& params,
                            const std::vector<Commitment>& commitments, const Bytes& m,
                            const HashOracle& oracle) {
  if (commitments.empty()) {
    throw Error("aggregate: need at least one commitment");
  }
  std::set<std::string> ids;
  CeremonyAggregate agg;
  agg.W = 1;
  agg.Z = 1;
  for (const auto& c : commitments) {
    if (!ids.insert(c.member_id).second) {
      throw DuplicateMember("aggregate: duplicate member '" + c.member_id + "'");
    }
    agg.W = mul_mod(agg.W, c.w, params.p);
    agg.Z = mul_mod(agg.Z, c.z, params.p);
  }
  agg.R = hash_to_zq(oracle, Residue(agg.Z, params.p), Residue(agg.W, params.p), m, params.q)
              .value;
  return agg;
}

PartialSignature round2_partial_sign(const SignerNonces& nonces, const ModifiedShare& ms,
                                     const Bigint& R, const Bigint& q) {
  return PartialSignature{ms.member_id, sub_mod(nonces.k1, ms.ms * R, q)};
}

GroupSignature combine(const std::vector<PartialSignature>& partials, const Bigint& W,
                       const Bigint& R, const Bytes& m, const Bigint& q, std::size_t t) {
  if (partials.size() != t) {
    throw CountMismatch("combine: got " + std::to_string(partials.size()) +
                        " partial signatures, expected t = " + std::to_string(t));
  }
  std::set<std::string> ids;
  Bigint S = 0;
  for (const auto& p : partials) {
    if (!ids.insert(p.member_id).second) {
      throw DuplicateMember("combine: duplicate member '" + p.member_id + "'");
    }
    S = add_mod(S, p.s, q);
  }
  return GroupSignature{std::move(S), W, R, m};
}

GroupSignature combine(const std::vector<PartialSignature>& partials,
                       const CeremonyAggregate& agg, const Bytes& m, const Bigint& q,
                       std::size_t t) {
  return combine(partials, agg.W, agg.R, m, q, t);
}

VerifyResult threshold_verify(const SystemParams& params, const Bigint& y_G,
                              const KeyPair& receiver, const GroupSignature& sig,
                              const HashOracle& oracle) {
  VerifyResult result;
  if (sig.S < 0 || sig.S >= params.q || sig.R < 0 || sig.R >= params.q || sig.W <= 0 ||
      sig.W >= params.p) {
    return result;
  }
  // mu = g^S y_G^R W = g^{sum k1 - R f(0) + R f(0) + sum(k2 - k1)} = g^{sum k2}
  Bigint mu = mul_mod(mod_exp(params.g, sig.S, params.p).value,
                      mod_exp(y_G, sig.R, params.p).value, params.p);
  mu = mul_mod(mu, sig.W, params.p);
  const Residue z = mod_exp(mu, receiver.x, params.p);
  result.mu = mu;
  result.z = z.value;
  try {
    const Bigint expected =
        hash_to_zq(oracle, z, Residue(sig.W, params.p), sig.m, params.q).value;
    result.accept = (expected == sig.R);
  } catch (const UnscriptedQuery&) {
    // A recomputation a scripted oracle has never seen cannot match.
    result.accept = false;
  }
  return result;
}

void save_group_signature_file(const GroupSignature& sig, const std::string& path) {
  auto out = textio::open_output(path);
  out << "S=" << sig.S << "\n";
  out << "W=" << sig.W << "\n";
  out << "R=" << sig.R << "\n";
  out << "m=" << to_hex(sig.m) << "\n";
}

GroupSignature load_group_signature_file(const std::string& path) {
  const DirectedSignature quad = load_directed_signature_file(path);
  return GroupSignature{quad.S, quad.W, quad.R, quad.m};
}

}  // namespace dtsig
