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

#include <optional>
#include <string>
#include <vector>

#include "dtsig/params.hpp"

namespace dtsig {

// f(x) = a_0 + a_1 x + ... + a_{t-1} x^{t-1} mod q, with a_0 = K = f(0) the
// group secret.
struct DealerPolynomial {
  std::vector<Bigint> coefficients;  // a_0 .. a_{t-1}
  std::size_t threshold = 0;
  std::size_t group_size = 0;
};

// One member's share: public evaluation point u and secret v = f(u) mod q.
// u is stored as handed out; arithmetic reduces it mod q (distinctness and
// nonzeroness are enforced after reduction).
struct Share {
  std::string member_id;
  Bigint u;
  Bigint v;
};

// v_i scaled by its Lagrange coefficient at zero over the active subset H,
// so that sum_{i in H} ms_i = f(0) (mod q).
struct ModifiedShare {
  std::string member_id;
  Bigint ms;
};

struct MemberRef {
  std::string id;
  Bigint u;
};

enum class RetainPolynomial { no, yes };

struct DealResult {
  std::vector<Share> shares;
  Bigint group_public_key;  // y_G = g^{f(0)} mod p
  // Present only when dealt with RetainPolynomial::yes (test handle); the
  // default build wipes the coefficients instead. Never serialized.
  std::optional<DealerPolynomial> polynomial;
};

// Deals the group secret into |members| shares with reconstruction threshold
// t. The secret, when given, must lie in [1, q); otherwise it is drawn at
// random. q is required to be prime here: Lagrange interpolation needs the
// point differences invertible (CompositeModulus otherwise).
DealResult deal(const SystemParams& params, const std::optional<Bigint>& secret,
                std::size_t t, const std::vector<MemberRef>& members, RandomSource& rng,
                RetainPolynomial retain = RetainPolynomial::no);

// f(0) from any >= t consistent shares with distinct points.
Bigint reconstruct_secret(const std::vector<Share>& shares, const SystemParams& params);

// Full monomial-basis interpolation from t shares:
//   f(x) = sum_i f(u_i) prod_{j != i} (x - u_j) / (u_i - u_j)  (mod q)
// Extra shares are consistency-checked against the fit; a disagreement means
// a corrupted share (InconsistentShares).
DealerPolynomial reconstruct_polynomial(const std::vector<Share>& shares, std::size_t t,
                                        const SystemParams& params);

// The share scaled for the active subset (share.u must be one of
// active_points).
ModifiedShare modified_share(const Share& share, const std::vector<Bigint>& active_points,
                             const SystemParams& params);

// Horner evaluation of f at x mod q.
Bigint eval_poly(const DealerPolynomial& poly, const Bigint& x, const Bigint& q);

// Public group record published by the dealer.
struct GroupRecord {
  Bigint y_G;
  std::size_t t = 0;
  std::size_t n = 0;
  std::vector<MemberRef> members;
};

// Share files: one per member, lines id=, u=, v= (decimal). Keep them
// private to their member; see the docs note on file permissions.
void save_share_file(const Share& share, const std::string& path);
Share load_share_file(const std::string& path);

// Group record files: y_G=, t=, n=, then member=id,u per roster entry.
void save_group_record_file(const GroupRecord& record, const std::string& path);
GroupRecord load_group_record_file(const std::string& path);

}  // namespace dtsig
