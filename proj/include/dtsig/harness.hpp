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

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "dtsig/zkproof.hpp"

namespace dtsig {

// ---------------------------------------------------------------------------
// Parties and envelopes

enum class Role { SDC, Signer, Combiner, Receiver, ThirdParty };

std::string role_name(Role role);
Role role_from_name(const std::string& name);

struct PartyId {
  Role role;
  std::string label;

  std::string str() const { return role_name(role) + ":" + label; }
  bool operator==(const PartyId& other) const = default;
};

enum class Phase {
  dealing,
  round1_broadcast,
  round1_direct,
  round2,
  deliver,
  confirm_present,
  confirm_move1,
  confirm_move2,
  confirm_move3,
  confirm_move4,
};

std::string phase_name(Phase phase);
Phase phase_from_name(const std::string& name);

// One typed payload per phase; an envelope's phase is derived from its
// payload, so the two cannot disagree.
struct DealingPayload {
  std::string member_id;
  Bigint u;
  Bigint v;
};
struct Round1BroadcastPayload {
  std::string member_id;
  Bigint w;
};
struct Round1DirectPayload {
  std::string member_id;
  Bigint z;
};
struct Round2Payload {
  std::string member_id;
  Bigint s;
  Bigint r;
};
struct DeliverPayload {
  GroupSignature sig;
};
struct ConfirmPresentPayload {
  GroupSignature sig;
  Bigint mu;
  Bigint z;
};
struct ConfirmMove1Payload {
  Bigint w;
};
struct ConfirmMove2Payload {
  Bigint beta;
  Bigint gamma;
};
struct ConfirmMove3Payload {
  Bigint u;
  Bigint v;
};
struct ConfirmMove4Payload {
  Bigint alpha;
};

using Payload =
    std::variant<DealingPayload, Round1BroadcastPayload, Round1DirectPayload, Round2Payload,
                 DeliverPayload, ConfirmPresentPayload, ConfirmMove1Payload,
                 ConfirmMove2Payload, ConfirmMove3Payload, ConfirmMove4Payload>;

Phase phase_of(const Payload& payload);

struct Envelope {
  PartyId from;
  std::optional<PartyId> to;  // nullopt = broadcast
  Payload payload;

  Phase phase() const { return phase_of(payload); }
};

using Transcript = std::vector<Envelope>;

// One line per envelope:
//   <phase> from=<Role:label> to=<Role:label|broadcast> k=v k=v ...
// Field values are decimal except m (hex).
std::string serialize_envelope(const Envelope& envelope);
std::string serialize_transcript(const Transcript& transcript);
Envelope parse_envelope(const std::string& line);
Transcript parse_transcript(std::istream& in);
void save_transcript_file(const Transcript& transcript, const std::string& path);
Transcript load_transcript_file(const std::string& path);

// ---------------------------------------------------------------------------
// Secrecy linter

// Checks the transcript's routing discipline: only round1-broadcast lines may
// be broadcast (their schema carries nothing but a member id and w), z values
// move strictly on signer-to-signer direct envelopes, and dealt shares move
// strictly on SDC-to-signer direct envelopes. Nonces and secret keys have no
// schema slot at all, so their appearance anywhere is a parse failure.
struct LintReport {
  std::vector<std::string> violations;
  bool clean() const { return violations.empty(); }
};

LintReport lint_transcript(const Transcript& transcript);

// ---------------------------------------------------------------------------
// Ceremony configuration

enum class RandomnessMode { live, scripted };
enum class ExecutionMode { sequential, threaded };

// Scripted draw order, per party:
//   SDC:sdc      dealer secret (only when secret= is absent), then a_1..a_{t-1}
//   Signer:<id>  k1, then k2
//   Receiver:B   x_B (only when receiver_x= is absent), then alpha per
//                confirmation session
//   ThirdParty:<label>  u, then v per confirmation session
struct CeremonyConfig {
  SystemParams params;
  std::vector<MemberRef> roster;
  std::size_t t = 0;
  std::vector<std::string> active;  // H: exactly t roster ids
  Bytes m;
  RandomnessMode mode = RandomnessMode::live;
  std::map<std::string, std::vector<Bigint>> tapes;  // keyed by PartyId::str()
  std::optional<Bigint> dealer_secret;
  std::optional<Bigint> receiver_x;
  std::optional<Bigint> group_public_key;  // y_G, for flows that skip dealing
  std::vector<Share> predealt_shares;      // dealing is skipped when non-empty
  std::optional<unsigned long> seed;       // live-mode determinism
  ExecutionMode exec = ExecutionMode::sequential;
};

// Key-value config file. Keys: params= (path, relative to the config file),
// t=, member=id,u (repeated, roster order), active=id,id,..., m=hex,
// secret=, receiver_x=, y_G=, mode=live|scripted, seed=, threads=0|1,
// tape=Party,v1,v2,... (repeated), share_file= (repeated).
CeremonyConfig load_ceremony_config_file(const std::string& path);

// Throws Error when the config violates its invariants (H not a t-subset of
// the roster, missing tapes in scripted mode, broken params, ...).
void validate_config(const CeremonyConfig& config);

// ---------------------------------------------------------------------------
// Party state machines

// A signer's confined state. Nonces are single-use: they are wiped when the
// partial signature is produced, and a repeated round 1 for the same
// ceremony id raises NonceReuse.
class SignerParty {
 public:
  SignerParty(std::string id, Bigint u, std::unique_ptr<RandomSource> rng);

  const std::string& id() const { return id_; }
  const Bigint& u() const { return u_; }
  bool has_share() const { return share_.has_value(); }

  void receive_share(Share share);
  void drop_share();  // used by fault injection (impersonation)

  Commitment begin_round1(const std::string& ceremony_id, const SystemParams& params,
                          const Bigint& y_receiver);
  void observe_w(const std::string& member_id, const Bigint& w);
  void observe_z(const std::string& member_id, const Bigint& z);

  // Needs every w and z of the active subset; a hole means a dropped or
  // missing message.
  CeremonyAggregate compute_aggregate(const SystemParams& params,
                                      const std::vector<std::string>& active_ids,
                                      const Bytes& m) const;

  // Consumes the nonces.
  PartialSignature round2(const SystemParams& params,
                          const std::vector<Bigint>& active_points, const Bigint& R);

  // What a member without a share can do at best: guess. Exists for the
  // impersonation fault.
  PartialSignature fabricate_partial(const Bigint& q);

 private:
  std::string id_;
  Bigint u_;
  std::unique_ptr<RandomSource> rng_;
  std::optional<Share> share_;
  std::optional<SignerNonces> nonces_;
  std::set<std::string> served_ceremonies_;
  std::map<std::string, Bigint> seen_w_;
  std::map<std::string, Bigint> seen_z_;
};

// The designated combiner. It sees broadcast w values and the round-2
// partials; it never holds a z value, so it can compute W but not Z.
class CombinerParty {
 public:
  void observe_w(const std::string& member_id, const Bigint& w);
  void receive_partial(const std::string& member_id, const Bigint& s, const Bigint& r);

  // W from its own broadcast view, R forwarded from the active subset
  // (required to agree across partials, which is a transport check, not an
  // endorsement), S from combine().
  GroupSignature package(const SystemParams& params,
                         const std::vector<std::string>& active_ids, const Bytes& m,
                         std::size_t t) const;

  std::size_t partial_count() const { return partials_.size(); }

 private:
  std::map<std::string, Bigint> seen_w_;
  std::vector<PartialSignature> partials_;
  std::optional<Bigint> forwarded_r_;
};

// ---------------------------------------------------------------------------
// Ceremony execution

struct CeremonyResult {
  GroupSignature signature;
  Bigint group_public_key;
  KeyPair receiver_key;
  bool receiver_accepted = false;
  Bigint mu;  // receiver's recomputation
  Bigint Z;
  std::vector<Share> shares;  // dealer output (mirrors the dealing envelopes)
  Transcript transcript;
};

// Dealing (unless shares were predealt), round 1 (w broadcast, z direct
// within H), aggregation, round 2, combination, delivery, receiver
// verification. Module errors are wrapped as CeremonyError with the
// offending party and phase. In threaded mode every party computes on its
// own thread; envelopes are delivered in roster order either way, so
// scripted transcripts are byte-identical across modes.
CeremonyResult run_ceremony(const CeremonyConfig& config);

struct ConfirmationSessionResult {
  bool r_check_passed = false;  // C's gate on R = h(Z, W, m)
  std::optional<ConfirmationTranscript> transcript;  // absent when the gate fails
  Transcript envelopes;
};

// B presents {S, W, R, m, mu, Z} to C; C re-checks R and stops on a mismatch;
// otherwise the 4-move proof runs over the bus. Requires
// config.group_public_key.
ConfirmationSessionResult run_confirmation_session(const CeremonyConfig& config,
                                                   const GroupSignature& signature,
                                                   const KeyPair& receiver,
                                                   const std::string& third_party_label = "C");

// ---------------------------------------------------------------------------
// Fault injection

enum class FaultKind { corrupt_partial, substitute_S, impersonate, drop_message };

struct FaultSpec {
  FaultKind kind;
  std::string member;  // corrupt_partial, impersonate
  Bigint value;        // delta or S*
  Phase phase = Phase::dealing;  // drop_message
};

// Text forms: corrupt_partial:<member>:<delta>, substitute_S:<value>,
// impersonate:<member>, drop_message:<phase>.
FaultSpec parse_fault_spec(const std::string& text);

struct FaultOutcome {
  enum class Where { receiver_rejected, stalled, passed };
  Where where;
  std::string detail;
  std::optional<CeremonyResult> result;  // present when the ceremony completed
};

std::string fault_outcome_name(FaultOutcome::Where where);

// Runs the ceremony with the fault applied and reports where it surfaced.
// `passed` (the receiver accepted a faulty ceremony) is the outcome a test
// must treat as a failure.
FaultOutcome inject_fault(const CeremonyConfig& config, const FaultSpec& fault);

}  // namespace dtsig
