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
#include <utility>

#include "dtsig/threshold.hpp"

namespace dtsig {

// Interactive 4-move proof that log_mu Z = log_g y_B: the receiver B
// convinces a third party C that a signature it verified is valid, without
// handing C anything transferable.
//
// Moves: C sends w = mu^u g^v; B answers beta = w g^alpha, gamma =
// beta^{x_B}; C opens (u, v); B checks the opening and only then releases
// alpha; C accepts iff beta = mu^u g^{v+alpha} and gamma = Z^u y_B^{v+alpha}.

// Statement and inputs. The signature's R must satisfy R = h(Z, W, m)
// before a session starts (the presenting gate).
struct ConfirmationContext {
  Bigint mu;
  Bigint Z;
  Bigint y_B;
  GroupSignature sig;
};

struct VerifierState {
  Bigint u;
  Bigint v;
  Bigint w;  // mu^u g^v mod p
};

struct ProverState {
  Bigint alpha;
  Bigint beta;   // w g^alpha mod p
  Bigint gamma;  // beta^{x_B} mod p
};

enum class ConfirmationOutcome { accepted, rejected, aborted };

struct ConfirmationTranscript {
  Bigint w;
  Bigint beta;
  Bigint gamma;
  Bigint u;
  Bigint v;
  std::optional<Bigint> alpha;  // absent when B aborted at the opening check
  ConfirmationOutcome outcome = ConfirmationOutcome::rejected;
};

// Live draws of u exclude u = 0 mod q (a degenerate challenge that accepts
// vacuously because mu^u = 1); scripted draws replay verbatim, including
// values >= q.
VerifierState verifier_commit(const SystemParams& params, const Bigint& mu,
                              RandomSource& rng);

ProverState prover_respond(const SystemParams& params, const Bigint& x_B, const Bigint& w,
                           RandomSource& rng);

// B's check of C's opening. On false B aborts and never reveals alpha.
bool prover_check_opening(const SystemParams& params, const Bigint& w, const Bigint& u,
                          const Bigint& v, const Bigint& mu);

// C's final checks: beta = mu^u g^{v+alpha} and gamma = Z^u y_B^{v+alpha}.
bool verifier_final_check(const SystemParams& params, const Bigint& beta,
                          const Bigint& gamma, const Bigint& mu, const Bigint& Z,
                          const Bigint& y_B, const Bigint& u, const Bigint& v,
                          const Bigint& alpha);

// The alternating-move state machine. Out-of-order calls raise
// ProtocolOrderViolation; alpha is reachable only through release_alpha after
// a successful opening check.
class ConfirmationSession {
 public:
  enum class Stage { init, committed, responded, opened, released, done };

  ConfirmationSession(SystemParams params, ConfirmationContext context, KeyPair prover);

  Bigint commit(RandomSource& verifier_rng);                 // move 1 -> w
  std::pair<Bigint, Bigint> respond(RandomSource& prover_rng);  // move 2 -> (beta, gamma)
  std::pair<Bigint, Bigint> open();                          // move 3 -> (u, v)
  // Move 3 with a claimed opening instead of the honest one; what a cheating
  // C trying to extract alpha looks like.
  std::pair<Bigint, Bigint> open_claiming(const Bigint& u, const Bigint& v);
  std::optional<Bigint> release_alpha();                     // move 4, or abort
  bool final_check(const Bigint& alpha);                     // verdict

  Stage stage() const { return stage_; }
  const ConfirmationContext& context() const { return context_; }
  // Only after the session reached a verdict or aborted.
  ConfirmationTranscript transcript() const;

 private:
  SystemParams params_;
  ConfirmationContext context_;
  KeyPair prover_;
  VerifierState verifier_{};
  ProverState responder_{};
  Stage stage_ = Stage::init;
  ConfirmationTranscript record_{};
  bool finished_ = false;
};

// Drives a full session in move order. The context invariants (R gate
// included) must hold; a violated gate is a caller error here — the harness
// is where a failing gate stops a session gracefully.
ConfirmationTranscript run_confirmation(const SystemParams& params,
                                        const ConfirmationContext& context,
                                        const KeyPair& prover, RandomSource& rng_prover,
                                        RandomSource& rng_verifier);

}  // namespace dtsig
