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

#include "dtsig/zkproof.hpp"

namespace dtsig {

VerifierState verifier_commit(const SystemParams& params, const Bigint& mu,
                              RandomSource& rng) {
  VerifierState state;
  if (rng.scripted()) {
    state.u = rng.draw_below(params.q);
    state.v = rng.draw_below(params.q);
  } else {
    do {
      state.u = rng.draw_below(params.q);
    } while (mod_floor(state.u, params.q) == 0);
    state.v = rng.draw_below(params.q);
  }
  state.w = mul_mod(mod_exp(mu, state.u, params.p).value,
                    mod_exp(params.g, state.v, params.p).value, params.p);
  return state;
}

ProverState prover_respond(const SystemParams& params, const Bigint& x_B, const Bigint& w,
                           RandomSource& rng) {
  if (w <= 0 || w >= params.p) {
    throw Error("prover_respond: w out of range (0, p)");
  }
  ProverState state;
  state.alpha = rng.draw_below(params.q);
  state.beta = mul_mod(w, mod_exp(params.g, state.alpha, params.p).value, params.p);
  state.gamma = mod_exp(state.beta, x_B, params.p).value;
  return state;
}

bool prover_check_opening(const SystemParams& params, const Bigint& w, const Bigint& u,
                          const Bigint& v, const Bigint& mu) {
  const Bigint expected = mul_mod(mod_exp(mu, u, params.p).value,
                                  mod_exp(params.g, v, params.p).value, params.p);
  return expected == mod_floor(w, params.p);
}

bool verifier_final_check(const SystemParams& params, const Bigint& beta,
                          const Bigint& gamma, const Bigint& mu, const Bigint& Z,
                          const Bigint& y_B, const Bigint& u, const Bigint& v,
                          const Bigint& alpha) {
  const Bigint exponent = v + alpha;
  const Bigint beta_expected = mul_mod(mod_exp(mu, u, params.p).value,
                                       mod_exp(params.g, exponent, params.p).value, params.p);
  if (beta_expected != mod_floor(beta, params.p)) {
    return false;
  }
  const Bigint gamma_expected = mul_mod(mod_exp(Z, u, params.p).value,
                                        mod_exp(y_B, exponent, params.p).value, params.p);
  return gamma_expected == mod_floor(gamma, params.p);
}

ConfirmationSession::ConfirmationSession(SystemParams params, ConfirmationContext context,
                                         KeyPair prover)
    : params_(std::move(params)), context_(std::move(context)), prover_(std::move(prover)) {}

Bigint ConfirmationSession::commit(RandomSource& verifier_rng) {
  if (stage_ != Stage::init) {
    throw ProtocolOrderViolation("confirmation: commit after the session started");
  }
  verifier_ = verifier_commit(params_, context_.mu, verifier_rng);
  record_.w = verifier_.w;
  stage_ = Stage::committed;
  return verifier_.w;
}

std::pair<Bigint, Bigint> ConfirmationSession::respond(RandomSource& prover_rng) {
  if (stage_ != Stage::committed) {
    throw ProtocolOrderViolation("confirmation: respond expects a fresh commitment");
  }
  responder_ = prover_respond(params_, prover_.x, verifier_.w, prover_rng);
  record_.beta = responder_.beta;
  record_.gamma = responder_.gamma;
  stage_ = Stage::responded;
  return {responder_.beta, responder_.gamma};
}

std::pair<Bigint, Bigint> ConfirmationSession::open() {
  return open_claiming(verifier_.u, verifier_.v);
}

std::pair<Bigint, Bigint> ConfirmationSession::open_claiming(const Bigint& u,
                                                             const Bigint& v) {
  if (stage_ != Stage::responded) {
    throw ProtocolOrderViolation("confirmation: open expects a response first");
  }
  record_.u = u;
  record_.v = v;
  stage_ = Stage::opened;
  return {u, v};
}

std::optional<Bigint> ConfirmationSession::release_alpha() {
  if (stage_ != Stage::opened) {
    throw ProtocolOrderViolation("confirmation: release_alpha expects an opening");
  }
  if (!prover_check_opening(params_, verifier_.w, record_.u, record_.v, context_.mu)) {
    // A failed opening means C may be fishing; alpha stays secret.
    record_.alpha.reset();
    record_.outcome = ConfirmationOutcome::aborted;
    stage_ = Stage::done;
    finished_ = true;
    return std::nullopt;
  }
  record_.alpha = responder_.alpha;
  stage_ = Stage::released;
  return responder_.alpha;
}

bool ConfirmationSession::final_check(const Bigint& alpha) {
  if (stage_ != Stage::released) {
    throw ProtocolOrderViolation("confirmation: final_check expects a released alpha");
  }
  const bool ok = verifier_final_check(params_, record_.beta, record_.gamma, context_.mu,
                                       context_.Z, context_.y_B, record_.u, record_.v, alpha);
  record_.outcome = ok ? ConfirmationOutcome::accepted : ConfirmationOutcome::rejected;
  stage_ = Stage::done;
  finished_ = true;
  return ok;
}

ConfirmationTranscript ConfirmationSession::transcript() const {
  if (!finished_) {
    throw ProtocolOrderViolation("confirmation: transcript requested before a verdict");
  }
  return record_;
}

ConfirmationTranscript run_confirmation(const SystemParams& params,
                                        const ConfirmationContext& context,
                                        const KeyPair& prover, RandomSource& rng_prover,
                                        RandomSource& rng_verifier) {
  bool gate = false;
  try {
    gate = hash_to_zq(params.hash_oracle, Residue(context.Z, params.p),
                      Residue(context.sig.W, params.p), context.sig.m, params.q)
               .value == context.sig.R;
  } catch (const UnscriptedQuery&) {
  }
  if (!gate) {
    throw Error("run_confirmation: context violates R = h(Z, W, m)");
  }
  ConfirmationSession session(params, context, prover);
  session.commit(rng_verifier);
  session.respond(rng_prover);
  session.open();
  auto alpha = session.release_alpha();
  if (alpha) {
    session.final_check(*alpha);
  }
  return session.transcript();
}

}  // namespace dtsig
