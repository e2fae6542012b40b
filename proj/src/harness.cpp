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

#include "dtsig/harness.hpp"

#include <algorithm>
#include <filesystem>
#include <future>
#include <sstream>

#include "textio.hpp"

namespace dtsig {

// ---------------------------------------------------------------------------
// Names

std::string role_name(Role role) {
  switch (role) {
    case Role::SDC: return "SDC";
    case Role::Signer: return "Signer";
    case Role::Combiner: return "Combiner";
    case Role::Receiver: return "Receiver";
    case Role::ThirdParty: return "ThirdParty";
  }
  throw Error("role_name: bad role");
}

Role role_from_name(const std::string& name) {
  if (name == "SDC") return Role::SDC;
  if (name == "Signer") return Role::Signer;
  if (name == "Combiner") return Role::Combiner;
  if (name == "Receiver") return Role::Receiver;
  if (name == "ThirdParty") return Role::ThirdParty;
  throw ParseError("unknown role '" + name + "'");
}

std::string phase_name(Phase phase) {
  switch (phase) {
    case Phase::dealing: return "dealing";
    case Phase::round1_broadcast: return "round1-broadcast";
    case Phase::round1_direct: return "round1-direct";
    case Phase::round2: return "round2";
    case Phase::deliver: return "deliver";
    case Phase::confirm_present: return "confirm-present";
    case Phase::confirm_move1: return "confirm-move-1";
    case Phase::confirm_move2: return "confirm-move-2";
    case Phase::confirm_move3: return "confirm-move-3";
    case Phase::confirm_move4: return "confirm-move-4";
  }
  throw Error("phase_name: bad phase");
}

Phase phase_from_name(const std::string& name) {
  if (name == "dealing") return Phase::dealing;
  if (name == "round1-broadcast") return Phase::round1_broadcast;
  if (name == "round1-direct") return Phase::round1_direct;
  if (name == "round2") return Phase::round2;
  if (name == "deliver") return Phase::deliver;
  if (name == "confirm-present") return Phase::confirm_present;
  if (name == "confirm-move-1") return Phase::confirm_move1;
  if (name == "confirm-move-2") return Phase::confirm_move2;
  if (name == "confirm-move-3") return Phase::confirm_move3;
  if (name == "confirm-move-4") return Phase::confirm_move4;
  throw ParseError("unknown phase '" + name + "'");
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Phase phase_of(const Payload& payload) {
  return std::visit(
      Overloaded{[](const DealingPayload&) { return Phase::dealing; },
                 [](const Round1BroadcastPayload&) { return Phase::round1_broadcast; },
                 [](const Round1DirectPayload&) { return Phase::round1_direct; },
                 [](const Round2Payload&) { return Phase::round2; },
                 [](const DeliverPayload&) { return Phase::deliver; },
                 [](const ConfirmPresentPayload&) { return Phase::confirm_present; },
                 [](const ConfirmMove1Payload&) { return Phase::confirm_move1; },
                 [](const ConfirmMove2Payload&) { return Phase::confirm_move2; },
                 [](const ConfirmMove3Payload&) { return Phase::confirm_move3; },
                 [](const ConfirmMove4Payload&) { return Phase::confirm_move4; }},
      payload);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

void append_fields(std::ostream& out, const Payload& payload) {
  std::visit(Overloaded{
                 [&](const DealingPayload& p) {
                   out << " member=" << p.member_id << " u=" << p.u << " v=" << p.v;
                 },
                 [&](const Round1BroadcastPayload& p) {
                   out << " member=" << p.member_id << " w=" << p.w;
                 },
                 [&](const Round1DirectPayload& p) {
                   out << " member=" << p.member_id << " z=" << p.z;
                 },
                 [&](const Round2Payload& p) {
                   out << " member=" << p.member_id << " s=" << p.s << " R=" << p.r;
                 },
                 [&](const DeliverPayload& p) {
                   out << " S=" << p.sig.S << " W=" << p.sig.W << " R=" << p.sig.R
                       << " m=" << to_hex(p.sig.m);
                 },
                 [&](const ConfirmPresentPayload& p) {
                   out << " S=" << p.sig.S << " W=" << p.sig.W << " R=" << p.sig.R
                       << " m=" << to_hex(p.sig.m) << " mu=" << p.mu << " Z=" << p.z;
                 },
                 [&](const ConfirmMove1Payload& p) { out << " w=" << p.w; },
                 [&](const ConfirmMove2Payload& p) {
                   out << " beta=" << p.beta << " gamma=" << p.gamma;
                 },
                 [&](const ConfirmMove3Payload& p) { out << " u=" << p.u << " v=" << p.v; },
                 [&](const ConfirmMove4Payload& p) { out << " alpha=" << p.alpha; },
             },
             payload);
}

PartyId parse_party(const std::string& text) {
  auto pos = text.find(':');
  if (pos == std::string::npos) {
    throw ParseError("party needs Role:label, got '" + text + "'");
  }
  return PartyId{role_from_name(text.substr(0, pos)), text.substr(pos + 1)};
}

using FieldMap = std::map<std::string, std::string>;

const std::string& need(const FieldMap& fields, const std::string& key, Phase phase) {
  auto it = fields.find(key);
  if (it == fields.end()) {
    throw ParseError("phase " + phase_name(phase) + " is missing field '" + key + "'");
  }
  return it->second;
}

Payload parse_payload(Phase phase, const FieldMap& fields) {
  auto expect_count = [&](std::size_t n) {
    if (fields.size() != n) {
      throw ParseError("phase " + phase_name(phase) + " has unexpected fields");
    }
  };
  switch (phase) {
    case Phase::dealing:
      expect_count(3);
      return DealingPayload{need(fields, "member", phase),
                            from_decimal(need(fields, "u", phase)),
                            from_decimal(need(fields, "v", phase))};
    case Phase::round1_broadcast:
      expect_count(2);
      return Round1BroadcastPayload{need(fields, "member", phase),
                                    from_decimal(need(fields, "w", phase))};
    case Phase::round1_direct:
      expect_count(2);
      return Round1DirectPayload{need(fields, "member", phase),
                                 from_decimal(need(fields, "z", phase))};
    case Phase::round2:
      expect_count(3);
      return Round2Payload{need(fields, "member", phase),
                           from_decimal(need(fields, "s", phase)),
                           from_decimal(need(fields, "R", phase))};
    case Phase::deliver:
      expect_count(4);
      return DeliverPayload{GroupSignature{from_decimal(need(fields, "S", phase)),
                                           from_decimal(need(fields, "W", phase)),
                                           from_decimal(need(fields, "R", phase)),
                                           from_hex(need(fields, "m", phase))}};
    case Phase::confirm_present:
      expect_count(6);
      return ConfirmPresentPayload{GroupSignature{from_decimal(need(fields, "S", phase)),
                                                  from_decimal(need(fields, "W", phase)),
                                                  from_decimal(need(fields, "R", phase)),
                                                  from_hex(need(fields, "m", phase))},
                                   from_decimal(need(fields, "mu", phase)),
                                   from_decimal(need(fields, "Z", phase))};
    case Phase::confirm_move1:
      expect_count(1);
      return ConfirmMove1Payload{from_decimal(need(fields, "w", phase))};
    case Phase::confirm_move2:
      expect_count(2);
      return ConfirmMove2Payload{from_decimal(need(fields, "beta", phase)),
                                 from_decimal(need(fields, "gamma", phase))};
    case Phase::confirm_move3:
      expect_count(2);
      return ConfirmMove3Payload{from_decimal(need(fields, "u", phase)),
                                 from_decimal(need(fields, "v", phase))};
    case Phase::confirm_move4:
      expect_count(1);
      return ConfirmMove4Payload{from_decimal(need(fields, "alpha", phase))};
  }
  throw ParseError("parse_payload: bad phase");
}

}  // namespace

std::string serialize_envelope(const Envelope& envelope) {
  std::ostringstream out;
  out << phase_name(envelope.phase()) << " from=" << envelope.from.str()
      << " to=" << (envelope.to ? envelope.to->str() : std::string("broadcast"));
  append_fields(out, envelope.payload);
  return out.str();
}

std::string serialize_transcript(const Transcript& transcript) {
  std::string out;
  for (const auto& env : transcript) {
    out += serialize_envelope(env);
    out += "\n";
  }
  return out;
}

Envelope parse_envelope(const std::string& line) {
  const auto tokens = textio::split(line, ' ');
  if (tokens.size() < 3) {
    throw ParseError("envelope line too short: '" + line + "'");
  }
  const Phase phase = phase_from_name(tokens[0]);
  Envelope env{PartyId{Role::SDC, ""}, std::nullopt, ConfirmMove1Payload{0}};
  FieldMap fields;
  bool have_from = false, have_to = false;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    auto [key, value] = textio::split_key_value(tokens[i]);
    if (key == "from") {
      env.from = parse_party(value);
      have_from = true;
    } else if (key == "to") {
      if (value != "broadcast") {
        env.to = parse_party(value);
      }
      have_to = true;
    } else if (!fields.emplace(key, value).second) {
      throw ParseError("duplicate field '" + key + "' in '" + line + "'");
    }
  }
  if (!have_from || !have_to) {
    throw ParseError("envelope needs from= and to=: '" + line + "'");
  }
  env.payload = parse_payload(phase, fields);
  return env;
}

Transcript parse_transcript(std::istream& in) {
  Transcript transcript;
  for (const auto& line : textio::read_lines(in)) {
    transcript.push_back(parse_envelope(line));
  }
  return transcript;
}

void save_transcript_file(const Transcript& transcript, const std::string& path) {
  auto out = textio::open_output(path);
  out << serialize_transcript(transcript);
}

Transcript load_transcript_file(const std::string& path) {
  auto in = textio::open_input(path);
  return parse_transcript(in);
}

// ---------------------------------------------------------------------------
// Linter

LintReport lint_transcript(const Transcript& transcript) {
  LintReport report;
  auto flag = [&](std::size_t i, Phase phase, const std::string& msg) {
    report.violations.push_back("envelope " + std::to_string(i) + " (" + phase_name(phase) +
                                "): " + msg);
  };
  for (std::size_t i = 0; i < transcript.size(); ++i) {
    const Envelope& env = transcript[i];
    const Phase phase = env.phase();
    if (!env.to && phase != Phase::round1_broadcast) {
      flag(i, phase, "only round1-broadcast may use the broadcast channel");
    }
    switch (phase) {
      case Phase::dealing:
        if (env.from.role != Role::SDC || !env.to || env.to->role != Role::Signer) {
          flag(i, phase, "a dealt share (v) must travel SDC -> signer, direct");
        }
        break;
      case Phase::round1_broadcast:
        if (env.from.role != Role::Signer) {
          flag(i, phase, "round-1 broadcasts come from signers only");
        }
        break;
      case Phase::round1_direct:
        if (env.from.role != Role::Signer || !env.to || env.to->role != Role::Signer) {
          flag(i, phase, "z must travel signer -> signer, direct");
        }
        break;
      case Phase::round2:
        if (!env.to || env.to->role != Role::Combiner) {
          flag(i, phase, "partial signatures go direct to the combiner");
        }
        break;
      case Phase::deliver:
        if (env.from.role != Role::Combiner || !env.to || env.to->role != Role::Receiver) {
          flag(i, phase, "the group signature travels combiner -> receiver");
        }
        break;
      case Phase::confirm_present:
      case Phase::confirm_move2:
      case Phase::confirm_move4:
        if (env.from.role != Role::Receiver || !env.to || env.to->role != Role::ThirdParty) {
          flag(i, phase, "this confirmation move travels receiver -> third party");
        }
        break;
      case Phase::confirm_move1:
      case Phase::confirm_move3:
        if (env.from.role != Role::ThirdParty || !env.to || env.to->role != Role::Receiver) {
          flag(i, phase, "this confirmation move travels third party -> receiver");
        }
        break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Config

CeremonyConfig load_ceremony_config_file(const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    fs::path candidate(p);
    return candidate.is_absolute() ? candidate.string() : (base / candidate).string();
  };

  auto in = textio::open_input(path);
  CeremonyConfig config;
  bool have_params = false;
  for (const auto& line : textio::read_lines(in)) {
    auto [key, value] = textio::split_key_value(line);
    if (key == "params") {
      config.params = load_params_file(resolve(value));
      have_params = true;
    } else if (key == "t") {
      config.t = std::stoul(value);
    } else if (key == "member") {
      auto parts = textio::split(value, ',');
      if (parts.size() != 2) {
        throw ParseError("config: member needs id,u: '" + value + "'");
      }
      config.roster.push_back(MemberRef{parts[0], from_decimal(parts[1])});
    } else if (key == "active") {
      config.active = textio::split(value, ',');
    } else if (key == "m") {
      config.m = from_hex(value);
    } else if (key == "secret") {
      config.dealer_secret = from_decimal(value);
    } else if (key == "receiver_x") {
      config.receiver_x = from_decimal(value);
    } else if (key == "y_G") {
      config.group_public_key = from_decimal(value);
    } else if (key == "mode") {
      if (value == "live") {
        config.mode = RandomnessMode::live;
      } else if (value == "scripted") {
        config.mode = RandomnessMode::scripted;
      } else {
        throw ParseError("config: unknown mode '" + value + "'");
      }
    } else if (key == "seed") {
      config.seed = std::stoul(value);
    } else if (key == "threads") {
      config.exec = (value == "1") ? ExecutionMode::threaded : ExecutionMode::sequential;
    } else if (key == "tape") {
      auto parts = textio::split(value, ',');
      if (parts.size() < 2) {
        throw ParseError("config: tape needs Party,v1,...: '" + value + "'");
      }
      std::vector<Bigint> draws;
      for (std::size_t i = 1; i < parts.size(); ++i) {
        draws.push_back(from_decimal(parts[i]));
      }
      config.tapes[parts[0]] = std::move(draws);
    } else if (key == "share_file") {
      config.predealt_shares.push_back(load_share_file(resolve(value)));
    } else {
      throw ParseError("config: unknown key '" + key + "'");
    }
  }
  if (!have_params) {
    throw ParseError("config: params= is required");
  }
  return config;
}

void validate_config(const CeremonyConfig& config) {
  std::vector<std::string> problems;
  if (config.roster.empty()) {
    problems.push_back("roster is empty");
  }
  std::set<std::string> roster_ids;
  for (const auto& m : config.roster) {
    if (!roster_ids.insert(m.id).second) {
      problems.push_back("duplicate roster id '" + m.id + "'");
    }
  }
  if (config.t < 1 || config.t > config.roster.size()) {
    problems.push_back("t must satisfy 1 <= t <= n");
  }
  if (config.active.size() != config.t) {
    problems.push_back("active subset H must have exactly t members");
  }
  std::set<std::string> active_ids;
  for (const auto& id : config.active) {
    if (!roster_ids.count(id)) {
      problems.push_back("active member '" + id + "' is not in the roster");
    }
    if (!active_ids.insert(id).second) {
      problems.push_back("duplicate active member '" + id + "'");
    }
  }
  const ValidationReport params_report = validate_params(config.params, /*allow_toy=*/true);
  for (const auto& v : params_report.violations) {
    problems.push_back("params: " + v);
  }
  if (config.mode == RandomnessMode::scripted) {
    const bool dealing = config.predealt_shares.empty();
    const bool sdc_draws = dealing && (config.t > 1 || !config.dealer_secret);
    if (sdc_draws && !config.tapes.count("SDC:sdc")) {
      problems.push_back("scripted mode: SDC:sdc tape is required");
    }
    for (const auto& id : config.active) {
      if (!config.tapes.count("Signer:" + id)) {
        problems.push_back("scripted mode: Signer:" + id + " tape is required");
      }
    }
    if (!config.receiver_x && !config.tapes.count("Receiver:B")) {
      problems.push_back("scripted mode: receiver_x or a Receiver:B tape is required");
    }
  }
  if (!config.predealt_shares.empty()) {
    if (!config.group_public_key) {
      problems.push_back("predealt shares need y_G");
    }
    std::set<std::string> share_ids;
    for (const auto& s : config.predealt_shares) {
      share_ids.insert(s.member_id);
    }
    for (const auto& id : config.active) {
      if (!share_ids.count(id)) {
        problems.push_back("active member '" + id + "' has no predealt share");
      }
    }
  }
  if (!problems.empty()) {
    std::string joined = "invalid ceremony config:";
    for (const auto& p : problems) {
      joined += "\n  - " + p;
    }
    throw Error(joined);
  }
}

// ---------------------------------------------------------------------------
// Parties

SignerParty::SignerParty(std::string id, Bigint u, std::unique_ptr<RandomSource> rng)
    : id_(std::move(id)), u_(std::move(u)), rng_(std::move(rng)) {}

void SignerParty::receive_share(Share share) { share_ = std::move(share); }

void SignerParty::drop_share() { share_.reset(); }

Commitment SignerParty::begin_round1(const std::string& ceremony_id,
                                     const SystemParams& params, const Bigint& y_receiver) {
  if (!served_ceremonies_.insert(ceremony_id).second) {
    throw NonceReuse("signer '" + id_ + "' already drew nonces for ceremony '" + ceremony_id +
                     "'");
  }
  auto [nonces, commitment] = round1_commit(params, y_receiver, id_, *rng_);
  nonces_ = std::move(nonces);
  seen_w_[id_] = commitment.w;
  seen_z_[id_] = commitment.z;
  return commitment;
}

void SignerParty::observe_w(const std::string& member_id, const Bigint& w) {
  seen_w_[member_id] = w;
}

void SignerParty::observe_z(const std::string& member_id, const Bigint& z) {
  seen_z_[member_id] = z;
}

CeremonyAggregate SignerParty::compute_aggregate(const SystemParams& params,
                                                 const std::vector<std::string>& active_ids,
                                                 const Bytes& m) const {
  std::vector<Commitment> commitments;
  commitments.reserve(active_ids.size());
  for (const auto& id : active_ids) {
    auto w_it = seen_w_.find(id);
    auto z_it = seen_z_.find(id);
    if (w_it == seen_w_.end()) {
      throw Error("signer '" + id_ + "' is missing w from '" + id + "'");
    }
    if (z_it == seen_z_.end()) {
      throw Error("signer '" + id_ + "' is missing z from '" + id + "'");
    }
    commitments.push_back(Commitment{id, w_it->second, z_it->second});
  }
  return aggregate(params, commitments, m, params.hash_oracle);
}

PartialSignature SignerParty::round2(const SystemParams& params,
                                     const std::vector<Bigint>& active_points,
                                     const Bigint& R) {
  if (!share_) {
    throw Error("signer '" + id_ + "' holds no share");
  }
  if (!nonces_) {
    throw Error("signer '" + id_ + "' has no live nonces");
  }
  const ModifiedShare ms = modified_share(*share_, active_points, params);
  PartialSignature partial = round2_partial_sign(*nonces_, ms, R, params.q);
  wipe(nonces_->k1);
  wipe(nonces_->k2);
  nonces_.reset();
  return partial;
}

PartialSignature SignerParty::fabricate_partial(const Bigint& q) {
  nonces_.reset();
  return PartialSignature{id_, rng_->draw_below(q)};
}

void CombinerParty::observe_w(const std::string& member_id, const Bigint& w) {
  seen_w_[member_id] = w;
}

void CombinerParty::receive_partial(const std::string& member_id, const Bigint& s,
                                    const Bigint& r) {
  if (forwarded_r_ && *forwarded_r_ != r) {
    throw Error("active members disagree on R");
  }
  forwarded_r_ = r;
  partials_.push_back(PartialSignature{member_id, s});
}

GroupSignature CombinerParty::package(const SystemParams& params,
                                      const std::vector<std::string>& active_ids,
                                      const Bytes& m, std::size_t t) const {
  if (!forwarded_r_) {
    throw Error("combiner received no partial signatures");
  }
  Bigint W = 1;
  for (const auto& id : active_ids) {
    auto it = seen_w_.find(id);
    if (it == seen_w_.end()) {
      throw Error("combiner is missing w from '" + id + "'");
    }
    W = mul_mod(W, it->second, params.p);
  }
  return combine(partials_, W, *forwarded_r_, m, params.q, t);
}

// ---------------------------------------------------------------------------
// Conductor

namespace {

std::unique_ptr<RandomSource> make_source(const CeremonyConfig& config, const PartyId& party,
                                          unsigned long index) {
  if (config.mode == RandomnessMode::scripted) {
    auto it = config.tapes.find(party.str());
    if (it == config.tapes.end()) {
      return std::make_unique<ScriptedTape>(std::vector<Bigint>{});
    }
    return std::make_unique<ScriptedTape>(it->second);
  }
  if (config.seed) {
    return std::make_unique<SystemRandom>(*config.seed + index);
  }
  return std::make_unique<SystemRandom>();
}

// Runs fn(0..count-1); in threaded mode each index gets its own thread.
// Results land in index order, so transcripts do not depend on the mode.
template <typename Fn>
auto map_indexed(std::size_t count, ExecutionMode exec, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using T = decltype(fn(std::size_t{0}));
  std::vector<T> out;
  out.reserve(count);
  if (exec == ExecutionMode::sequential) {
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(fn(i));
    }
    return out;
  }
  std::vector<std::future<T>> futures;
  futures.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    futures.push_back(std::async(std::launch::async, [&fn, i] { return fn(i); }));
  }
  for (auto& f : futures) {
    out.push_back(f.get());
  }
  return out;
}

CeremonyResult run_ceremony_impl(const CeremonyConfig& config, const FaultSpec* fault) {
  validate_config(config);
  const SystemParams& params = config.params;
  const PartyId sdc{Role::SDC, "sdc"};
  const PartyId dc{Role::Combiner, "dc"};
  const PartyId receiver_id{Role::Receiver, "B"};
  const std::string ceremony_id = "ceremony";

  auto dropped = [&](Phase phase) {
    return fault && fault->kind == FaultKind::drop_message && fault->phase == phase;
  };
  auto wrap = [](const PartyId& party, const std::string& phase, auto&& body) {
    try {
      return body();
    } catch (const CeremonyError&) {
      throw;
    } catch (const Error& e) {
      throw CeremonyError(party.str(), phase, e.what());
    }
  };

  CeremonyResult result;
  Transcript& transcript = result.transcript;

  // Parties and their randomness.
  auto sdc_rng = make_source(config, sdc, 0);
  auto receiver_rng = make_source(config, receiver_id, 1);
  std::map<std::string, std::unique_ptr<SignerParty>> signers;
  for (std::size_t i = 0; i < config.roster.size(); ++i) {
    const auto& m = config.roster[i];
    signers.emplace(m.id, std::make_unique<SignerParty>(
                              m.id, m.u,
                              make_source(config, PartyId{Role::Signer, m.id}, 3 + i)));
  }
  CombinerParty combiner;

  result.receiver_key = wrap(receiver_id, "keygen", [&] {
    if (config.receiver_x) {
      return KeyPair{*config.receiver_x, mod_exp(params.g, *config.receiver_x, params.p).value};
    }
    return keygen(params, *receiver_rng);
  });

  // Dealing.
  if (config.predealt_shares.empty()) {
    const DealResult dealt = wrap(sdc, "dealing", [&] {
      return deal(params, config.dealer_secret, config.t, config.roster, *sdc_rng);
    });
    result.group_public_key = dealt.group_public_key;
    result.shares = dealt.shares;
    for (const auto& share : dealt.shares) {
      if (dropped(Phase::dealing)) {
        continue;
      }
      transcript.push_back(Envelope{sdc, PartyId{Role::Signer, share.member_id},
                                    DealingPayload{share.member_id, share.u, share.v}});
      signers.at(share.member_id)->receive_share(share);
    }
  } else {
    result.group_public_key = *config.group_public_key;
    result.shares = config.predealt_shares;
    for (const auto& share : config.predealt_shares) {
      if (signers.count(share.member_id)) {
        signers.at(share.member_id)->receive_share(share);
      }
    }
  }

  if (fault && fault->kind == FaultKind::impersonate) {
    signers.at(fault->member)->drop_share();
  }

  // Active subset in roster order, with points.
  std::vector<std::string> active_ids;
  std::vector<Bigint> active_points;
  for (const auto& m : config.roster) {
    if (std::find(config.active.begin(), config.active.end(), m.id) != config.active.end()) {
      active_ids.push_back(m.id);
      active_points.push_back(m.u);
    }
  }

  // Round 1: every active member draws nonces and commits.
  const std::vector<Commitment> commitments =
      map_indexed(active_ids.size(), config.exec, [&](std::size_t i) {
        const PartyId party{Role::Signer, active_ids[i]};
        return wrap(party, "round1", [&] {
          return signers.at(active_ids[i])
              ->begin_round1(ceremony_id, params, result.receiver_key.y);
        });
      });

  for (std::size_t i = 0; i < active_ids.size(); ++i) {
    const PartyId party{Role::Signer, active_ids[i]};
    const Commitment& c = commitments[i];
    if (!dropped(Phase::round1_broadcast)) {
      transcript.push_back(
          Envelope{party, std::nullopt, Round1BroadcastPayload{c.member_id, c.w}});
      for (const auto& m : config.roster) {
        signers.at(m.id)->observe_w(c.member_id, c.w);
      }
      combiner.observe_w(c.member_id, c.w);
    }
    for (const auto& peer : active_ids) {
      if (peer == c.member_id || dropped(Phase::round1_direct)) {
        continue;
      }
      transcript.push_back(Envelope{party, PartyId{Role::Signer, peer},
                                    Round1DirectPayload{c.member_id, c.z}});
      signers.at(peer)->observe_z(c.member_id, c.z);
    }
  }

  // Every active member aggregates; the views must agree.
  const std::vector<CeremonyAggregate> aggregates =
      map_indexed(active_ids.size(), config.exec, [&](std::size_t i) {
        const PartyId party{Role::Signer, active_ids[i]};
        return wrap(party, "aggregate", [&] {
          return signers.at(active_ids[i])->compute_aggregate(params, active_ids, config.m);
        });
      });
  for (std::size_t i = 1; i < aggregates.size(); ++i) {
    if (aggregates[i].W != aggregates[0].W || aggregates[i].Z != aggregates[0].Z ||
        aggregates[i].R != aggregates[0].R) {
      throw CeremonyError(PartyId{Role::Signer, active_ids[i]}.str(), "aggregate",
                          "aggregate view disagrees across the active subset");
    }
  }
  const Bigint R = aggregates.empty() ? Bigint(0) : aggregates[0].R;

  // Round 2: partial signatures to the combiner.
  const std::vector<PartialSignature> partials =
      map_indexed(active_ids.size(), config.exec, [&](std::size_t i) {
        const PartyId party{Role::Signer, active_ids[i]};
        return wrap(party, "round2", [&] {
          SignerParty& signer = *signers.at(active_ids[i]);
          if (fault && fault->kind == FaultKind::impersonate &&
              fault->member == active_ids[i]) {
            return signer.fabricate_partial(params.q);
          }
          PartialSignature partial = signer.round2(params, active_points, R);
          if (fault && fault->kind == FaultKind::corrupt_partial &&
              fault->member == active_ids[i]) {
            partial.s = mod_floor(partial.s + fault->value, params.q);
          }
          return partial;
        });
      });

  for (std::size_t i = 0; i < active_ids.size(); ++i) {
    if (dropped(Phase::round2)) {
      continue;
    }
    transcript.push_back(Envelope{PartyId{Role::Signer, active_ids[i]}, dc,
                                  Round2Payload{partials[i].member_id, partials[i].s, R}});
    combiner.receive_partial(partials[i].member_id, partials[i].s, R);
  }

  // Combination and delivery.
  result.signature = wrap(dc, "combine", [&] {
    return combiner.package(params, active_ids, config.m, config.t);
  });
  if (fault && fault->kind == FaultKind::substitute_S) {
    result.signature.S = fault->value;
  }

  if (dropped(Phase::deliver)) {
    throw CeremonyError(dc.str(), "deliver", "delivery dropped; the receiver never verified");
  }
  transcript.push_back(Envelope{dc, receiver_id, DeliverPayload{result.signature}});

  const VerifyResult verdict = wrap(receiver_id, "verify", [&] {
    return threshold_verify(params, result.group_public_key, result.receiver_key,
                            result.signature, params.hash_oracle);
  });
  result.receiver_accepted = verdict.accept;
  result.mu = verdict.mu;
  result.Z = verdict.z;
  return result;
}

}  // namespace

CeremonyResult run_ceremony(const CeremonyConfig& config) {
  return run_ceremony_impl(config, nullptr);
}

ConfirmationSessionResult run_confirmation_session(const CeremonyConfig& config,
                                                   const GroupSignature& signature,
                                                   const KeyPair& receiver,
                                                   const std::string& third_party_label) {
  const SystemParams& params = config.params;
  if (!config.group_public_key) {
    throw Error("run_confirmation_session: config needs y_G (group_public_key)");
  }
  const PartyId b{Role::Receiver, "B"};
  const PartyId c{Role::ThirdParty, third_party_label};
  auto receiver_rng = make_source(config, b, 1);
  auto third_rng = make_source(config, c, 2);
  // In scripted mode a configured receiver_x means the Receiver tape starts
  // directly at alpha; otherwise its first draw was x (consumed by keygen in
  // the ceremony, so burn it here too).
  if (config.mode == RandomnessMode::scripted && !config.receiver_x) {
    receiver_rng->draw_below(params.q);
  }

  ConfirmationSessionResult result;

  // B recomputes mu and Z from the signature it holds and presents it.
  const VerifyResult view = threshold_verify(params, *config.group_public_key, receiver,
                                             signature, params.hash_oracle);
  result.envelopes.push_back(
      Envelope{b, c, ConfirmPresentPayload{signature, view.mu, view.z}});

  // C's gate: the signature's R must match h(Z, W, m) before any move.
  bool gate = signature.W > 0 && signature.W < params.p;
  if (gate) {
    try {
      gate = hash_to_zq(params.hash_oracle, Residue(view.z, params.p),
                        Residue(signature.W, params.p), signature.m, params.q)
                 .value == signature.R;
    } catch (const UnscriptedQuery&) {
      gate = false;
    }
  }
  result.r_check_passed = gate;
  if (!gate) {
    return result;
  }

  ConfirmationContext context{view.mu, view.z, receiver.y, signature};
  ConfirmationSession session(params, context, receiver);

  const Bigint w = session.commit(*third_rng);
  result.envelopes.push_back(Envelope{c, b, ConfirmMove1Payload{w}});

  const auto [beta, gamma] = session.respond(*receiver_rng);
  result.envelopes.push_back(Envelope{b, c, ConfirmMove2Payload{beta, gamma}});

  const auto [u, v] = session.open();
  result.envelopes.push_back(Envelope{c, b, ConfirmMove3Payload{u, v}});

  const auto alpha = session.release_alpha();
  if (alpha) {
    result.envelopes.push_back(Envelope{b, c, ConfirmMove4Payload{*alpha}});
    session.final_check(*alpha);
  }
  result.transcript = session.transcript();
  return result;
}

// ---------------------------------------------------------------------------
// Fault injection

FaultSpec parse_fault_spec(const std::string& text) {
  const auto parts = textio::split(text, ':');
  auto parse_value = [](std::string v) {
    if (!v.empty() && v[0] == '+') {
      v.erase(0, 1);
    }
    return from_decimal(v);
  };
  FaultSpec spec{FaultKind::substitute_S, "", 0, Phase::dealing};
  if (parts.empty()) {
    throw ParseError("empty fault spec");
  }
  if (parts[0] == "corrupt_partial" && parts.size() == 3) {
    spec.kind = FaultKind::corrupt_partial;
    spec.member = parts[1];
    spec.value = parse_value(parts[2]);
  } else if (parts[0] == "substitute_S" && parts.size() == 2) {
    spec.kind = FaultKind::substitute_S;
    spec.value = parse_value(parts[1]);
  } else if (parts[0] == "impersonate" && parts.size() == 2) {
    spec.kind = FaultKind::impersonate;
    spec.member = parts[1];
  } else if (parts[0] == "drop_message" && parts.size() == 2) {
    spec.kind = FaultKind::drop_message;
    spec.phase = phase_from_name(parts[1]);
  } else {
    throw ParseError("bad fault spec '" + text +
                     "' (corrupt_partial:<member>:<delta> | substitute_S:<value> | "
                     "impersonate:<member> | drop_message:<phase>)");
  }
  return spec;
}

std::string fault_outcome_name(FaultOutcome::Where where) {
  switch (where) {
    case FaultOutcome::Where::receiver_rejected: return "receiver-rejected";
    case FaultOutcome::Where::stalled: return "stalled";
    case FaultOutcome::Where::passed: return "passed";
  }
  throw Error("fault_outcome_name: bad value");
}

FaultOutcome inject_fault(const CeremonyConfig& config, const FaultSpec& fault) {
  if (fault.kind == FaultKind::corrupt_partial || fault.kind == FaultKind::impersonate) {
    if (std::find(config.active.begin(), config.active.end(), fault.member) ==
        config.active.end()) {
      throw Error("fault member '" + fault.member + "' is not in the active subset");
    }
  }
  try {
    CeremonyResult result = run_ceremony_impl(config, &fault);
    if (result.receiver_accepted) {
      return FaultOutcome{FaultOutcome::Where::passed,
                          "receiver accepted despite the fault", std::move(result)};
    }
    return FaultOutcome{FaultOutcome::Where::receiver_rejected,
                        "rejected at receiver verification", std::move(result)};
  } catch (const CeremonyError& e) {
    return FaultOutcome{FaultOutcome::Where::stalled, e.what(), std::nullopt};
  }
}

}  // namespace dtsig
