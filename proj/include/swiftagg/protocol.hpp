#pragma once

// Per-user and server state machines for one aggregation round:
// intra-group sharing, bottom-up inter-group accumulation along
// same-position links, and recovery at the server.

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "swiftagg/field.hpp"
#include "swiftagg/sharing.hpp"
#include "swiftagg/topology.hpp"
#include "swiftagg/transcript.hpp"

namespace swiftagg {

enum class UserStatus { kActive, kDropped, kSilenced };

enum class DropTiming {
  kBeforeIntra,  // dropped users never share
  kAfterIntra,   // shares delivered, then silent from the inter round on
};

struct DropoutPlan {
  std::vector<std::size_t> users;
  DropTiming timing = DropTiming::kBeforeIntra;
};

struct UserState {
  UserId id{};
  Model model;
  NoiseBlock noise;
  UserStatus status = UserStatus::kActive;
  std::map<std::size_t, Share> received_shares;  // keyed by sender position
  std::map<std::size_t, std::optional<std::vector<Element>>> received_child_msgs;  // by group
};

struct IntraAggregate {
  UserId owner{};
  std::vector<Element> values;
};

struct InterGroupMessage {
  UserId sender{};
  std::optional<UserId> receiver;  // nullopt: the server
  std::vector<Element> values;
  bool null_flag = false;
};

struct ProtocolSetup {
  ProtocolParams params;
  FieldContext field;
  AggregationTree tree;
};

// Every user in `group` that has not dropped evaluates its share polynomial
// at all nu points and hands one evaluation to each peer; dropped users'
// contributions are taken as zero. Returns Q for each member (nullopt for a
// dropped member). Appends the exchange to `transcript`.
std::vector<std::optional<IntraAggregate>> intra_round(const FieldContext& ctx,
                                                       const ProtocolParams& params,
                                                       std::span<UserState> group,
                                                       Transcript& transcript);

// S = Q + sum of child messages. A dropped user emits null; a user missing
// any child message emits null and becomes silenced for good. `children` is
// keyed by child group and lists every child of the user's group.
InterGroupMessage inter_round(const FieldContext& ctx, const ProtocolParams& params,
                              const AggregationTree& tree, UserState& user,
                              const std::optional<IntraAggregate>& own,
                              const std::map<std::size_t, const InterGroupMessage*>& children);

// Interpolates from the first K + T non-null messages of the last group.
// Throws TooManyDropouts when fewer than K + T are non-null.
std::vector<Element> server_recover(const FieldContext& ctx, const ProtocolParams& params,
                                    std::span<const InterGroupMessage> messages);

struct ProtocolResult {
  std::vector<Element> aggregate;
  Transcript transcript;
  std::vector<UserState> users;
  // Users whose shares entered the aggregate, ascending.
  std::vector<std::size_t> contributors;
  // Messages the server received from the last group, by position.
  std::vector<InterGroupMessage> server_messages;
};

// Runs one full round. `noise` holds one block per user (T vectors of the
// segment length). Throws TooManyDropouts, DimensionMismatch, InvalidParams.
ProtocolResult run_protocol(const ProtocolSetup& setup, const std::vector<Model>& models,
                            const std::vector<NoiseBlock>& noise, const DropoutPlan& plan);

}  // namespace swiftagg
