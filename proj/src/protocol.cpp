#include "swiftagg/protocol.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "swiftagg/error.hpp"
#include "swiftagg/simd/kernels.hpp"

namespace swiftagg {

std::vector<std::optional<IntraAggregate>> intra_round(const FieldContext& ctx,
                                                       const ProtocolParams& params,
                                                       std::span<UserState> group,
                                                       Transcript& transcript) {
  const std::size_t nu = group.size();
  const std::size_t seg_len = params.segment_length();
  std::vector<std::optional<IntraAggregate>> out(nu);
  for (std::size_t t = 0; t < nu; ++t) {
    if (group[t].status != UserStatus::kDropped) {
      out[t] = IntraAggregate{group[t].id, std::vector<Element>(seg_len, 0)};
    }
  }

  for (std::size_t from = 0; from < nu; ++from) {
    UserState& sender = group[from];
    const Node src = Node::user(sender.id.index);
    if (sender.status == UserStatus::kDropped) {
      for (std::size_t to = 0; to < nu; ++to) {
        if (to == from) continue;
        transcript.record({Phase::kIntra, src, Node::user(group[to].id.index), 0, true, false, {}});
      }
      continue;
    }
    const auto poly = make_share_poly(partition_model(sender.model, params.partitions), sender.noise);
    for (std::size_t to = 0; to < nu; ++to) {
      UserState& receiver = group[to];
      Share share = share_at(ctx, poly, evaluation_point(to));
      const bool self = to == from;
      const bool delivered = receiver.status != UserStatus::kDropped;
      if (delivered) {
        simd::add_mod(out[to]->values, share.values, ctx.modulus());
        receiver.received_shares[from] = share;
      }
      transcript.record({Phase::kIntra, src, Node::user(receiver.id.index), self ? 0 : seg_len,
                         false, delivered, std::move(share.values)});
    }
  }
  return out;
}

InterGroupMessage inter_round(const FieldContext& ctx, const ProtocolParams& params,
                              const AggregationTree& tree, UserState& user,
                              const std::optional<IntraAggregate>& own,
                              const std::map<std::size_t, const InterGroupMessage*>& children) {
  InterGroupMessage msg;
  msg.sender = user.id;
  if (const auto parent = tree.parent(user.id.group)) {
    msg.receiver = user_id(params, user_index(params, *parent, user.id.position));
  }

  if (user.status == UserStatus::kDropped || user.status == UserStatus::kSilenced || !own) {
    msg.null_flag = true;
    return msg;
  }
  std::vector<Element> sum = own->values;
  for (const std::size_t child : tree.children(user.id.group)) {
    const auto it = children.find(child);
    const InterGroupMessage* in = it == children.end() ? nullptr : it->second;
    if (in == nullptr || in->null_flag) {
      user.received_child_msgs[child] = std::nullopt;
      user.status = UserStatus::kSilenced;
      msg.null_flag = true;
      return msg;
    }
    user.received_child_msgs[child] = in->values;
    simd::add_mod(sum, in->values, ctx.modulus());
  }
  msg.values = std::move(sum);
  return msg;
}

std::vector<Element> server_recover(const FieldContext& ctx, const ProtocolParams& params,
                                    std::span<const InterGroupMessage> messages) {
  std::vector<Share> evals;
  for (const auto& m : messages) {
    if (!m.null_flag) evals.push_back({evaluation_point(m.sender.position), m.values});
  }
  if (evals.size() < params.recovery_threshold()) {
    throw Error(ErrorCode::kTooManyDropouts,
                "server received " + std::to_string(evals.size()) +
                    " non-null messages, recovery needs K+T=" +
                    std::to_string(params.recovery_threshold()));
  }
  return recover_aggregate(ctx, evals, params.partitions, params.max_colluders,
                           params.model_length);
}

namespace {

void validate_inputs(const ProtocolSetup& setup, const std::vector<Model>& models,
                     const std::vector<NoiseBlock>& noise, const DropoutPlan& plan) {
  const auto& p = setup.params;
  if (setup.tree.group_count() != p.group_count) {
    throw Error(ErrorCode::kInvalidParams, "tree has " + std::to_string(setup.tree.group_count()) +
                                               " groups, params expect " +
                                               std::to_string(p.group_count));
  }
  if (models.size() != p.users || noise.size() != p.users) {
    throw Error(ErrorCode::kDimensionMismatch, "need one model and one noise block per user");
  }
  for (std::size_t n = 0; n < p.users; ++n) {
    if (models[n].size() != p.model_length) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "model of user " + std::to_string(n) + " has length " +
                      std::to_string(models[n].size()));
    }
    if (noise[n].vectors.size() != p.max_colluders) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "noise block of user " + std::to_string(n) + " must hold T vectors");
    }
  }
  std::set<std::size_t> seen;
  for (const std::size_t u : plan.users) {
    if (u >= p.users || !seen.insert(u).second) {
      throw Error(ErrorCode::kInvalidParams, "bad dropout entry " + std::to_string(u));
    }
  }
}

}  // namespace

ProtocolResult run_protocol(const ProtocolSetup& setup, const std::vector<Model>& models,
                            const std::vector<NoiseBlock>& noise, const DropoutPlan& plan) {
  validate_inputs(setup, models, noise, plan);
  const auto& params = setup.params;
  const auto& ctx = setup.field;
  const auto& tree = setup.tree;
  const std::size_t nu = params.group_size;

  ProtocolResult result;
  result.users.resize(params.users);
  for (std::size_t n = 0; n < params.users; ++n) {
    result.users[n].id = user_id(params, n);
    result.users[n].model = models[n];
    result.users[n].noise = noise[n];
  }
  auto mark_dropped = [&] {
    for (const std::size_t u : plan.users) result.users[u].status = UserStatus::kDropped;
  };

  if (plan.timing == DropTiming::kBeforeIntra) mark_dropped();
  std::vector<std::optional<IntraAggregate>> q(params.users);
  for (std::size_t g = 0; g < params.group_count; ++g) {
    std::span<UserState> members(result.users.data() + g * nu, nu);
    auto group_q = intra_round(ctx, params, members, result.transcript);
    std::move(group_q.begin(), group_q.end(), q.begin() + static_cast<std::ptrdiff_t>(g * nu));
  }
  for (std::size_t n = 0; n < params.users; ++n) {
    if (result.users[n].status != UserStatus::kDropped) result.contributors.push_back(n);
  }
  if (plan.timing == DropTiming::kAfterIntra) mark_dropped();

  // S messages indexed by sender, filled bottom-up
  std::vector<InterGroupMessage> s(params.users);
  // The server stops listening once it holds K + T evaluations; later
  // messages are sent but never received.
  std::size_t accepted = 0;
  for (const std::size_t g : tree.bottom_up_order()) {
    for (std::size_t t = 0; t < nu; ++t) {
      const std::size_t n = user_index(params, g, t);
      std::map<std::size_t, const InterGroupMessage*> children;
      for (const std::size_t c : tree.children(g)) {
        const auto& in = s[user_index(params, c, t)];
        // a message to a dropped receiver is lost in transit
        if (result.users[n].status != UserStatus::kDropped) children[c] = &in;
      }
      s[n] = inter_round(ctx, params, tree, result.users[n], q[n], children);

      const bool to_server = !s[n].receiver.has_value();
      const Node dst = to_server ? Node::server() : Node::user(s[n].receiver->index);
      const bool delivered =
          !s[n].null_flag &&
          (to_server ? accepted < params.recovery_threshold()
                     : result.users[s[n].receiver->index].status != UserStatus::kDropped);
      if (to_server && delivered) ++accepted;
      result.transcript.record({to_server ? Phase::kServer : Phase::kInter,
                                Node::user(n), dst, s[n].null_flag ? 0 : params.segment_length(),
                                s[n].null_flag, delivered, s[n].values});
    }
  }

  const std::size_t root = tree.root_group();
  for (std::size_t t = 0; t < nu; ++t) {
    result.server_messages.push_back(s[user_index(params, root, t)]);
  }
  result.aggregate = server_recover(ctx, params, result.server_messages);
  return result;
}

}  // namespace swiftagg
