#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace swiftagg {

struct ProtocolParams {
  std::size_t users = 0;           // N
  std::size_t max_colluders = 0;   // T
  std::size_t max_dropouts = 0;    // D
  std::size_t partitions = 0;      // K
  std::size_t model_length = 0;    // L
  std::uint64_t ell = 2;           // entries are < ell
  std::size_t group_size = 0;      // nu = K + T + D
  std::size_t group_count = 0;     // Gamma = N / nu

  std::size_t segment_length() const { return (model_length + partitions - 1) / partitions; }
  // K + T evaluations are needed for recovery.
  std::size_t recovery_threshold() const { return partitions + max_colluders; }
};

// Validates and derives nu and Gamma.
// Throws IndivisibleGroups, ThresholdViolation, BadK, InvalidParams.
ProtocolParams make_params(std::size_t n, std::size_t t, std::size_t d, std::size_t k,
                           std::size_t l, std::uint64_t ell);

struct UserId {
  std::size_t index;     // global, [0, N)
  std::size_t group;     // [0, Gamma)
  std::size_t position;  // [0, nu)
};

UserId user_id(const ProtocolParams& params, std::size_t index);
std::size_t user_index(const ProtocolParams& params, std::size_t group, std::size_t position);

// Group g holds users g*nu .. g*nu + nu - 1 in position order.
std::vector<std::vector<std::size_t>> assign_groups(const ProtocolParams& params);

// Rooted tree over groups. The server is the root and its only child is the
// last group (Gamma - 1). parent() == nullopt means "the server".
class AggregationTree {
 public:
  static AggregationTree chain(std::size_t group_count);
  static AggregationTree star(std::size_t group_count);
  // parents[g] is g's parent group, or nullopt for the server.
  // Throws NotATree, BadRoot.
  static AggregationTree from_parents(const std::vector<std::optional<std::size_t>>& parents);

  std::size_t group_count() const { return parents_.size(); }
  std::size_t root_group() const { return parents_.size() - 1; }

  // All queries throw UnknownGroup for g >= group_count().
  std::optional<std::size_t> parent(std::size_t g) const;
  const std::vector<std::size_t>& children(std::size_t g) const;
  // Strict descendants, ascending.
  std::vector<std::size_t> descendants(std::size_t g) const;
  // Strict ancestors excluding the server, ascending.
  std::vector<std::size_t> ancestors(std::size_t g) const;
  // Inter-group hops from g to the server; the root group is one hop away.
  std::size_t hops_to_server(std::size_t g) const;
  // Groups ordered so every child precedes its parent.
  std::vector<std::size_t> bottom_up_order() const;

  const std::vector<std::optional<std::size_t>>& parents() const { return parents_; }

 private:
  explicit AggregationTree(std::vector<std::optional<std::size_t>> parents);
  void check_group(std::size_t g) const;

  std::vector<std::optional<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> children_;
};

// N (K + T + D + 1) / 2: intra-group cliques, same-position inter-group
// links, and the last group's server links.
std::size_t count_edges(const ProtocolParams& params);

struct DelayModel {
  double inter = 1.0;  // worst inter-group link delay
  double intra = 0.0;  // one intra-group sharing round
};

// (max hops to the server) * inter + intra.
double total_delay(const AggregationTree& tree, const DelayModel& delays);

}  // namespace swiftagg
